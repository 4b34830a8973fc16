#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <type_traits>
#include <vector>

namespace zetadyn {

/// Evaluates fn(0) ... fn(count - 1) on up to `workers` threads.
///
/// Indices are handed out from a shared counter; each result slot is written
/// exactly once, so the returned vector is in index order whatever the
/// scheduling was. The first exception thrown by any task is rethrown after
/// all workers have joined.
template <class F>
auto parallel_indexed(std::size_t count, unsigned workers, F&& fn)
    -> std::vector<std::invoke_result_t<F&, std::size_t>>
{
    using Result = std::invoke_result_t<F&, std::size_t>;
    std::vector<std::optional<Result>> slots(count);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto drain = [&] {
        for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
            try {
                slots[i].emplace(fn(i));
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
            }
        }
    };

    const std::size_t threads = std::min<std::size_t>(std::max(1u, workers), std::max<std::size_t>(count, 1));
    if (threads <= 1) {
        drain();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (std::size_t t = 0; t < threads; ++t) {
            pool.emplace_back(drain);
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }

    std::vector<Result> out;
    out.reserve(count);
    for (auto& slot : slots) {
        out.push_back(std::move(*slot));
    }
    return out;
}

} // namespace zetadyn
