#include <doctest.h>

#include "zetadyn/errors.hpp"
#include "zetadyn/geometry.hpp"

#include <algorithm>
#include <cmath>

using namespace zetadyn;

namespace {

Orbit synthetic(std::vector<double> samples)
{
    Orbit o;
    o.params = ElectricalParams{};
    o.x0 = samples.empty() ? 1.0 : samples.front();
    o.n = samples.size();
    o.samples = std::move(samples);
    return o;
}

Orbit period_two(double a, double b, std::size_t n)
{
    std::vector<double> xs;
    for (std::size_t i = 0; i < n; ++i) {
        xs.push_back(i % 2 == 0 ? a : b);
    }
    return synthetic(std::move(xs));
}

} // namespace

TEST_CASE("phase portrait of simple orbits")
{
    const auto constant = phase_portrait(synthetic(std::vector<double>(6, 1.5)));
    REQUIRE(constant.size() == 5);
    for (const auto& p : constant) {
        CHECK(p == DelayPair{1.5, 1.5});
    }

    const auto alternating = phase_portrait(period_two(1.0, 2.0, 7));
    REQUIRE(alternating.size() == 6);
    for (std::size_t i = 0; i < alternating.size(); ++i) {
        CHECK(alternating[i] == (i % 2 == 0 ? DelayPair{1.0, 2.0} : DelayPair{2.0, 1.0}));
    }

    CHECK_THROWS_AS((void)phase_portrait(synthetic({1.0})), TooShort);
}

TEST_CASE("phase portrait near the r = 0.7 fixed point")
{
    const ElectricalParams p{0.7, 0.000025, 0.00045, 0.73};
    const auto fp = find_fixed_points(p, {1.5, 1.6}, 8).front();
    const auto pairs = phase_portrait(generate_orbit(p, fp.x_star, 120, 0));
    REQUIRE(pairs.size() == 119);
    // starting on the (repelling) fixed point, the first pairs sit at (x*, x*)
    for (std::size_t i = 0; i < 10; ++i) {
        CHECK(std::fabs(pairs[i].current - 1.54574) < 5e-4);
        CHECK(std::fabs(pairs[i].next - 1.54574) < 5e-4);
    }
}

TEST_CASE("poincare crossing sections")
{
    const auto none = poincare_section(synthetic(std::vector<double>(10, 1.0)), 2.0, section_mode::Crossing{});
    CHECK(none.points.empty());

    const Orbit alt = period_two(1.0, 3.0, 12);
    const auto every = poincare_section(alt, 2.0, section_mode::Crossing{});
    CHECK(every.points.size() == 11);

    const auto defaulted = poincare_section(alt, std::nullopt, section_mode::Crossing{});
    CHECK(defaulted.section_value == 2.0);

    const ElectricalParams p{0.6, 0.000025, 0.00045, 0.73};
    const Orbit chaotic = generate_orbit(p, 1.2, 3000, 1000);
    const auto section = poincare_section(chaotic, std::nullopt, section_mode::Crossing{});
    const auto portrait = phase_portrait(chaotic);
    CHECK_FALSE(section.points.empty());
    for (const auto& q : section.points) {
        CHECK((q.current - section.section_value) * (q.next - section.section_value) <= 0.0);
        CHECK(std::find(portrait.begin(), portrait.end(), q) != portrait.end());
    }
}

TEST_CASE("poincare stroboscopic sections")
{
    const ElectricalParams p{0.6, 0.000025, 0.00045, 0.73};
    const Orbit orbit = generate_orbit(p, 1.2, 500, 100);
    const auto portrait = phase_portrait(orbit);
    CHECK(poincare_section(orbit, std::nullopt, section_mode::Stroboscopic{1}).points == portrait);

    const auto third = poincare_section(orbit, std::nullopt, section_mode::Stroboscopic{3});
    REQUIRE(third.points.size() == (portrait.size() + 2) / 3);
    for (std::size_t i = 0; i < third.points.size(); ++i) {
        CHECK(third.points[i] == portrait[3 * i]);
    }
    CHECK_THROWS_AS((void)poincare_section(orbit, std::nullopt, section_mode::Stroboscopic{0}), InvalidInput);
}

TEST_CASE("poincare case 2 intersections stay positive")
{
    for (int i = 0; i < 10; ++i) {
        const ElectricalParams p{0.5 + 0.05 * i, 0.000025, 0.00045, 4.5};
        const Orbit orbit = generate_orbit(p, 1.2, 2000, 500);
        REQUIRE(orbit.completed());
        for (const auto& q : poincare_section(orbit, std::nullopt, section_mode::Crossing{}).points) {
            CHECK(q.current > 0.0);
            CHECK(q.next > 0.0);
        }
    }
}

TEST_CASE("attractor embedding")
{
    const auto single = attractor_embedding(synthetic({0.0}));
    REQUIRE(single.points.size() == 1);
    CHECK(single.points[0].x == 0.0);
    CHECK(single.points[0].y == 0.0);
    CHECK(single.points[0].z == 1.0);

    const auto run = attractor_embedding(generate_orbit(ElectricalParams{0.8, 1.0, 1.5, 0.5}, 0.1, 10000, 0));
    CHECK(run.points.size() == 10000);
    for (const auto& pt : run.points) {
        CHECK(std::fabs(pt.y * pt.y + pt.z * pt.z - 1.0) < 1e-12);
    }

    Orbit escaped = synthetic({1.0, 2.0});
    escaped.status = orbit_status::Escaped{3, 1e13};
    CHECK(attractor_embedding(escaped).points.size() == 2);
    CHECK_THROWS_AS((void)attractor_embedding(synthetic({})), TooShort);
}

TEST_CASE("median")
{
    CHECK(median({3.0, 1.0, 2.0}) == 2.0);
    CHECK(median({4.0, 1.0, 3.0, 2.0}) == 2.5);
    CHECK_THROWS_AS((void)median({}), TooShort);
}
