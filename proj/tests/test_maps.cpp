#include <doctest.h>

#include "zetadyn/errors.hpp"
#include "zetadyn/maps.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>

using namespace zetadyn;

namespace {

const ElectricalParams kCircuit{0.7, 0.000025, 0.00045, 0.73};
const ElectricalParams kAttractor{0.8, 1.0, 1.5, 0.5};

double central_difference(const MapSpec& spec, double x, double h)
{
    return (eval_map(x + h, spec).value - eval_map(x - h, spec).value) / (2.0 * h);
}

} // namespace

TEST_CASE("electrical map examples")
{
    CHECK(eval_electrical_map(1.0, kCircuit).value == doctest::Approx(1.0 + 0.000025 / 0.00045 + 1.0 / 0.73).epsilon(1e-15));
    CHECK(eval_electrical_map(1.0, kCircuit).value == doctest::Approx(2.4254185).epsilon(1e-7));
    CHECK(std::fabs(eval_electrical_map(1.54574, kCircuit).value - 1.54574) < 5e-4);
    CHECK(eval_electrical_map(0.1, kAttractor).value == doctest::Approx(1.0 + 1.0 / 1.5 + 20.0).epsilon(1e-14));
    CHECK_THROWS_AS((void)eval_electrical_map(1e-14, kCircuit), SingularState);
    CHECK_THROWS_AS((void)eval_electrical_map(-1e-13, kCircuit), SingularState);
}

TEST_CASE("appendix map examples")
{
    const auto e = eval_appendix_map(1.0, {0.0});
    CHECK(e.value == 0.75);
    CHECK(e.derivative == 0.25);
    CHECK(eval_appendix_map(1.0, {0.25}).value == 0.5);
    const double root = 1.0 / std::sqrt(2.0);
    CHECK(eval_appendix_map(root, {0.0}).value == doctest::Approx(root).epsilon(1e-15));
    CHECK_THROWS_AS((void)eval_appendix_map(0.0, {0.0}), SingularState);
}

TEST_CASE("non-finite map output is an overflow")
{
    // 1/(C x) overflows for a denormal-scale capacitance
    ElectricalParams p = kCircuit;
    p.C = 1e-310;
    CHECK_THROWS_AS((void)eval_electrical_map(1e-5, p), Overflow);
}

TEST_CASE("parameter validation names the field")
{
    ElectricalParams p = kCircuit;
    p.L = 0.0;
    CHECK_FALSE(p.valid());
    CHECK_THROWS_WITH_AS(p.validate(), doctest::Contains("L"), InvalidInput);
    p = kCircuit;
    p.R = -1.0;
    CHECK_THROWS_AS(p.validate(), InvalidInput);
    CHECK_THROWS_AS(AppendixParams{std::numeric_limits<double>::infinity()}.validate(), InvalidInput);
}

static void check_derivatives(double lo, double hi, bool relative_step)
{
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> log_mag(std::log(lo), std::log(hi));
    std::bernoulli_distribution negative(0.5);
    const MapSpec electrical = kCircuit;
    const MapSpec appendix = AppendixParams{0.25};
    for (int i = 0; i < 2000; ++i) {
        const double x = (negative(gen) ? -1.0 : 1.0) * std::exp(log_mag(gen));
        for (const auto* spec : {&electrical, &appendix}) {
            const double analytic = eval_map(x, *spec).derivative;
            const double h = relative_step ? 1e-5 * std::fabs(x) : std::max(1e-7, 1e-7 * std::fabs(x));
            const double fd = central_difference(*spec, x, h);
            // unit floor: near a zero of f' the central difference carries absolute error only
            CHECK(std::fabs(analytic - fd) / std::max(1.0, std::fabs(analytic)) < 1e-6);
        }
    }
}

TEST_CASE("analytic derivatives agree with central differences")
{
    check_derivatives(1e-3, 1e3, false);
    // an absolute 1e-7 step is too coarse below |x| ~ 1e-4, so the wide range uses a relative step
    check_derivatives(1e-6, 1e6, true);
}

TEST_CASE("reciprocal integers kill the sinc term")
{
    for (int n = 1; n <= 50; ++n) {
        for (const double r : {0.3, 0.7, 2.5}) {
            ElectricalParams p = kCircuit;
            p.r = r;
            const double expected = 1.0 + p.R / p.L + n / p.C;
            const double got = eval_electrical_map(1.0 / n, p).value;
            CHECK(std::fabs(got - expected) <= 8 * std::numeric_limits<double>::epsilon() * expected);
        }
    }
}

TEST_CASE("pair correlation closed forms")
{
    CHECK(pair_correlation_g(0.0) == 0.0);
    CHECK(pair_correlation_g(0.5) == doctest::Approx(1.0 - 4.0 / (std::numbers::pi * std::numbers::pi)).epsilon(1e-14));
    CHECK(pair_correlation_g(1.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(pair_correlation_g(0.5, 0.125) == doctest::Approx(pair_correlation_g(0.5) + 0.125));
    CHECK(pair_correlation_R2(0.0) == 0.0);
    CHECK(pair_correlation_R2(1.0) == doctest::Approx(3.0 / std::numbers::pi).epsilon(1e-15));
    CHECK(std::fabs(pair_correlation_R2(2.0)) < 1e-15);
}

TEST_CASE("pair correlation symmetry and sign")
{
    for (int i = 0; i <= 400; ++i) {
        const double u = -4.0 + 0.02 * i;
        CHECK(pair_correlation_g(u) == pair_correlation_g(-u));
        CHECK(pair_correlation_g(std::fabs(u)) >= 0.0);
        CHECK(pair_correlation_g(std::fabs(u)) <= 1.0 + 1e-15);
    }
    for (int i = 0; i <= 200; ++i) {
        CHECK(pair_correlation_R2(0.01 * i) >= 0.0);
    }
    // the small-argument series joins the direct quotient smoothly
    CHECK(sinc_pi(3.1e-5) == doctest::Approx(std::sin(std::numbers::pi * 3.1e-5) / (std::numbers::pi * 3.1e-5)).epsilon(1e-15));
}

TEST_CASE("evaluation is pure")
{
    const double x = 1.2345678;
    const auto a = eval_electrical_map(x, kCircuit);
    const auto b = eval_electrical_map(x, kCircuit);
    CHECK(std::bit_cast<std::uint64_t>(a.value) == std::bit_cast<std::uint64_t>(b.value));
    CHECK(std::bit_cast<std::uint64_t>(a.derivative) == std::bit_cast<std::uint64_t>(b.derivative));
}
