#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cusumlab/inequality_probe.hpp"

using namespace cusumlab;

namespace {

CholeskyFactor small_factor(int n) {
    return cholesky_factor(build_sigma({n, 2.0}));
}

} // namespace

TEST_CASE("template constants follow m") {
    const InequalityParams one{1, 3.0, 1.0};
    CHECK(one.alpha() == 2.0);
    CHECK(one.beta() == 8.0);
    CHECK(one.c1() == doctest::Approx(1.0 / 12.0));
    CHECK(one.c2() == doctest::Approx(0.125));

    const InequalityParams three{3, 3.0, 1.0};
    CHECK(three.alpha() == 6.0);
    CHECK(three.beta() == 24.0);
    CHECK(three.c1() == doctest::Approx(1.0 / 36.0));
    CHECK(three.c2() == doctest::Approx(1.0 / 72.0));
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(validate(InequalityParams{0, 1.0, 1.0}),
                    InvalidInputError);
    CHECK_THROWS_AS(validate(InequalityParams{1, 0.0, 1.0}),
                    InvalidInputError);
    CHECK_THROWS_AS(validate(InequalityParams{1, 1.0, -1.0}),
                    InvalidInputError);

    const CholeskyFactor factor = small_factor(5);
    CHECK_THROWS_AS(probe_exponential_inequality({1, 3.0, 1.0}, factor,
                                                 TruncationLevel(1.0), 9999, 1),
                    InvalidInputError);
}

TEST_CASE("probe is deterministic in the seed") {
    const CholeskyFactor factor = small_factor(5);
    const InequalityParams params{1, 3.0, 1.0};
    const ProbeReport a =
        probe_exponential_inequality(params, factor, TruncationLevel(2.0),
                                     10000, 77);
    const ProbeReport b =
        probe_exponential_inequality(params, factor, TruncationLevel(2.0),
                                     10000, 77);
    CHECK(a.lhs_hat == b.lhs_hat);
    CHECK(a.s_n_hat == b.s_n_hat);
    CHECK(a.tail_component_hat == b.tail_component_hat);
    CHECK(a.exp_component == b.exp_component);
}

TEST_CASE("exponential component reproduces the formula") {
    const CholeskyFactor factor = small_factor(5);
    const InequalityParams params{1, 3.0, 1.0};
    const ProbeReport report = probe_exponential_inequality(
        params, factor, TruncationLevel(10.0), 10000, 5);
    const double expected =
        8.0 * std::pow(2.0 * report.s_n_hat / (3.0 * 3.0 * 1.0), 3.0 / 12.0);
    CHECK(report.exp_component == doctest::Approx(expected).epsilon(1e-14));
    // m = 1, s = 2, x = 3, a = 1 evaluates to 8 (4/9)^(1/4)
    CHECK(8.0 * std::pow(2.0 * 2.0 / (3.0 * 3.0 * 1.0), 0.25) ==
          doctest::Approx(8.0 * std::pow(4.0 / 9.0, 0.25)).epsilon(1e-15));
}

TEST_CASE("an unreachable deviation level empties the left side") {
    const CholeskyFactor factor = small_factor(5);
    const ProbeReport report = probe_exponential_inequality(
        {1, 100.0, 1.0}, factor, TruncationLevel(2.0), 10000, 9);
    CHECK(report.lhs_hat == 0.0);
    CHECK(report.within_tolerance());
}

TEST_CASE("bound holds on the dependent-gaussian rows") {
    const CholeskyFactor factor = small_factor(5);
    const ProbeReport report = probe_exponential_inequality(
        {1, 5.0, 1.0}, factor, TruncationLevel(10.0), 10000, 11);
    CHECK(report.within_tolerance());
    CHECK(report.lhs_hat >= 0.0);
    CHECK(report.lhs_hat <= 1.0);
    CHECK(report.s_n_hat > 0.0);
    CHECK(report.rhs() == report.tail_component_hat + report.exp_component);
}

TEST_CASE("vanishing truncation level degenerates the probe") {
    // clamped values are +-1e-200, so squared deviations underflow to zero
    const CholeskyFactor factor = small_factor(3);
    CHECK_THROWS_AS(
        probe_exponential_inequality({1, 3.0, 1.0}, factor,
                                     TruncationLevel(1e-200), 10000, 13),
        DegenerateProbeError);
}
