#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "cusumlab/rate_conditions.hpp"

using namespace cusumlab;

TEST_CASE("regime selection") {
    CHECK(rate_regime(3.0, 0.2) == RateRegime::gamma_below_inv_r);
    CHECK(rate_regime(3.0, 1.0 / 3.0) == RateRegime::gamma_at_inv_r);
    CHECK(rate_regime(3.0, 0.4) == RateRegime::gamma_between_inv_r_and_half);
    CHECK(rate_regime(3.0, 0.5) == RateRegime::gamma_at_half);
    CHECK(rate_regime(3.0, 0.7) == RateRegime::gamma_above_half);
    // r <= 2: 1/r >= 1/2, so the middle regimes cannot appear
    CHECK(rate_regime(2.0, 0.5) == RateRegime::gamma_at_inv_r);
    CHECK(rate_regime(1.5, 0.5) == RateRegime::gamma_below_inv_r);
    CHECK(rate_regime(1.5, 0.9) == RateRegime::gamma_above_half);
}

TEST_CASE("thresholds and strictness, r > 2") {
    SUBCASE("gamma below 1/r") {
        const SeriesVerdict v = classify_rate({3.0, 0.0, -0.2});
        CHECK(v.converges);
        CHECK(v.threshold_theta == doctest::Approx(-0.25).epsilon(1e-15));
    }
    SUBCASE("gamma above 1/2") {
        const SeriesVerdict v = classify_rate({4.0, 0.7, -0.01});
        CHECK(v.converges);
        CHECK(v.threshold_theta == doctest::Approx(-0.05).epsilon(1e-13));
    }
    SUBCASE("boundary theta diverges") {
        const double boundary = (2.0 - 3.0) / (2.0 * 3.0);
        const SeriesVerdict v = classify_rate({3.0, 0.5, boundary});
        CHECK_FALSE(v.converges);
        CHECK(v.threshold_theta == boundary);
    }
    SUBCASE("between regime") {
        const SeriesVerdict v = classify_rate({4.0, 0.3, 0.0});
        CHECK(v.threshold_theta ==
              doctest::Approx(1.0 / (8.0 - 8.0 * 0.3) - 0.5).epsilon(1e-14));
        CHECK(v.converges);
    }
}

TEST_CASE("thresholds for 1 < r <= 2") {
    const SeriesVerdict low = classify_rate({2.0, 0.3, 0.01});
    CHECK(low.threshold_theta == 0.0);
    CHECK(low.converges);
    CHECK_FALSE(classify_rate({2.0, 0.3, 0.0}).converges);

    const SeriesVerdict high = classify_rate({1.5, 0.9, 0.6});
    CHECK(high.threshold_theta ==
          doctest::Approx(0.9 - 1.0 + 2.0 / 3.0).epsilon(1e-14));
    CHECK(high.converges);
    CHECK_FALSE(classify_rate({1.5, 0.9, 0.56}).converges);
}

TEST_CASE("classification is monotone in theta") {
    for (double r : {1.3, 1.8, 2.0, 2.4, 3.0, 5.0}) {
        for (double gamma : {0.0, 0.2, 0.45, 0.5, 0.8}) {
            const double thr =
                convergence_threshold({r, gamma, 0.0});
            bool prev = false;
            for (double off = -0.4; off <= 0.4; off += 0.05) {
                const bool conv = classify_rate({r, gamma, thr + off}).converges;
                if (prev) {
                    CHECK(conv); // once convergent, stays convergent
                }
                prev = conv;
            }
        }
    }
}

TEST_CASE("rate params validation") {
    CHECK_THROWS_AS(classify_rate({1.0, 0.2, 0.0}), InvalidInputError);
    CHECK_THROWS_AS(classify_rate({3.0, 1.0, 0.0}), InvalidInputError);
    CHECK_THROWS_AS(classify_rate({3.0, -0.1, 0.0}), InvalidInputError);
}

TEST_CASE("series terms") {
    SUBCASE("hand value in the first regime") {
        CHECK(series_term({3.0, 0.0, 0.0}, 10) ==
              doctest::Approx(0.02).epsilon(1e-14));
    }
    SUBCASE("log factor at gamma = 1/r") {
        const double expected = (std::log(10.0) + 1.0) * 1e-2;
        CHECK(series_term({3.0, 1.0 / 3.0, 0.0}, 10) ==
              doctest::Approx(expected).epsilon(1e-13));
    }
    SUBCASE("single-term regime above 1/2") {
        // r(gamma - theta - 1) with r=3, gamma=0.7, theta=0.1 -> n^-1.2
        CHECK(series_term({3.0, 0.7, 0.1}, 10) ==
              doctest::Approx(std::pow(10.0, -1.2)).epsilon(1e-13));
    }
    SUBCASE("decreasing in theta") {
        for (double th = -0.5; th < 0.5; th += 0.1) {
            CHECK(series_term({3.0, 0.2, th}, 17) >=
                  series_term({3.0, 0.2, th + 0.1}, 17));
        }
    }
    SUBCASE("n below 2 is rejected") {
        CHECK_THROWS_AS(series_term({3.0, 0.2, 0.0}, 1), InvalidInputError);
    }
}

TEST_CASE("partial sums diagnose convergence") {
    SUBCASE("clear convergent case") {
        const PartialSumDiagnostic d =
            partial_sum_diagnostic({3.0, 0.0, 0.0}, 1000000);
        CHECK(d.tail_ratio >= 1.0);
        CHECK(d.tail_ratio <= 1.02);
    }
    SUBCASE("boundary case stays away from 1") {
        // single-term regime whose summand collapses to exactly n^-1 at the
        // threshold theta
        const PartialSumDiagnostic d = partial_sum_diagnostic(
            {3.0, 0.7, 0.7 - 1.0 + 1.0 / 3.0}, 1000000);
        CHECK(d.tail_ratio >= 1.05);
        // a boundary with a convergent companion term is pulled toward 1 but
        // still separates from clearly convergent cases
        const PartialSumDiagnostic mixed =
            partial_sum_diagnostic({3.0, 0.0, -0.25}, 1000000);
        CHECK(mixed.tail_ratio >= 1.04);
    }
    SUBCASE("known series value") {
        // parameters chosen so the summand collapses to n^-2
        const PartialSumDiagnostic d =
            partial_sum_diagnostic({3.0, 5.0 / 6.0, 0.5}, 1000000);
        CHECK(d.sum == doctest::Approx(0.6449340668482264).epsilon(2e-5));
    }
    SUBCASE("overflow reports divergence") {
        const PartialSumDiagnostic d =
            partial_sum_diagnostic({3.0, 0.0, -40.0}, 10000);
        CHECK(std::isinf(d.tail_ratio));
    }
    SUBCASE("n_max floor") {
        CHECK_THROWS_AS(partial_sum_diagnostic({3.0, 0.0, 0.0}, 99),
                        InvalidInputError);
    }
}

TEST_CASE("tail-ratio heuristic agrees with the classifier off the boundary") {
    // smoke grid; the acceptance suite runs the full version
    int points = 0;
    for (double r : {3.0, 4.0}) {
        for (double gamma : {0.0, 1.0 / r, 0.4, 0.5, 0.8}) {
            const double thr = convergence_threshold({r, gamma, 0.0});
            for (double off : {-0.3, -0.1, 0.1, 0.3}) {
                const RateParams p{r, gamma, thr + off};
                const bool predicted =
                    partial_sum_diagnostic(p, 200000).tail_ratio <
                    kTailRatioConvergenceCut;
                CHECK(predicted == classify_rate(p).converges);
                ++points;
            }
        }
    }
    CHECK(points == 40);
}

TEST_CASE("power sums and their growth envelopes") {
    CHECK(power_sum(1, 0.5) == 1.0);
    CHECK(power_sum(1, 3.0) == 1.0);

    const double h100 = power_sum(100, 2.0);
    CHECK(h100 <= 2.0);
    CHECK(h100 >= 1.6449340668482264 - 0.01);

    CHECK(power_sum(10000, 0.5) <= 3.0 * 100.0); // C(1/2) = 3

    CHECK_THROWS_AS(power_sum(0, 1.0), InvalidInputError);
    CHECK_THROWS_AS(power_sum(10, 0.0), InvalidInputError);

    // envelope constants: 1/(1-s)+1 below 1, 2 at 1 (from n >= 3), s/(s-1)
    // above 1
    const std::vector<std::int64_t> grid{1, 2, 3, 10, 100, 1000, 10000,
                                         100000, 1000000};
    for (double s : {0.3, 0.5, 0.9, 1.0, 1.1, 2.0, 3.0}) {
        double incremental = 0.0;
        std::int64_t j = 1;
        for (std::int64_t n : grid) {
            for (; j <= n; ++j) {
                incremental += std::pow(static_cast<double>(j), -s);
            }
            CHECK(power_sum(n, s) == incremental);
            if (s < 1.0) {
                const double c = 1.0 / (1.0 - s) + 1.0;
                CHECK(incremental <=
                      c * std::pow(static_cast<double>(n), 1.0 - s));
            } else if (s == 1.0) {
                if (n >= 3) {
                    CHECK(incremental <= 2.0 * std::log(static_cast<double>(n)));
                }
            } else {
                CHECK(incremental <= s / (s - 1.0));
            }
        }
    }
}
