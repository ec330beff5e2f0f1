#pragma once

#include <cstdint>
#include <string>

#include "cusumlab/errors.hpp"

namespace cusumlab {

// (r, gamma, theta): moment order r > 1, contrast weight gamma in [0, 1),
// and the growth exponent of the change amount delta_n = n^theta.
struct RateParams {
    double r;
    double gamma;
    double theta;
};

void validate(const RateParams& params);

// Position of gamma relative to 1/r and 1/2, which selects the series line.
// For r <= 2 only the first, second and last cases can occur.
enum class RateRegime {
    gamma_below_inv_r,
    gamma_at_inv_r,
    gamma_between_inv_r_and_half,
    gamma_at_half,
    gamma_above_half,
};

std::string to_string(RateRegime regime);

RateRegime rate_regime(double r, double gamma);

// Smallest theta for which the series converges; convergence requires a
// strict inequality, so theta exactly at the threshold diverges.
//
//   r > 2:    (2-r)/(2r-2)          gamma <= 1/r
//             1/(2r-2r gamma)-1/2   1/r < gamma < 1/2
//             (2-r)/(2r)            gamma = 1/2
//             gamma - 1 + 1/r       gamma > 1/2
//   1 < r <= 2:  (2-r)/r            gamma <= 1/r
//                gamma - 1 + 1/r    gamma > 1/r
double convergence_threshold(const RateParams& params);

struct SeriesVerdict {
    bool converges;
    RateRegime regime;
    double threshold_theta;
};

SeriesVerdict classify_rate(const RateParams& params);

// Exact summand of the series for the given regime at index n >= 2,
// including the log factors of the gamma = 1/r and gamma = 1/2 lines.
double series_term(const RateParams& params, RateRegime regime,
                   std::int64_t n);

// Same, with the regime derived from (r, gamma).
double series_term(const RateParams& params, std::int64_t n);

struct PartialSumDiagnostic {
    double sum;        // sum of terms for n = 2..n_max
    double tail_ratio; // sum(n_max) / sum(n_max/2); -> 1 for convergent series
};

// Numeric cross-check of classify_rate.  Overflowing sums are reported as
// diverging (tail_ratio = +inf).  n_max must be >= 100.
PartialSumDiagnostic partial_sum_diagnostic(const RateParams& params,
                                            std::int64_t n_max);

// Decision cut for the tail-ratio heuristic: at n_max = 1e6, series that are
// clearly convergent stay below ~1.04 and divergent ones above ~1.07, so the
// split sits between.  Boundary cases cannot be resolved numerically.
inline constexpr double kTailRatioConvergenceCut = 1.055;

// Exact sum_{j=1}^{n} j^{-s} for s > 0.
double power_sum(std::int64_t n, double s);

} // namespace cusumlab
