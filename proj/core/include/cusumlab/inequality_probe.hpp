#pragma once

#include <cstdint>

#include "cusumlab/covariance.hpp"
#include "cusumlab/errors.hpp"
#include "cusumlab/rng.hpp"
#include "cusumlab/truncation.hpp"

namespace cusumlab {

// Parameters of the row-wise maximal inequality
//   P{ max_i |sum_{j<=i} (g(X_j) - E g(X_j))| >= x }
//     <= 2m P{ max_j |g(X_j) - E g(X_j)| > a } + 8m (2m s / (3xa))^(x/(12ma))
// where g clamps at the truncation level and s is the clamped-variance sum.
// alpha, beta, c1, c2 are the template constants tied to m.
struct InequalityParams {
    int m = 1;
    double x;
    double a;

    double alpha() const noexcept { return 2.0 * m; }
    double beta() const noexcept { return 8.0 * m; }
    double c1() const noexcept { return 1.0 / (12.0 * m); }
    double c2() const noexcept { return 1.0 / (8.0 * static_cast<double>(m) * m); }
};

void validate(const InequalityParams& params);

struct ProbeReport {
    int reps;
    double level;
    double s_n_hat; // clamped-variance sum from the pilot sample

    double lhs_hat; // P{max prefix deviation >= x}
    double lhs_se;

    double tail_component_hat; // 2m P{max coordinate deviation > a}
    double tail_component_se;

    double exp_component; // 8m (2m s / (3xa))^(x/(12ma))

    double rhs() const noexcept { return tail_component_hat + exp_component; }
    double combined_se() const noexcept { return lhs_se + tail_component_se; }

    // Monte Carlo acceptance at 3 combined standard errors.
    bool within_tolerance() const noexcept {
        return lhs_hat <= rhs() + 3.0 * combined_se();
    }
};

// Estimates both sides of the inequality on rows drawn from the factor.
// Clamped means and the variance sum come from an independent pilot run of
// the same size (same seed, disjoint stream domain), so the main-run
// indicators never reuse them.  reps must be >= 10^4.
ProbeReport probe_exponential_inequality(const InequalityParams& params,
                                         const CholeskyFactor& factor,
                                         TruncationLevel level, int reps,
                                         std::uint64_t seed);

} // namespace cusumlab
