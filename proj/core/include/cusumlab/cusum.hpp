#pragma once

#include <span>
#include <vector>

#include "cusumlab/change_point.hpp"
#include "cusumlab/errors.hpp"

namespace cusumlab {

// Weight exponent of the CUSUM contrast, in [0, 1).
struct CusumParams {
    double gamma = 0.0;
};

void validate(const CusumParams& params);

// u[k-1] holds the contrast at split k, k = 1..n-1:
//   u_k = (n-k)^{1-g} / (n^{1-g} k^g) * sum_{j<=k} y_j
//       -   k^{1-g} / (n^{1-g} (n-k)^g) * sum_{j>k} y_j
struct CusumProfile {
    std::vector<double> values;

    int n() const noexcept { return static_cast<int>(values.size()) + 1; }
};

struct Estimate {
    int k_hat;      // smallest maximizer of |u|
    double tau_hat; // k_hat / n
};

struct BoundSides {
    double lhs;
    double rhs;
};

// Single pass over prefix sums; O(n).
CusumProfile cusum_profile(std::span<const double> y, CusumParams params);

// Profile of the model means in closed piecewise form:
//   E u_k = -b_k delta (n - k*)                     for k <= k*
//   E u_k = delta (a_k (k - k*) - b_k (n - k))      for k >  k*
// where a_k, b_k are the two contrast weights.  Agrees with
// cusum_profile(mean_vector(cfg, n)) to roundoff; kept as an independent
// evaluation so either side can check the other.
CusumProfile expected_profile(const ChangePointConfig& cfg, int n,
                              CusumParams params);

// Ties in |u| are compared exactly on the float values; the smallest index
// wins, so the estimator is deterministic.
Estimate estimate_change_point(const CusumProfile& profile);

// Both sides of the deviation inequality
//   |delta| (1-g) tau*^{-g} (1-tau*) min(tau*, 1-tau*) |tau* - tau_hat|
//     <= 2 n^{g-1} max_k |u_k - E u_k|.
// tau_hat is recomputed from the supplied profile.  Throws
// BoundUndefinedError when delta is 0.
BoundSides deviation_bound_sides(const ChangePointConfig& cfg, int n,
                                 CusumParams params,
                                 const CusumProfile& profile);

} // namespace cusumlab
