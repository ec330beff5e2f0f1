#include "cusumlab/cusum.hpp"

#include <algorithm>
#include <cmath>

namespace cusumlab {

namespace {

struct Weights {
    double a; // prefix weight
    double b; // suffix weight
};

// a_k = (n-k)^{1-g} / (n^{1-g} k^g),  b_k = k^{1-g} / (n^{1-g} (n-k)^g).
inline Weights contrast_weights(int n, int k, double gamma, double n_pow) {
    const double kd = k;
    const double nk = n - k;
    const double kg = std::pow(kd, gamma);
    const double nkg = std::pow(nk, gamma);
    return {(nk / nkg) / (n_pow * kg), (kd / kg) / (n_pow * nkg)};
}

inline double n_power(int n, double gamma) {
    return std::pow(static_cast<double>(n), 1.0 - gamma);
}

} // namespace

void validate(const CusumParams& params) {
    if (!(params.gamma >= 0.0) || !(params.gamma < 1.0)) {
        throw InvalidInputError("cusum params: gamma must lie in [0, 1)");
    }
}

CusumProfile cusum_profile(std::span<const double> y, CusumParams params) {
    validate(params);
    const int n = static_cast<int>(y.size());
    if (n < 2) {
        throw InvalidInputError("cusum_profile: need at least 2 observations");
    }
    double total = 0.0;
    for (double v : y) {
        total += v;
    }
    const double n_pow = n_power(n, params.gamma);
    CusumProfile profile;
    profile.values.resize(n - 1);
    double prefix = 0.0;
    for (int k = 1; k < n; ++k) {
        prefix += y[k - 1];
        const Weights w = contrast_weights(n, k, params.gamma, n_pow);
        profile.values[k - 1] = w.a * prefix - w.b * (total - prefix);
    }
    return profile;
}

CusumProfile expected_profile(const ChangePointConfig& cfg, int n,
                              CusumParams params) {
    validate(params);
    validate(cfg);
    const int k_star = change_index(n, cfg.tau_star);
    const double n_pow = n_power(n, params.gamma);
    CusumProfile profile;
    profile.values.resize(n - 1);
    for (int k = 1; k < n; ++k) {
        const Weights w = contrast_weights(n, k, params.gamma, n_pow);
        if (k <= k_star) {
            profile.values[k - 1] = -w.b * cfg.delta * (n - k_star);
        } else {
            profile.values[k - 1] =
                cfg.delta * (w.a * (k - k_star) - w.b * (n - k));
        }
    }
    return profile;
}

Estimate estimate_change_point(const CusumProfile& profile) {
    if (profile.values.empty()) {
        throw InvalidInputError("estimate_change_point: empty profile");
    }
    int best_k = 1;
    double best = std::abs(profile.values[0]);
    for (int k = 2; k <= static_cast<int>(profile.values.size()); ++k) {
        const double v = std::abs(profile.values[k - 1]);
        if (v > best) {
            best = v;
            best_k = k;
        }
    }
    return Estimate{best_k, static_cast<double>(best_k) / profile.n()};
}

BoundSides deviation_bound_sides(const ChangePointConfig& cfg, int n,
                                 CusumParams params,
                                 const CusumProfile& profile) {
    if (cfg.delta == 0.0) {
        throw BoundUndefinedError(
            "deviation_bound_sides: undefined for zero change amount");
    }
    if (profile.n() != n) {
        throw InvalidInputError("deviation_bound_sides: profile length mismatch");
    }
    const Estimate est = estimate_change_point(profile);
    const CusumProfile expected = expected_profile(cfg, n, params);
    double max_dev = 0.0;
    for (std::size_t i = 0; i < profile.values.size(); ++i) {
        max_dev = std::max(max_dev,
                           std::abs(profile.values[i] - expected.values[i]));
    }
    const double g = params.gamma;
    const double tau = cfg.tau_star;
    const double lhs = std::abs(cfg.delta) * (1.0 - g) * std::pow(tau, -g) *
                       (1.0 - tau) * std::min(tau, 1.0 - tau) *
                       std::abs(tau - est.tau_hat);
    const double rhs = 2.0 * std::pow(static_cast<double>(n), g - 1.0) * max_dev;
    return BoundSides{lhs, rhs};
}

} // namespace cusumlab
