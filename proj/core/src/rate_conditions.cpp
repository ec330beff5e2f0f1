#include "cusumlab/rate_conditions.hpp"

#include <cmath>
#include <limits>

namespace cusumlab {

void validate(const RateParams& params) {
    if (!(params.r > 1.0) || !std::isfinite(params.r)) {
        throw InvalidInputError("rate params: r must be finite and > 1");
    }
    if (!(params.gamma >= 0.0) || !(params.gamma < 1.0)) {
        throw InvalidInputError("rate params: gamma must lie in [0, 1)");
    }
    if (!std::isfinite(params.theta)) {
        throw InvalidInputError("rate params: theta must be finite");
    }
}

std::string to_string(RateRegime regime) {
    switch (regime) {
    case RateRegime::gamma_below_inv_r:
        return "gamma_below_1_over_r";
    case RateRegime::gamma_at_inv_r:
        return "gamma_equal_1_over_r";
    case RateRegime::gamma_between_inv_r_and_half:
        return "gamma_between_1_over_r_and_half";
    case RateRegime::gamma_at_half:
        return "gamma_equal_half";
    case RateRegime::gamma_above_half:
        return "gamma_above_half";
    }
    return "unknown";
}

RateRegime rate_regime(double r, double gamma) {
    const double inv_r = 1.0 / r;
    if (gamma < inv_r) {
        return RateRegime::gamma_below_inv_r;
    }
    if (gamma == inv_r) {
        return RateRegime::gamma_at_inv_r;
    }
    if (gamma < 0.5) {
        return RateRegime::gamma_between_inv_r_and_half;
    }
    if (gamma == 0.5) {
        return RateRegime::gamma_at_half;
    }
    return RateRegime::gamma_above_half;
}

double convergence_threshold(const RateParams& params) {
    validate(params);
    const double r = params.r;
    const RateRegime regime = rate_regime(r, params.gamma);
    if (r > 2.0) {
        switch (regime) {
        case RateRegime::gamma_below_inv_r:
        case RateRegime::gamma_at_inv_r:
            return (2.0 - r) / (2.0 * r - 2.0);
        case RateRegime::gamma_between_inv_r_and_half:
            return 1.0 / (2.0 * r - 2.0 * r * params.gamma) - 0.5;
        case RateRegime::gamma_at_half:
            return (2.0 - r) / (2.0 * r);
        case RateRegime::gamma_above_half:
            return params.gamma - 1.0 + 1.0 / r;
        }
    }
    // 1 < r <= 2: single-term series; gamma > 1/r implies gamma > 1/2 here.
    switch (regime) {
    case RateRegime::gamma_below_inv_r:
    case RateRegime::gamma_at_inv_r:
        return (2.0 - r) / r;
    default:
        return params.gamma - 1.0 + 1.0 / r;
    }
}

SeriesVerdict classify_rate(const RateParams& params) {
    const double threshold = convergence_threshold(params);
    return SeriesVerdict{params.theta > threshold,
                         rate_regime(params.r, params.gamma), threshold};
}

double series_term(const RateParams& params, RateRegime regime,
                   std::int64_t n) {
    validate(params);
    if (n < 2) {
        throw InvalidInputError("series_term: n must be >= 2");
    }
    const double r = params.r;
    const double g = params.gamma;
    const double th = params.theta;
    const double ln = std::log(static_cast<double>(n));
    const auto npow = [ln](double e) { return std::exp(e * ln); };

    if (r > 2.0) {
        switch (regime) {
        case RateRegime::gamma_below_inv_r:
            return (npow(-r * th) + npow(2.0 * (1.0 - r) * th)) * npow(1.0 - r);
        case RateRegime::gamma_at_inv_r:
            return (npow(-r * th) * ln + npow(2.0 * (1.0 - r) * th)) *
                   npow(1.0 - r);
        case RateRegime::gamma_between_inv_r_and_half:
            return (npow(-r * th) + npow(2.0 * r * (g - 1.0) * th)) *
                   npow(r * (g - 1.0));
        case RateRegime::gamma_at_half:
            return (npow(-r * th) * npow(0.5 * r - 1.0) +
                    npow(2.0 * (1.0 - r) * th) * std::pow(ln, r - 1.0)) *
                   npow(1.0 - r);
        case RateRegime::gamma_above_half:
            return npow(-r * th) * npow(r * (g - 1.0));
        }
    }
    switch (regime) {
    case RateRegime::gamma_below_inv_r:
        return npow(-r * th) * npow(1.0 - r);
    case RateRegime::gamma_at_inv_r:
        return npow(-r * th) * npow(1.0 - r) * ln;
    default:
        return npow(-r * th) * npow(r * (g - 1.0));
    }
}

double series_term(const RateParams& params, std::int64_t n) {
    return series_term(params, rate_regime(params.r, params.gamma), n);
}

PartialSumDiagnostic partial_sum_diagnostic(const RateParams& params,
                                            std::int64_t n_max) {
    validate(params);
    if (n_max < 100) {
        throw InvalidInputError("partial_sum_diagnostic: n_max must be >= 100");
    }
    const RateRegime regime = rate_regime(params.r, params.gamma);
    const std::int64_t half = n_max / 2;
    double sum = 0.0;
    double sum_at_half = 0.0;
    for (std::int64_t n = 2; n <= n_max; ++n) {
        sum += series_term(params, regime, n);
        if (n == half) {
            sum_at_half = sum;
        }
    }
    double ratio;
    if (!std::isfinite(sum) || !std::isfinite(sum_at_half) ||
        sum_at_half == 0.0) {
        ratio = std::numeric_limits<double>::infinity();
    } else {
        ratio = sum / sum_at_half;
    }
    return PartialSumDiagnostic{sum, ratio};
}

double power_sum(std::int64_t n, double s) {
    if (n < 1) {
        throw InvalidInputError("power_sum: n must be >= 1");
    }
    if (!(s > 0.0)) {
        throw InvalidInputError("power_sum: s must be > 0");
    }
    double sum = 0.0;
    for (std::int64_t j = 1; j <= n; ++j) {
        sum += std::pow(static_cast<double>(j), -s);
    }
    return sum;
}

} // namespace cusumlab
