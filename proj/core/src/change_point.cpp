#include "cusumlab/change_point.hpp"

#include <cmath>

namespace cusumlab {

void validate(const ChangePointConfig& cfg) {
    if (!(cfg.tau_star > 0.0) || !(cfg.tau_star < 1.0)) {
        throw InvalidInputError("change-point config: tau_star must lie in (0, 1)");
    }
    if (!std::isfinite(cfg.mu) || !std::isfinite(cfg.delta)) {
        throw InvalidInputError("change-point config: mu and delta must be finite");
    }
}

int change_index(int n, double tau_star) {
    if (n < 2) {
        throw InvalidInputError("change_index: n must be >= 2");
    }
    if (!(tau_star > 0.0) || !(tau_star < 1.0)) {
        throw InvalidInputError("change_index: tau_star must lie in (0, 1)");
    }
    const int k = static_cast<int>(std::floor(n * tau_star));
    if (k <= 0 || k >= n) {
        throw DegenerateConfigError(
            "change_index: floor(n tau_star) leaves an empty segment");
    }
    return k;
}

std::vector<double> mean_vector(const ChangePointConfig& cfg, int n,
                                const std::function<double(int)>& baseline) {
    validate(cfg);
    const int k_star = change_index(n, cfg.tau_star);
    std::vector<double> means(n);
    for (int k = 1; k <= n; ++k) {
        means[k - 1] = baseline(k) + (k > k_star ? cfg.delta : 0.0);
    }
    return means;
}

std::vector<double> mean_vector(const ChangePointConfig& cfg, int n) {
    return mean_vector(cfg, n, [&cfg](int) { return cfg.mu; });
}

ObservationRow generate_row(const ChangePointConfig& cfg,
                            std::span<const double> noise) {
    const int n = static_cast<int>(noise.size());
    std::vector<double> means = mean_vector(cfg, n);
    for (int i = 0; i < n; ++i) {
        means[i] += noise[i];
    }
    return ObservationRow{std::move(means), change_index(n, cfg.tau_star)};
}

} // namespace cusumlab
