#pragma once

#include <functional>
#include <span>
#include <vector>

#include "cusumlab/errors.hpp"

namespace cusumlab {

// Mean-shift model: observation k has mean mu for k <= k*, mu + delta after,
// where k* = floor(n * tau_star).  delta = 0 is accepted here (diagnostic
// runs); operations that need a nonzero shift reject it themselves.
struct ChangePointConfig {
    double mu = 1.0;
    double delta = 1.0;
    double tau_star = 0.5;
};

void validate(const ChangePointConfig& cfg);

struct ObservationRow {
    std::vector<double> values;
    int change_index;
};

// floor(n * tau_star).  Throws DegenerateConfigError when the result is 0 or
// n (no pre- or post-change segment).
int change_index(int n, double tau_star);

std::vector<double> mean_vector(const ChangePointConfig& cfg, int n);

// Extension hook: baseline(k) supplies an index-dependent mean for 1-based k,
// with the shift added after the change index as usual.
std::vector<double> mean_vector(const ChangePointConfig& cfg, int n,
                                const std::function<double(int)>& baseline);

// mean_vector + noise, elementwise.
ObservationRow generate_row(const ChangePointConfig& cfg,
                            std::span<const double> noise);

} // namespace cusumlab
