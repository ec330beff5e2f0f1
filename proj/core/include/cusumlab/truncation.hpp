#pragma once

#include <span>
#include <vector>

#include "cusumlab/errors.hpp"

namespace cusumlab {

// Clamp level for the truncation map x |-> (x ^ level) v (-level).
// Strictly positive and finite by construction.
class TruncationLevel {
public:
    explicit TruncationLevel(double level);
    double value() const noexcept { return level_; }

private:
    double level_;
};

// A value split at a threshold t into a bounded core and a saturated tail:
//   bounded_part = x 1{|x| <= t}
//   tail_part    = t 1{x > t} - t 1{x < -t}
// so that bounded_part + tail_part equals the clamped value.  Values exactly
// at +-t belong to the bounded part.
struct TailSplit {
    double bounded_part;
    double tail_part;
    double threshold;
};

// (x ^ level) v (-level); result lies in [-level, level].
double truncate(double x, TruncationLevel level);

TailSplit split_tail(double x, double threshold);

// max over i of |sum_{j<=i} (values[j] - means[j])|.
double max_abs_centered_prefix_sum(std::span<const double> values,
                                   std::span<const double> means);

// True iff every |values[j]| <= threshold, i.e. the row is unchanged by
// clamping at the threshold.
bool all_within(std::span<const double> values, double threshold);

// Sum over coordinates of the unbiased (divisor count-1) sample variance of
// the clamped values across realizations.  Requires >= 2 realizations of
// equal length.
double truncated_variance_sum(
    const std::vector<std::vector<double>>& realizations,
    TruncationLevel level);

} // namespace cusumlab
