#include "cusumlab/truncation.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

namespace cusumlab {

TruncationLevel::TruncationLevel(double level) : level_(level) {
    if (!std::isfinite(level) || level <= 0.0) {
        throw InvalidInputError("truncation level must be finite and > 0");
    }
}

double truncate(double x, TruncationLevel level) {
    if (!std::isfinite(x)) {
        throw InvalidInputError("truncate: non-finite input");
    }
    const double l = level.value();
    return std::max(std::min(x, l), -l);
}

TailSplit split_tail(double x, double threshold) {
    if (!std::isfinite(x)) {
        throw InvalidInputError("split_tail: non-finite input");
    }
    if (!std::isfinite(threshold) || threshold <= 0.0) {
        throw InvalidInputError("split_tail: threshold must be finite and > 0");
    }
    TailSplit out{0.0, 0.0, threshold};
    if (std::abs(x) <= threshold) {
        out.bounded_part = x;
    } else {
        out.tail_part = (x > threshold) ? threshold : -threshold;
    }
    return out;
}

double max_abs_centered_prefix_sum(std::span<const double> values,
                                   std::span<const double> means) {
    if (values.size() != means.size()) {
        throw InvalidInputError(
            "max_abs_centered_prefix_sum: length mismatch");
    }
    if (values.empty()) {
        throw InvalidInputError("max_abs_centered_prefix_sum: empty row");
    }
    double running = 0.0;
    double best = 0.0;
    for (std::size_t j = 0; j < values.size(); ++j) {
        if (!std::isfinite(values[j]) || !std::isfinite(means[j])) {
            throw InvalidInputError(
                "max_abs_centered_prefix_sum: non-finite entry");
        }
        running += values[j] - means[j];
        best = std::max(best, std::abs(running));
    }
    return best;
}

bool all_within(std::span<const double> values, double threshold) {
    if (!std::isfinite(threshold) || threshold <= 0.0) {
        throw InvalidInputError("all_within: threshold must be finite and > 0");
    }
    for (double v : values) {
        if (!std::isfinite(v)) {
            throw InvalidInputError("all_within: non-finite entry");
        }
        if (std::abs(v) > threshold) {
            return false;
        }
    }
    return true;
}

double truncated_variance_sum(
    const std::vector<std::vector<double>>& realizations,
    TruncationLevel level) {
    if (realizations.size() < 2) {
        throw InsufficientDataError(
            "truncated_variance_sum: need at least 2 realizations");
    }
    const std::size_t width = realizations.front().size();
    if (width == 0) {
        throw InvalidInputError("truncated_variance_sum: empty rows");
    }
    for (const auto& row : realizations) {
        if (row.size() != width) {
            throw InvalidInputError(
                "truncated_variance_sum: realizations differ in length");
        }
    }
    const double reps = static_cast<double>(realizations.size());
    double total = 0.0;
    std::vector<double> clamped(realizations.size());
    for (std::size_t j = 0; j < width; ++j) {
        double mean = 0.0;
        for (std::size_t k = 0; k < realizations.size(); ++k) {
            clamped[k] = truncate(realizations[k][j], level);
            mean += clamped[k];
        }
        mean /= reps;
        double ss = 0.0;
        for (double c : clamped) {
            const double d = c - mean;
            ss += d * d;
        }
        total += ss / (reps - 1.0);
    }
    return total;
}

} // namespace cusumlab
