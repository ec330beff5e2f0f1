#pragma once

#include <stdexcept>
#include <string>

namespace cusumlab {

// A numeric argument is outside its documented domain (non-finite input,
// nonpositive level, length mismatch, ...).
struct InvalidInputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// An estimator was asked for with fewer realizations than it needs.
struct InsufficientDataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Change-point placement left no pre- or post-change segment.
struct DegenerateConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The deviation bound is undefined (zero change amount).
struct BoundUndefinedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The inequality probe hit a degenerate estimate (zero variance proxy).
struct DegenerateProbeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Experiment configuration is inconsistent or failed to parse.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Cholesky pivot failure.  pivot_index() is the 0-based row of the
// nonpositive pivot.
class FactorizationError : public std::runtime_error {
public:
    FactorizationError(int pivot_index, double pivot_value)
        : std::runtime_error("cholesky: nonpositive pivot " +
                             std::to_string(pivot_value) + " at index " +
                             std::to_string(pivot_index)),
          pivot_index_(pivot_index) {}

    int pivot_index() const noexcept { return pivot_index_; }

private:
    int pivot_index_;
};

} // namespace cusumlab
