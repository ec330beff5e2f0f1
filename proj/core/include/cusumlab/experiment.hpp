#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cusumlab/covariance.hpp"
#include "cusumlab/cusum.hpp"
#include "cusumlab/errors.hpp"
#include "cusumlab/rng.hpp"

namespace cusumlab {

// Full description of a replication grid: noise parameters, model
// parameters, the (gamma, theta) cells, the n grid, and the seed.  The
// change amount in cell (gamma, theta) at size n is n^theta.
struct ExperimentConfig {
    double sigma = 2.0;
    double mu = 1.0;
    double tau_star = 0.5;
    std::vector<double> gamma_list;
    // Theta lists per gamma, matched by value against gamma_list.
    std::vector<std::pair<double, std::vector<double>>> theta_map;
    std::vector<int> n_grid;
    int reps = 1000;
    std::uint64_t base_seed = 20260809;
    std::vector<double> epsilon_list{0.01, 0.05, 0.1};
    double r_diag = 3.0; // moment order of the consistency diagnostics
    // When set, every (gamma, theta) cell must classify as convergent at
    // moment order r_diag.
    bool enforce_rates = false;
};

// Full grid and replication count used for the reference runs.
ExperimentConfig paper_profile();

// Same cells, reps cut to 200 and the two largest n dropped.
ExperimentConfig desk_profile();

void validate(const ExperimentConfig& cfg);

const std::vector<double>& thetas_for(const ExperimentConfig& cfg,
                                      double gamma);

struct ReplicationRecord {
    double gamma;
    double theta;
    int n;
    int rep;
    double tau_hat;
    int k_hat;
    double abs_err;    // |tau_hat - tau_star|
    double bound_lhs;
    double bound_rhs;
    bool bound_ok;     // bound_lhs <= bound_rhs
};

struct BoxplotStats {
    double min, q1, median, q3, max, mean;
    int count;
};

// Quartiles by linear interpolation at rank p*(count-1); pinned so that CSV
// goldens are byte-stable.
BoxplotStats boxplot_stats(std::span<const double> values);

struct CellStats {
    double gamma, theta;
    int n;
    BoxplotStats stats;
};

struct CellError {
    double gamma, theta;
    int n;
    std::string message;
};

// Tail and plus-moment diagnostics for one (gamma, theta) cell; outer index
// epsilon, inner index position in n_values.
struct ConsistencyCell {
    double gamma, theta;
    std::vector<int> n_values;
    std::vector<std::vector<double>> tail_prob;   // P{ |tau_hat - tau*| > eps }
    std::vector<std::vector<double>> plus_moment; // E (|tau_hat - tau*| - eps)_+^r
    std::vector<double> r_mean_error;             // E |tau_hat - tau*|^r
    std::vector<double> partial_tail_series;      // sum over the n grid of tail_prob
};

struct ConsistencyDiagnostics {
    std::vector<double> epsilon_list;
    double r_diag;
    std::vector<ConsistencyCell> cells;
};

ConsistencyDiagnostics consistency_diagnostics(
    std::span<const ReplicationRecord> records,
    const std::vector<double>& epsilon_list, double r_diag);

struct GridResult {
    // Sorted by (gamma, theta, n, rep) in config order; identical across
    // runs and worker counts.
    std::vector<ReplicationRecord> records;
    std::vector<CellStats> boxplots;
    ConsistencyDiagnostics diagnostics;
    std::vector<CellError> errors;
};

// Stream keyed on the parameter VALUES (canonicalized bit patterns of gamma
// and theta) plus n and rep, packed injectively into the Philox key/counter.
// Duplicate cells therefore replay identical noise, and no two distinct
// coordinates share a stream.
StreamRng derive_stream(std::uint64_t base_seed, double gamma, double theta,
                        int n, int rep);

ReplicationRecord run_replication(const ExperimentConfig& cfg, double gamma,
                                  double theta, int n, int rep,
                                  const CholeskyFactor& factor);

// Deterministic core of a replication given the noise row; the test hook for
// noiseless and transformed-noise oracles.
ReplicationRecord replication_from_noise(const ExperimentConfig& cfg,
                                         double gamma, double theta, int n,
                                         int rep,
                                         std::span<const double> noise);

// Runs every (gamma, theta, n) cell; cells are independent, and a failing
// cell is reported in GridResult::errors without touching its siblings.
GridResult run_grid(const ExperimentConfig& cfg, int threads = 1);

} // namespace cusumlab
