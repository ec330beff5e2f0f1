#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "cusumlab/experiment.hpp"

namespace cusumlab {

// Shortest text with 17 significant digits; round-trips any double.
std::string format_g17(double v);

// Display rounding to 6 significant digits (summary JSON only).
std::string format_g6(double v);

// header: gamma,theta,n,rep,tau_hat,k_hat,abs_err,bound_lhs,bound_rhs,bound_ok
void write_records_csv(std::ostream& os,
                       std::span<const ReplicationRecord> records);

// header: gamma,theta,n,min,q1,median,q3,max,mean,count
void write_boxplots_csv(std::ostream& os, std::span<const CellStats> cells);

// Nested gamma -> theta -> {n, tail_prob, plus_moment, r_mean_error,
// partial_tail_series}; display fields rounded to 6 significant digits.
std::string diagnostics_json(const ConsistencyDiagnostics& diagnostics);

// Flat key-value config text: `key = value` lines, '#' comments.  Keys match
// the ExperimentConfig fields; lists are comma-separated and theta_map
// entries are `gamma: t1,t2,...` joined with ';'.  Unknown keys and
// malformed values raise ConfigError.
void apply_config_text(ExperimentConfig& cfg, std::istream& is);
void apply_config_file(ExperimentConfig& cfg, const std::string& path);

// All whitespace/comma-separated numbers in the stream, in order.
std::vector<double> read_numbers(std::istream& is);

} // namespace cusumlab
