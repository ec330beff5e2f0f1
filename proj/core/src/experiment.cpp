#include "cusumlab/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <thread>

#include "cusumlab/rate_conditions.hpp"

namespace cusumlab {

namespace {

const std::vector<double> kThetaLow{-0.29, -0.2, -0.09, 0.0, 0.1};
const std::vector<double> kThetaMid{-0.19, -0.1, -0.01, 0.0, 0.1};
const std::vector<double> kThetaHigh{-0.01, 0.0, 0.1};

} // namespace

ExperimentConfig paper_profile() {
    ExperimentConfig cfg;
    cfg.gamma_list = {0.0, 0.1, 0.5, 0.7, 0.9};
    cfg.theta_map = {{0.0, kThetaLow},
                     {0.1, kThetaLow},
                     {0.5, kThetaLow},
                     {0.7, kThetaMid},
                     {0.9, kThetaHigh}};
    cfg.n_grid = {50, 100, 500, 1000, 1500, 2000, 3000, 4000};
    cfg.reps = 1000;
    return cfg;
}

ExperimentConfig desk_profile() {
    ExperimentConfig cfg = paper_profile();
    cfg.n_grid = {50, 100, 500, 1000, 1500, 2000};
    cfg.reps = 200;
    return cfg;
}

const std::vector<double>& thetas_for(const ExperimentConfig& cfg,
                                      double gamma) {
    for (const auto& [g, thetas] : cfg.theta_map) {
        if (g == gamma) {
            return thetas;
        }
    }
    throw ConfigError("no theta list for gamma " + std::to_string(gamma));
}

void validate(const ExperimentConfig& cfg) {
    if (!(cfg.sigma > 1.0) || !std::isfinite(cfg.sigma)) {
        throw ConfigError("config: sigma must be finite and > 1");
    }
    if (!(cfg.tau_star > 0.0) || !(cfg.tau_star < 1.0)) {
        throw ConfigError("config: tau_star must lie in (0, 1)");
    }
    if (!std::isfinite(cfg.mu)) {
        throw ConfigError("config: mu must be finite");
    }
    if (cfg.reps < 1) {
        throw ConfigError("config: reps must be >= 1");
    }
    if (cfg.gamma_list.empty()) {
        throw ConfigError("config: gamma_list is empty");
    }
    for (double g : cfg.gamma_list) {
        if (!(g >= 0.0) || !(g < 1.0)) {
            throw ConfigError("config: gamma values must lie in [0, 1)");
        }
    }
    if (cfg.n_grid.empty()) {
        throw ConfigError("config: n_grid is empty");
    }
    for (std::size_t i = 0; i < cfg.n_grid.size(); ++i) {
        if (cfg.n_grid[i] < 2) {
            throw ConfigError("config: n values must be >= 2");
        }
        if (i > 0 && cfg.n_grid[i] <= cfg.n_grid[i - 1]) {
            throw ConfigError("config: n_grid must be strictly increasing");
        }
    }
    for (double eps : cfg.epsilon_list) {
        if (!(eps > 0.0)) {
            throw ConfigError("config: epsilon values must be > 0");
        }
    }
    if (!(cfg.r_diag > 0.0)) {
        throw ConfigError("config: r_diag must be > 0");
    }
    for (double g : cfg.gamma_list) {
        const auto& thetas = thetas_for(cfg, g);
        if (thetas.empty()) {
            throw ConfigError("config: empty theta list");
        }
        if (cfg.enforce_rates) {
            for (double th : thetas) {
                SeriesVerdict verdict;
                try {
                    verdict = classify_rate(RateParams{cfg.r_diag, g, th});
                } catch (const InvalidInputError& e) {
                    throw ConfigError(std::string("config: enforce_rates: ") +
                                      e.what());
                }
                if (!verdict.converges) {
                    throw ConfigError(
                        "config: cell gamma=" + std::to_string(g) +
                        " theta=" + std::to_string(th) +
                        " violates the rate condition at r=" +
                        std::to_string(cfg.r_diag));
                }
            }
        }
    }
}

StreamRng derive_stream(std::uint64_t base_seed, double gamma, double theta,
                        int n, int rep) {
    StreamKey key;
    key.key = {base_seed, (static_cast<std::uint64_t>(static_cast<std::uint32_t>(n)) << 32) |
                              static_cast<std::uint32_t>(rep)};
    key.counter = {canonical_bits(gamma), canonical_bits(theta),
                   stream_domain::simulation, 0};
    return StreamRng(key);
}

ReplicationRecord replication_from_noise(const ExperimentConfig& cfg,
                                         double gamma, double theta, int n,
                                         int rep,
                                         std::span<const double> noise) {
    const double delta = std::pow(static_cast<double>(n), theta);
    const ChangePointConfig model{cfg.mu, delta, cfg.tau_star};
    const CusumParams params{gamma};

    const ObservationRow row = generate_row(model, noise);
    const CusumProfile profile = cusum_profile(row.values, params);
    const Estimate est = estimate_change_point(profile);
    const BoundSides bound = deviation_bound_sides(model, n, params, profile);

    ReplicationRecord rec;
    rec.gamma = gamma;
    rec.theta = theta;
    rec.n = n;
    rec.rep = rep;
    rec.tau_hat = est.tau_hat;
    rec.k_hat = est.k_hat;
    rec.abs_err = std::abs(est.tau_hat - cfg.tau_star);
    rec.bound_lhs = bound.lhs;
    rec.bound_rhs = bound.rhs;
    rec.bound_ok = bound.lhs <= bound.rhs;
    return rec;
}

ReplicationRecord run_replication(const ExperimentConfig& cfg, double gamma,
                                  double theta, int n, int rep,
                                  const CholeskyFactor& factor) {
    StreamRng rng = derive_stream(cfg.base_seed, gamma, theta, n, rep);
    const std::vector<double> noise = sample_row(factor, rng);
    return replication_from_noise(cfg, gamma, theta, n, rep, noise);
}

BoxplotStats boxplot_stats(std::span<const double> values) {
    if (values.empty()) {
        throw InvalidInputError("boxplot_stats: empty input");
    }
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const auto quantile = [&sorted](double p) {
        const double h = p * (sorted.size() - 1);
        const std::size_t lo = static_cast<std::size_t>(h);
        const double frac = h - static_cast<double>(lo);
        if (frac == 0.0 || lo + 1 >= sorted.size()) {
            return sorted[lo];
        }
        return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
    };
    double mean = 0.0;
    for (double v : sorted) {
        mean += v;
    }
    mean /= static_cast<double>(sorted.size());
    return BoxplotStats{sorted.front(), quantile(0.25), quantile(0.5),
                        quantile(0.75), sorted.back(), mean,
                        static_cast<int>(sorted.size())};
}

ConsistencyDiagnostics consistency_diagnostics(
    std::span<const ReplicationRecord> records,
    const std::vector<double>& epsilon_list, double r_diag) {
    ConsistencyDiagnostics out;
    out.epsilon_list = epsilon_list;
    out.r_diag = r_diag;

    // Group abs_err values by (gamma, theta), then by n, in record order.
    struct Bucket {
        int n;
        std::vector<double> errors;
    };
    struct Cell {
        double gamma, theta;
        std::vector<Bucket> buckets;
    };
    std::vector<Cell> cells;
    for (const auto& rec : records) {
        if (cells.empty() || cells.back().gamma != rec.gamma ||
            cells.back().theta != rec.theta) {
            cells.push_back(Cell{rec.gamma, rec.theta, {}});
        }
        auto& buckets = cells.back().buckets;
        if (buckets.empty() || buckets.back().n != rec.n) {
            buckets.push_back(Bucket{rec.n, {}});
        }
        buckets.back().errors.push_back(rec.abs_err);
    }

    for (const auto& cell : cells) {
        ConsistencyCell diag;
        diag.gamma = cell.gamma;
        diag.theta = cell.theta;
        diag.tail_prob.resize(epsilon_list.size());
        diag.plus_moment.resize(epsilon_list.size());
        diag.partial_tail_series.assign(epsilon_list.size(), 0.0);
        for (const auto& bucket : cell.buckets) {
            diag.n_values.push_back(bucket.n);
            const double count = static_cast<double>(bucket.errors.size());
            double r_mean = 0.0;
            for (double e : bucket.errors) {
                r_mean += std::pow(e, r_diag);
            }
            diag.r_mean_error.push_back(r_mean / count);
            for (std::size_t ei = 0; ei < epsilon_list.size(); ++ei) {
                const double eps = epsilon_list[ei];
                double tail = 0.0;
                double plus = 0.0;
                for (double e : bucket.errors) {
                    if (e > eps) {
                        tail += 1.0;
                        plus += std::pow(e - eps, r_diag);
                    }
                }
                diag.tail_prob[ei].push_back(tail / count);
                diag.plus_moment[ei].push_back(plus / count);
                diag.partial_tail_series[ei] += tail / count;
            }
        }
        out.cells.push_back(std::move(diag));
    }
    return out;
}

GridResult run_grid(const ExperimentConfig& cfg, int threads) {
    validate(cfg);
    if (threads < 1) {
        throw InvalidInputError("run_grid: threads must be >= 1");
    }

    // One Cholesky factor per distinct n; a failed factorization poisons
    // exactly the cells that need it.
    std::map<int, CholeskyFactor> factors;
    std::map<int, std::string> factor_errors;
    for (int n : cfg.n_grid) {
        try {
            factors.emplace(n,
                            cholesky_factor(build_sigma({n, cfg.sigma})));
        } catch (const std::exception& e) {
            factor_errors.emplace(n, e.what());
        }
    }

    struct Job {
        double gamma, theta;
        int n;
        std::size_t offset; // first record slot
        bool failed = false;
        std::string message;
    };
    std::vector<Job> jobs;
    GridResult result;
    std::size_t slot = 0;
    for (double gamma : cfg.gamma_list) {
        for (double theta : thetas_for(cfg, gamma)) {
            for (int n : cfg.n_grid) {
                const auto err = factor_errors.find(n);
                if (err != factor_errors.end()) {
                    result.errors.push_back(
                        CellError{gamma, theta, n, err->second});
                    continue;
                }
                jobs.push_back(Job{gamma, theta, n, slot, false, {}});
                slot += static_cast<std::size_t>(cfg.reps);
            }
        }
    }

    std::vector<ReplicationRecord> records(slot);
    std::atomic<std::size_t> next_job{0};
    const auto worker = [&]() {
        while (true) {
            const std::size_t j = next_job.fetch_add(1);
            if (j >= jobs.size()) {
                return;
            }
            Job& job = jobs[j];
            const CholeskyFactor& factor = factors.at(job.n);
            try {
                for (int rep = 0; rep < cfg.reps; ++rep) {
                    records[job.offset + rep] = run_replication(
                        cfg, job.gamma, job.theta, job.n, rep, factor);
                }
            } catch (const std::exception& e) {
                job.failed = true;
                job.message = e.what();
            }
        }
    };

    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (int t = 0; t < threads; ++t) {
            pool.emplace_back(worker);
        }
        for (auto& th : pool) {
            th.join();
        }
    }

    // Assemble outputs in job order so the result is schedule-independent.
    result.records.reserve(slot);
    std::vector<double> tau_hats(cfg.reps);
    for (const Job& job : jobs) {
        if (job.failed) {
            result.errors.push_back(
                CellError{job.gamma, job.theta, job.n, job.message});
            continue;
        }
        for (int rep = 0; rep < cfg.reps; ++rep) {
            const ReplicationRecord& rec = records[job.offset + rep];
            result.records.push_back(rec);
            tau_hats[rep] = rec.tau_hat;
        }
        result.boxplots.push_back(
            CellStats{job.gamma, job.theta, job.n, boxplot_stats(tau_hats)});
    }
    result.diagnostics =
        consistency_diagnostics(result.records, cfg.epsilon_list, cfg.r_diag);
    return result;
}

} // namespace cusumlab
