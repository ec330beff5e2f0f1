#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cusumlab/covariance.hpp"
#include "cusumlab/cusum.hpp"
#include "cusumlab/experiment.hpp"
#include "cusumlab/inequality_probe.hpp"
#include "cusumlab/rate_conditions.hpp"
#include "cusumlab/text_io.hpp"

namespace {

using namespace cusumlab;

void write_sigma_csv(std::ostream& os, const SquareMatrix& m) {
    for (int i = 0; i < m.dim(); ++i) {
        for (int j = 0; j < m.dim(); ++j) {
            if (j > 0) {
                os << ',';
            }
            os << format_g17(m(i, j));
        }
        os << '\n';
    }
}

int run_sigma_matrix(int n, double sigma, const std::string& out) {
    const SquareMatrix m = build_sigma({n, sigma});
    if (out == "-") {
        write_sigma_csv(std::cout, m);
    } else {
        std::ofstream file(out);
        if (!file) {
            std::cerr << "cannot open " << out << "\n";
            return 1;
        }
        write_sigma_csv(file, m);
        std::cout << "wrote " << out << "\n";
    }
    return 0;
}

int run_cusum(const std::string& input, double gamma,
              const std::string& profile_out) {
    std::vector<double> y;
    if (input == "-") {
        y = read_numbers(std::cin);
    } else {
        std::ifstream file(input);
        if (!file) {
            std::cerr << "cannot open " << input << "\n";
            return 1;
        }
        y = read_numbers(file);
    }
    const CusumProfile profile = cusum_profile(y, {gamma});
    const Estimate est = estimate_change_point(profile);
    std::cout << "k_hat,tau_hat\n"
              << est.k_hat << ',' << format_g17(est.tau_hat) << "\n";
    if (!profile_out.empty()) {
        std::ofstream file(profile_out);
        if (!file) {
            std::cerr << "cannot open " << profile_out << "\n";
            return 1;
        }
        file << "k,u\n";
        for (std::size_t k = 0; k < profile.values.size(); ++k) {
            file << (k + 1) << ',' << format_g17(profile.values[k]) << '\n';
        }
        std::cout << "wrote " << profile_out << "\n";
    }
    return 0;
}

int run_check_conditions(double r, double gamma, double theta) {
    const SeriesVerdict verdict = classify_rate({r, gamma, theta});
    nlohmann::ordered_json out;
    out["converges"] = verdict.converges;
    out["regime"] = to_string(verdict.regime);
    out["threshold_theta"] = verdict.threshold_theta;
    std::cout << out.dump(2) << "\n";
    return 0;
}

int run_probe(int n, double sigma, double x, double a, int m, int reps,
              std::uint64_t seed, double level) {
    const CholeskyFactor factor = cholesky_factor(build_sigma({n, sigma}));
    const ProbeReport report = probe_exponential_inequality(
        {m, x, a}, factor, TruncationLevel(level), reps, seed);
    nlohmann::ordered_json out;
    out["n"] = n;
    out["sigma"] = sigma;
    out["m"] = m;
    out["x"] = x;
    out["a"] = a;
    out["level"] = level;
    out["reps"] = report.reps;
    out["s_n_hat"] = report.s_n_hat;
    out["lhs"] = report.lhs_hat;
    out["lhs_stderr"] = report.lhs_se;
    out["tail_component"] = report.tail_component_hat;
    out["tail_component_stderr"] = report.tail_component_se;
    out["exp_component"] = report.exp_component;
    out["rhs"] = report.rhs();
    out["combined_stderr"] = report.combined_se();
    out["within_tolerance"] = report.within_tolerance();
    std::cout << out.dump(2) << "\n";
    return 0;
}

int run_simulate(const std::string& config_path, const std::string& profile,
                 int reps_override, long long seed_override,
                 const std::string& out_dir, int threads) {
    ExperimentConfig cfg;
    try {
        cfg = (profile == "paper") ? paper_profile() : desk_profile();
        if (!config_path.empty()) {
            apply_config_file(cfg, config_path);
        }
        if (reps_override > 0) {
            cfg.reps = reps_override;
        }
        if (seed_override >= 0) {
            cfg.base_seed = static_cast<std::uint64_t>(seed_override);
        }
        validate(cfg);
    } catch (const ConfigError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }

    const GridResult result = run_grid(cfg, threads);

    std::filesystem::create_directories(out_dir);
    const auto path = [&out_dir](const char* name) {
        return (std::filesystem::path(out_dir) / name).string();
    };
    {
        std::ofstream records(path("records.csv"));
        write_records_csv(records, result.records);
        std::cout << "wrote " << path("records.csv") << " ("
                  << result.records.size() << " records)\n";
    }
    {
        std::ofstream boxplots(path("boxplots.csv"));
        write_boxplots_csv(boxplots, result.boxplots);
        std::cout << "wrote " << path("boxplots.csv") << " ("
                  << result.boxplots.size() << " cells)\n";
    }
    {
        std::ofstream diag(path("diagnostics.json"));
        diag << diagnostics_json(result.diagnostics);
        std::cout << "wrote " << path("diagnostics.json") << "\n";
    }

    if (!result.errors.empty()) {
        for (const auto& err : result.errors) {
            std::cerr << "cell error: gamma=" << format_g17(err.gamma)
                      << " theta=" << format_g17(err.theta) << " n=" << err.n
                      << ": " << err.message << "\n";
        }
        return 3;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"cusumlab - change-point estimation laboratory"};
    app.require_subcommand(1);

    // sigma-matrix
    int sm_n = 0;
    double sm_sigma = 2.0;
    std::string sm_out;
    auto* sigma_cmd =
        app.add_subcommand("sigma-matrix", "emit the noise covariance as CSV");
    sigma_cmd->add_option("--n", sm_n, "matrix dimension")->required();
    sigma_cmd->add_option("--sigma", sm_sigma, "decay base (> 1)")->required();
    sigma_cmd->add_option("--out", sm_out, "output path, or - for stdout")
        ->required();

    // cusum
    std::string cu_input;
    double cu_gamma = 0.0;
    std::string cu_profile_out;
    auto* cusum_cmd = app.add_subcommand(
        "cusum", "estimate the change point of a series from CSV");
    cusum_cmd->add_option("--input", cu_input, "CSV of observations, or -")
        ->required();
    cusum_cmd->add_option("--gamma", cu_gamma, "weight exponent in [0, 1)")
        ->required();
    cusum_cmd->add_option("--profile-out", cu_profile_out,
                          "optional path for the full profile CSV");

    // check-conditions
    double cc_r = 0.0, cc_gamma = 0.0, cc_theta = 0.0;
    auto* check_cmd = app.add_subcommand(
        "check-conditions", "classify a (r, gamma, theta) rate triple");
    check_cmd->add_option("--r", cc_r, "moment order (> 1)")->required();
    check_cmd->add_option("--gamma", cc_gamma, "weight exponent")->required();
    check_cmd->add_option("--theta", cc_theta, "growth exponent")->required();

    // probe-inequality
    int pr_n = 0, pr_m = 1, pr_reps = 100000;
    double pr_sigma = 2.0, pr_x = 0.0, pr_a = 0.0, pr_level = 10.0;
    long long pr_seed = 1;
    auto* probe_cmd = app.add_subcommand(
        "probe-inequality", "Monte Carlo check of the maximal inequality");
    probe_cmd->add_option("--n", pr_n, "row length")->required();
    probe_cmd->add_option("--sigma", pr_sigma, "decay base")->required();
    probe_cmd->add_option("--x", pr_x, "deviation level")->required();
    probe_cmd->add_option("--a", pr_a, "coordinate level")->required();
    probe_cmd->add_option("--m", pr_m, "dependence order");
    probe_cmd->add_option("--reps", pr_reps, "replications (>= 10^4)");
    probe_cmd->add_option("--seed", pr_seed, "stream seed");
    probe_cmd->add_option("--level", pr_level, "truncation level");

    // simulate
    std::string si_config, si_out_dir = "sim-out", si_profile = "desk";
    int si_reps = 0, si_threads = 1;
    long long si_seed = -1;
    auto* sim_cmd = app.add_subcommand(
        "simulate", "run the replication grid and emit plot-ready data");
    sim_cmd->add_option("--config", si_config, "key-value config file");
    sim_cmd->add_option("--profile", si_profile, "desk or paper")
        ->check(CLI::IsMember({"desk", "paper"}));
    sim_cmd->add_option("--reps", si_reps, "override replication count");
    sim_cmd->add_option("--seed", si_seed, "override base seed");
    sim_cmd->add_option("--out-dir", si_out_dir, "output directory");
    sim_cmd->add_option("--threads", si_threads, "worker threads");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sigma_cmd->parsed()) {
            return run_sigma_matrix(sm_n, sm_sigma, sm_out);
        }
        if (cusum_cmd->parsed()) {
            return run_cusum(cu_input, cu_gamma, cu_profile_out);
        }
        if (check_cmd->parsed()) {
            return run_check_conditions(cc_r, cc_gamma, cc_theta);
        }
        if (probe_cmd->parsed()) {
            return run_probe(pr_n, pr_sigma, pr_x, pr_a, pr_m, pr_reps,
                             static_cast<std::uint64_t>(pr_seed), pr_level);
        }
        if (sim_cmd->parsed()) {
            return run_simulate(si_config, si_profile, si_reps, si_seed,
                                si_out_dir, si_threads);
        }
    } catch (const ConfigError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }
    return 0;
}
