#include "cusumlab/text_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace cusumlab {

namespace {

double round6(double v) {
    return std::strtod(format_g6(v).c_str(), nullptr);
}

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) {
        return "";
    }
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, sep)) {
        out.push_back(trim(item));
    }
    return out;
}

double parse_double(const std::string& s, const std::string& key) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0') {
        throw ConfigError("config: bad number '" + s + "' for " + key);
    }
    return v;
}

long long parse_int(const std::string& s, const std::string& key) {
    char* end = nullptr;
    const long long v = std::strtoll(s.c_str(), &end, 10);
    if (end == s.c_str() || *end != '\0') {
        throw ConfigError("config: bad integer '" + s + "' for " + key);
    }
    return v;
}

bool parse_bool(const std::string& s, const std::string& key) {
    if (s == "true" || s == "1" || s == "yes" || s == "on") {
        return true;
    }
    if (s == "false" || s == "0" || s == "no" || s == "off") {
        return false;
    }
    throw ConfigError("config: bad boolean '" + s + "' for " + key);
}

std::vector<double> parse_double_list(const std::string& s,
                                      const std::string& key) {
    std::vector<double> out;
    for (const auto& item : split(s, ',')) {
        if (!item.empty()) {
            out.push_back(parse_double(item, key));
        }
    }
    if (out.empty()) {
        throw ConfigError("config: empty list for " + key);
    }
    return out;
}

void assign_key(ExperimentConfig& cfg, const std::string& key,
                const std::string& value) {
    if (key == "sigma") {
        cfg.sigma = parse_double(value, key);
    } else if (key == "mu") {
        cfg.mu = parse_double(value, key);
    } else if (key == "tau_star") {
        cfg.tau_star = parse_double(value, key);
    } else if (key == "gamma_list") {
        cfg.gamma_list = parse_double_list(value, key);
    } else if (key == "theta_map") {
        cfg.theta_map.clear();
        for (const auto& entry : split(value, ';')) {
            if (entry.empty()) {
                continue;
            }
            const auto colon = entry.find(':');
            if (colon == std::string::npos) {
                throw ConfigError("config: theta_map entry '" + entry +
                                  "' lacks 'gamma: thetas'");
            }
            const double gamma =
                parse_double(trim(entry.substr(0, colon)), key);
            cfg.theta_map.emplace_back(
                gamma, parse_double_list(entry.substr(colon + 1), key));
        }
        if (cfg.theta_map.empty()) {
            throw ConfigError("config: theta_map is empty");
        }
    } else if (key == "n_grid") {
        cfg.n_grid.clear();
        for (const auto& item : split(value, ',')) {
            if (!item.empty()) {
                cfg.n_grid.push_back(static_cast<int>(parse_int(item, key)));
            }
        }
    } else if (key == "reps") {
        cfg.reps = static_cast<int>(parse_int(value, key));
    } else if (key == "base_seed") {
        cfg.base_seed = static_cast<std::uint64_t>(parse_int(value, key));
    } else if (key == "epsilon_list") {
        cfg.epsilon_list = parse_double_list(value, key);
    } else if (key == "r_diag") {
        cfg.r_diag = parse_double(value, key);
    } else if (key == "enforce_rates") {
        cfg.enforce_rates = parse_bool(value, key);
    } else {
        throw ConfigError("config: unknown key '" + key + "'");
    }
}

} // namespace

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string format_g6(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

void write_records_csv(std::ostream& os,
                       std::span<const ReplicationRecord> records) {
    os << "gamma,theta,n,rep,tau_hat,k_hat,abs_err,bound_lhs,bound_rhs,"
          "bound_ok\n";
    for (const auto& r : records) {
        os << format_g17(r.gamma) << ',' << format_g17(r.theta) << ',' << r.n
           << ',' << r.rep << ',' << format_g17(r.tau_hat) << ',' << r.k_hat
           << ',' << format_g17(r.abs_err) << ',' << format_g17(r.bound_lhs)
           << ',' << format_g17(r.bound_rhs) << ',' << (r.bound_ok ? 1 : 0)
           << '\n';
    }
}

void write_boxplots_csv(std::ostream& os, std::span<const CellStats> cells) {
    os << "gamma,theta,n,min,q1,median,q3,max,mean,count\n";
    for (const auto& c : cells) {
        os << format_g17(c.gamma) << ',' << format_g17(c.theta) << ',' << c.n
           << ',' << format_g17(c.stats.min) << ',' << format_g17(c.stats.q1)
           << ',' << format_g17(c.stats.median) << ','
           << format_g17(c.stats.q3) << ',' << format_g17(c.stats.max) << ','
           << format_g17(c.stats.mean) << ',' << c.stats.count << '\n';
    }
}

std::string diagnostics_json(const ConsistencyDiagnostics& diagnostics) {
    nlohmann::ordered_json root;
    root["r_diag"] = round6(diagnostics.r_diag);
    nlohmann::ordered_json eps_array = nlohmann::ordered_json::array();
    for (double eps : diagnostics.epsilon_list) {
        eps_array.push_back(round6(eps));
    }
    root["epsilon_list"] = eps_array;

    nlohmann::ordered_json cells;
    for (const auto& cell : diagnostics.cells) {
        nlohmann::ordered_json node;
        node["n"] = cell.n_values;
        nlohmann::ordered_json tail, plus, series;
        for (std::size_t ei = 0; ei < diagnostics.epsilon_list.size(); ++ei) {
            const std::string eps_key = format_g6(diagnostics.epsilon_list[ei]);
            nlohmann::ordered_json tail_row = nlohmann::ordered_json::array();
            nlohmann::ordered_json plus_row = nlohmann::ordered_json::array();
            for (std::size_t ni = 0; ni < cell.n_values.size(); ++ni) {
                tail_row.push_back(round6(cell.tail_prob[ei][ni]));
                plus_row.push_back(round6(cell.plus_moment[ei][ni]));
            }
            tail[eps_key] = tail_row;
            plus[eps_key] = plus_row;
            series[eps_key] = round6(cell.partial_tail_series[ei]);
        }
        node["tail_prob"] = tail;
        node["plus_moment"] = plus;
        nlohmann::ordered_json r_mean = nlohmann::ordered_json::array();
        for (double v : cell.r_mean_error) {
            r_mean.push_back(round6(v));
        }
        node["r_mean_error"] = r_mean;
        node["partial_tail_series"] = series;
        cells[format_g6(cell.gamma)][format_g6(cell.theta)] = node;
    }
    root["cells"] = cells;
    return root.dump(2) + "\n";
}

void apply_config_text(ExperimentConfig& cfg, std::istream& is) {
    std::string line;
    int line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.resize(hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config: line " + std::to_string(line_no) +
                              " is not 'key = value'");
        }
        assign_key(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
}

void apply_config_file(ExperimentConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("config: cannot open '" + path + "'");
    }
    apply_config_text(cfg, in);
}

std::vector<double> read_numbers(std::istream& is) {
    std::vector<double> out;
    std::string token;
    while (is >> token) {
        for (const auto& piece : split(token, ',')) {
            if (piece.empty()) {
                continue;
            }
            char* end = nullptr;
            const double v = std::strtod(piece.c_str(), &end);
            if (end == piece.c_str() || *end != '\0') {
                throw InvalidInputError("read_numbers: bad token '" + piece +
                                        "'");
            }
            out.push_back(v);
        }
    }
    return out;
}

} // namespace cusumlab
