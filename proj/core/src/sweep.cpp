#include "mavnorm/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "mavnorm/bounds.hpp"
#include "mavnorm/errors.hpp"
#include "mavnorm/numeric.hpp"

namespace mavnorm {

namespace {

std::string trim(const std::string& text) {
    const auto begin = text.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = text.find_last_not_of(" \t\r");
    return text.substr(begin, end - begin + 1);
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> items;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (!item.empty()) items.push_back(item);
    }
    return items;
}

double parse_double(const std::string& text, const std::string& field) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw ConfigError(field + ": '" + text + "' is not a number");
    }
}

std::int64_t parse_int(const std::string& text, const std::string& field) {
    try {
        std::size_t used = 0;
        const long long v = std::stoll(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw ConfigError(field + ": '" + text + "' is not an integer");
    }
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

SweepRow compute_point(const SweepConfig& config, std::int64_t n, double epsilon) {
    SweepRow row;
    row.n = n;
    row.epsilon = epsilon;

    if (config.mode == TailMode::Frequency) {
        row.hoeffding = hoeffding_bound(n, epsilon);
        if (config.state.kind == StateSpec::Kind::IidQubit) {
            row.exact_or_lo = binomial_maverick_norm(config.state.p_one, n, epsilon);
        } else {
            const ProductState state =
                materialize_state(config.state, static_cast<std::size_t>(n));
            row.exact_or_lo =
                bruteforce_maverick_norm(state, {TailMode::Frequency, epsilon});
        }
        row.hi = row.exact_or_lo;
        row.method = "exact";
        return row;
    }

    const ProductState state = materialize_state(config.state, static_cast<std::size_t>(n));
    const ProductChebyshevBound cheb = product_chebyshev_bound(state, epsilon);
    row.chebyshev_sum = cheb.sum_variance_bound;
    row.chebyshev_uniform = cheb.uniform_bound;
    if (state.total_dimension_capped(kEnumerationCap) <= kEnumerationCap) {
        row.exact_or_lo = bruteforce_maverick_norm(state, {TailMode::EntropyRate, epsilon});
        row.hi = row.exact_or_lo;
        row.method = "exact";
    } else {
        const NormBracket bracket = dp_entropy_tail_bracket(state, epsilon, config.bin_width);
        row.exact_or_lo = bracket.lo;
        // The analytic bounds are certified upper bounds too; intersecting
        // keeps the bracket valid and every bound column >= hi.
        row.hi = std::min(bracket.hi, clamp01(cheb.sum_variance_bound));
        row.hi = std::max(row.hi, row.exact_or_lo);
        row.method = "bracket";
    }
    return row;
}

} // namespace

SweepConfig load_sweep_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open config '" + path + "'");
    }
    SweepConfig config;
    bool have_mode = false, have_n = false, have_eps = false, have_state = false;
    bool have_seed = false;
    std::uint64_t seed = 0;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(line_no) +
                              ": expected key = value");
        }
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key == "mode") {
            if (value == "frequency") {
                config.mode = TailMode::Frequency;
            } else if (value == "entropy-rate") {
                config.mode = TailMode::EntropyRate;
            } else {
                throw ConfigError("mode: expected frequency or entropy-rate, got '" +
                                  value + "'");
            }
            have_mode = true;
        } else if (key == "n") {
            for (const std::string& item : split_list(value)) {
                config.n_grid.push_back(parse_int(item, "n"));
            }
            have_n = true;
        } else if (key == "epsilon") {
            for (const std::string& item : split_list(value)) {
                config.epsilon_grid.push_back(parse_double(item, "epsilon"));
            }
            have_eps = true;
        } else if (key == "state") {
            config.state = parse_state_spec(value);
            have_state = true;
        } else if (key == "bin_width") {
            config.bin_width = parse_double(value, "bin_width");
        } else if (key == "workers") {
            config.workers = static_cast<int>(parse_int(value, "workers"));
        } else if (key == "seed") {
            seed = static_cast<std::uint64_t>(parse_int(value, "seed"));
            have_seed = true;
        } else if (key == "out") {
            config.out_path = value;
        } else if (key == "format") {
            if (value == "csv") {
                config.format = OutputFormat::Csv;
            } else if (value == "json") {
                config.format = OutputFormat::Json;
            } else {
                throw ConfigError("format: expected csv or json, got '" + value + "'");
            }
        } else {
            throw ConfigError("unknown config key '" + key + "'");
        }
    }
    if (!have_mode) throw ConfigError("mode: missing");
    if (!have_n) throw ConfigError("n: missing");
    if (!have_eps) throw ConfigError("epsilon: missing");
    if (!have_state) throw ConfigError("state: missing");
    if (have_seed && config.state.kind == StateSpec::Kind::Random &&
        !config.state.has_seed) {
        config.state.seed = seed;
        config.state.has_seed = true;
    }
    return config;
}

void validate_sweep_config(const SweepConfig& config) {
    if (config.n_grid.empty()) throw ConfigError("n: grid must be non-empty");
    if (config.epsilon_grid.empty()) throw ConfigError("epsilon: grid must be non-empty");
    for (std::int64_t n : config.n_grid) {
        if (n < 1) throw ConfigError("n: grid entries must be >= 1");
        if (static_cast<std::uint64_t>(n) > spec_max_sites(config.state)) {
            throw ConfigError("n: " + std::to_string(n) +
                              " exceeds the sites available in the state spec");
        }
    }
    for (double e : config.epsilon_grid) {
        if (!(e > 0.0)) throw ConfigError("epsilon: grid entries must be > 0");
    }
    if (!(config.bin_width > 0.0)) throw ConfigError("bin_width: must be > 0");
    if (config.workers < 1) throw ConfigError("workers: must be >= 1");
    if (config.state.kind == StateSpec::Kind::Random && !config.state.has_seed) {
        throw ConfigError("state(random): a seed is required (inline or seed key)");
    }
    if (config.mode == TailMode::Frequency &&
        config.state.kind != StateSpec::Kind::IidQubit) {
        // Non-i.i.d. frequency points have no closed form; they must be
        // enumerable, and they must be qubit chains.
        const bool qubits_only =
            config.state.kind == StateSpec::Kind::QubitList ||
            (config.state.kind == StateSpec::Kind::Random && config.state.dim_hi == 2) ||
            (config.state.kind == StateSpec::Kind::Explicit &&
             std::all_of(config.state.sites.begin(), config.state.sites.end(),
                         [](const SiteDistribution& s) { return s.is_qubit(); }));
        if (!qubits_only) {
            throw ConfigError("mode: frequency requires qubit sites");
        }
        for (std::int64_t n : config.n_grid) {
            if (n > kMaxCounterQubits) {
                throw ConfigError(
                    "n: frequency mode with non-iid states is enumeration-bound (n <= 25)");
            }
        }
    }
}

std::vector<SweepRow> run_sweep(const SweepConfig& config) {
    validate_sweep_config(config);

    std::vector<std::int64_t> ns = config.n_grid;
    std::vector<double> epsilons = config.epsilon_grid;
    std::sort(ns.begin(), ns.end());
    std::sort(epsilons.begin(), epsilons.end());

    struct Point {
        std::int64_t n;
        double epsilon;
    };
    std::vector<Point> points;
    points.reserve(ns.size() * epsilons.size());
    for (std::int64_t n : ns) {
        for (double e : epsilons) points.push_back({n, e});
    }

    std::vector<SweepRow> rows(points.size());
    std::atomic<std::size_t> cursor{0};
    std::mutex error_mutex;
    std::exception_ptr first_error;

    const auto worker = [&] {
        while (true) {
            const std::size_t i = cursor.fetch_add(1);
            if (i >= points.size()) return;
            try {
                rows[i] = compute_point(config, points[i].n, points[i].epsilon);
            } catch (...) {
                const std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        }
    };

    const std::size_t thread_count = std::min<std::size_t>(
        static_cast<std::size_t>(config.workers), std::max<std::size_t>(points.size(), 1));
    if (thread_count <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(thread_count);
        for (std::size_t t = 0; t < thread_count; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (first_error) std::rethrow_exception(first_error);
    return rows;
}

std::string format_rows_csv(const std::vector<SweepRow>& rows) {
    std::string out = "N,epsilon,exact_or_lo,hi,hoeffding,chebyshev_sum,chebyshev_uniform,method\n";
    for (const SweepRow& row : rows) {
        out += std::to_string(row.n);
        out += ',';
        out += format_double(row.epsilon);
        out += ',';
        out += format_double(row.exact_or_lo);
        out += ',';
        out += format_double(row.hi);
        out += ',';
        if (row.hoeffding) out += format_double(*row.hoeffding);
        out += ',';
        if (row.chebyshev_sum) out += format_double(*row.chebyshev_sum);
        out += ',';
        if (row.chebyshev_uniform) out += format_double(*row.chebyshev_uniform);
        out += ',';
        out += row.method;
        out += '\n';
    }
    return out;
}

std::string format_rows_json(const std::vector<SweepRow>& rows) {
    nlohmann::ordered_json doc = nlohmann::ordered_json::array();
    for (const SweepRow& row : rows) {
        nlohmann::ordered_json item;
        item["N"] = row.n;
        item["epsilon"] = row.epsilon;
        item["exact_or_lo"] = row.exact_or_lo;
        item["hi"] = row.hi;
        item["hoeffding"] = row.hoeffding ? nlohmann::ordered_json(*row.hoeffding)
                                          : nlohmann::ordered_json(nullptr);
        item["chebyshev_sum"] = row.chebyshev_sum ? nlohmann::ordered_json(*row.chebyshev_sum)
                                                  : nlohmann::ordered_json(nullptr);
        item["chebyshev_uniform"] = row.chebyshev_uniform
                                        ? nlohmann::ordered_json(*row.chebyshev_uniform)
                                        : nlohmann::ordered_json(nullptr);
        item["method"] = row.method;
        doc.push_back(std::move(item));
    }
    return doc.dump(2) + "\n";
}

void write_sweep_output(const SweepConfig& config, const std::vector<SweepRow>& rows) {
    const std::string text =
        config.format == OutputFormat::Csv ? format_rows_csv(rows) : format_rows_json(rows);
    if (config.out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(config.out_path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open '" + config.out_path + "' for writing");
    }
    out << text;
    if (!out) {
        throw IoError("write failed for '" + config.out_path + "'");
    }
}

} // namespace mavnorm
