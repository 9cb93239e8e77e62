#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mavnorm/bounds.hpp"
#include "mavnorm/counter_circuit.hpp"
#include "mavnorm/errors.hpp"
#include "mavnorm/numeric.hpp"
#include "mavnorm/random_states.hpp"
#include "mavnorm/site_distribution.hpp"
#include "mavnorm/state_spec.hpp"
#include "mavnorm/statevector.hpp"
#include "mavnorm/sweep.hpp"
#include "mavnorm/tails.hpp"

namespace {

using namespace mavnorm;

// "re" or "re,im"
std::complex<double> parse_complex(const std::string& text, const std::string& field) {
    const auto parse_part = [&](const std::string& part) {
        try {
            std::size_t used = 0;
            const double v = std::stod(part, &used);
            if (used != part.size()) throw std::invalid_argument(part);
            return v;
        } catch (const std::exception&) {
            throw ConfigError(field + ": '" + part + "' is not a number");
        }
    };
    const auto comma = text.find(',');
    if (comma == std::string::npos) {
        return {parse_part(text), 0.0};
    }
    return {parse_part(text.substr(0, comma)), parse_part(text.substr(comma + 1))};
}

// "1,0,2" or, for qubit chains, the compact "1011".
BasisString parse_basis_string(const std::string& text) {
    BasisString s;
    if (text.find(',') != std::string::npos) {
        std::size_t pos = 0;
        while (pos <= text.size()) {
            const auto next = text.find(',', pos);
            const std::string part =
                text.substr(pos, next == std::string::npos ? next : next - pos);
            try {
                std::size_t used = 0;
                const unsigned long v = std::stoul(part, &used);
                if (used != part.size()) throw std::invalid_argument(part);
                s.push_back(static_cast<std::uint32_t>(v));
            } catch (const std::exception&) {
                throw ConfigError("string: '" + part + "' is not an outcome index");
            }
            if (next == std::string::npos) break;
            pos = next + 1;
        }
    } else {
        for (char c : text) {
            if (c < '0' || c > '9') {
                throw ConfigError(std::string("string: unexpected character '") + c + "'");
            }
            s.push_back(static_cast<std::uint32_t>(c - '0'));
        }
    }
    if (s.empty()) throw ConfigError("string: must be non-empty");
    return s;
}

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

int run_simulate(const std::string& alpha_text, const std::string& beta_text, int n,
                 const std::string& out_path) {
    if (n > kMaxSimulateQubits) {
        throw TooLarge("simulate caps N at " + std::to_string(kMaxSimulateQubits));
    }
    const std::complex<double> alpha = parse_complex(alpha_text, "alpha");
    const std::complex<double> beta = parse_complex(beta_text, "beta");
    const SiteDistribution qubit = make_qubit(alpha, beta);
    const CounterCircuit circuit = build_counter_circuit(n);
    const StateVector psi = run_counter(circuit, qubit);

    if (out_path.empty()) {
        write_statevector(std::cout, psi);
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw IoError("cannot open '" + out_path + "' for writing");
        write_statevector(out, psi);
        if (!out) throw IoError("write failed for '" + out_path + "'");
    }

    std::cout << "n\tsimulated\tclosed_form\tabs_diff\n";
    double worst = 0.0;
    for (int c = 0; c <= n; ++c) {
        const double sim = psi.counter_slice_norm(static_cast<std::uint64_t>(c));
        const double closed = closed_form_counter_amplitude(alpha, beta, n, c);
        const double diff = std::abs(sim - closed);
        worst = std::max(worst, diff);
        std::cout << c << '\t' << fmt17(sim) << '\t' << fmt17(closed) << '\t' << fmt17(diff)
                  << '\n';
    }
    std::cout << "max_abs_diff\t" << fmt17(worst) << '\n';
    return 0;
}

int run_classify(const std::string& state_text, const std::string& string_text,
                 double epsilon) {
    const StateSpec spec = parse_state_spec(state_text);
    const BasisString s = parse_basis_string(string_text);
    const ProductState state = materialize_state(spec, s.size());
    const double bits = log_probability(state, s);
    const double h = entropy_rate(state);
    const WorldClass verdict = classify_world(state, s, epsilon);
    const double rate = bits / static_cast<double>(state.site_count());
    std::cout << "rate      = " << fmt17(rate) << '\n';
    std::cout << "H         = " << fmt17(h) << '\n';
    std::cout << "deviation = " << fmt17(std::abs(rate - h)) << '\n';
    std::cout << "verdict   = " << (verdict == WorldClass::Maverick ? "Maverick" : "Typical")
              << '\n';
    return 0;
}

int run_bounds_check(std::uint64_t seed, std::int64_t trials, int max_qubits,
                     bool inject_negative) {
    if (inject_negative) {
        // Deliberately corrupted observable; the library must refuse it.
        const std::vector<std::complex<double>> psi = {{1.0, 0.0}, {0.0, 0.0}};
        markov_check(psi, DiagonalObservable({1.0, -1.0}), 1.0);
        return 0; // unreachable
    }
    const TrialSummary markov = run_markov_trials(seed, trials, max_qubits);
    const TrialSummary chebyshev = run_chebyshev_trials(seed + 0x9e3779b97f4a7c15ULL,
                                                        trials, max_qubits);
    const auto report = [](const char* name, const TrialSummary& s) {
        std::cout << name << "\ttrials=" << s.trials << "\tfailures=" << s.failures
                  << "\tworst_slack=" << fmt17(s.worst_slack) << '\t'
                  << (s.all_hold ? "ok" : "FAIL") << '\n';
    };
    report("markov", markov);
    report("chebyshev", chebyshev);
    return markov.all_hold && chebyshev.all_hold ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Maverick-branch norm toolkit: counting-circuit simulation, exact tail "
                 "norms, and concentration-bound checks for product states"};
    app.require_subcommand(1);

    // simulate
    auto* simulate = app.add_subcommand(
        "simulate", "Run the counting circuit on N identical qubits and compare counter "
                    "amplitudes with the closed form");
    std::string sim_alpha, sim_beta, sim_out;
    int sim_n = 3;
    simulate->add_option("--alpha", sim_alpha, "amplitude of |1> as re or re,im")
        ->required();
    simulate->add_option("--beta", sim_beta, "amplitude of |0> as re or re,im")->required();
    simulate->add_option("--n", sim_n, "number of data qubits (<= 20)")->required();
    simulate->add_option("--out", sim_out, "statevector dump path (default: stdout)");

    // classify
    auto* classify = app.add_subcommand(
        "classify", "Classify one basis string as Typical or Maverick (entropy-rate rule)");
    std::string cls_state, cls_string;
    double cls_epsilon = 0.0;
    classify->add_option("--state", cls_state, "state spec (iid:p=, qubits:, file:, random:)")
        ->required();
    classify->add_option("--string", cls_string, "outcomes, e.g. 1011 or 1,0,1,1")
        ->required();
    classify->add_option("--epsilon", cls_epsilon, "typicality threshold (> 0)")->required();

    // tail
    auto* tail = app.add_subcommand(
        "tail", "Maverick norm^2 of one (state, N, epsilon) point, with applicable bounds");
    std::string tail_state, tail_mode = "entropy-rate", tail_out, tail_format = "csv";
    std::int64_t tail_n = 0;
    double tail_epsilon = 0.0, tail_bin = 1e-3;
    std::uint64_t tail_seed = 0;
    bool tail_has_seed = false;
    tail->add_option("--state", tail_state, "state spec")->required();
    tail->add_option("--n", tail_n, "number of sites")->required();
    tail->add_option("--epsilon", tail_epsilon, "deviation threshold (> 0)")->required();
    tail->add_option("--mode", tail_mode, "frequency | entropy-rate");
    tail->add_option("--bin-width", tail_bin, "DP bin width (default 1e-3)");
    tail->add_option("--out", tail_out, "output path (default: stdout)");
    tail->add_option("--format", tail_format, "csv | json");
    tail->add_option("--seed", tail_seed, "seed for random: state specs")
        ->each([&](const std::string&) { tail_has_seed = true; });

    // bounds-check
    auto* bounds = app.add_subcommand(
        "bounds-check", "Randomized Markov/Chebyshev property suites (exit 1 on any failure)");
    std::uint64_t bc_seed = 1;
    std::int64_t bc_trials = 10000;
    int bc_max_qubits = 8;
    bool bc_inject = false;
    bounds->add_option("--seed", bc_seed, "base seed (trial t uses seed + t)");
    bounds->add_option("--trials", bc_trials, "trials per suite");
    bounds->add_option("--max-qubits", bc_max_qubits, "qubit count upper bound per trial");
    bounds->add_flag("--inject-negative", bc_inject,
                     "hand the checker a negative eigenvalue (must be rejected, exit 2)");

    // sweep
    auto* sweep = app.add_subcommand(
        "sweep", "Run an (N, epsilon) grid from a config file and emit CSV/JSON rows");
    std::string sw_config, sw_out, sw_format;
    std::uint64_t sw_seed = 0;
    int sw_workers = 0;
    bool sw_has_seed = false;
    sweep->add_option("--config", sw_config, "flat key = value config file")->required();
    sweep->add_option("--seed", sw_seed, "seed for random: state specs lacking one")
        ->each([&](const std::string&) { sw_has_seed = true; });
    sweep->add_option("--workers", sw_workers, "worker thread count (overrides config)");
    sweep->add_option("--out", sw_out, "output path (overrides config)");
    sweep->add_option("--format", sw_format, "csv | json (overrides config)");

    int exit_code = 0;

    simulate->callback([&] { exit_code = run_simulate(sim_alpha, sim_beta, sim_n, sim_out); });
    classify->callback([&] { exit_code = run_classify(cls_state, cls_string, cls_epsilon); });
    bounds->callback(
        [&] { exit_code = run_bounds_check(bc_seed, bc_trials, bc_max_qubits, bc_inject); });

    tail->callback([&] {
        SweepConfig config;
        if (tail_mode == "frequency") {
            config.mode = TailMode::Frequency;
        } else if (tail_mode == "entropy-rate") {
            config.mode = TailMode::EntropyRate;
        } else {
            throw ConfigError("mode: expected frequency or entropy-rate, got '" + tail_mode +
                              "'");
        }
        config.n_grid = {tail_n};
        config.epsilon_grid = {tail_epsilon};
        config.state = parse_state_spec(tail_state);
        if (tail_has_seed && config.state.kind == StateSpec::Kind::Random &&
            !config.state.has_seed) {
            config.state.seed = tail_seed;
            config.state.has_seed = true;
        }
        config.bin_width = tail_bin;
        config.out_path = tail_out;
        if (tail_format == "csv") {
            config.format = OutputFormat::Csv;
        } else if (tail_format == "json") {
            config.format = OutputFormat::Json;
        } else {
            throw ConfigError("format: expected csv or json, got '" + tail_format + "'");
        }
        write_sweep_output(config, run_sweep(config));
    });

    sweep->callback([&] {
        SweepConfig config = load_sweep_config(sw_config);
        if (sw_has_seed && config.state.kind == StateSpec::Kind::Random &&
            !config.state.has_seed) {
            config.state.seed = sw_seed;
            config.state.has_seed = true;
        }
        if (sw_workers > 0) config.workers = sw_workers;
        if (!sw_out.empty()) config.out_path = sw_out;
        if (!sw_format.empty()) {
            if (sw_format == "csv") {
                config.format = OutputFormat::Csv;
            } else if (sw_format == "json") {
                config.format = OutputFormat::Json;
            } else {
                throw ConfigError("format: expected csv or json, got '" + sw_format + "'");
            }
        }
        write_sweep_output(config, run_sweep(config));
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2; // help/version exit clean; usage errors are input errors
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        // Everything a user can trigger from the command line is invalid
        // input; anything else is a broken library invariant.
        const bool invalid_input =
            dynamic_cast<const NotNormalized*>(&e) || dynamic_cast<const ShapeMismatch*>(&e) ||
            dynamic_cast<const DimensionMismatch*>(&e) || dynamic_cast<const TooLarge*>(&e) ||
            dynamic_cast<const OutOfRange*>(&e) || dynamic_cast<const ModeUnsupported*>(&e) ||
            dynamic_cast<const NotAWorld*>(&e) ||
            dynamic_cast<const NegativeEigenvalue*>(&e) ||
            dynamic_cast<const NonpositiveThreshold*>(&e) ||
            dynamic_cast<const ConfigError*>(&e);
        return invalid_input ? 2 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return exit_code;
}
