#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "mavnorm/bounds.hpp"
#include "mavnorm/errors.hpp"
#include "mavnorm/sweep.hpp"
#include "mavnorm/tails.hpp"

using namespace mavnorm;

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name, const std::string& contents)
        : path("tmp_sweep_" + name) {
        std::ofstream out(path, std::ios::binary);
        out << contents;
    }
    ~TempFile() { std::remove(path.c_str()); }
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

SweepConfig frequency_config() {
    SweepConfig config;
    config.mode = TailMode::Frequency;
    config.n_grid = {100, 1000};
    config.epsilon_grid = {0.05, 0.1};
    config.state = parse_state_spec("iid:p=0.3");
    return config;
}

} // namespace

TEST_CASE("load_sweep_config parses the flat key=value format") {
    const TempFile f("ok.cfg",
                     "# convergence experiment\n"
                     "mode = frequency\n"
                     "n = 100, 1000\n"
                     "\n"
                     "epsilon = 0.05,0.1\n"
                     "state = iid:p=0.3\n"
                     "bin_width = 1e-4\n"
                     "workers = 2\n"
                     "out = rows.csv\n"
                     "format = json\n");
    const SweepConfig config = load_sweep_config(f.path);
    CHECK(config.mode == TailMode::Frequency);
    CHECK(config.n_grid == std::vector<std::int64_t>{100, 1000});
    CHECK(config.epsilon_grid == std::vector<double>{0.05, 0.1});
    CHECK(config.state.kind == StateSpec::Kind::IidQubit);
    CHECK(config.bin_width == 1e-4);
    CHECK(config.workers == 2);
    CHECK(config.out_path == "rows.csv");
    CHECK(config.format == OutputFormat::Json);
    CHECK_NOTHROW(validate_sweep_config(config));
}

TEST_CASE("config rejects unknown keys, bad values, missing requirements") {
    const TempFile unknown("unknown.cfg",
                           "mode=frequency\nn=10\nepsilon=0.1\nstate=iid:p=0.5\nfoo=1\n");
    CHECK_THROWS_AS(load_sweep_config(unknown.path), ConfigError);

    const TempFile missing("missing.cfg", "mode=frequency\nn=10\nepsilon=0.1\n");
    CHECK_THROWS_AS(load_sweep_config(missing.path), ConfigError);

    const TempFile badmode("badmode.cfg",
                           "mode=speed\nn=10\nepsilon=0.1\nstate=iid:p=0.5\n");
    CHECK_THROWS_AS(load_sweep_config(badmode.path), ConfigError);

    const TempFile noeq("noeq.cfg", "mode frequency\n");
    CHECK_THROWS_AS(load_sweep_config(noeq.path), ConfigError);

    CHECK_THROWS_AS(load_sweep_config("no_such_config_file.cfg"), IoError);
}

TEST_CASE("a --seed style override reaches an unseeded random spec") {
    const TempFile f("seedless.cfg",
                     "mode=entropy-rate\nn=4\nepsilon=0.1\n"
                     "state=random:count=6,dmin=2,dmax=3\nseed=99\n");
    const SweepConfig config = load_sweep_config(f.path);
    CHECK(config.state.has_seed);
    CHECK(config.state.seed == 99);

    // An inline seed wins over the config-level one.
    const TempFile g("seeded.cfg",
                     "mode=entropy-rate\nn=4\nepsilon=0.1\n"
                     "state=random:seed=5,count=6,dmin=2,dmax=3\nseed=99\n");
    CHECK(load_sweep_config(g.path).state.seed == 5);
}

TEST_CASE("validate_sweep_config field checks") {
    SweepConfig config = frequency_config();
    SUBCASE("grids must be non-empty and positive") {
        config.n_grid.clear();
        CHECK_THROWS_AS(validate_sweep_config(config), ConfigError);
        config = frequency_config();
        config.n_grid = {0};
        CHECK_THROWS_AS(validate_sweep_config(config), ConfigError);
        config = frequency_config();
        config.epsilon_grid = {0.0};
        CHECK_THROWS_AS(validate_sweep_config(config), ConfigError);
    }
    SUBCASE("bin width and workers") {
        config.bin_width = 0.0;
        CHECK_THROWS_AS(validate_sweep_config(config), ConfigError);
        config = frequency_config();
        config.workers = 0;
        CHECK_THROWS_AS(validate_sweep_config(config), ConfigError);
    }
    SUBCASE("N beyond the state family size") {
        config.state = parse_state_spec("qubits:0.2,0.4");
        config.n_grid = {3};
        CHECK_THROWS_AS(validate_sweep_config(config), ConfigError);
    }
    SUBCASE("random specs need a seed by validation time") {
        config.mode = TailMode::EntropyRate;
        config.state = parse_state_spec("random:count=6,dmin=2,dmax=3");
        config.n_grid = {4};
        CHECK_THROWS_AS(validate_sweep_config(config), ConfigError);
    }
    SUBCASE("frequency mode needs qubit sites") {
        config.state = parse_state_spec("random:seed=3,count=6,dmin=2,dmax=3");
        config.n_grid = {4};
        CHECK_THROWS_AS(validate_sweep_config(config), ConfigError);
        config.state = parse_state_spec("random:seed=3,count=6,dmin=2,dmax=2");
        CHECK_NOTHROW(validate_sweep_config(config));
    }
    SUBCASE("frequency mode caps non-iid chains at the enumeration bound") {
        config.state = parse_state_spec("qubits:" + [] {
            std::string probs = "0.5";
            for (int i = 1; i < 26; ++i) probs += ",0.5";
            return probs;
        }());
        config.n_grid = {26};
        CHECK_THROWS_AS(validate_sweep_config(config), ConfigError);
        config.n_grid = {25};
        CHECK_NOTHROW(validate_sweep_config(config));
        // The iid closed form has no such cap.
        config.state = parse_state_spec("iid:p=0.5");
        config.n_grid = {1000000};
        CHECK_NOTHROW(validate_sweep_config(config));
    }
}

TEST_CASE("frequency sweeps agree with the closed-form chain values") {
    SweepConfig config = frequency_config();
    const auto rows = run_sweep(config);
    REQUIRE(rows.size() == 4);
    // Rows sorted by (N, epsilon).
    CHECK(rows[0].n == 100);
    CHECK(rows[0].epsilon == 0.05);
    CHECK(rows[1].epsilon == 0.1);
    CHECK(rows[2].n == 1000);
    for (const auto& row : rows) {
        CHECK(row.method == "exact");
        CHECK(row.exact_or_lo == binomial_maverick_norm(0.3, row.n, row.epsilon));
        CHECK(row.hi == row.exact_or_lo);
        REQUIRE(row.hoeffding.has_value());
        CHECK(*row.hoeffding == hoeffding_bound(row.n, row.epsilon));
        CHECK(*row.hoeffding >= row.exact_or_lo);
        CHECK_FALSE(row.chebyshev_sum.has_value());
        CHECK_FALSE(row.chebyshev_uniform.has_value());
    }
    // Fixed epsilon, growing N: values fall monotonically on this grid.
    CHECK(rows[2].exact_or_lo <= rows[0].exact_or_lo);
    CHECK(rows[3].exact_or_lo <= rows[1].exact_or_lo);
}

TEST_CASE("thresholds of one or more empty every frequency row") {
    SweepConfig config = frequency_config();
    config.n_grid = {4};
    config.epsilon_grid = {0.6, 1.0};
    config.state = parse_state_spec("iid:p=0.5");
    const auto rows = run_sweep(config);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].exact_or_lo == 0.0); // max deviation is 0.5 < 0.6
    CHECK(rows[1].exact_or_lo == 0.0);
}

TEST_CASE("entropy-rate sweeps pick enumeration or the bracket per point") {
    SweepConfig config;
    config.mode = TailMode::EntropyRate;
    config.state = parse_state_spec("iid:p=0.25");
    config.n_grid = {12, 30};
    config.epsilon_grid = {0.2};
    config.bin_width = 1e-4;
    const auto rows = run_sweep(config);
    REQUIRE(rows.size() == 2);

    const ProductState s12 = materialize_state(config.state, 12);
    CHECK(rows[0].method == "exact");
    CHECK(rows[0].exact_or_lo ==
          bruteforce_maverick_norm(s12, {TailMode::EntropyRate, 0.2}));
    CHECK(rows[0].hi == rows[0].exact_or_lo);
    CHECK_FALSE(rows[0].hoeffding.has_value()); // does not apply off the iid frequency chain
    REQUIRE(rows[0].chebyshev_sum.has_value());
    const auto cheb12 = product_chebyshev_bound(s12, 0.2);
    CHECK(*rows[0].chebyshev_sum == cheb12.sum_variance_bound);
    CHECK(*rows[0].chebyshev_uniform == cheb12.uniform_bound);

    CHECK(rows[1].method == "bracket"); // 2^30 basis strings: enumeration is off
    CHECK(rows[1].exact_or_lo <= rows[1].hi);
    REQUIRE(rows[1].chebyshev_sum.has_value());
    CHECK(rows[1].hi <= *rows[1].chebyshev_sum + 1e-15);
}

TEST_CASE("worker count never changes the rows") {
    SweepConfig config;
    config.mode = TailMode::EntropyRate;
    config.state = parse_state_spec("random:seed=77,count=10,dmin=2,dmax=3");
    config.n_grid = {2, 4, 6, 8, 10};
    config.epsilon_grid = {0.05, 0.15, 0.4};
    const auto sequential = run_sweep(config);
    config.workers = 4;
    const auto threaded = run_sweep(config);
    CHECK(format_rows_csv(sequential) == format_rows_csv(threaded));
    // And the same config twice is bit-identical.
    CHECK(format_rows_csv(run_sweep(config)) == format_rows_csv(threaded));
}

TEST_CASE("CSV serialization") {
    SweepRow row;
    row.n = 100;
    row.epsilon = 0.05;
    row.exact_or_lo = 0.125;
    row.hi = 0.125;
    row.hoeffding = 0.27067056647322538379;
    row.method = "exact";
    SweepRow bare;
    bare.n = 7;
    bare.epsilon = 1.0 / 3.0;
    bare.exact_or_lo = 0.0;
    bare.hi = 1e-300; // full 17-digit round-trip survives extreme exponents
    bare.method = "bracket";

    const std::string csv = format_rows_csv({row, bare});
    std::istringstream lines(csv);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "N,epsilon,exact_or_lo,hi,hoeffding,chebyshev_sum,chebyshev_uniform,method");
    std::getline(lines, line);
    CHECK(line == "100,0.050000000000000003,0.125,0.125,0.2706705664732254,,,exact");
    std::getline(lines, line);
    CHECK(line == "7,0.33333333333333331,0,1e-300,,,,bracket");
    CHECK_FALSE(std::getline(lines, line)); // exactly two data rows

    // 17 significant digits round-trip doubles exactly.
    CHECK(std::strtod("0.050000000000000003", nullptr) == 0.05);
    CHECK(std::strtod("0.33333333333333331", nullptr) == 1.0 / 3.0);
}

TEST_CASE("JSON serialization mirrors the CSV schema") {
    SweepConfig config;
    config.mode = TailMode::EntropyRate;
    config.state = parse_state_spec("iid:p=0.25");
    config.n_grid = {6};
    config.epsilon_grid = {0.3};
    const auto rows = run_sweep(config);
    const std::string text = format_rows_json(rows);
    const auto parsed = nlohmann::json::parse(text);
    REQUIRE(parsed.is_array());
    REQUIRE(parsed.size() == 1);
    const auto& obj = parsed[0];
    CHECK(obj.at("N").get<std::int64_t>() == 6);
    CHECK(obj.at("epsilon").get<double>() == 0.3);
    CHECK(obj.at("exact_or_lo").get<double>() == rows[0].exact_or_lo);
    CHECK(obj.at("hi").get<double>() == rows[0].hi);
    CHECK(obj.at("hoeffding").is_null());
    CHECK(obj.at("chebyshev_sum").get<double>() == *rows[0].chebyshev_sum);
    CHECK(obj.at("method").get<std::string>() == "exact");
}

TEST_CASE("write_sweep_output writes files and reports I/O failures") {
    SweepConfig config = frequency_config();
    config.n_grid = {10};
    config.epsilon_grid = {0.2};
    const auto rows = run_sweep(config);

    config.out_path = "tmp_sweep_out.csv";
    write_sweep_output(config, rows);
    CHECK(slurp(config.out_path) == format_rows_csv(rows));
    std::remove(config.out_path.c_str());

    config.out_path = "no_such_dir_830/out.csv";
    CHECK_THROWS_AS(write_sweep_output(config, rows), IoError);
}
