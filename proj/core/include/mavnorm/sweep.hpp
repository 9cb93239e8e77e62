#ifndef MAVNORM_SWEEP_HPP
#define MAVNORM_SWEEP_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mavnorm/state_spec.hpp"
#include "mavnorm/tails.hpp"

namespace mavnorm {

enum class OutputFormat { Csv, Json };

// One (N, epsilon) grid experiment over a family of product states.
struct SweepConfig {
    TailMode mode = TailMode::EntropyRate;
    std::vector<std::int64_t> n_grid;
    std::vector<double> epsilon_grid;
    StateSpec state;
    double bin_width = 1e-3;
    int workers = 1;
    std::string out_path; // empty: stdout
    OutputFormat format = OutputFormat::Csv;
};

// One grid point. exact_or_lo == hi when the norm was computed exactly;
// otherwise they are the certified bracket ends. Bounds that do not apply to
// the row's mode are absent and serialize as empty CSV cells / JSON nulls.
struct SweepRow {
    std::int64_t n;
    double epsilon;
    double exact_or_lo;
    double hi;
    std::optional<double> hoeffding;
    std::optional<double> chebyshev_sum;
    std::optional<double> chebyshev_uniform;
    std::string method; // "exact" or "bracket"
};

// Flat key = value file; every key checked, unknown keys rejected. Keys:
// mode, n, epsilon, state (required); bin_width, workers, seed, out, format.
SweepConfig load_sweep_config(const std::string& path);

// Field-level validation beyond parse-time checks (grid ranges, mode/state
// compatibility). Throws ConfigError.
void validate_sweep_config(const SweepConfig& config);

// Computes every grid point (concurrently for workers > 1; results do not
// depend on the worker count) and returns rows sorted by (N, epsilon).
std::vector<SweepRow> run_sweep(const SweepConfig& config);

// Exact serializations. CSV uses the fixed schema header and 17-significant-
// digit floats; JSON is an array of objects with the same field names.
std::string format_rows_csv(const std::vector<SweepRow>& rows);
std::string format_rows_json(const std::vector<SweepRow>& rows);

// Serializes per config.format into config.out_path (stdout when empty).
// Throws IoError on write failure.
void write_sweep_output(const SweepConfig& config, const std::vector<SweepRow>& rows);

} // namespace mavnorm

#endif
