#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pathsched/instance.hpp"

namespace pathsched {

struct DurationModel {
    enum class Kind { uniform_equal, random_range, fixed_total };
    Kind kind = Kind::random_range;
    int value = 3;  // d, d_max or the fixed total, depending on kind
};

struct IntRange {
    int lo = 0, hi = 0;
};

/// Config file dialect (JSON):
///   {"family": "path", "n": [6,6], "k": [3,3], "m": [2,6],
///    "duration": {"model": "fixed_total", "value": 18},
///    "samples": 200, "seed": 42}
/// Lattice configs use "grid": [2,4] (square grids) instead of "n".
struct ExperimentConfig {
    std::string family = "path";  // "path" | "lattice"
    IntRange n;
    IntRange grid;
    IntRange k{1, 1};
    IntRange m{1, 1};
    DurationModel duration;
    int samples = 1;
    std::uint64_t seed = 0;
    std::uint64_t exact_state_cap = 10'000'000;
    int jobs = 1;
    std::string store_traces_dir;  // empty disables trace persistence
};

ExperimentConfig parse_config_json(const std::string& text);
ExperimentConfig load_config_json(const std::string& path);

struct Cell {
    int index = 0;
    int n = 0, rows = 0, cols = 0, k = 0, m = 0;
    std::string skip_reason;  // nonempty when the cell is infeasible and skipped
};

/// Cartesian product of the configured ranges, in (size, k, m) order.
std::vector<Cell> experiment_cells(const ExperimentConfig& config);

/// Deterministic given (config seed, cell, sample): distinct task vertices,
/// distinct start vertices (overlap between the two sets is allowed; the
/// fixed-total-18 experiment with six tasks on six vertices needs it),
/// durations per the duration model. Starts come out sorted.
Instance generate_instance(const ExperimentConfig& config, const Cell& cell, int sample);

struct ResultRow {
    std::string instance_id;
    std::uint64_t seed = 0;
    std::string family;
    int n = 0, rows = 0, cols = 0, k = 0, m = 0;
    std::vector<int> durations;
    long long dp_value = -1;
    int executed = -1;
    int exact_opt = -1;
    double ratio = -1.0;
    bool optimal = false, within_dmin = false, within_dmax = false, discrepancy = false;
    std::string oracle_status = "ok";  // ok | budget | infeasible
    double partition_ms = 0.0, exact_ms = 0.0;
};

/// Runs the partition heuristic (lattice pipeline for lattice instances) and
/// the exact search, validates both schedules and fills the row. The ratio
/// uses the executed makespan; the raw DP value is recorded alongside so
/// realization discrepancies stay visible.
ResultRow performance_ratio(const Instance& inst, std::uint64_t state_cap);

std::string result_csv_header();
std::string result_row_csv(const ResultRow& row);
ResultRow parse_result_row_csv(const std::string& line);

struct ExperimentReport {
    std::string summary_json;
    int rows_written = 0;
    int cells_skipped = 0;
};

/// Writes one CSV row per (cell, sample), flushing per cell, plus a summary
/// with per-cell aggregates (mean ratio, proportion optimal, proportions
/// within d_min / d_max over oracle-available rows). A partial output file is
/// resumed: complete leading cells are kept verbatim, the rest recomputed.
/// Rows within a cell run in parallel (config.jobs); output bytes do not
/// depend on the thread count.
ExperimentReport run_experiment(const ExperimentConfig& config, const std::string& csv_path,
                                const std::vector<std::string>& meta = {});

/// Wall-clock comparison rows (m, sample, partition_ms, exact_ms) and a
/// summary with per-m medians.
ExperimentReport runtime_comparison(const ExperimentConfig& config, const std::string& csv_path,
                                    const std::vector<std::string>& meta = {});

}  // namespace pathsched
