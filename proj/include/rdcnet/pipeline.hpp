// pipeline.hpp
// Batch driver: ingestion -> network -> rdc -> analytics over all windows,
// with deterministic artifact output and a run manifest.

#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "rdcnet/dates.hpp"

namespace rdcnet {

struct RunConfig {
    std::filesystem::path prices_path;
    std::optional<std::filesystem::path> index_path;
    std::filesystem::path output_dir;

    // Defaults reproduce the reference configuration: six-month windows
    // rolled one month at a time, first months 2008-01 through 2020-01,
    // 80% coverage, zeta grid of 100 points on (0, 1].
    YearMonth first_month{2008, 1};
    YearMonth last_month{2020, 1};
    int window_length_months = 6;
    int step_months = 1;
    double coverage_threshold = 0.80;
    int min_overlap = 30;
    double zeta_start = 0.01;
    double zeta_end = 1.00;
    double zeta_step = 0.01;
    int top_bottom_k = 5;
    bool weighted_adjacency = false;
    bool emit_matrices = false;  // per-window correlation + MST CSVs
    int threads = 0;             // 0 = hardware concurrency

    void validate() const;  // throws InputError
};

// Flat key-value config file (`key = value`, `#` comments). Returns the
// config with file values applied over the defaults.
RunConfig load_config_file(const std::filesystem::path& path);

struct WindowOutcome {
    std::string window_id;
    std::string status;  // "ok" or "skipped"
    std::string reason;  // empty when ok
    int n_assets = 0;
};

struct RunReport {
    int windows_total = 0;
    int windows_ok = 0;
    int windows_skipped = 0;
    std::vector<WindowOutcome> outcomes;
    std::filesystem::path manifest_path;
};

// Runs the full pipeline and writes all artifacts under config.output_dir:
// rdc_<window>.csv and rank_table_<window>.csv per window, window_stats.csv,
// tests.json, run_manifest.json (config echo, input hashes, window statuses,
// artifact hashes). Per-window failures are flagged `skipped` in the
// manifest without aborting the run. Two runs with identical inputs produce
// byte-identical artifacts.
RunReport run_pipeline(const RunConfig& config);

// Human-readable summary of one window from a previous run's artifacts:
// asset count, the ranking extremes at the lowest and highest zeta, and the
// window's average normalized rank standard deviation.
void inspect_window(const std::filesystem::path& output_dir, const std::string& window_id,
                    std::ostream& out);

}  // namespace rdcnet
