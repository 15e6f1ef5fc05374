#pragma once

// Batch experiment driver: many independent GA runs per schedule from one
// JSON config, with CSV + JSON outputs and reproducible per-run seeds
// (master_seed + run index).

#include "loqgs/io.hpp"
#include "loqgs/optimizer.hpp"

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <vector>

namespace loqgs {

struct ExperimentConfig {
    std::string gate = "ns";  // builtin name or description-file path
    std::vector<Schedule> schedules = {Schedule::inv_sqrt()};
    int runs_per_schedule = 50;
    GAConfig ga;  // resolved: gate defaults overlaid with config-file overrides
    std::uint64_t master_seed = 1;
    std::filesystem::path output_dir = "results";
};

struct LoadedExperiment {
    ExperimentConfig config;
    GateSpec gate;
};

LoadedExperiment parse_experiment(const std::string& json_text);
LoadedExperiment load_experiment(const std::filesystem::path& file);

struct ExperimentRun {
    int run_id = 0;
    Schedule schedule;
    std::uint64_t seed = 0;
    RunRecord record;
};

/// Executes all runs (schedules x runs_per_schedule), fanning the runs out
/// over `workers` threads. Output order is by run_id regardless of
/// completion order.
std::vector<ExperimentRun> run_experiment(const GateSpec& gate, const ExperimentConfig& config,
                                          int workers,
                                          const std::function<void(const ExperimentRun&)>& on_done = {});

/// Writes results.csv, one run_NNNN.json sidecar per run, and
/// best_unitary.json for the best run (highest best_S among runs with
/// best_F >= 0.999, falling back to the highest best_F).
void write_experiment_outputs(const GateSpec& gate, const ExperimentConfig& config,
                              const std::vector<ExperimentRun>& runs);

/// Index into `runs` chosen for best_unitary.json.
int best_run_index(const std::vector<ExperimentRun>& runs);

// CLI entry points. Return the process exit code: 0 success, 1 usage error,
// 2 I/O error.
int cmd_optimize(const std::filesystem::path& config_file, int workers, std::ostream& out,
                 std::ostream& err);
int cmd_evaluate(const std::string& gate, const std::filesystem::path& unitary_file,
                 std::ostream& out, std::ostream& err);
int cmd_report(const std::filesystem::path& csv_in, const std::filesystem::path& svg_out,
               std::ostream& out, std::ostream& err);

/// Worker count from the LOQGS_WORKERS environment variable, else the
/// hardware concurrency.
int default_workers();

}  // namespace loqgs
