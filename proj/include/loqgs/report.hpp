#pragma once

// Result aggregation: per-schedule runs sorted by ascending success
// probability, summary statistics, and an SVG scatter plot.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace loqgs {

struct ResultRow {
    long run_id = 0;
    std::string gate;
    std::string schedule;
    unsigned long long seed = 0;
    long generations = 0;
    double best_f = 0.0;
    double best_s = 0.0;
};

/// Parses a results.csv produced by cmd_optimize. Lines starting with '#'
/// are ignored. Throws usage_error when empty or malformed.
std::vector<ResultRow> read_results_csv(const std::filesystem::path& file);

/// Best known success probability for the shipped gates (1/4 for ns,
/// 2/27 for cz); nullopt for user-supplied gates.
std::optional<double> known_maximum(const std::string& gate_name);

struct ScheduleSummary {
    std::string schedule;
    int runs = 0;
    double min_s = 0.0;
    double median_s = 0.0;
    double max_s = 0.0;
    // Fraction of runs with best_S >= 0.996 * known maximum; negative when
    // the gate has no reference value.
    double fraction_at_max = -1.0;
};

std::vector<ScheduleSummary> summarize_results(const std::vector<ResultRow>& rows);

/// Scatter of best_S (ascending per schedule) against sorted run rank, with
/// a dashed line at the gate's known maximum when there is one.
std::string render_report_svg(const std::vector<ResultRow>& rows);

}  // namespace loqgs
