#include "loqgs/report.hpp"
#include "loqgs/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace loqgs {

namespace {

constexpr double kAtMaxBand = 0.996;  // "at maximum" = within 0.4% of the reference

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) fields.push_back(field);
    return fields;
}

// Rows grouped by schedule in first-appearance order, each group sorted by
// ascending best_S.
std::vector<std::pair<std::string, std::vector<const ResultRow*>>> group_sorted(
    const std::vector<ResultRow>& rows) {
    std::vector<std::pair<std::string, std::vector<const ResultRow*>>> groups;
    for (const ResultRow& row : rows) {
        auto it = std::find_if(groups.begin(), groups.end(),
                               [&](const auto& g) { return g.first == row.schedule; });
        if (it == groups.end()) {
            groups.push_back({row.schedule, {}});
            it = groups.end() - 1;
        }
        it->second.push_back(&row);
    }
    for (auto& [name, group] : groups) {
        std::sort(group.begin(), group.end(),
                  [](const ResultRow* a, const ResultRow* b) { return a->best_s < b->best_s; });
    }
    return groups;
}

std::string series_color(const std::string& schedule) {
    if (schedule == "inv_sqrt") return "#2ca02c";
    if (schedule == "arctan") return "#1f77b4";
    if (schedule.rfind("constant", 0) == 0) return "#e377c2";
    if (schedule == "none") return "#444444";
    return "#ff7f0e";
}

std::string fmt(double v, const char* spec = "%g") {
    char buf[48];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

}  // namespace

std::vector<ResultRow> read_results_csv(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw io_error("cannot open " + file.string());

    std::vector<ResultRow> rows;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        if (!header_seen) {
            if (line != "run_id,gate,schedule,seed,generations,best_F,best_S") {
                throw usage_error(file.string() + ": unexpected CSV header '" + line + "'");
            }
            header_seen = true;
            continue;
        }
        const auto fields = split_csv_line(line);
        if (fields.size() != 7) {
            throw usage_error(file.string() + ": malformed row '" + line + "'");
        }
        try {
            ResultRow row;
            row.run_id = std::stol(fields[0]);
            row.gate = fields[1];
            row.schedule = fields[2];
            row.seed = std::stoull(fields[3]);
            row.generations = std::stol(fields[4]);
            row.best_f = std::stod(fields[5]);
            row.best_s = std::stod(fields[6]);
            rows.push_back(std::move(row));
        } catch (const std::exception&) {
            throw usage_error(file.string() + ": malformed row '" + line + "'");
        }
    }
    if (rows.empty()) throw usage_error(file.string() + ": no result rows");
    return rows;
}

std::optional<double> known_maximum(const std::string& gate_name) {
    if (gate_name == "ns") return 0.25;
    if (gate_name == "cz") return 2.0 / 27.0;
    return std::nullopt;
}

std::vector<ScheduleSummary> summarize_results(const std::vector<ResultRow>& rows) {
    const auto groups = group_sorted(rows);
    std::vector<ScheduleSummary> summaries;
    for (const auto& [name, group] : groups) {
        ScheduleSummary s;
        s.schedule = name;
        s.runs = static_cast<int>(group.size());
        s.min_s = group.front()->best_s;
        s.max_s = group.back()->best_s;
        const size_t n = group.size();
        s.median_s = (n % 2) ? group[n / 2]->best_s
                             : 0.5 * (group[n / 2 - 1]->best_s + group[n / 2]->best_s);
        if (const auto ref = known_maximum(group.front()->gate)) {
            int hits = 0;
            for (const ResultRow* r : group) {
                if (r->best_s >= kAtMaxBand * *ref) ++hits;
            }
            s.fraction_at_max = static_cast<double>(hits) / static_cast<double>(n);
        }
        summaries.push_back(std::move(s));
    }
    return summaries;
}

std::string render_report_svg(const std::vector<ResultRow>& rows) {
    const auto groups = group_sorted(rows);
    const std::optional<double> ref = known_maximum(rows.front().gate);

    size_t max_runs = 1;
    double max_s = 0.0;
    for (const auto& [name, group] : groups) {
        max_runs = std::max(max_runs, group.size());
        max_s = std::max(max_s, group.back()->best_s);
    }
    if (ref) max_s = std::max(max_s, *ref);
    const double y_top = max_s > 0.0 ? 1.12 * max_s : 1.0;

    const double w = 860, h = 520;
    const double left = 80, right = 830, top = 40, bottom = 470;
    const auto x_of = [&](double rank) {
        return left + (right - left) * (max_runs > 1 ? rank / double(max_runs - 1) : 0.5);
    };
    const auto y_of = [&](double s) { return bottom - (bottom - top) * (s / y_top); };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
        << "\" viewBox=\"0 0 " << w << " " << h << "\">\n";
    svg << "<rect width=\"" << w << "\" height=\"" << h << "\" fill=\"white\"/>\n";
    svg << "<text x=\"" << (left + right) / 2 << "\" y=\"22\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"15\">gate " << rows.front().gate
        << ": success probability per run, sorted ascending</text>\n";

    // axes
    svg << "<line x1=\"" << left << "\" y1=\"" << bottom << "\" x2=\"" << right << "\" y2=\""
        << bottom << "\" stroke=\"black\"/>\n";
    svg << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\""
        << bottom << "\" stroke=\"black\"/>\n";
    for (int k = 0; k <= 5; ++k) {
        const double s = y_top * k / 5.0;
        const double y = y_of(s);
        svg << "<line x1=\"" << left - 4 << "\" y1=\"" << y << "\" x2=\"" << left << "\" y2=\""
            << y << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << left - 8 << "\" y=\"" << y + 4
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
            << fmt(s, "%.3f") << "</text>\n";
    }
    const int x_ticks = static_cast<int>(std::min<size_t>(max_runs, 10));
    for (int k = 0; k < x_ticks; ++k) {
        const double rank = x_ticks > 1 ? k * double(max_runs - 1) / (x_ticks - 1) : 0;
        const double x = x_of(rank);
        svg << "<line x1=\"" << x << "\" y1=\"" << bottom << "\" x2=\"" << x << "\" y2=\""
            << bottom + 4 << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << x << "\" y=\"" << bottom + 18
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
            << (static_cast<int>(rank) + 1) << "</text>\n";
    }
    svg << "<text x=\"" << (left + right) / 2 << "\" y=\"" << h - 8
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">run rank "
        << "(per schedule, ascending best_S)</text>\n";
    svg << "<text x=\"18\" y=\"" << (top + bottom) / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
        << "transform=\"rotate(-90 18 " << (top + bottom) / 2 << ")\">best_S</text>\n";

    if (ref) {
        const double y = y_of(*ref);
        svg << "<line x1=\"" << left << "\" y1=\"" << y << "\" x2=\"" << right << "\" y2=\"" << y
            << "\" stroke=\"#d62728\" stroke-dasharray=\"6,4\"/>\n";
        svg << "<text x=\"" << right - 4 << "\" y=\"" << y - 6
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\" "
            << "fill=\"#d62728\">known maximum " << fmt(*ref, "%.5f") << "</text>\n";
    }

    double legend_y = top + 14;
    for (const auto& [name, group] : groups) {
        const std::string color = series_color(name);
        std::ostringstream points;
        for (size_t i = 0; i < group.size(); ++i) {
            const double x = x_of(static_cast<double>(i));
            const double y = y_of(group[i]->best_s);
            points << fmt(x, "%.2f") << "," << fmt(y, "%.2f") << " ";
            svg << "<circle cx=\"" << fmt(x, "%.2f") << "\" cy=\"" << fmt(y, "%.2f")
                << "\" r=\"3\" fill=\"" << color << "\"/>\n";
        }
        if (group.size() > 1) {
            svg << "<polyline points=\"" << points.str() << "\" fill=\"none\" stroke=\"" << color
                << "\" stroke-width=\"1\" opacity=\"0.6\"/>\n";
        }
        svg << "<circle cx=\"" << left + 14 << "\" cy=\"" << legend_y - 4 << "\" r=\"4\" fill=\""
            << color << "\"/>\n";
        svg << "<text x=\"" << left + 24 << "\" y=\"" << legend_y
            << "\" font-family=\"sans-serif\" font-size=\"12\">" << name << "</text>\n";
        legend_y += 18;
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace loqgs
