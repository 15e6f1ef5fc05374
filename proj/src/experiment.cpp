#include "loqgs/experiment.hpp"
#include "loqgs/parallel.hpp"
#include "loqgs/report.hpp"

#include "json.hpp"

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

namespace loqgs {

using nlohmann::json;

namespace {

Schedule schedule_from_json(const json& j) {
    if (j.is_string()) return Schedule::parse(j.get<std::string>());
    if (j.is_object()) {
        Schedule s = Schedule::parse(j.at("kind").get<std::string>());
        if (j.contains("t0")) {
            if (s.kind != ScheduleKind::Constant) {
                throw usage_error("schedule: t0 only applies to 'constant'");
            }
            s = Schedule::constant(j.at("t0").get<double>());
        }
        if (j.contains("floor")) s.floor = j.at("floor").get<double>();
        return s;
    }
    throw usage_error("schedule: expected a string or an object");
}

void apply_ga_overrides(GAConfig& cfg, const json& j) {
    if (j.contains("population_size")) cfg.population_size = j.at("population_size").get<int>();
    if (j.contains("generations")) cfg.generations = j.at("generations").get<int>();
    if (j.contains("tournament_size")) cfg.tournament_size = j.at("tournament_size").get<int>();
    if (j.contains("crossover_rate")) cfg.crossover_rate = j.at("crossover_rate").get<double>();
    if (j.contains("mutation_rate")) cfg.mutation_rate = j.at("mutation_rate").get<double>();
    if (j.contains("mutation_sigma")) cfg.mutation_sigma = j.at("mutation_sigma").get<double>();
    if (j.contains("elitism")) cfg.elitism = j.at("elitism").get<int>();
    if (j.contains("init_range")) cfg.init_range = j.at("init_range").get<double>();
}

std::string timestamp_utc() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

json run_to_json(const ExperimentRun& run) {
    const RunRecord& rec = run.record;
    json j;
    j["run_id"] = run.run_id;
    j["gate"] = rec.gate;
    j["schedule"] = run.schedule.str();
    j["seed"] = run.seed;
    j["config"] = {{"population_size", rec.config.population_size},
                   {"generations", rec.config.generations},
                   {"tournament_size", rec.config.tournament_size},
                   {"crossover_rate", rec.config.crossover_rate},
                   {"mutation_rate", rec.config.mutation_rate},
                   {"mutation_sigma", rec.config.mutation_sigma},
                   {"elitism", rec.config.elitism},
                   {"init_range", rec.config.init_range},
                   {"seed", rec.config.seed}};
    j["best_F"] = rec.best_fidelity;
    j["best_S"] = rec.best_success;
    json x = json::array();
    for (Eigen::Index i = 0; i < rec.best_x.size(); ++i) x.push_back(rec.best_x[i]);
    j["best_x"] = std::move(x);
    json trace = json::array();
    for (const TracePoint& p : rec.trace) {
        trace.push_back({p.generation, p.temperature, p.best_fitness, p.best_fidelity,
                         p.best_success});
    }
    j["trace"] = std::move(trace);
    return j;
}

}  // namespace

LoadedExperiment parse_experiment(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw usage_error(std::string("experiment config: ") + e.what());
    }
    LoadedExperiment exp;
    try {
        if (j.contains("gate")) exp.config.gate = j.at("gate").get<std::string>();
        exp.gate = resolve_gate(exp.config.gate);
        exp.config.ga = default_config(exp.gate.name);
        if (j.contains("ga")) apply_ga_overrides(exp.config.ga, j.at("ga"));
        if (j.contains("schedules")) {
            exp.config.schedules.clear();
            for (const auto& s : j.at("schedules")) {
                exp.config.schedules.push_back(schedule_from_json(s));
            }
            if (exp.config.schedules.empty()) throw usage_error("experiment: empty schedule list");
        }
        if (j.contains("runs_per_schedule")) {
            exp.config.runs_per_schedule = j.at("runs_per_schedule").get<int>();
        }
        if (exp.config.runs_per_schedule < 1) {
            throw usage_error("experiment: runs_per_schedule must be >= 1");
        }
        if (j.contains("master_seed")) {
            exp.config.master_seed = j.at("master_seed").get<std::uint64_t>();
        }
        if (j.contains("output_dir")) {
            exp.config.output_dir = j.at("output_dir").get<std::string>();
        }
    } catch (const json::exception& e) {
        throw usage_error(std::string("experiment config: ") + e.what());
    }
    exp.config.ga.validate();
    return exp;
}

LoadedExperiment load_experiment(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw io_error("cannot open " + file.string());
    std::ostringstream text;
    text << in.rdbuf();
    return parse_experiment(text.str());
}

std::vector<ExperimentRun> run_experiment(const GateSpec& gate, const ExperimentConfig& config,
                                          int workers,
                                          const std::function<void(const ExperimentRun&)>& on_done) {
    const int total = static_cast<int>(config.schedules.size()) * config.runs_per_schedule;
    std::vector<ExperimentRun> runs(static_cast<size_t>(total));
    std::mutex done_mutex;
    parallel_for(total, workers, [&](int id) {
        ExperimentRun& run = runs[static_cast<size_t>(id)];
        run.run_id = id;
        run.schedule = config.schedules[static_cast<size_t>(id / config.runs_per_schedule)];
        run.seed = config.master_seed + static_cast<std::uint64_t>(id);
        GAConfig cfg = config.ga;
        cfg.seed = run.seed;
        run.record = run_ga(gate, cfg, run.schedule, 1);
        if (on_done) {
            std::lock_guard<std::mutex> lock(done_mutex);
            on_done(run);
        }
    });
    return runs;
}

int best_run_index(const std::vector<ExperimentRun>& runs) {
    if (runs.empty()) throw std::invalid_argument("best_run_index: no runs");
    int best = -1;
    for (int i = 0; i < static_cast<int>(runs.size()); ++i) {
        const RunRecord& r = runs[static_cast<size_t>(i)].record;
        if (r.best_fidelity < 0.999) continue;
        if (best < 0 || r.best_success > runs[static_cast<size_t>(best)].record.best_success) {
            best = i;
        }
    }
    if (best < 0) {
        best = 0;
        for (int i = 1; i < static_cast<int>(runs.size()); ++i) {
            if (runs[static_cast<size_t>(i)].record.best_fidelity >
                runs[static_cast<size_t>(best)].record.best_fidelity) {
                best = i;
            }
        }
    }
    return best;
}

void write_experiment_outputs(const GateSpec& gate, const ExperimentConfig& config,
                              const std::vector<ExperimentRun>& runs) {
    std::error_code ec;
    std::filesystem::create_directories(config.output_dir, ec);
    if (ec) throw io_error("cannot create " + config.output_dir.string() + ": " + ec.message());

    const auto csv_path = config.output_dir / "results.csv";
    std::ofstream csv(csv_path, std::ios::binary);
    if (!csv) throw io_error("cannot write " + csv_path.string());
    csv << "# generated " << timestamp_utc() << "\n";
    csv << "run_id,gate,schedule,seed,generations,best_F,best_S\n";
    for (const ExperimentRun& run : runs) {
        csv << run.run_id << ',' << run.record.gate << ',' << run.schedule.str() << ','
            << run.seed << ',' << run.record.config.generations << ','
            << format_double(run.record.best_fidelity) << ','
            << format_double(run.record.best_success) << '\n';
    }
    csv.close();
    if (!csv) throw io_error("short write to " + csv_path.string());

    for (const ExperimentRun& run : runs) {
        char name[32];
        std::snprintf(name, sizeof name, "run_%04d.json", run.run_id);
        std::ofstream side(config.output_dir / name, std::ios::binary);
        if (!side) throw io_error("cannot write run sidecar " + std::string(name));
        side << run_to_json(run).dump(2) << "\n";
    }

    const ExperimentRun& best = runs[static_cast<size_t>(best_run_index(runs))];
    const GateEvaluator eval(gate);
    save_unitary(config.output_dir / "best_unitary.json", eval.unitary(best.record.best_x));
}

int default_workers() {
    if (const char* env = std::getenv("LOQGS_WORKERS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

int cmd_optimize(const std::filesystem::path& config_file, int workers, std::ostream& out,
                 std::ostream& err) {
    try {
        const LoadedExperiment exp = load_experiment(config_file);
        const int total = static_cast<int>(exp.config.schedules.size()) *
                          exp.config.runs_per_schedule;
        out << "gate " << exp.gate.name << ", " << exp.config.schedules.size()
            << " schedule(s) x " << exp.config.runs_per_schedule << " runs = " << total
            << " runs, " << workers << " worker(s)\n";
        int done = 0;
        const auto runs = run_experiment(exp.gate, exp.config, workers,
                                         [&](const ExperimentRun& run) {
                                             ++done;
                                             out << "[" << done << "/" << total << "] run "
                                                 << run.run_id << " (" << run.schedule.str()
                                                 << "): F=" << run.record.best_fidelity
                                                 << " S=" << run.record.best_success << "\n";
                                         });
        write_experiment_outputs(exp.gate, exp.config, runs);
        out << "wrote " << (exp.config.output_dir / "results.csv").string() << "\n";
        return 0;
    } catch (const usage_error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const io_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

int cmd_evaluate(const std::string& gate_name, const std::filesystem::path& unitary_file,
                 std::ostream& out, std::ostream& err) {
    try {
        const GateSpec gate = resolve_gate(gate_name);
        const Eigen::MatrixXcd u = load_unitary(unitary_file);
        if (u.rows() != gate.n_modes) {
            throw usage_error("unitary is " + std::to_string(u.rows()) + "x" +
                              std::to_string(u.cols()) + " but gate '" + gate.name + "' has " +
                              std::to_string(gate.n_modes) + " modes");
        }
        const double deviation =
            (u.adjoint() * u - Eigen::MatrixXcd::Identity(u.rows(), u.cols()))
                .cwiseAbs()
                .maxCoeff();
        if (deviation > 1e-8) {
            throw usage_error("matrix is not unitary: max |U^dag U - I| = " +
                              format_double(deviation));
        }
        const TransformationMatrix a = project_transformation(u, gate);
        const GateMetrics m = compute_metrics(a, gate.target);
        out << "gate:       " << gate.name << "\n";
        out << "fidelity:   " << format_double(m.fidelity) << "\n";
        out << "success:    " << format_double(m.success) << "\n";
        out << "norm_min:   " << format_double(m.norm_min) << "\n";
        out << "norm_max:   " << format_double(m.norm_max) << "\n";
        return 0;
    } catch (const usage_error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const io_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

int cmd_report(const std::filesystem::path& csv_in, const std::filesystem::path& svg_out,
               std::ostream& out, std::ostream& err) {
    try {
        const std::vector<ResultRow> rows = read_results_csv(csv_in);
        const std::vector<ScheduleSummary> summaries = summarize_results(rows);
        out << "schedule            runs      min_S   median_S      max_S   at_max\n";
        for (const ScheduleSummary& s : summaries) {
            char line[160];
            if (s.fraction_at_max >= 0.0) {
                std::snprintf(line, sizeof line, "%-18s %5d %10.6f %10.6f %10.6f   %5.2f",
                              s.schedule.c_str(), s.runs, s.min_s, s.median_s, s.max_s,
                              s.fraction_at_max);
            } else {
                std::snprintf(line, sizeof line, "%-18s %5d %10.6f %10.6f %10.6f       -",
                              s.schedule.c_str(), s.runs, s.min_s, s.median_s, s.max_s);
            }
            out << line << "\n";
        }
        std::ofstream svg(svg_out, std::ios::binary);
        if (!svg) throw io_error("cannot write " + svg_out.string());
        svg << render_report_svg(rows);
        if (!svg) throw io_error("short write to " + svg_out.string());
        out << "wrote " << svg_out.string() << "\n";
        return 0;
    } catch (const usage_error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const io_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace loqgs
