#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "loqgs/experiment.hpp"
#include "loqgs/report.hpp"
#include "support/oracles.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

using namespace loqgs;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream text;
    text << in.rdbuf();
    return text.str();
}

// everything after the first line (the timestamp comment)
std::string without_first_line(const std::string& text) {
    const size_t nl = text.find('\n');
    return nl == std::string::npos ? std::string() : text.substr(nl + 1);
}

const char* kMiniExperiment = R"({
  "gate": "ns",
  "schedules": ["inv_sqrt", "none"],
  "runs_per_schedule": 2,
  "master_seed": 99,
  "output_dir": "%OUT%",
  "ga": {"population_size": 24, "generations": 15}
})";

std::string mini_config_text(const fs::path& out_dir) {
    std::string text = kMiniExperiment;
    const std::string token = "%OUT%";
    text.replace(text.find(token), token.size(), out_dir.string());
    return text;
}

}  // namespace

TEST_CASE("unitary json round trip is byte stable") {
    const fs::path dir = fresh_dir("loqgs_io_test");
    std::mt19937_64 rng(12001);
    const Eigen::MatrixXcd u = oracles::random_unitary(4, rng);

    const fs::path first = dir / "u.json";
    save_unitary(first, u);
    const Eigen::MatrixXcd loaded = load_unitary(first);
    CHECK((loaded - u).cwiseAbs().maxCoeff() == 0.0);

    const fs::path second = dir / "u2.json";
    save_unitary(second, loaded);
    CHECK(read_file(first) == read_file(second));

    fs::remove_all(dir);
}

TEST_CASE("unitary loader rejects malformed input") {
    const fs::path dir = fresh_dir("loqgs_io_bad");
    const fs::path bad = dir / "bad.json";
    {
        std::ofstream out(bad);
        out << "{\"n\": 2, \"re\": [[1, 0], [0, 1]]}";
    }
    CHECK_THROWS_AS(load_unitary(bad), usage_error);
    {
        std::ofstream out(bad);
        out << "this is not json";
    }
    CHECK_THROWS_AS(load_unitary(bad), io_error);
    CHECK_THROWS_AS(load_unitary(dir / "missing.json"), io_error);
    fs::remove_all(dir);
}

TEST_CASE("experiment config parsing applies gate defaults and overrides") {
    const LoadedExperiment exp = parse_experiment(R"({
        "gate": "cz",
        "schedules": ["inv_sqrt", {"kind": "constant", "t0": 0.001}],
        "runs_per_schedule": 3,
        "master_seed": 7
    })");
    CHECK(exp.gate.name == "cz");
    CHECK(exp.config.ga.generations == 5000);  // cz default
    CHECK(exp.config.ga.population_size == 400);
    CHECK(exp.config.schedules.size() == 2);
    CHECK(exp.config.schedules[1].kind == ScheduleKind::Constant);
    CHECK(exp.config.schedules[1].t0 == 0.001);
    CHECK(exp.config.runs_per_schedule == 3);
    CHECK(exp.config.master_seed == 7);

    const LoadedExperiment ns_exp = parse_experiment(R"({"gate": "ns", "ga": {"generations": 77}})");
    CHECK(ns_exp.config.ga.generations == 77);

    CHECK_THROWS_AS(parse_experiment("{\"gate\": \"warp\"}"), usage_error);
    CHECK_THROWS_AS(parse_experiment("{nope"), usage_error);
    CHECK_THROWS_AS(parse_experiment(R"({"gate": "ns", "runs_per_schedule": 0})"), usage_error);
}

TEST_CASE("experiment outputs: csv, sidecars, best unitary, round trip") {
    const fs::path out_dir = fresh_dir("loqgs_exp_out");
    const LoadedExperiment exp = parse_experiment(mini_config_text(out_dir));

    const auto runs = run_experiment(exp.gate, exp.config, 2);
    REQUIRE(runs.size() == 4);
    for (int i = 0; i < 4; ++i) {
        CHECK(runs[static_cast<size_t>(i)].run_id == i);
        CHECK(runs[static_cast<size_t>(i)].seed == 99 + static_cast<std::uint64_t>(i));
    }
    CHECK(runs[0].schedule.kind == ScheduleKind::InvSqrt);
    CHECK(runs[3].schedule.kind == ScheduleKind::None);

    write_experiment_outputs(exp.gate, exp.config, runs);

    const auto rows = read_results_csv(out_dir / "results.csv");
    REQUIRE(rows.size() == 4);
    for (size_t i = 0; i < 4; ++i) {
        CHECK(rows[i].run_id == static_cast<long>(i));
        CHECK(rows[i].gate == "ns");
        CHECK(rows[i].best_f == runs[i].record.best_fidelity);
        CHECK(rows[i].best_s == runs[i].record.best_success);
    }

    // sidecars parse and agree with the csv
    for (int i = 0; i < 4; ++i) {
        char name[32];
        std::snprintf(name, sizeof name, "run_%04d.json", i);
        CHECK(fs::exists(out_dir / name));
    }

    // best_unitary round trip: evaluating the emitted file reproduces the
    // csv numbers
    const int best = best_run_index(runs);
    const Eigen::MatrixXcd u = load_unitary(out_dir / "best_unitary.json");
    const TransformationMatrix a = project_transformation(u, exp.gate);
    CHECK(std::abs(fidelity(a, exp.gate.target) -
                   runs[static_cast<size_t>(best)].record.best_fidelity) <= 1e-9);
    CHECK(std::abs(success_probability(a) -
                   runs[static_cast<size_t>(best)].record.best_success) <= 1e-9);

    fs::remove_all(out_dir);
}

TEST_CASE("experiments are reproducible at any worker count") {
    const fs::path dir_a = fresh_dir("loqgs_repro_a");
    const fs::path dir_b = fresh_dir("loqgs_repro_b");

    const LoadedExperiment exp_a = parse_experiment(mini_config_text(dir_a));
    const LoadedExperiment exp_b = parse_experiment(mini_config_text(dir_b));

    write_experiment_outputs(exp_a.gate, exp_a.config, run_experiment(exp_a.gate, exp_a.config, 1));
    write_experiment_outputs(exp_b.gate, exp_b.config, run_experiment(exp_b.gate, exp_b.config, 3));

    const std::string csv_a = without_first_line(read_file(dir_a / "results.csv"));
    const std::string csv_b = without_first_line(read_file(dir_b / "results.csv"));
    CHECK(!csv_a.empty());
    CHECK(csv_a == csv_b);

    fs::remove_all(dir_a);
    fs::remove_all(dir_b);
}

TEST_CASE("report summarizes and renders") {
    const fs::path dir = fresh_dir("loqgs_report");
    const fs::path csv = dir / "results.csv";
    {
        std::ofstream out(csv);
        out << "# generated sometime\n";
        out << "run_id,gate,schedule,seed,generations,best_F,best_S\n";
        out << "0,ns,inv_sqrt,1,500,0.9999,0.2499\n";
        out << "1,ns,inv_sqrt,2,500,0.9999,0.2501\n";
        out << "2,ns,none,3,500,0.9999,0.19\n";
        out << "3,ns,none,4,500,0.9999,0.05\n";
    }
    const auto rows = read_results_csv(csv);
    const auto summaries = summarize_results(rows);
    REQUIRE(summaries.size() == 2);
    CHECK(summaries[0].schedule == "inv_sqrt");
    CHECK(summaries[0].min_s == 0.2499);
    CHECK(summaries[0].max_s == 0.2501);
    CHECK(summaries[0].median_s == doctest::Approx(0.25));
    CHECK(summaries[0].fraction_at_max == 1.0);
    CHECK(summaries[1].schedule == "none");
    CHECK(summaries[1].fraction_at_max == 0.0);

    const std::string svg = render_report_svg(rows);
    CHECK(svg.find("<svg") == 0);
    CHECK(svg.find("known maximum") != std::string::npos);
    CHECK(svg.find("inv_sqrt") != std::string::npos);

    // single-run csv still renders
    {
        std::ofstream out(csv);
        out << "run_id,gate,schedule,seed,generations,best_F,best_S\n";
        out << "0,custom,inv_sqrt,1,500,0.5,0.5\n";
    }
    const auto single = read_results_csv(csv);
    CHECK(render_report_svg(single).find("known maximum") == std::string::npos);

    // empty and malformed csvs are usage errors
    {
        std::ofstream out(csv);
        out << "# nothing\n";
    }
    CHECK_THROWS_AS(read_results_csv(csv), usage_error);
    {
        std::ofstream out(csv);
        out << "run_id,gate,schedule,seed,generations,best_F,best_S\n";
        out << "0,ns,inv_sqrt,1\n";
    }
    CHECK_THROWS_AS(read_results_csv(csv), usage_error);

    fs::remove_all(dir);
}

TEST_CASE("cmd entry points and exit codes") {
    const fs::path dir = fresh_dir("loqgs_cmd");
    std::ostringstream out, err;

    // evaluate: identity against ns
    const fs::path ufile = dir / "identity.json";
    save_unitary(ufile, Eigen::MatrixXcd::Identity(3, 3));
    CHECK(cmd_evaluate("ns", ufile, out, err) == 0);
    CHECK(out.str().find("fidelity") != std::string::npos);
    CHECK(out.str().find("0.1111111111") != std::string::npos);

    // non-unitary input is rejected with the measured deviation
    const fs::path bad = dir / "nonunitary.json";
    save_unitary(bad, 2.0 * Eigen::MatrixXcd::Identity(3, 3));
    err.str("");
    CHECK(cmd_evaluate("ns", bad, out, err) == 1);
    CHECK(err.str().find("not unitary") != std::string::npos);

    // malformed json: io error
    {
        std::ofstream o(dir / "garbage.json");
        o << "{{{";
    }
    CHECK(cmd_evaluate("ns", dir / "garbage.json", out, err) == 2);
    CHECK(cmd_evaluate("ns", dir / "missing.json", out, err) == 2);
    CHECK(cmd_evaluate("warp", ufile, out, err) == 1);

    // optimize + report end to end on a tiny config
    const fs::path cfg_file = dir / "exp.json";
    const fs::path exp_out = dir / "results";
    {
        std::ofstream o(cfg_file);
        o << mini_config_text(exp_out);
    }
    CHECK(cmd_optimize(cfg_file, 2, out, err) == 0);
    CHECK(fs::exists(exp_out / "results.csv"));
    CHECK(cmd_report(exp_out / "results.csv", dir / "report.svg", out, err) == 0);
    CHECK(fs::exists(dir / "report.svg"));

    CHECK(cmd_optimize(dir / "missing_cfg.json", 1, out, err) == 2);
    CHECK(cmd_report(dir / "missing.csv", dir / "r.svg", out, err) == 2);

    fs::remove_all(dir);
}

#ifdef LOQGS_CLI_PATH
TEST_CASE("the installed binary honors the documented exit codes") {
    const fs::path dir = fresh_dir("loqgs_bin");
    const fs::path ufile = dir / "identity.json";
    save_unitary(ufile, Eigen::MatrixXcd::Identity(3, 3));

    const std::string base = std::string(LOQGS_CLI_PATH);
    CHECK(std::system((base + " evaluate --gate ns --unitary " + ufile.string() +
                       " > /dev/null 2>&1")
                          .c_str()) == 0);

    const int usage = std::system((base + " evaluate > /dev/null 2>&1").c_str());
    CHECK(WEXITSTATUS(usage) == 1);

    const int missing =
        std::system((base + " evaluate --gate ns --unitary " + (dir / "nope.json").string() +
                     " > /dev/null 2>&1")
                        .c_str());
    CHECK(WEXITSTATUS(missing) == 2);

    fs::remove_all(dir);
}
#endif
