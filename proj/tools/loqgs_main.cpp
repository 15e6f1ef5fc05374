// loqgs command-line driver: batch GA searches, single-unitary evaluation,
// and result reports.

#include "loqgs/experiment.hpp"

#include "CLI11.hpp"

#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"Search N-mode linear-optical interferometers for measurement-assisted "
                 "quantum gates maximizing heralded success probability"};
    app.require_subcommand(1);

    int workers = loqgs::default_workers();

    auto* optimize = app.add_subcommand("optimize", "Run a batch of GA searches from a config file");
    std::string config_file;
    optimize->add_option("--config", config_file, "experiment config (JSON)")->required();
    optimize->add_option("--workers", workers,
                         "concurrent runs (default: LOQGS_WORKERS or hardware concurrency)");

    auto* evaluate = app.add_subcommand("evaluate", "Score one unitary against a gate");
    std::string gate = "ns";
    std::string unitary_file;
    evaluate->add_option("--gate", gate, "builtin gate name or description file (default ns)");
    evaluate->add_option("--unitary", unitary_file, "unitary matrix (JSON)")->required();

    auto* report = app.add_subcommand("report", "Summarize a results.csv and plot it");
    std::string csv_in;
    std::string svg_out = "report.svg";
    report->add_option("--in", csv_in, "results.csv from 'optimize'")->required();
    report->add_option("--out", svg_out, "output SVG path (default report.svg)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    if (optimize->parsed()) {
        return loqgs::cmd_optimize(config_file, workers, std::cout, std::cerr);
    }
    if (evaluate->parsed()) {
        return loqgs::cmd_evaluate(gate, unitary_file, std::cout, std::cerr);
    }
    return loqgs::cmd_report(csv_in, svg_out, std::cout, std::cerr);
}
