// Python bindings for the core operations: Fock-space projection, gate
// metrics, the exponential-map parametrization and the annealed GA.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "loqgs/experiment.hpp"
#include "loqgs/io.hpp"

#include <optional>
#include <sstream>

namespace py = pybind11;
using namespace loqgs;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Search of linear-optical interferometers for measurement-assisted "
              "quantum gates (NS, CZ) maximizing heralded success probability";

    py::class_<PhotonConfig>(m, "PhotonConfig")
        .def(py::init<std::vector<int>>(), py::arg("occupations"))
        .def_property_readonly("occupations", &PhotonConfig::occupations)
        .def_property_readonly("modes", &PhotonConfig::modes)
        .def_property_readonly("total", &PhotonConfig::total)
        .def("concat", &PhotonConfig::concat)
        .def("__len__", &PhotonConfig::modes)
        .def("__getitem__",
             [](const PhotonConfig& c, int i) {
                 if (i < 0 || i >= c.modes()) throw py::index_error();
                 return c[i];
             })
        .def("__eq__", [](const PhotonConfig& a, const PhotonConfig& b) { return a == b; })
        .def("__repr__", &PhotonConfig::str);
    py::implicitly_convertible<py::sequence, PhotonConfig>();

    py::class_<FockBasis>(m, "FockBasis")
        .def_readonly("modes", &FockBasis::modes)
        .def_readonly("photons", &FockBasis::photons)
        .def_readonly("states", &FockBasis::states)
        .def("index_of", &FockBasis::index_of)
        .def("__len__", &FockBasis::size);

    m.def("enumerate_basis", &enumerate_basis, py::arg("modes"), py::arg("photons"));
    m.def("permanent", &permanent, py::arg("matrix"));
    m.def("transition_amplitude", &transition_amplitude, py::arg("u"), py::arg("out"),
          py::arg("in_"));

    py::class_<TransformationMatrix>(m, "TransformationMatrix")
        .def_readonly("entries", &TransformationMatrix::entries)
        .def_readonly("inputs", &TransformationMatrix::inputs)
        .def_readonly("outputs", &TransformationMatrix::outputs)
        .def_readonly("row_span", &TransformationMatrix::row_span)
        .def_property_readonly("d_in", &TransformationMatrix::d_in)
        .def_property_readonly("d_out", &TransformationMatrix::d_out);

    py::class_<GateSpec>(m, "GateSpec")
        .def_readonly("name", &GateSpec::name)
        .def_readonly("n_modes", &GateSpec::n_modes)
        .def_readonly("n_ancilla", &GateSpec::n_ancilla)
        .def_readonly("computational_inputs", &GateSpec::computational_inputs)
        .def_readonly("ancilla_input", &GateSpec::ancilla_input)
        .def_readonly("measurement", &GateSpec::measurement)
        .def_readonly("target", &GateSpec::target)
        .def_readonly("u0", &GateSpec::u0)
        .def_property_readonly("d_in", &GateSpec::d_in);

    m.def("ns_spec", &ns_spec);
    m.def("cz_spec", &cz_spec);
    m.def("ns_closed_form", &ns_closed_form, py::arg("u"));
    m.def("load_gate", &load_gate, py::arg("path"));
    m.def("resolve_gate", &resolve_gate, py::arg("name_or_path"));
    m.def("project_transformation", &project_transformation, py::arg("u"), py::arg("gate"));

    py::class_<GateMetrics>(m, "GateMetrics")
        .def_readonly("fidelity", &GateMetrics::fidelity)
        .def_readonly("success", &GateMetrics::success)
        .def_readonly("norm_min", &GateMetrics::norm_min)
        .def_readonly("norm_max", &GateMetrics::norm_max)
        .def_readonly("fitness", &GateMetrics::fitness);

    m.def("fidelity", &fidelity, py::arg("a"), py::arg("target"));
    m.def("success_probability", &success_probability, py::arg("a"));
    m.def("norm_bounds", &norm_bounds, py::arg("a"));
    m.def("fitness", &fitness, py::arg("f"), py::arg("s"), py::arg("t"));
    m.def("compute_metrics", &compute_metrics, py::arg("a"), py::arg("target"),
          py::arg("temperature") = std::nullopt);

    py::class_<GeneratorBasis>(m, "GeneratorBasis")
        .def_readonly("n", &GeneratorBasis::n)
        .def_readonly("generators", &GeneratorBasis::generators)
        .def("__len__", &GeneratorBasis::size);

    m.def("standard_generators", &standard_generators, py::arg("n"));
    m.def("matrix_exp", &matrix_exp, py::arg("h"));
    m.def("exp_map", &exp_map, py::arg("x"), py::arg("u0"), py::arg("basis"));

    py::enum_<ScheduleKind>(m, "ScheduleKind")
        .value("CONSTANT", ScheduleKind::Constant)
        .value("ARCTAN", ScheduleKind::Arctan)
        .value("INV_SQRT", ScheduleKind::InvSqrt)
        .value("NONE", ScheduleKind::None);

    py::class_<Schedule>(m, "Schedule")
        .def_readonly("kind", &Schedule::kind)
        .def_readonly("t0", &Schedule::t0)
        .def_readonly("floor", &Schedule::floor)
        .def_static("constant", &Schedule::constant, py::arg("t0"), py::arg("floor") = 1e-9)
        .def_static("arctan", &Schedule::arctan)
        .def_static("inv_sqrt", &Schedule::inv_sqrt)
        .def_static("none", &Schedule::none)
        .def_static("parse", &Schedule::parse, py::arg("text"))
        .def("__str__", &Schedule::str)
        .def("__repr__", [](const Schedule& s) { return "Schedule(" + s.str() + ")"; });

    m.def("temperature", &temperature, py::arg("schedule"), py::arg("t"));

    py::class_<GAConfig>(m, "GAConfig")
        .def(py::init<>())
        .def_readwrite("population_size", &GAConfig::population_size)
        .def_readwrite("generations", &GAConfig::generations)
        .def_readwrite("tournament_size", &GAConfig::tournament_size)
        .def_readwrite("crossover_rate", &GAConfig::crossover_rate)
        .def_readwrite("mutation_rate", &GAConfig::mutation_rate)
        .def_readwrite("mutation_sigma", &GAConfig::mutation_sigma)
        .def_readwrite("elitism", &GAConfig::elitism)
        .def_readwrite("init_range", &GAConfig::init_range)
        .def_readwrite("seed", &GAConfig::seed)
        .def("validate", &GAConfig::validate);

    m.def("default_config", &default_config, py::arg("gate_name"));

    py::class_<Evaluation>(m, "Evaluation")
        .def_readonly("fidelity", &Evaluation::fidelity)
        .def_readonly("success", &Evaluation::success)
        .def_readonly("fitness", &Evaluation::fitness);

    m.def(
        "evaluate",
        [](const ParamVector& x, const GateSpec& gate, std::optional<double> temperature) {
            return evaluate(x, gate, temperature);
        },
        py::arg("x"), py::arg("gate"), py::arg("temperature") = std::nullopt);

    py::class_<TracePoint>(m, "TracePoint")
        .def_readonly("generation", &TracePoint::generation)
        .def_readonly("temperature", &TracePoint::temperature)
        .def_readonly("best_fitness", &TracePoint::best_fitness)
        .def_readonly("best_fidelity", &TracePoint::best_fidelity)
        .def_readonly("best_success", &TracePoint::best_success);

    py::class_<RunRecord>(m, "RunRecord")
        .def_readonly("gate", &RunRecord::gate)
        .def_readonly("schedule", &RunRecord::schedule)
        .def_readonly("config", &RunRecord::config)
        .def_readonly("best_x", &RunRecord::best_x)
        .def_readonly("best_fidelity", &RunRecord::best_fidelity)
        .def_readonly("best_success", &RunRecord::best_success)
        .def_readonly("trace", &RunRecord::trace);

    m.def("run_ga", &run_ga, py::arg("gate"), py::arg("config"), py::arg("schedule"),
          py::arg("n_workers") = 1, py::call_guard<py::gil_scoped_release>());

    m.def("load_unitary", &load_unitary, py::arg("path"));
    m.def("save_unitary", &save_unitary, py::arg("path"), py::arg("u"));
}
