#pragma once

// File formats: the unitary interchange JSON, gate description JSON, and
// stable floating-point formatting for reproducible outputs.

#include "loqgs/gates.hpp"

#include <filesystem>
#include <stdexcept>
#include <string>

namespace loqgs {

/// Bad user input: unknown names, malformed values, failed validation.
struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Filesystem or parse failures.
struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Shortest round-trip decimal form; identical input bits give identical text.
std::string format_double(double value);

/// Unitary interchange format: {"n": N, "re": [[..]], "im": [[..]]},
/// row-major. save followed by load reproduces the matrix bit-exactly, and
/// saving a loaded file reproduces its bytes.
Eigen::MatrixXcd load_unitary(const std::filesystem::path& file);
void save_unitary(const std::filesystem::path& file, const Eigen::MatrixXcd& u);

/// Gate description JSON: {"name", "n_modes", "n_ancilla",
/// "computational_inputs", "ancilla_input", "measurement",
/// "target": {"rows", "cols", "re", "im"}}; target columns follow the
/// sector-ordered output labeling. Optional "u0" in the unitary format.
GateSpec load_gate(const std::filesystem::path& file);

/// Builtin name ("ns", "cz") or a gate description file path.
GateSpec resolve_gate(const std::string& name_or_path);

}  // namespace loqgs
