#pragma once

// Gate problem definitions: mode layout, input basis, ancilla preparation,
// heralding pattern and target matrix. Ships the nonlinear-sign and
// controlled-Z problems; arbitrary gates load from a JSON description.

#include "loqgs/fock.hpp"

#include <array>
#include <string>
#include <vector>

namespace loqgs {

struct GateSpec {
    std::string name;
    int n_modes = 0;    // total interferometer modes N
    int n_ancilla = 0;  // trailing ancilla modes M
    std::vector<PhotonConfig> computational_inputs;  // over the first N - M modes
    PhotonConfig ancilla_input;                      // over the M ancilla modes
    PhotonConfig measurement;                        // heralded pattern on the ancilla modes
    TransformationMatrix target;
    Eigen::MatrixXcd u0;                             // seed unitary for the search

    int comp_modes() const { return n_modes - n_ancilla; }
    int d_in() const { return static_cast<int>(computational_inputs.size()); }

    /// Throws std::invalid_argument on inconsistent mode counts, ragged
    /// configs, or a target that is not unitary-normalized.
    void validate() const;
};

/// Target matrix over the labeling that project_transformation produces for
/// these gate fields. `diagonal` lists one (output config, value) per row.
TransformationMatrix make_target(const std::vector<PhotonConfig>& comp_inputs,
                                 const PhotonConfig& ancilla_input,
                                 const PhotonConfig& measurement,
                                 const std::vector<std::pair<PhotonConfig, Complex>>& diagonal);

/// Nonlinear sign gate: one computational mode, two ancilla modes, one
/// ancilla photon heralded back on the first ancilla mode. Target
/// diag(1, 1, -1) on the 0/1/2-photon inputs.
GateSpec ns_spec();

/// Controlled-Z on dual-rail qubits: modes 1-4 computational, 5-8 ancilla,
/// ancilla prepared and heralded as |1,0,1,0>. Target flips the sign of
/// |0101> only.
GateSpec cz_spec();

/// Closed-form diagonal of the NS transformation matrix:
/// (U22, U12 U21 + U11 U22, U11^2 U22 + 2 U11 U12 U21).
std::array<Complex, 3> ns_closed_form(const Eigen::MatrixXcd& u);

}  // namespace loqgs
