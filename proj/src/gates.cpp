#include "loqgs/gates.hpp"

#include <cmath>
#include <stdexcept>

namespace loqgs {

void GateSpec::validate() const {
    if (n_modes < 1 || n_ancilla < 0 || n_ancilla >= n_modes) {
        throw std::invalid_argument("GateSpec: need 0 <= ancilla modes < total modes");
    }
    if (computational_inputs.empty()) {
        throw std::invalid_argument("GateSpec: no computational inputs");
    }
    for (const auto& c : computational_inputs) {
        if (c.modes() != comp_modes()) {
            throw std::invalid_argument("GateSpec: input config length != computational modes");
        }
    }
    if (ancilla_input.modes() != n_ancilla || measurement.modes() != n_ancilla) {
        throw std::invalid_argument("GateSpec: ancilla config length != ancilla modes");
    }
    if (u0.rows() != n_modes || u0.cols() != n_modes) {
        throw std::invalid_argument("GateSpec: u0 dimension != mode count");
    }
    if (target.d_in() != d_in()) {
        throw std::invalid_argument("GateSpec: target row count != input basis size");
    }
    // Unitary-gate normalization Tr(T T^dag) = D_in.
    if (std::abs(target.entries.squaredNorm() - d_in()) > 1e-9 * d_in()) {
        throw std::invalid_argument("GateSpec: target is not unitary-normalized");
    }
}

TransformationMatrix make_target(const std::vector<PhotonConfig>& comp_inputs,
                                 const PhotonConfig& ancilla_input,
                                 const PhotonConfig& measurement,
                                 const std::vector<std::pair<PhotonConfig, Complex>>& diagonal) {
    if (diagonal.size() != comp_inputs.size()) {
        throw std::invalid_argument("make_target: one (output, value) pair per input required");
    }
    OutputLabeling lab = output_labeling(comp_inputs, ancilla_input, measurement);

    TransformationMatrix t;
    t.inputs = comp_inputs;
    t.outputs = std::move(lab.outputs);
    t.row_span = std::move(lab.row_span);
    t.entries = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(comp_inputs.size()),
                                       static_cast<Eigen::Index>(t.outputs.size()));
    for (size_t i = 0; i < diagonal.size(); ++i) {
        const auto& [config, value] = diagonal[i];
        const auto [first, last] = t.row_span[i];
        int col = -1;
        for (int j = first; j < last; ++j) {
            if (t.outputs[static_cast<size_t>(j)] == config) {
                col = j;
                break;
            }
        }
        if (col < 0) {
            throw std::invalid_argument("make_target: output config " + config.str() +
                                        " not reachable from input row " + std::to_string(i));
        }
        t.entries(static_cast<Eigen::Index>(i), col) = value;
    }
    return t;
}

GateSpec ns_spec() {
    GateSpec g;
    g.name = "ns";
    g.n_modes = 3;
    g.n_ancilla = 2;
    g.computational_inputs = {PhotonConfig{0}, PhotonConfig{1}, PhotonConfig{2}};
    g.ancilla_input = PhotonConfig{1, 0};
    g.measurement = PhotonConfig{1, 0};
    g.target = make_target(g.computational_inputs, g.ancilla_input, g.measurement,
                           {{PhotonConfig{0}, Complex(1.0, 0.0)},
                            {PhotonConfig{1}, Complex(1.0, 0.0)},
                            {PhotonConfig{2}, Complex(-1.0, 0.0)}});
    g.u0 = Eigen::MatrixXcd::Identity(3, 3);
    return g;
}

GateSpec cz_spec() {
    GateSpec g;
    g.name = "cz";
    g.n_modes = 8;
    g.n_ancilla = 4;
    // Dual rail: qubit 1 on modes (1,2), qubit 2 on modes (3,4), logical |0>
    // puts the photon in the first mode of the pair.
    g.computational_inputs = {PhotonConfig{1, 0, 1, 0}, PhotonConfig{1, 0, 0, 1},
                              PhotonConfig{0, 1, 1, 0}, PhotonConfig{0, 1, 0, 1}};
    g.ancilla_input = PhotonConfig{1, 0, 1, 0};
    g.measurement = PhotonConfig{1, 0, 1, 0};
    g.target = make_target(g.computational_inputs, g.ancilla_input, g.measurement,
                           {{PhotonConfig{1, 0, 1, 0}, Complex(1.0, 0.0)},
                            {PhotonConfig{1, 0, 0, 1}, Complex(1.0, 0.0)},
                            {PhotonConfig{0, 1, 1, 0}, Complex(1.0, 0.0)},
                            {PhotonConfig{0, 1, 0, 1}, Complex(-1.0, 0.0)}});
    g.u0 = Eigen::MatrixXcd::Identity(8, 8);
    return g;
}

std::array<Complex, 3> ns_closed_form(const Eigen::MatrixXcd& u) {
    if (u.rows() != 3 || u.cols() != 3) {
        throw std::invalid_argument("ns_closed_form: U must be 3x3");
    }
    const Complex u11 = u(0, 0), u12 = u(0, 1), u21 = u(1, 0), u22 = u(1, 1);
    return {u22, u12 * u21 + u11 * u22, u11 * u11 * u22 + 2.0 * u11 * u12 * u21};
}

}  // namespace loqgs
