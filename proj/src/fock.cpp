#include "loqgs/fock.hpp"
#include "loqgs/gates.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace loqgs {

namespace {

double factorial(int n) {
    double f = 1.0;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

// per(A) = (-1)^n sum over nonempty column subsets S of (-1)^|S| prod_i sum_{j in S} A_ij.
// Gray-code iteration keeps the row sums incremental; cost n * 2^n.
Complex ryser_permanent(const Eigen::MatrixXcd& u, std::span<const int> rows,
                        std::span<const int> cols) {
    const int n = static_cast<int>(rows.size());
    thread_local std::vector<Complex> rowsum;
    rowsum.assign(static_cast<size_t>(n), Complex(0.0, 0.0));

    Complex total(0.0, 0.0);
    const std::uint64_t count = std::uint64_t(1) << n;
    std::uint64_t gray = 0;
    int parity = 0;  // popcount(gray) mod 2
    for (std::uint64_t k = 1; k < count; ++k) {
        const int j = std::countr_zero(k);
        gray ^= std::uint64_t(1) << j;
        parity ^= 1;
        if ((gray >> j) & 1) {
            for (int i = 0; i < n; ++i) rowsum[static_cast<size_t>(i)] += u(rows[i], cols[j]);
        } else {
            for (int i = 0; i < n; ++i) rowsum[static_cast<size_t>(i)] -= u(rows[i], cols[j]);
        }
        Complex prod(1.0, 0.0);
        for (int i = 0; i < n; ++i) prod *= rowsum[static_cast<size_t>(i)];
        total += parity ? -prod : prod;
    }
    return (n % 2) ? -total : total;
}

Complex permanent_selected(const Eigen::MatrixXcd& u, std::span<const int> rows,
                           std::span<const int> cols) {
    const int n = static_cast<int>(rows.size());
    switch (n) {
        case 0:
            return Complex(1.0, 0.0);
        case 1:
            return u(rows[0], cols[0]);
        case 2:
            return u(rows[0], cols[0]) * u(rows[1], cols[1]) +
                   u(rows[0], cols[1]) * u(rows[1], cols[0]);
        case 3: {
            const Complex a = u(rows[0], cols[0]), b = u(rows[0], cols[1]), c = u(rows[0], cols[2]);
            const Complex d = u(rows[1], cols[0]), e = u(rows[1], cols[1]), f = u(rows[1], cols[2]);
            const Complex g = u(rows[2], cols[0]), h = u(rows[2], cols[1]), i = u(rows[2], cols[2]);
            return a * (e * i + f * h) + b * (d * i + f * g) + c * (d * h + e * g);
        }
        default:
            return ryser_permanent(u, rows, cols);
    }
}

}  // namespace

PhotonConfig::PhotonConfig(std::vector<int> occupations) : occ_(std::move(occupations)) {
    for (int n : occ_) {
        if (n < 0) throw std::invalid_argument("PhotonConfig: negative occupation");
    }
}

PhotonConfig::PhotonConfig(std::initializer_list<int> occupations)
    : PhotonConfig(std::vector<int>(occupations)) {}

int PhotonConfig::total() const {
    return std::accumulate(occ_.begin(), occ_.end(), 0);
}

PhotonConfig PhotonConfig::concat(const PhotonConfig& tail) const {
    std::vector<int> joined = occ_;
    joined.insert(joined.end(), tail.occ_.begin(), tail.occ_.end());
    return PhotonConfig(std::move(joined));
}

std::vector<int> PhotonConfig::mode_list() const {
    std::vector<int> modes;
    modes.reserve(static_cast<size_t>(total()));
    for (int m = 0; m < static_cast<int>(occ_.size()); ++m) {
        for (int k = 0; k < occ_[static_cast<size_t>(m)]; ++k) modes.push_back(m);
    }
    return modes;
}

double PhotonConfig::factorial_product() const {
    double f = 1.0;
    for (int n : occ_) f *= factorial(n);
    return f;
}

std::string PhotonConfig::str() const {
    std::ostringstream os;
    os << '|';
    for (size_t i = 0; i < occ_.size(); ++i) {
        if (i) os << ',';
        os << occ_[i];
    }
    os << '>';
    return os.str();
}

int FockBasis::index_of(const PhotonConfig& config) const {
    // states are sorted descending, so binary search with the reversed order.
    auto it = std::lower_bound(states.begin(), states.end(), config,
                               [](const PhotonConfig& a, const PhotonConfig& b) { return a > b; });
    if (it != states.end() && *it == config) return static_cast<int>(it - states.begin());
    return -1;
}

FockBasis enumerate_basis(int modes, int photons) {
    if (modes < 1) throw std::invalid_argument("enumerate_basis: modes must be >= 1");
    if (photons < 0) throw std::invalid_argument("enumerate_basis: photons must be >= 0");

    FockBasis basis;
    basis.modes = modes;
    basis.photons = photons;

    std::vector<int> occ(static_cast<size_t>(modes), 0);
    occ[0] = photons;
    for (;;) {
        basis.states.emplace_back(occ);
        // Next composition in descending lexicographic order: move one photon
        // from the rightmost donor (any mode but the last) one step right and
        // pull everything beyond back onto that position.
        int donor = -1;
        for (int m = modes - 2; m >= 0; --m) {
            if (occ[static_cast<size_t>(m)] > 0) {
                donor = m;
                break;
            }
        }
        if (donor < 0) break;
        int carried = 1;
        for (int m = donor + 1; m < modes; ++m) {
            carried += occ[static_cast<size_t>(m)];
            occ[static_cast<size_t>(m)] = 0;
        }
        occ[static_cast<size_t>(donor)] -= 1;
        occ[static_cast<size_t>(donor) + 1] = carried;
    }
    return basis;
}

Complex permanent(const Eigen::MatrixXcd& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("permanent: matrix must be square");
    const int n = static_cast<int>(m.rows());
    std::vector<int> idx(static_cast<size_t>(n));
    std::iota(idx.begin(), idx.end(), 0);
    return permanent_selected(m, idx, idx);
}

Complex transition_amplitude(const Eigen::MatrixXcd& u, const PhotonConfig& out,
                             const PhotonConfig& in) {
    if (u.rows() != u.cols()) throw std::invalid_argument("transition_amplitude: U must be square");
    if (out.modes() != u.rows() || in.modes() != u.rows()) {
        throw std::invalid_argument("transition_amplitude: config length does not match U");
    }
    if (out.total() != in.total()) return Complex(0.0, 0.0);

    // a_i^dag -> sum_j U_ij a_j^dag: submatrix rows repeat per input
    // occupation, columns per output occupation.
    const std::vector<int> rows = in.mode_list();
    const std::vector<int> cols = out.mode_list();
    const Complex per = permanent_selected(u, rows, cols);
    return per / std::sqrt(in.factorial_product() * out.factorial_product());
}

bool TransformationMatrix::same_labels(const TransformationMatrix& other) const {
    return inputs == other.inputs && outputs == other.outputs && row_span == other.row_span;
}

OutputLabeling output_labeling(const std::vector<PhotonConfig>& comp_inputs,
                               const PhotonConfig& ancilla_input,
                               const PhotonConfig& measurement) {
    if (comp_inputs.empty()) throw std::invalid_argument("output_labeling: no input configs");
    const int comp_modes = comp_inputs.front().modes();
    for (const auto& c : comp_inputs) {
        if (c.modes() != comp_modes) {
            throw std::invalid_argument("output_labeling: ragged input configs");
        }
    }

    OutputLabeling lab;
    std::map<int, std::pair<int, int>> sector_span;  // output photons -> column block
    for (const auto& input : comp_inputs) {
        const int out_photons = input.total() + ancilla_input.total() - measurement.total();
        if (out_photons < 0) {
            // Measurement asks for more photons than are available: this row
            // has an empty output basis, not an error.
            lab.row_span.emplace_back(static_cast<int>(lab.outputs.size()),
                                      static_cast<int>(lab.outputs.size()));
            continue;
        }
        auto it = sector_span.find(out_photons);
        if (it == sector_span.end()) {
            const FockBasis sector = enumerate_basis(comp_modes, out_photons);
            const int first = static_cast<int>(lab.outputs.size());
            lab.outputs.insert(lab.outputs.end(), sector.states.begin(), sector.states.end());
            it = sector_span.emplace(out_photons, std::make_pair(first, first + sector.size()))
                     .first;
        }
        lab.row_span.push_back(it->second);
    }
    return lab;
}

ProjectionPlan::ProjectionPlan(const GateSpec& gate) {
    gate.validate();
    n_modes_ = gate.n_modes;
    inputs_ = gate.computational_inputs;

    OutputLabeling lab = output_labeling(inputs_, gate.ancilla_input, gate.measurement);
    outputs_ = std::move(lab.outputs);
    row_span_ = std::move(lab.row_span);

    row_modes_.reserve(inputs_.size());
    row_fact_.reserve(inputs_.size());
    for (const auto& input : inputs_) {
        const PhotonConfig full_in = input.concat(gate.ancilla_input);
        row_modes_.push_back(full_in.mode_list());
        row_fact_.push_back(full_in.factorial_product());
    }
    col_modes_.reserve(outputs_.size());
    col_fact_.reserve(outputs_.size());
    for (const auto& output : outputs_) {
        const PhotonConfig full_out = output.concat(gate.measurement);
        col_modes_.push_back(full_out.mode_list());
        col_fact_.push_back(full_out.factorial_product());
    }
}

TransformationMatrix ProjectionPlan::apply(const Eigen::MatrixXcd& u) const {
    if (u.rows() != n_modes_ || u.cols() != n_modes_) {
        throw std::invalid_argument("ProjectionPlan::apply: U dimension does not match gate");
    }
    TransformationMatrix a;
    a.inputs = inputs_;
    a.outputs = outputs_;
    a.row_span = row_span_;
    a.entries = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(inputs_.size()),
                                       static_cast<Eigen::Index>(outputs_.size()));
    for (size_t i = 0; i < inputs_.size(); ++i) {
        const auto [first, last] = row_span_[i];
        for (int j = first; j < last; ++j) {
            const Complex per = permanent_selected(u, row_modes_[i], col_modes_[static_cast<size_t>(j)]);
            a.entries(static_cast<Eigen::Index>(i), j) =
                per / std::sqrt(row_fact_[i] * col_fact_[static_cast<size_t>(j)]);
        }
    }
    return a;
}

TransformationMatrix project_transformation(const Eigen::MatrixXcd& u, const GateSpec& gate) {
    return ProjectionPlan(gate).apply(u);
}

}  // namespace loqgs
