#pragma once

// Bosonic Fock bases, multi-photon transition amplitudes of an
// interferometer unitary, and the post-selected transformation matrix
// obtained by heralding a photon pattern on the ancilla modes.

#include <Eigen/Dense>

#include <compare>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace loqgs {

using Complex = std::complex<double>;

struct GateSpec;

/// Occupation-number vector: photons per optical mode.
class PhotonConfig {
public:
    PhotonConfig() = default;
    explicit PhotonConfig(std::vector<int> occupations);
    PhotonConfig(std::initializer_list<int> occupations);

    int modes() const { return static_cast<int>(occ_.size()); }
    int total() const;
    int operator[](int mode) const { return occ_[static_cast<size_t>(mode)]; }
    const std::vector<int>& occupations() const { return occ_; }

    /// This config followed by `tail` (computational modes then ancilla modes).
    PhotonConfig concat(const PhotonConfig& tail) const;

    /// Mode indices with each index repeated by its occupation, e.g. (2,0,1) -> {0,0,2}.
    std::vector<int> mode_list() const;

    /// Product of occupation factorials.
    double factorial_product() const;

    std::string str() const;  // "|210>"

    friend bool operator==(const PhotonConfig&, const PhotonConfig&) = default;
    friend auto operator<=>(const PhotonConfig&, const PhotonConfig&) = default;

private:
    std::vector<int> occ_;
};

/// All occupation vectors of a fixed photon number over a fixed mode count,
/// in descending lexicographic order.
struct FockBasis {
    int modes = 0;
    int photons = 0;
    std::vector<PhotonConfig> states;

    int size() const { return static_cast<int>(states.size()); }
    /// Index of `config` in `states`, or -1 if absent.
    int index_of(const PhotonConfig& config) const;
};

FockBasis enumerate_basis(int modes, int photons);

/// Permanent of a square complex matrix. Exact inclusion-exclusion (Ryser
/// with Gray-code updates) above 3x3, direct expansion below. Never sampled.
Complex permanent(const Eigen::MatrixXcd& m);

/// <out| U |in> for an N-mode interferometer unitary acting on Fock states.
/// Zero when the photon totals differ.
Complex transition_amplitude(const Eigen::MatrixXcd& u, const PhotonConfig& out,
                             const PhotonConfig& in);

/// Post-selected transformation matrix over labeled computational bases.
/// Columns are grouped into photon-number sectors; row i is supported only
/// on its own sector, so entries outside `row_span[i]` are exactly zero.
/// When all rows share one photon total there is a single sector and the
/// matrix is plain D_in x D_out.
struct TransformationMatrix {
    Eigen::MatrixXcd entries;                    // D_in x D_out
    std::vector<PhotonConfig> inputs;            // row labels
    std::vector<PhotonConfig> outputs;           // column labels, sector-ordered
    std::vector<std::pair<int, int>> row_span;   // [first, last) column block per row

    int d_in() const { return static_cast<int>(entries.rows()); }
    int d_out() const { return static_cast<int>(entries.cols()); }
    bool same_labels(const TransformationMatrix& other) const;
};

/// Column labeling induced by a gate's photon bookkeeping: one basis block
/// per distinct output photon number, in order of first appearance by row.
struct OutputLabeling {
    std::vector<PhotonConfig> outputs;
    std::vector<std::pair<int, int>> row_span;
};

OutputLabeling output_labeling(const std::vector<PhotonConfig>& comp_inputs,
                               const PhotonConfig& ancilla_input,
                               const PhotonConfig& measurement);

/// Precomputed index lists for evaluating the transformation matrix of one
/// gate for many unitaries. apply() is pure and safe to call concurrently.
class ProjectionPlan {
public:
    explicit ProjectionPlan(const GateSpec& gate);

    TransformationMatrix apply(const Eigen::MatrixXcd& u) const;

    int n_modes() const { return n_modes_; }
    const std::vector<PhotonConfig>& outputs() const { return outputs_; }

private:
    int n_modes_ = 0;
    std::vector<PhotonConfig> inputs_;
    std::vector<PhotonConfig> outputs_;
    std::vector<std::pair<int, int>> row_span_;
    std::vector<std::vector<int>> row_modes_;  // U row indices per input row
    std::vector<std::vector<int>> col_modes_;  // U column indices per output column
    std::vector<double> row_fact_;             // occupation factorial products
    std::vector<double> col_fact_;
};

/// The operator A of the heralded transformation, as a labeled matrix.
TransformationMatrix project_transformation(const Eigen::MatrixXcd& u, const GateSpec& gate);

}  // namespace loqgs
