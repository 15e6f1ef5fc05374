#pragma once

// Exponential-map parametrization of U(N): a real vector of N^2 angles over
// a fixed anti-Hermitian generator basis identifies every unitary as
// U = U0 exp(sum_i x_i g_i).

#include <Eigen/Dense>

#include <vector>

namespace loqgs {

/// Real coordinate vector in the generator basis.
using ParamVector = Eigen::VectorXd;

/// Ordered basis of u(N), R = N^2 anti-Hermitian matrices.
struct GeneratorBasis {
    int n = 0;
    std::vector<Eigen::MatrixXcd> generators;

    int size() const { return static_cast<int>(generators.size()); }
};

/// Matrix-unit basis of u(N), in this fixed order: i*E_kk for k = 1..N,
/// then for each pair k < l (lexicographic) the rotation E_kl - E_lk
/// followed by i*(E_kl + E_lk).
GeneratorBasis standard_generators(int n);

/// exp(H) by scaling-and-squaring with a truncated Taylor series; the input
/// is halved until its norm is <= 0.5, so the truncation error stays below
/// 1e-13 before squaring.
Eigen::MatrixXcd matrix_exp(const Eigen::MatrixXcd& h);

/// U0 * exp(sum_i x_i g_i). Exact at x = 0.
Eigen::MatrixXcd exp_map(const ParamVector& x, const Eigen::MatrixXcd& u0,
                         const GeneratorBasis& basis);

}  // namespace loqgs
