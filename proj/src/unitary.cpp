#include "loqgs/unitary.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace loqgs {

using Complex = std::complex<double>;

GeneratorBasis standard_generators(int n) {
    if (n < 1) throw std::invalid_argument("standard_generators: n must be >= 1");
    const Complex i(0.0, 1.0);

    GeneratorBasis basis;
    basis.n = n;
    basis.generators.reserve(static_cast<size_t>(n) * static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) {
        Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(n, n);
        g(k, k) = i;
        basis.generators.push_back(std::move(g));
    }
    for (int k = 0; k < n; ++k) {
        for (int l = k + 1; l < n; ++l) {
            Eigen::MatrixXcd rot = Eigen::MatrixXcd::Zero(n, n);
            rot(k, l) = Complex(1.0, 0.0);
            rot(l, k) = Complex(-1.0, 0.0);
            basis.generators.push_back(std::move(rot));

            Eigen::MatrixXcd phase = Eigen::MatrixXcd::Zero(n, n);
            phase(k, l) = i;
            phase(l, k) = i;
            basis.generators.push_back(std::move(phase));
        }
    }
    return basis;
}

Eigen::MatrixXcd matrix_exp(const Eigen::MatrixXcd& h) {
    if (h.rows() != h.cols()) throw std::invalid_argument("matrix_exp: matrix must be square");
    const Eigen::Index n = h.rows();

    // Halve until the infinity norm is <= 0.5.
    double norm = h.cwiseAbs().rowwise().sum().maxCoeff();
    int squarings = 0;
    while (norm > 0.5) {
        norm *= 0.5;
        ++squarings;
    }
    const Eigen::MatrixXcd b = h / std::exp2(squarings);

    Eigen::MatrixXcd sum = Eigen::MatrixXcd::Identity(n, n);
    Eigen::MatrixXcd term = Eigen::MatrixXcd::Identity(n, n);
    for (int k = 1; k <= 40; ++k) {
        term = (term * b) / static_cast<double>(k);
        sum += term;
        if (term.cwiseAbs().maxCoeff() < 1e-16) break;
    }
    for (int s = 0; s < squarings; ++s) sum = sum * sum;
    return sum;
}

Eigen::MatrixXcd exp_map(const ParamVector& x, const Eigen::MatrixXcd& u0,
                         const GeneratorBasis& basis) {
    if (x.size() != basis.size()) {
        throw std::invalid_argument("exp_map: parameter count != generator count");
    }
    if (u0.rows() != basis.n || u0.cols() != basis.n) {
        throw std::invalid_argument("exp_map: u0 dimension != generator dimension");
    }
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(basis.n, basis.n);
    for (int k = 0; k < basis.size(); ++k) {
        if (x[k] != 0.0) h += x[k] * basis.generators[static_cast<size_t>(k)];
    }
    return u0 * matrix_exp(h);
}

}  // namespace loqgs
