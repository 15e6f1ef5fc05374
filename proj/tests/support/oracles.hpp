#pragma once

// Test-only reference implementations, kept independent of the library's
// computation paths:
//  - naive_permanent: literal sum over all n! permutations.
//  - evolve_fock / oracle_amplitude: direct second-quantized evolution,
//    expanding prod_i (sum_j U_ij a_j^dag)^{n_i} |0> one photon at a time
//    and reading amplitudes off the creation-operator monomials.
//  - random_unitary: QR of a Ginibre sample (no exponential map involved).

#include <Eigen/Dense>

#include <algorithm>
#include <complex>
#include <map>
#include <numeric>
#include <random>
#include <vector>

#include "loqgs/fock.hpp"

namespace oracles {

using Complex = std::complex<double>;

inline Complex naive_permanent(const Eigen::MatrixXcd& m) {
    const int n = static_cast<int>(m.rows());
    if (n == 0) return Complex(1.0, 0.0);
    std::vector<int> perm(static_cast<size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    Complex sum(0.0, 0.0);
    do {
        Complex prod(1.0, 0.0);
        for (int i = 0; i < n; ++i) prod *= m(i, perm[static_cast<size_t>(i)]);
        sum += prod;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return sum;
}

/// Amplitudes of U |in> over the occupation basis (normalized Fock states).
inline std::map<std::vector<int>, Complex> evolve_fock(const Eigen::MatrixXcd& u,
                                                       const loqgs::PhotonConfig& in) {
    const int n = static_cast<int>(u.rows());
    // Monomial coefficients of prod (sum_j U_ij a_j^dag)^{n_i} applied to |0>.
    std::map<std::vector<int>, Complex> poly;
    poly[std::vector<int>(static_cast<size_t>(n), 0)] = Complex(1.0, 0.0);
    for (int mode = 0; mode < in.modes(); ++mode) {
        for (int photon = 0; photon < in[mode]; ++photon) {
            std::map<std::vector<int>, Complex> next;
            for (const auto& [mono, coef] : poly) {
                for (int j = 0; j < n; ++j) {
                    std::vector<int> grown = mono;
                    ++grown[static_cast<size_t>(j)];
                    next[grown] += coef * u(mode, j);
                }
            }
            poly = std::move(next);
        }
    }
    // (a_j^dag)^k |0> = sqrt(k!) |k>, input factors carry 1/sqrt(n_i!).
    double in_fact = 1.0;
    for (int mode = 0; mode < in.modes(); ++mode) {
        for (int k = 2; k <= in[mode]; ++k) in_fact *= k;
    }
    std::map<std::vector<int>, Complex> amplitudes;
    for (const auto& [mono, coef] : poly) {
        double out_fact = 1.0;
        for (int occ : mono) {
            for (int k = 2; k <= occ; ++k) out_fact *= k;
        }
        amplitudes[mono] = coef * std::sqrt(out_fact / in_fact);
    }
    return amplitudes;
}

inline Complex oracle_amplitude(const Eigen::MatrixXcd& u, const loqgs::PhotonConfig& out,
                                const loqgs::PhotonConfig& in) {
    const auto amplitudes = evolve_fock(u, in);
    const auto it = amplitudes.find(out.occupations());
    return it == amplitudes.end() ? Complex(0.0, 0.0) : it->second;
}

inline Eigen::MatrixXcd random_unitary(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXcd g(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double re = gauss(rng);
            const double im = gauss(rng);
            g(i, j) = Complex(re, im);
        }
    }
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
    return qr.householderQ();
}

inline Eigen::MatrixXcd random_complex_matrix(int n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    Eigen::MatrixXcd m(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double re = unif(rng);
            const double im = unif(rng);
            m(i, j) = Complex(re, im);
        }
    }
    return m;
}

}  // namespace oracles
