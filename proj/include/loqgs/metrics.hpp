#pragma once

// Operational fidelity, success probability, operator-norm bounds and the
// annealed fitness of a post-selected transformation matrix.

#include "loqgs/fock.hpp"

#include <optional>
#include <utility>

namespace loqgs {

struct GateMetrics {
    double fidelity = 0.0;
    double success = 0.0;
    double norm_min = 0.0;
    double norm_max = 0.0;
    double fitness = 0.0;
};

/// Squared Fubini-Study overlap |Tr(A T^dag)|^2 / (Tr(A A^dag) Tr(T T^dag)).
/// Ray-invariant; returns 0 for a vanishing A.
double fidelity(const TransformationMatrix& a, const TransformationMatrix& target);

/// Tr(A A^dag) / D_c, the squared Hilbert-Schmidt norm per input dimension.
double success_probability(const TransformationMatrix& a);

/// Extreme eigenvalues (min, max) of the input-space Gram matrix A A^dag.
/// They bracket success_probability for every input state.
std::pair<double, double> norm_bounds(const TransformationMatrix& a);

/// Annealed fitness S * exp(-(1 - F) / T). Rejects T <= 0.
double fitness(double f, double s, double t);

/// All of the above in one pass. Without a temperature the fitness column
/// is the fidelity itself (the unconstrained baseline).
GateMetrics compute_metrics(const TransformationMatrix& a, const TransformationMatrix& target,
                            std::optional<double> temperature = std::nullopt);

}  // namespace loqgs
