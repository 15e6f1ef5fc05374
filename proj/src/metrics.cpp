#include "loqgs/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace loqgs {

double fidelity(const TransformationMatrix& a, const TransformationMatrix& target) {
    if (!a.same_labels(target)) {
        throw std::invalid_argument("fidelity: basis labeling mismatch");
    }
    // The 1/D_c of the inner product cancels between numerator and denominator.
    const Complex overlap = (a.entries.array() * target.entries.array().conjugate()).sum();
    const double na = a.entries.squaredNorm();
    const double nt = target.entries.squaredNorm();
    if (na == 0.0 || nt == 0.0) return 0.0;
    return std::norm(overlap) / (na * nt);
}

double success_probability(const TransformationMatrix& a) {
    if (a.d_in() == 0) return 0.0;
    return a.entries.squaredNorm() / a.d_in();
}

std::pair<double, double> norm_bounds(const TransformationMatrix& a) {
    const Eigen::MatrixXcd gram = a.entries * a.entries.adjoint();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(gram, Eigen::EigenvaluesOnly);
    const auto& ev = solver.eigenvalues();
    return {std::max(0.0, ev.minCoeff()), std::max(0.0, ev.maxCoeff())};
}

double fitness(double f, double s, double t) {
    if (t <= 0.0) throw std::invalid_argument("fitness: temperature must be positive");
    return s * std::exp(-(1.0 - f) / t);
}

GateMetrics compute_metrics(const TransformationMatrix& a, const TransformationMatrix& target,
                            std::optional<double> temperature) {
    GateMetrics m;
    m.fidelity = fidelity(a, target);
    m.success = success_probability(a);
    const auto [lo, hi] = norm_bounds(a);
    m.norm_min = lo;
    m.norm_max = hi;
    m.fitness = temperature ? fitness(m.fidelity, m.success, *temperature) : m.fidelity;
    return m;
}

}  // namespace loqgs
