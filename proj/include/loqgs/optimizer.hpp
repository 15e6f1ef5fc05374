#pragma once

// Real-valued generational GA with an annealed fidelity penalty. All
// randomness is drawn from streams keyed by (seed, generation, slot), so a
// run is bit-reproducible at any evaluation worker count.

#include "loqgs/fock.hpp"
#include "loqgs/gates.hpp"
#include "loqgs/metrics.hpp"
#include "loqgs/unitary.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace loqgs {

enum class ScheduleKind { Constant, Arctan, InvSqrt, None };

/// Temperature schedule for the annealing penalty. `None` drops the penalty
/// entirely and optimizes fidelity alone.
struct Schedule {
    ScheduleKind kind = ScheduleKind::InvSqrt;
    double t0 = 1e-5;      // Constant only
    double floor = 1e-9;   // lowest temperature ever emitted

    static Schedule constant(double t0, double floor = 1e-9);
    static Schedule arctan() { return {ScheduleKind::Arctan}; }
    static Schedule inv_sqrt() { return {ScheduleKind::InvSqrt}; }
    static Schedule none() { return {ScheduleKind::None}; }

    std::string str() const;
    static Schedule parse(const std::string& text);

    friend bool operator==(const Schedule&, const Schedule&) = default;
};

/// Temperature at generation t: Constant -> T0; Arctan -> pi/2 - atan(t);
/// InvSqrt -> 1/sqrt(t) with t = 0 mapped to 1. Clamped to the floor.
/// Not defined for ScheduleKind::None.
double temperature(const Schedule& schedule, std::int64_t t);

struct GAConfig {
    int population_size = 200;
    int generations = 500;
    int tournament_size = 3;
    double crossover_rate = 0.9;
    double mutation_rate = 0.1;    // per gene
    double mutation_sigma = 0.1;
    int elitism = 2;
    double init_range = 3.14159265358979323846;  // uniform init half-width
    std::uint64_t seed = 0;

    void validate() const;
};

/// Defaults tuned per shipped gate; unknown gate names get the NS budget.
GAConfig default_config(const std::string& gate_name);

struct Evaluation {
    double fidelity = 0.0;
    double success = 0.0;
    double fitness = 0.0;
};

/// Fitness pipeline for one gate: exp_map -> projection -> metrics.
/// Immutable after construction; operator() is safe to call concurrently.
class GateEvaluator {
public:
    explicit GateEvaluator(const GateSpec& gate);

    Evaluation operator()(const ParamVector& x, std::optional<double> temperature) const;

    int param_count() const { return basis_.size(); }
    const GateSpec& gate() const { return gate_; }
    const GeneratorBasis& basis() const { return basis_; }

    Eigen::MatrixXcd unitary(const ParamVector& x) const;

private:
    GateSpec gate_;
    GeneratorBasis basis_;
    ProjectionPlan plan_;
    bool u0_is_identity_ = false;
};

/// One-off evaluation; builds the pipeline each call.
Evaluation evaluate(const ParamVector& x, const GateSpec& gate,
                    std::optional<double> temperature);

/// Per-gene Gaussian perturbation N(0, sigma^2) applied with probability
/// mutation_rate.
ParamVector mutate(const ParamVector& x, const GAConfig& config, std::mt19937_64& rng);

/// BLX-style arithmetic blend: with probability crossover_rate each gene
/// pair is mixed with its own lambda drawn uniformly from [-0.25, 1.25];
/// otherwise the parents are returned unchanged.
std::pair<ParamVector, ParamVector> crossover(const ParamVector& a, const ParamVector& b,
                                              const GAConfig& config, std::mt19937_64& rng);

/// The blend underlying crossover, exposed for direct checks.
std::pair<double, double> blend_genes(double a, double b, double lambda);

struct TracePoint {
    int generation = 0;
    double temperature = 0.0;  // NaN for the unconstrained baseline
    double best_fitness = 0.0;
    double best_fidelity = 0.0;
    double best_success = 0.0;
};

struct RunRecord {
    std::string gate;
    Schedule schedule;
    GAConfig config;
    ParamVector best_x;
    double best_fidelity = 0.0;
    double best_success = 0.0;
    std::vector<TracePoint> trace;
};

/// Generational GA: uniform init in [-init_range, init_range]^R, tournament
/// selection, blend crossover, Gaussian mutation, elitism, fitness recomputed
/// every generation at the scheduled temperature. Decaying schedules spend
/// the last 15% of the run at the schedule floor, which pins the population
/// to the fidelity constraint before the result is read out. Returns the
/// best individual ever evaluated, ranked by fitness at the run's last
/// temperature.
RunRecord run_ga(const GateSpec& gate, const GAConfig& config, const Schedule& schedule,
                 int n_workers = 1);

}  // namespace loqgs
