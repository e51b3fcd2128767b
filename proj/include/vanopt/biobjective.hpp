#pragma once

#include "vanopt/cmde.hpp"
#include "vanopt/market_model.hpp"

#include <optional>

namespace vanopt {

struct ObjectivePair {
    double payoff = 0.0;
    double probability = 0.0;
};

struct WeightPair {
    double w1 = 0.5;  // payoff weight
    double w2 = 0.5;  // probability weight
};

/// Nadir..utopia span per objective, used to put payoff (order 1e2) and
/// probability (order 1e0) on the same scale before scalarization.
struct NormBounds {
    double payoff_lo = 0.0;
    double payoff_hi = 1.0;
    double prob_lo = 0.0;
    double prob_hi = 1.0;
};

struct ParetoPoint {
    ExerciseCandidate candidate;
    ObjectivePair objectives;
    Eigen::Vector2d normalized{0.0, 0.0};  // (payoff_norm, prob_norm)
    WeightPair weight;
    bool extreme = false;  // produced by a pure single-objective weight
};

struct AwsConfig {
    int initial_weight_count = 11;
    double delta = 0.1;
    int max_refinement_rounds = 5;
    double segment_gap_threshold = 0.05;
    std::int64_t mc_paths_inner = 10000;
    std::int64_t mc_paths_report = 100000;

    void validate() const;
};

ObjectivePair evaluate_objectives(const ContractSpec& spec,
                                  const ExerciseCandidate& cand,
                                  const PathConfig& cfg);

/// Weighted sum of min-max normalized objectives, negated to fit the
/// minimizer contract of run_cmde.
double scalarized_fitness(const ObjectivePair& obj, const WeightPair& w,
                          const NormBounds& norm);

/// Maximal mutually non-dominated subset under (maximize payoff, maximize
/// probability); weakly dominated duplicates are dropped, extreme-tagged
/// points win ties, output sorted by descending payoff.
std::vector<ParetoPoint> nondominated_filter(std::vector<ParetoPoint> points);

/// Generic bi-objective problem, both components maximized. make_eval(id)
/// yields the (deterministic) evaluator for sub-optimization `id`;
/// report_eval re-scores merged candidates consistently.
struct BiObjectiveProblem {
    std::function<std::function<ObjectivePair(const Eigen::VectorXd&)>(
        std::uint64_t)>
        make_eval;
    std::function<ObjectivePair(const Eigen::VectorXd&)> report_eval;
    Bounds bounds;
};

struct GenericFrontPoint {
    Eigen::VectorXd x;
    ObjectivePair objectives;
    Eigen::Vector2d normalized{0.0, 0.0};
    WeightPair weight;
    bool extreme = false;
};

/// Sub-optimization results that came back strictly dominated (discarded,
/// run continues). Exact duplicates are not counted.
struct FrontDiagnostics {
    int dominated_discards = 0;
};

/// Adaptive weighted-sum front generation: extreme runs fix the
/// normalization, a uniform weight sweep seeds the front, then wide
/// segments are refined by sub-optimizations confined (by penalty) to the
/// objective-space rectangle between the segment endpoints, inset by
/// delta. The confinement recovers non-convex front regions a plain
/// weighted sum skips over.
std::vector<GenericFrontPoint> generate_front(
    const BiObjectiveProblem& problem, const DEConfig& de_cfg,
    const AwsConfig& aws_cfg,
    std::optional<StrategyId> single_strategy = std::nullopt,
    FrontDiagnostics* diag = nullptr);

/// Search bounds for a contract: asset in [0, S0 * exp((r + 4 sigma) T)],
/// time in [one day, T] (American) or fixed at T (European).
Bounds candidate_bounds(const ContractSpec& spec);

std::vector<ParetoPoint> generate_pareto_front(
    const ContractSpec& spec, const DEConfig& de_cfg, const AwsConfig& aws_cfg,
    std::optional<StrategyId> single_strategy = std::nullopt,
    FrontDiagnostics* diag = nullptr);

}  // namespace vanopt
