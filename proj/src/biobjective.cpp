#include "vanopt/biobjective.hpp"

#include "vanopt/rng.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <memory>
#include <numeric>
#include <stdexcept>

namespace vanopt {
namespace {

constexpr std::uint64_t kDeSalt = 0xDE00;
constexpr std::uint64_t kCrnSalt = 0xCC00;
constexpr std::uint64_t kReportSalt = 0x5EF0;

Eigen::Vector2d normalize(const ObjectivePair& obj, const NormBounds& nb) {
    return {(obj.payoff - nb.payoff_lo) / (nb.payoff_hi - nb.payoff_lo),
            (obj.probability - nb.prob_lo) / (nb.prob_hi - nb.prob_lo)};
}

/// Skyline pass over (payoff desc, probability desc, extreme first).
/// Keeps a point iff its probability strictly exceeds every kept
/// higher-payoff point's, which drops weakly dominated duplicates.
template <typename Point>
std::vector<Point> filter_impl(std::vector<Point> points) {
    std::stable_sort(points.begin(), points.end(),
                     [](const Point& a, const Point& b) {
                         if (a.objectives.payoff != b.objectives.payoff)
                             return a.objectives.payoff > b.objectives.payoff;
                         if (a.objectives.probability != b.objectives.probability)
                             return a.objectives.probability > b.objectives.probability;
                         return a.extreme && !b.extreme;
                     });
    std::vector<Point> kept;
    double best_prob = -std::numeric_limits<double>::infinity();
    double last_payoff = std::numeric_limits<double>::infinity();
    for (auto& p : points) {
        const bool same_payoff = p.objectives.payoff == last_payoff;
        if (!same_payoff && p.objectives.probability > best_prob) {
            best_prob = p.objectives.probability;
            last_payoff = p.objectives.payoff;
            kept.push_back(std::move(p));
        }
    }
    return kept;
}

}  // namespace

void AwsConfig::validate() const {
    if (initial_weight_count < 2)
        throw std::invalid_argument("initial_weight_count must be >= 2");
    if (!(delta > 0.0 && delta < 1.0))
        throw std::invalid_argument("delta must be in (0, 1)");
    if (max_refinement_rounds < 0)
        throw std::invalid_argument("max_refinement_rounds must be >= 0");
    if (!(segment_gap_threshold > 0.0))
        throw std::invalid_argument("segment_gap_threshold must be > 0");
    if (mc_paths_inner < 1 || mc_paths_report < 1)
        throw std::invalid_argument("mc path counts must be >= 1");
}

ObjectivePair evaluate_objectives(const ContractSpec& spec,
                                  const ExerciseCandidate& cand,
                                  const PathConfig& cfg) {
    return {call_payoff(cand.asset_value, spec.strike),
            probcal(spec, cand.asset_value, cand.time, cfg)};
}

double scalarized_fitness(const ObjectivePair& obj, const WeightPair& w,
                          const NormBounds& norm) {
    if (!(norm.payoff_hi != norm.payoff_lo) || !(norm.prob_hi != norm.prob_lo))
        throw std::invalid_argument("degenerate normalization bounds");
    const Eigen::Vector2d n = normalize(obj, norm);
    return -(w.w1 * n[0] + w.w2 * n[1]);
}

std::vector<ParetoPoint> nondominated_filter(std::vector<ParetoPoint> points) {
    return filter_impl(std::move(points));
}

std::vector<GenericFrontPoint> generate_front(
    const BiObjectiveProblem& problem, const DEConfig& de_cfg,
    const AwsConfig& aws_cfg, std::optional<StrategyId> single_strategy,
    FrontDiagnostics* diag) {
    aws_cfg.validate();
    if (problem.bounds.empty())
        throw std::invalid_argument("problem bounds must be non-empty");

    struct Raw {
        Eigen::VectorXd x;
        WeightPair weight;
        bool extreme;
    };
    std::vector<Raw> pool;
    std::uint64_t next_id = 0;

    // min_norm, when given, confines a refinement run to the objective-space
    // rectangle between the segment endpoints via a linear penalty; the base
    // fitness lives in [-1, 0], so a factor of 100 makes violations dominant.
    auto optimize = [&](const WeightPair& w, const Bounds& box, bool extreme,
                        const NormBounds* norm,
                        const Eigen::Vector2d* min_norm = nullptr) {
        const std::uint64_t id = next_id++;
        auto eval = problem.make_eval(id);
        Objective objective;
        if (norm == nullptr) {
            // extreme runs: raw single objective, normalization not yet known
            objective = [eval, w](const Eigen::VectorXd& x) {
                const ObjectivePair o = eval(x);
                return -(w.w1 * o.payoff + w.w2 * o.probability);
            };
        } else if (min_norm == nullptr) {
            const NormBounds nb = *norm;
            objective = [eval, w, nb](const Eigen::VectorXd& x) {
                return scalarized_fitness(eval(x), w, nb);
            };
        } else {
            const NormBounds nb = *norm;
            const Eigen::Vector2d floor = *min_norm;
            objective = [eval, w, nb, floor](const Eigen::VectorXd& x) {
                const ObjectivePair o = eval(x);
                const Eigen::Vector2d n{
                    (o.payoff - nb.payoff_lo) / (nb.payoff_hi - nb.payoff_lo),
                    (o.probability - nb.prob_lo) / (nb.prob_hi - nb.prob_lo)};
                const double penalty =
                    100.0 * (std::max(0.0, floor[0] - n[0]) +
                             std::max(0.0, floor[1] - n[1]));
                return scalarized_fitness(o, w, nb) + penalty;
            };
        }
        DEConfig cfg = de_cfg;
        cfg.bounds = box;
        cfg.seed = derive_seed(de_cfg.seed, kDeSalt + id);
        const DEResult result =
            single_strategy ? run_single_strategy_de(objective, cfg, *single_strategy)
                            : run_cmde(objective, cfg);
        pool.push_back({result.best, w, extreme});
    };

    optimize({1.0, 0.0}, problem.bounds, true, nullptr);
    optimize({0.0, 1.0}, problem.bounds, true, nullptr);

    // utopia/nadir from the two extreme champions under the report evaluator
    const ObjectivePair ext_payoff = problem.report_eval(pool[0].x);
    const ObjectivePair ext_prob = problem.report_eval(pool[1].x);
    NormBounds norm;
    norm.payoff_lo = std::min(ext_payoff.payoff, ext_prob.payoff);
    norm.payoff_hi = std::max(ext_payoff.payoff, ext_prob.payoff);
    norm.prob_lo = std::min(ext_payoff.probability, ext_prob.probability);
    norm.prob_hi = std::max(ext_payoff.probability, ext_prob.probability);
    if (norm.payoff_hi - norm.payoff_lo < 1e-12) norm.payoff_hi = norm.payoff_lo + 1.0;
    if (norm.prob_hi - norm.prob_lo < 1e-12) norm.prob_hi = norm.prob_lo + 1.0;

    const int n_weights = aws_cfg.initial_weight_count;
    for (int i = 1; i + 1 < n_weights; ++i) {
        const double w1 = static_cast<double>(i) / (n_weights - 1);
        optimize({w1, 1.0 - w1}, problem.bounds, false, &norm);
    }

    auto score = [&](const Raw& raw) {
        GenericFrontPoint p;
        p.x = raw.x;
        p.objectives = problem.report_eval(raw.x);
        p.normalized = normalize(p.objectives, norm);
        p.weight = raw.weight;
        p.extreme = raw.extreme;
        return p;
    };

    std::vector<GenericFrontPoint> scored;
    for (const auto& raw : pool) scored.push_back(score(raw));
    std::vector<GenericFrontPoint> front = filter_impl(scored);

    const std::size_t dim = problem.bounds.size();
    for (int round = 0; round < aws_cfg.max_refinement_rounds; ++round) {
        // adjacent pairs in payoff order with a wide normalized gap
        std::vector<GenericFrontPoint> sorted = front;
        std::sort(sorted.begin(), sorted.end(),
                  [](const auto& a, const auto& b) {
                      return a.normalized[0] < b.normalized[0];
                  });
        const std::size_t pool_before = pool.size();
        for (std::size_t k = 0; k + 1 < sorted.size(); ++k) {
            const auto& a = sorted[k];
            const auto& b = sorted[k + 1];
            const Eigen::Vector2d gap = b.normalized - a.normalized;
            if (gap.norm() <= aws_cfg.segment_gap_threshold) continue;

            // candidate-space hull of the segment endpoints (sliver fallback
            // for dimensions the segment is flat in)
            Bounds box(dim);
            bool usable = true;
            for (std::size_t d = 0; d < dim; ++d) {
                double lo = std::min(a.x[static_cast<int>(d)], b.x[static_cast<int>(d)]);
                double hi = std::max(a.x[static_cast<int>(d)], b.x[static_cast<int>(d)]);
                if (!(hi - lo > 1e-12)) {
                    const double span =
                        problem.bounds[d].second - problem.bounds[d].first;
                    const double mid = 0.5 * (lo + hi);
                    lo = std::max(problem.bounds[d].first, mid - 1e-6 * span);
                    hi = std::min(problem.bounds[d].second, mid + 1e-6 * span);
                    if (!(hi - lo > 0.0)) usable = false;
                }
                box[d] = {lo, hi};
            }
            if (!usable) continue;

            // confine the run to the objective rectangle between the
            // endpoints, inset by delta, so neither endpoint region wins
            const double dpay = std::abs(gap[0]);
            const double dprob = std::abs(gap[1]);
            const Eigen::Vector2d floor{
                std::min(a.normalized[0], b.normalized[0]) + aws_cfg.delta * dpay,
                std::min(a.normalized[1], b.normalized[1]) + aws_cfg.delta * dprob};

            // chord-supporting weight for the segment
            WeightPair w{0.5, 0.5};
            if (dpay + dprob > 1e-12) {
                w.w1 = dprob / (dpay + dprob);
                w.w2 = 1.0 - w.w1;
            }
            optimize(w, box, false, &norm, &floor);
        }
        if (pool.size() == pool_before) break;
        for (std::size_t k = pool_before; k < pool.size(); ++k)
            scored.push_back(score(pool[k]));
        front = filter_impl(scored);
    }

    // strictly dominated sub-optimization results (exact duplicates excluded)
    int dominated = 0;
    for (const auto& p : scored) {
        bool strictly_dominated = false;
        for (const auto& q : scored) {
            if (q.objectives.payoff >= p.objectives.payoff &&
                q.objectives.probability >= p.objectives.probability &&
                (q.objectives.payoff > p.objectives.payoff ||
                 q.objectives.probability > p.objectives.probability)) {
                strictly_dominated = true;
                break;
            }
        }
        if (strictly_dominated) ++dominated;
    }
    if (dominated > 0)
        std::cerr << "note: " << dominated
                  << " dominated sub-optimization result(s) discarded\n";
    if (diag != nullptr) diag->dominated_discards += dominated;
    return front;
}

Bounds candidate_bounds(const ContractSpec& spec) {
    const double maturity = spec.maturity_years();
    const double asset_hi =
        spec.spot *
        std::exp((spec.rate + 4.0 * spec.volatility) * maturity);
    if (spec.style == ExerciseStyle::European) return {{0.0, asset_hi}};
    const double t_lo = std::min(1.0 / spec.days_per_year, 0.5 * maturity);
    return {{t_lo, maturity}, {0.0, asset_hi}};
}

std::vector<ParetoPoint> generate_pareto_front(
    const ContractSpec& spec, const DEConfig& de_cfg, const AwsConfig& aws_cfg,
    std::optional<StrategyId> single_strategy, FrontDiagnostics* diag) {
    spec.validate();
    aws_cfg.validate();
    const bool european = spec.style == ExerciseStyle::European;
    const double maturity = spec.maturity_years();
    const double strike = spec.strike;

    auto as_candidate = [european, maturity](const Eigen::VectorXd& x) {
        ExerciseCandidate cand;
        cand.time = european ? maturity : x[0];
        cand.asset_value = european ? x[0] : x[1];
        return cand;
    };

    BiObjectiveProblem problem;
    problem.bounds = candidate_bounds(spec);
    problem.make_eval = [spec, strike, as_candidate, &de_cfg,
                         &aws_cfg](std::uint64_t id) {
        auto crn = std::make_shared<CrnProbEvaluator>(
            spec, aws_cfg.mc_paths_inner, derive_seed(de_cfg.seed, kCrnSalt + id));
        return [crn, strike, as_candidate](const Eigen::VectorXd& x) {
            const ExerciseCandidate cand = as_candidate(x);
            return ObjectivePair{call_payoff(cand.asset_value, strike),
                                 crn->prob(cand.asset_value, cand.time)};
        };
    };
    {
        auto crn = std::make_shared<CrnProbEvaluator>(
            spec, aws_cfg.mc_paths_report, derive_seed(de_cfg.seed, kReportSalt));
        problem.report_eval = [crn, strike, as_candidate](const Eigen::VectorXd& x) {
            const ExerciseCandidate cand = as_candidate(x);
            return ObjectivePair{call_payoff(cand.asset_value, strike),
                                 crn->prob(cand.asset_value, cand.time)};
        };
    }

    const std::vector<GenericFrontPoint> generic =
        generate_front(problem, de_cfg, aws_cfg, single_strategy, diag);

    std::vector<ParetoPoint> front;
    front.reserve(generic.size());
    for (const auto& g : generic) {
        ParetoPoint p;
        p.candidate = as_candidate(g.x);
        p.objectives = g.objectives;
        p.normalized = g.normalized;
        p.weight = g.weight;
        p.extreme = g.extreme;
        front.push_back(p);
    }
    return front;
}

}  // namespace vanopt
