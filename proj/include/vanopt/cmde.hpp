#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <random>
#include <utility>
#include <vector>

namespace vanopt {

using Objective = std::function<double(const Eigen::VectorXd&)>;
using Bounds = std::vector<std::pair<double, double>>;

struct DEConfig {
    int population_size = 200;
    int max_iterations = 600;
    double scale_factor = 0.5;
    double crossover_prob = 0.9;
    Bounds bounds;
    std::uint64_t seed = 0;

    void validate() const;
};

enum class StrategyId { Rand1 = 0, Best1 = 1, CurrentToBest1 = 2 };
inline constexpr int kNumStrategies = 3;

struct Population {
    Eigen::MatrixXd vectors;  // NP x D, row per individual
    Eigen::VectorXd fitness;
    int generation = 0;

    int best_index() const;
};

struct DEResult {
    Eigen::VectorXd best;
    double best_fitness = 0.0;
    /// history[s][g]: best fitness of strategy s after generation g.
    std::vector<std::vector<double>> history;
};

Eigen::VectorXd mutate_rand1(const Population& pop, int i, double lambda,
                             std::mt19937_64& rng);
Eigen::VectorXd mutate_best1(const Population& pop, int i, double lambda,
                             std::mt19937_64& rng);
Eigen::VectorXd mutate_current_to_best1(const Population& pop, int i,
                                        double lambda, std::mt19937_64& rng);

Eigen::VectorXd binomial_crossover(const Eigen::VectorXd& target,
                                   const Eigen::VectorXd& mutant, double cr,
                                   std::mt19937_64& rng);

/// Out-of-range components are clipped to the violated bound.
Eigen::VectorXd repair_bounds(Eigen::VectorXd v, const Bounds& bounds);

/// Three mutation strategies over independent sub-populations with a global
/// selection across their champions. Minimizes the objective.
DEResult run_cmde(const Objective& objective, const DEConfig& cfg);

/// One mutation scheme only; shares the initialization and per-strategy
/// random streams with run_cmde, so its history matches the corresponding
/// sub-population of a run_cmde call with the same seed.
DEResult run_single_strategy_de(const Objective& objective, const DEConfig& cfg,
                                StrategyId strategy);

}  // namespace vanopt
