#include "vanopt/cmde.hpp"

#include "vanopt/rng.hpp"

#include <limits>
#include <sstream>
#include <stdexcept>

namespace vanopt {
namespace {

constexpr std::uint64_t kInitSalt = 0x696e6974ULL;  // "init"

/// Distinct random indices in [0, np), all different from each other and
/// from `exclude`; rejection sampling keeps the stream reproducible.
void draw_distinct(int np, int exclude, std::mt19937_64& rng, int* out,
                   int count) {
    if (np < count + 1)
        throw std::invalid_argument("population too small for distinct draws");
    std::uniform_int_distribution<int> pick(0, np - 1);
    for (int k = 0; k < count; ++k) {
        int candidate;
        bool fresh;
        do {
            candidate = pick(rng);
            fresh = candidate != exclude;
            for (int j = 0; j < k && fresh; ++j)
                fresh = candidate != out[j];
        } while (!fresh);
        out[k] = candidate;
    }
}

double checked_eval(const Objective& objective, const Eigen::VectorXd& x) {
    try {
        return objective(x);
    } catch (const std::exception& e) {
        std::ostringstream msg;
        msg << "objective evaluation failed at [";
        for (int d = 0; d < x.size(); ++d)
            msg << (d ? ", " : "") << x[d];
        msg << "]: " << e.what();
        throw std::runtime_error(msg.str());
    }
}

Population init_population(const Objective& objective, const DEConfig& cfg) {
    const int np = cfg.population_size;
    const int dim = static_cast<int>(cfg.bounds.size());
    auto rng = make_rng(derive_seed(cfg.seed, kInitSalt));
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    Population pop;
    pop.vectors.resize(np, dim);
    pop.fitness.resize(np);
    for (int i = 0; i < np; ++i)
        for (int d = 0; d < dim; ++d) {
            const auto& [lo, hi] = cfg.bounds[d];
            pop.vectors(i, d) = lo + (hi - lo) * unit(rng);
        }
    for (int i = 0; i < np; ++i)
        pop.fitness[i] = checked_eval(objective, pop.vectors.row(i));
    return pop;
}

/// One strategy's full evolution; the random stream is keyed on
/// (seed, strategy) so run_cmde and run_single_strategy_de agree.
std::vector<double> evolve(const Objective& objective, const DEConfig& cfg,
                           StrategyId strategy, Population& pop) {
    const int np = cfg.population_size;
    auto rng = make_rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(strategy)));
    std::vector<double> history;
    history.reserve(cfg.max_iterations);

    for (int gen = 0; gen < cfg.max_iterations; ++gen) {
        for (int i = 0; i < np; ++i) {
            Eigen::VectorXd mutant;
            switch (strategy) {
                case StrategyId::Rand1:
                    mutant = mutate_rand1(pop, i, cfg.scale_factor, rng);
                    break;
                case StrategyId::Best1:
                    mutant = mutate_best1(pop, i, cfg.scale_factor, rng);
                    break;
                case StrategyId::CurrentToBest1:
                    mutant = mutate_current_to_best1(pop, i, cfg.scale_factor, rng);
                    break;
            }
            Eigen::VectorXd trial = binomial_crossover(
                pop.vectors.row(i), mutant, cfg.crossover_prob, rng);
            trial = repair_bounds(std::move(trial), cfg.bounds);
            const double trial_fitness = checked_eval(objective, trial);
            // greedy one-to-one selection; ties keep the trial
            if (trial_fitness <= pop.fitness[i]) {
                pop.vectors.row(i) = trial;
                pop.fitness[i] = trial_fitness;
            }
        }
        pop.generation = gen + 1;
        history.push_back(pop.fitness.minCoeff());
    }
    return history;
}

}  // namespace

void DEConfig::validate() const {
    if (population_size < 4)
        throw std::invalid_argument(
            "population_size must be >= 4 (three distinct donors plus target)");
    if (max_iterations < 1)
        throw std::invalid_argument("max_iterations must be >= 1");
    if (!(scale_factor > 0.0 && scale_factor <= 1.0))
        throw std::invalid_argument("scale_factor must be in (0, 1]");
    if (!(crossover_prob >= 0.0 && crossover_prob <= 1.0))
        throw std::invalid_argument("crossover_prob must be in [0, 1]");
    if (bounds.empty()) throw std::invalid_argument("bounds must be non-empty");
    for (const auto& [lo, hi] : bounds)
        if (!(lo < hi))
            throw std::invalid_argument("each bound must satisfy low < high");
}

int Population::best_index() const {
    int idx = 0;
    fitness.minCoeff(&idx);
    return idx;
}

Eigen::VectorXd mutate_rand1(const Population& pop, int i, double lambda,
                             std::mt19937_64& rng) {
    int r[3];
    draw_distinct(static_cast<int>(pop.vectors.rows()), i, rng, r, 3);
    return pop.vectors.row(r[0]) +
           lambda * (pop.vectors.row(r[1]) - pop.vectors.row(r[2]));
}

Eigen::VectorXd mutate_best1(const Population& pop, int i, double lambda,
                             std::mt19937_64& rng) {
    int r[2];
    draw_distinct(static_cast<int>(pop.vectors.rows()), i, rng, r, 2);
    return pop.vectors.row(pop.best_index()) +
           lambda * (pop.vectors.row(r[0]) - pop.vectors.row(r[1]));
}

Eigen::VectorXd mutate_current_to_best1(const Population& pop, int i,
                                        double lambda, std::mt19937_64& rng) {
    int r[2];
    draw_distinct(static_cast<int>(pop.vectors.rows()), i, rng, r, 2);
    const auto current = pop.vectors.row(i);
    const auto best = pop.vectors.row(pop.best_index());
    return current + lambda * (best - current) +
           lambda * (pop.vectors.row(r[0]) - pop.vectors.row(r[1]));
}

Eigen::VectorXd binomial_crossover(const Eigen::VectorXd& target,
                                   const Eigen::VectorXd& mutant, double cr,
                                   std::mt19937_64& rng) {
    const int dim = static_cast<int>(target.size());
    if (mutant.size() != dim)
        throw std::invalid_argument("crossover dimension mismatch");
    std::uniform_int_distribution<int> pick(0, dim - 1);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const int j_rand = pick(rng);
    Eigen::VectorXd trial = target;
    for (int j = 0; j < dim; ++j)
        if (unit(rng) < cr || j == j_rand) trial[j] = mutant[j];
    return trial;
}

Eigen::VectorXd repair_bounds(Eigen::VectorXd v, const Bounds& bounds) {
    for (int d = 0; d < v.size(); ++d) {
        const auto& [lo, hi] = bounds[static_cast<std::size_t>(d)];
        if (v[d] < lo) v[d] = lo;
        if (v[d] > hi) v[d] = hi;
    }
    return v;
}

DEResult run_cmde(const Objective& objective, const DEConfig& cfg) {
    cfg.validate();
    const Population seed_pop = init_population(objective, cfg);

    DEResult result;
    result.history.resize(kNumStrategies);
    double best_fitness = std::numeric_limits<double>::infinity();
    Eigen::VectorXd best;
    for (int s = 0; s < kNumStrategies; ++s) {
        Population pop = seed_pop;
        result.history[s] =
            evolve(objective, cfg, static_cast<StrategyId>(s), pop);
        const int champ = pop.best_index();
        // global selection across strategy champions
        if (pop.fitness[champ] < best_fitness) {
            best_fitness = pop.fitness[champ];
            best = pop.vectors.row(champ);
        }
    }
    result.best = std::move(best);
    result.best_fitness = best_fitness;
    return result;
}

DEResult run_single_strategy_de(const Objective& objective, const DEConfig& cfg,
                                StrategyId strategy) {
    cfg.validate();
    Population pop = init_population(objective, cfg);
    DEResult result;
    result.history.resize(1);
    result.history[0] = evolve(objective, cfg, strategy, pop);
    const int champ = pop.best_index();
    result.best = pop.vectors.row(champ);
    result.best_fitness = pop.fitness[champ];
    return result;
}

}  // namespace vanopt
