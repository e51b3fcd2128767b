#include "vanopt/market_model.hpp"

#include "vanopt/rng.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace vanopt {

std::string to_string(ExerciseStyle style) {
    return style == ExerciseStyle::European ? "European" : "American";
}

ExerciseStyle style_from_string(const std::string& s) {
    if (s == "European" || s == "european") return ExerciseStyle::European;
    if (s == "American" || s == "american") return ExerciseStyle::American;
    throw std::invalid_argument("unknown exercise style: '" + s + "'");
}

void ContractSpec::validate() const {
    if (!(spot > 0.0)) throw std::invalid_argument("spot must be > 0");
    if (!(strike >= 0.0)) throw std::invalid_argument("strike must be >= 0");
    if (maturity_days < 1)
        throw std::invalid_argument("maturity_days must be >= 1");
    if (days_per_year < 1)
        throw std::invalid_argument("days_per_year must be >= 1");
    if (!(volatility > 0.0))
        throw std::invalid_argument("volatility must be > 0");
    if (!(rate >= 0.0)) throw std::invalid_argument("rate must be >= 0");
}

void PathConfig::validate() const {
    if (num_paths < 1) throw std::invalid_argument("num_paths must be >= 1");
    if (num_steps < 1) throw std::invalid_argument("num_steps must be >= 1");
}

double call_payoff(double asset_value, double strike) {
    return std::max(asset_value - strike, 0.0);
}

double put_payoff(double asset_value, double strike) {
    return std::max(strike - asset_value, 0.0);
}

Eigen::VectorXd simulate_gbm_terminal(const ContractSpec& spec, double t,
                                      const PathConfig& cfg) {
    if (!(t > 0.0)) throw std::invalid_argument("simulation time must be > 0");
    cfg.validate();

    const double dt = t / cfg.num_steps;
    const double drift = (spec.rate - 0.5 * spec.volatility * spec.volatility) * dt;
    const double diffusion = spec.volatility * std::sqrt(dt);
    const double log_s0 = std::log(spec.spot);

    Eigen::VectorXd terminals(cfg.num_paths);
    for (std::int64_t p = 0; p < cfg.num_paths; ++p) {
        // per-path stream keyed on (seed, path index) so evaluation order
        // never changes the result
        auto rng = make_rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(p)));
        std::normal_distribution<double> normal(0.0, 1.0);
        double log_s = log_s0;
        for (int k = 0; k < cfg.num_steps; ++k)
            log_s += drift + diffusion * normal(rng);
        terminals[p] = std::exp(log_s);
    }
    return terminals;
}

double probcal(const ContractSpec& spec, double target, double t,
               const PathConfig& cfg) {
    if (!(target >= 0.0)) throw std::invalid_argument("target must be >= 0");
    const double maturity = spec.maturity_years();
    if (!(t > 0.0) || t > maturity * (1.0 + 1e-12))
        throw std::invalid_argument("time must lie in (0, maturity]");

    const Eigen::VectorXd terminals = simulate_gbm_terminal(spec, t, cfg);
    const std::int64_t hits =
        (terminals.array() >= target).count();
    return static_cast<double>(hits) / static_cast<double>(cfg.num_paths);
}

CrnProbEvaluator::CrnProbEvaluator(const ContractSpec& spec,
                                   std::int64_t num_paths, std::uint64_t seed)
    : spot_(spec.spot), rate_(spec.rate), vol_(spec.volatility) {
    if (num_paths < 1) throw std::invalid_argument("num_paths must be >= 1");
    sorted_z_.resize(num_paths);
    auto rng = make_rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (std::int64_t p = 0; p < num_paths; ++p) sorted_z_[p] = normal(rng);
    std::sort(sorted_z_.data(), sorted_z_.data() + num_paths);
}

double CrnProbEvaluator::prob(double target, double t) const {
    if (!(t > 0.0)) throw std::invalid_argument("time must be > 0");
    if (target <= 0.0) return 1.0;
    // S_t >= target  <=>  Z >= z_star over the frozen draws
    const double z_star =
        (std::log(target / spot_) - (rate_ - 0.5 * vol_ * vol_) * t) /
        (vol_ * std::sqrt(t));
    const auto* begin = sorted_z_.data();
    const auto* end = begin + sorted_z_.size();
    const std::int64_t hits = end - std::lower_bound(begin, end, z_star);
    return static_cast<double>(hits) / static_cast<double>(sorted_z_.size());
}

}  // namespace vanopt
