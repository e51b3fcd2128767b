#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>

namespace vanopt {

enum class ExerciseStyle { European, American };

std::string to_string(ExerciseStyle style);
ExerciseStyle style_from_string(const std::string& s);

/// One option contract. market_price < 0 means "no market quote".
struct ContractSpec {
    double spot = 0.0;
    double strike = 0.0;
    int maturity_days = 0;
    int days_per_year = 252;
    double rate = 0.0;
    double volatility = 0.0;
    ExerciseStyle style = ExerciseStyle::European;
    double market_price = -1.0;
    std::string label;

    double maturity_years() const {
        return static_cast<double>(maturity_days) / days_per_year;
    }
    bool has_market_price() const { return market_price >= 0.0; }

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;
};

/// A point in the 2-D search space: when to exercise and at what asset level.
struct ExerciseCandidate {
    double time = 0.0;        // year fraction in (0, T]
    double asset_value = 0.0; // S* >= 0
};

struct PathConfig {
    std::int64_t num_paths = 10000;
    int num_steps = 1;
    std::uint64_t seed = 0;

    void validate() const;
};

double call_payoff(double asset_value, double strike);
double put_payoff(double asset_value, double strike);

/// Terminal values of risk-neutral GBM at time t, one per path.
/// num_steps = 1 uses the exact lognormal one-step solution; larger step
/// counts compose exact log-increments. Deterministic for a fixed seed.
Eigen::VectorXd simulate_gbm_terminal(const ContractSpec& spec, double t,
                                      const PathConfig& cfg);

/// Monte Carlo estimate of P(S_t >= target). Ties count as success.
double probcal(const ContractSpec& spec, double target, double t,
               const PathConfig& cfg);

/// Exceedance probabilities over one frozen set of normal draws (common
/// random numbers). prob(target, t) counts the same draws for every query,
/// so it is deterministic and monotone in target within one evaluator.
class CrnProbEvaluator {
  public:
    CrnProbEvaluator(const ContractSpec& spec, std::int64_t num_paths,
                     std::uint64_t seed);

    double prob(double target, double t) const;
    std::int64_t num_paths() const { return sorted_z_.size(); }

  private:
    double spot_;
    double rate_;
    double vol_;
    Eigen::VectorXd sorted_z_;
};

}  // namespace vanopt
