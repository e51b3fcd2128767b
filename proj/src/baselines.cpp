#include "vanopt/baselines.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace vanopt {

void BinomialConfig::validate() const {
    if (steps < 1) throw std::invalid_argument("binomial steps must be >= 1");
}

double norm_cdf(double x) {
    return 0.5 * std::erfc(-x * M_SQRT1_2);
}

double black_scholes_call(double spot, double strike, double rate,
                          double volatility, double maturity) {
    if (!(maturity > 0.0))
        throw std::invalid_argument("black_scholes_call: maturity must be > 0");
    if (!(volatility > 0.0))
        throw std::invalid_argument("black_scholes_call: volatility must be > 0");
    if (strike == 0.0) return spot;
    const double sig_sqrt_t = volatility * std::sqrt(maturity);
    const double d1 =
        (std::log(spot / strike) + (rate + 0.5 * volatility * volatility) * maturity) /
        sig_sqrt_t;
    const double d2 = d1 - sig_sqrt_t;
    return spot * norm_cdf(d1) - strike * std::exp(-rate * maturity) * norm_cdf(d2);
}

double black_scholes_put(double spot, double strike, double rate,
                         double volatility, double maturity) {
    if (strike == 0.0) return 0.0;
    // parity form keeps the two prices consistent to rounding
    const double call = black_scholes_call(spot, strike, rate, volatility, maturity);
    return call - spot + strike * std::exp(-rate * maturity);
}

double black_scholes_call(const ContractSpec& spec) {
    spec.validate();
    return black_scholes_call(spec.spot, spec.strike, spec.rate, spec.volatility,
                              spec.maturity_years());
}

double black_scholes_put(const ContractSpec& spec) {
    spec.validate();
    return black_scholes_put(spec.spot, spec.strike, spec.rate, spec.volatility,
                             spec.maturity_years());
}

double binomial_american_call(const ContractSpec& spec,
                              const BinomialConfig& cfg) {
    spec.validate();
    cfg.validate();

    const double maturity = spec.maturity_years();
    const double dt = maturity / cfg.steps;
    const double up = std::exp(spec.volatility * std::sqrt(dt));
    const double down = 1.0 / up;
    const double growth = std::exp(spec.rate * dt);
    const double q = (growth - down) / (up - down);
    if (!(q > 0.0 && q < 1.0))
        throw std::invalid_argument(
            "binomial_american_call: risk-neutral probability " + std::to_string(q) +
            " outside (0,1); adjust step count");
    const double discount = 1.0 / growth;

    // terminal layer
    std::vector<double> values(cfg.steps + 1);
    for (int j = 0; j <= cfg.steps; ++j) {
        const double s = spec.spot * std::pow(up, 2 * j - cfg.steps);
        values[j] = call_payoff(s, spec.strike);
    }

    for (int level = cfg.steps - 1; level >= 0; --level) {
        for (int j = 0; j <= level; ++j) {
            const double cont =
                discount * (q * values[j + 1] + (1.0 - q) * values[j]);
            const double s = spec.spot * std::pow(up, 2 * j - level);
            values[j] = std::max(cont, call_payoff(s, spec.strike));
        }
    }
    return values[0];
}

double lognormal_exceed_prob(const ContractSpec& spec, double target, double t) {
    spec.validate();
    if (!(target > 0.0))
        throw std::invalid_argument("lognormal_exceed_prob: target must be > 0");
    if (!(t > 0.0))
        throw std::invalid_argument("lognormal_exceed_prob: time must be > 0");
    const double z =
        (std::log(spec.spot / target) +
         (spec.rate - 0.5 * spec.volatility * spec.volatility) * t) /
        (spec.volatility * std::sqrt(t));
    return norm_cdf(z);
}

}  // namespace vanopt
