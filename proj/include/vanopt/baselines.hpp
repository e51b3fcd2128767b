#pragma once

#include "vanopt/market_model.hpp"

namespace vanopt {

struct BinomialConfig {
    int steps = 1000;

    void validate() const;
};

/// Standard normal CDF via erfc; absolute error below 1e-10.
double norm_cdf(double x);

double black_scholes_call(double spot, double strike, double rate,
                          double volatility, double maturity);
double black_scholes_put(double spot, double strike, double rate,
                         double volatility, double maturity);

double black_scholes_call(const ContractSpec& spec);
double black_scholes_put(const ContractSpec& spec);

/// CRR lattice with early exercise at every node. For a non-dividend call
/// this converges to the European value.
double binomial_american_call(const ContractSpec& spec,
                              const BinomialConfig& cfg);

/// Exact GBM tail probability P(S_t >= target); the analytic oracle for
/// probcal.
double lognormal_exceed_prob(const ContractSpec& spec, double target, double t);

}  // namespace vanopt
