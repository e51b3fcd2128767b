#pragma once

#include "vanopt/baselines.hpp"
#include "vanopt/biobjective.hpp"

#include <optional>
#include <string>

namespace vanopt {

struct PriceEstimate {
    double value = 0.0;
    ParetoPoint source_point;
    std::string strategy;
    bool discount_applied = true;
};

/// One Tables-6..9-shaped comparison line. Absent optionals mean the method
/// was skipped or the contract has no market quote.
struct ComparisonRow {
    std::string label;
    std::optional<double> market_price;
    std::optional<double> bs_price;
    std::optional<double> binomial_price;
    std::optional<double> de_price;
    std::optional<double> cmde_price;
    std::optional<double> bs_abs_err, bs_pct_err;
    std::optional<double> binomial_abs_err, binomial_pct_err;
    std::optional<double> de_abs_err, de_pct_err;
    std::optional<double> cmde_abs_err, cmde_pct_err;
};

/// Reads a scalar price off a front. Strategies:
///   "expected-discounted"  max over points of exp(-r t) * payoff * prob
///   "knee"                 max normalized distance from the extreme chord
///   "weighted"             point produced by the weight nearest weight_w1
/// Ties break toward higher probability; permutation invariant.
PriceEstimate extract_price(const std::vector<ParetoPoint>& front,
                            const ContractSpec& spec,
                            const std::string& strategy,
                            double weight_w1 = 0.5);

double absolute_error(double approx, double market);
/// 100 * |approx - market| / market; market must be > 0.
double percent_error(double approx, double market);

/// Fills the *_abs_err / *_pct_err fields from whatever prices are present.
void fill_error_fields(ComparisonRow& row);

struct ReportConfig {
    DEConfig de;
    AwsConfig aws;
    BinomialConfig binomial;
    std::string extraction_strategy = "expected-discounted";
    bool run_bs = true;
    bool run_binomial = true;
    bool run_de = true;
    bool run_cmde = true;
    FrontDiagnostics* diagnostics = nullptr;
};

std::vector<ComparisonRow> build_comparison_report(
    const std::vector<ContractSpec>& contracts, const ReportConfig& cfg);

}  // namespace vanopt
