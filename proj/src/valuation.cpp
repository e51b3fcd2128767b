#include "vanopt/valuation.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <stdexcept>

namespace vanopt {
namespace {

double discounted_value(const ParetoPoint& p, double rate) {
    return std::exp(-rate * p.candidate.time) * p.objectives.payoff *
           p.objectives.probability;
}

/// Prefer a over b? Higher score wins, then probability, then payoff.
bool better(double score_a, const ParetoPoint& a, double score_b,
            const ParetoPoint& b) {
    if (score_a != score_b) return score_a > score_b;
    if (a.objectives.probability != b.objectives.probability)
        return a.objectives.probability > b.objectives.probability;
    return a.objectives.payoff > b.objectives.payoff;
}

std::size_t argbest(const std::vector<ParetoPoint>& front,
                    const std::vector<double>& scores) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < front.size(); ++i)
        if (better(scores[i], front[i], scores[best], front[best])) best = i;
    return best;
}

}  // namespace

PriceEstimate extract_price(const std::vector<ParetoPoint>& front,
                            const ContractSpec& spec,
                            const std::string& strategy, double weight_w1) {
    if (front.empty())
        throw std::invalid_argument("extract_price: empty front");

    std::vector<double> scores(front.size());
    if (strategy == "expected-discounted") {
        for (std::size_t i = 0; i < front.size(); ++i)
            scores[i] = discounted_value(front[i], spec.rate);
    } else if (strategy == "knee") {
        // chord between the extreme points in normalized space
        std::size_t i_pay = 0, i_prob = 0;
        for (std::size_t i = 1; i < front.size(); ++i) {
            if (front[i].normalized[0] > front[i_pay].normalized[0]) i_pay = i;
            if (front[i].normalized[1] > front[i_prob].normalized[1]) i_prob = i;
        }
        const Eigen::Vector2d a = front[i_pay].normalized;
        const Eigen::Vector2d chord = front[i_prob].normalized - a;
        const double len = chord.norm();
        for (std::size_t i = 0; i < front.size(); ++i) {
            const Eigen::Vector2d d = front[i].normalized - a;
            scores[i] = len > 1e-12
                            ? std::abs(chord[0] * d[1] - chord[1] * d[0]) / len
                            : 0.0;
        }
    } else if (strategy == "weighted") {
        for (std::size_t i = 0; i < front.size(); ++i)
            scores[i] = -std::abs(front[i].weight.w1 - weight_w1);
    } else {
        throw std::invalid_argument("unknown extraction strategy: '" + strategy +
                                    "'");
    }

    const std::size_t pick = argbest(front, scores);
    PriceEstimate est;
    est.source_point = front[pick];
    est.value = discounted_value(front[pick], spec.rate);
    est.strategy = strategy;
    est.discount_applied = true;
    return est;
}

double absolute_error(double approx, double market) {
    return std::abs(approx - market);
}

double percent_error(double approx, double market) {
    if (!(market > 0.0))
        throw std::invalid_argument("percent_error: market price must be > 0");
    return 100.0 * absolute_error(approx, market) / market;
}

void fill_error_fields(ComparisonRow& row) {
    if (!row.market_price || !(*row.market_price > 0.0)) return;
    const double market = *row.market_price;
    auto fill = [market](const std::optional<double>& price,
                         std::optional<double>& abs_err,
                         std::optional<double>& pct_err) {
        if (!price) return;
        abs_err = absolute_error(*price, market);
        pct_err = percent_error(*price, market);
    };
    fill(row.bs_price, row.bs_abs_err, row.bs_pct_err);
    fill(row.binomial_price, row.binomial_abs_err, row.binomial_pct_err);
    fill(row.de_price, row.de_abs_err, row.de_pct_err);
    fill(row.cmde_price, row.cmde_abs_err, row.cmde_pct_err);
}

std::vector<ComparisonRow> build_comparison_report(
    const std::vector<ContractSpec>& contracts, const ReportConfig& cfg) {
    std::vector<ComparisonRow> rows;
    rows.reserve(contracts.size());
    for (const auto& spec : contracts) {
        ComparisonRow row;
        row.label = spec.label;
        if (spec.has_market_price())
            row.market_price = spec.market_price;
        else
            std::cerr << "warning: contract '" << spec.label
                      << "' has no market price; error columns omitted\n";

        if (cfg.run_bs) row.bs_price = black_scholes_call(spec);
        if (cfg.run_binomial)
            row.binomial_price = binomial_american_call(spec, cfg.binomial);
        if (cfg.run_de) {
            const auto front = generate_pareto_front(
                spec, cfg.de, cfg.aws, StrategyId::Rand1, cfg.diagnostics);
            row.de_price =
                extract_price(front, spec, cfg.extraction_strategy).value;
        }
        if (cfg.run_cmde) {
            const auto front = generate_pareto_front(
                spec, cfg.de, cfg.aws, std::nullopt, cfg.diagnostics);
            row.cmde_price =
                extract_price(front, spec, cfg.extraction_strategy).value;
        }
        fill_error_fields(row);
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace vanopt
