#include "vanopt/valuation.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

using namespace vanopt;

namespace {

ContractSpec make_spec(double rate = 0.0) {
    ContractSpec spec;
    spec.spot = 100.0;
    spec.strike = 100.0;
    spec.rate = rate;
    spec.volatility = 0.2;
    spec.maturity_days = 252;
    spec.days_per_year = 252;
    return spec;
}

ParetoPoint point(double payoff, double prob, double t = 1.0,
                  double w1 = 0.5) {
    ParetoPoint p;
    p.candidate = {t, payoff + 100.0};
    p.objectives = {payoff, prob};
    p.weight = {w1, 1.0 - w1};
    return p;
}

}  // namespace

TEST_CASE("extract_price") {
    const ContractSpec spec = make_spec();

    SUBCASE("single point, expected-discounted, r = 0") {
        const auto est = extract_price({point(10.0, 0.5)}, spec,
                                       "expected-discounted");
        CHECK(est.value == doctest::Approx(5.0));
        CHECK(est.discount_applied);
    }

    SUBCASE("a probability-one point bounds the estimate from below") {
        const std::vector<ParetoPoint> front = {point(7.0, 1.0),
                                                point(12.0, 0.4)};
        const auto est = extract_price(front, spec, "expected-discounted");
        CHECK(est.value >= 7.0);
    }

    SUBCASE("invariant under permutation of the front") {
        std::vector<ParetoPoint> front = {point(3.0, 0.9), point(8.0, 0.55),
                                          point(12.0, 0.3), point(15.0, 0.1)};
        const auto before = extract_price(front, spec, "expected-discounted");
        std::mt19937_64 rng(3);
        for (int rep = 0; rep < 10; ++rep) {
            std::shuffle(front.begin(), front.end(), rng);
            const auto after = extract_price(front, spec, "expected-discounted");
            CHECK(after.value == before.value);
            CHECK(after.source_point.objectives.payoff ==
                  before.source_point.objectives.payoff);
        }
    }

    SUBCASE("adding a dominated point never raises the fixed-t estimate") {
        std::vector<ParetoPoint> front = {point(3.0, 0.9), point(12.0, 0.3)};
        const double base =
            extract_price(front, spec, "expected-discounted").value;
        front.push_back(point(2.5, 0.85));  // dominated by (3.0, 0.9)
        CHECK(extract_price(front, spec, "expected-discounted").value == base);
    }

    SUBCASE("knee picks the point farthest from the extreme chord") {
        std::vector<ParetoPoint> front = {point(0.0, 1.0), point(10.0, 0.0),
                                          point(6.0, 0.8)};
        front[0].normalized = {0.0, 1.0};
        front[1].normalized = {1.0, 0.0};
        front[2].normalized = {0.6, 0.8};
        const auto est = extract_price(front, spec, "knee");
        CHECK(est.source_point.objectives.payoff == 6.0);
        CHECK(est.value == doctest::Approx(6.0 * 0.8));
    }

    SUBCASE("weighted picks the nearest producing weight") {
        const std::vector<ParetoPoint> front = {
            point(4.0, 0.9, 1.0, 0.2), point(8.0, 0.6, 1.0, 0.5),
            point(12.0, 0.2, 1.0, 0.8)};
        const auto est = extract_price(front, spec, "weighted", 0.75);
        CHECK(est.source_point.weight.w1 == 0.8);
    }

    SUBCASE("empty front and unknown strategy rejected") {
        CHECK_THROWS_AS(extract_price({}, spec, "expected-discounted"),
                        std::invalid_argument);
        CHECK_THROWS_AS(extract_price({point(1, 1)}, spec, "nope"),
                        std::invalid_argument);
    }
}

TEST_CASE("error metrics reproduce published arithmetic") {
    CHECK(absolute_error(205.68, 169.0) == doctest::Approx(36.68));
    CHECK(absolute_error(5.0, 5.0) == 0.0);
    CHECK(absolute_error(834.9, 836.0) == doctest::Approx(1.1));

    CHECK(percent_error(205.68, 169.0) == doctest::Approx(21.70).epsilon(1e-3));
    CHECK(percent_error(194.26, 143.5) == doctest::Approx(35.37).epsilon(1e-3));
    CHECK(percent_error(834.9, 836.0) == doctest::Approx(0.13).epsilon(0.05));

    CHECK_THROWS_AS(percent_error(1.0, 0.0), std::invalid_argument);

    // identity between the two metrics
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.1, 300.0);
    for (int k = 0; k < 200; ++k) {
        const double a = u(rng), m = u(rng);
        CHECK(percent_error(a, m) == 100.0 * absolute_error(a, m) / m);
    }
}

TEST_CASE("fill_error_fields") {
    ComparisonRow row;
    row.label = "x";
    row.market_price = 169.0;
    row.bs_price = 205.68;
    row.cmde_price = 168.90;
    fill_error_fields(row);
    REQUIRE(row.bs_pct_err.has_value());
    CHECK(*row.bs_pct_err == doctest::Approx(21.70).epsilon(1e-3));
    CHECK(*row.cmde_abs_err == doctest::Approx(0.10));
    CHECK(!row.de_pct_err.has_value());

    ComparisonRow no_market;
    no_market.bs_price = 10.0;
    fill_error_fields(no_market);
    CHECK(!no_market.bs_pct_err.has_value());
}

TEST_CASE("build_comparison_report") {
    ReportConfig cfg;
    cfg.run_de = false;  // keep the unit test quick; optimizer paths are
    cfg.run_cmde = false;  // exercised in the acceptance suite

    SUBCASE("empty input gives an empty report") {
        CHECK(build_comparison_report({}, cfg).empty());
    }

    SUBCASE("baselines and errors per contract, input order kept") {
        std::vector<ContractSpec> contracts = {make_spec(0.01), make_spec(0.02)};
        contracts[0].label = "a";
        contracts[1].label = "b";
        contracts[0].market_price = 10.0;
        contracts[1].market_price = 12.0;
        const auto rows = build_comparison_report(contracts, cfg);
        REQUIRE(rows.size() == 2);
        CHECK(rows[0].label == "a");
        CHECK(rows[1].label == "b");
        CHECK(*rows[0].bs_price ==
              doctest::Approx(black_scholes_call(contracts[0])));
        CHECK(rows[0].bs_pct_err.has_value());
        CHECK(rows[0].binomial_pct_err.has_value());
    }

    SUBCASE("missing market price yields a row without error fields") {
        ContractSpec spec = make_spec();
        spec.market_price = -1.0;
        const auto rows = build_comparison_report({spec}, cfg);
        REQUIRE(rows.size() == 1);
        CHECK(rows[0].bs_price.has_value());
        CHECK(!rows[0].market_price.has_value());
        CHECK(!rows[0].bs_pct_err.has_value());
    }
}
