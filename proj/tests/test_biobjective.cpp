#include "vanopt/biobjective.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace vanopt;

namespace {

ContractSpec make_spec(double spot = 100.0, double strike = 100.0,
                       double rate = 0.05, double vol = 0.2, int days = 252,
                       ExerciseStyle style = ExerciseStyle::European) {
    ContractSpec spec;
    spec.spot = spot;
    spec.strike = strike;
    spec.rate = rate;
    spec.volatility = vol;
    spec.maturity_days = days;
    spec.days_per_year = 252;
    spec.style = style;
    return spec;
}

ParetoPoint point(double payoff, double prob) {
    ParetoPoint p;
    p.objectives = {payoff, prob};
    return p;
}

DEConfig quick_de(std::uint64_t seed = 7) {
    DEConfig cfg;
    cfg.population_size = 40;
    cfg.max_iterations = 120;
    cfg.seed = seed;
    return cfg;
}

AwsConfig quick_aws() {
    AwsConfig cfg;
    cfg.initial_weight_count = 7;
    cfg.max_refinement_rounds = 2;
    cfg.mc_paths_inner = 4000;
    cfg.mc_paths_report = 20000;
    return cfg;
}

bool mutually_nondominated(const std::vector<ParetoPoint>& front) {
    for (std::size_t i = 0; i < front.size(); ++i)
        for (std::size_t j = 0; j < front.size(); ++j) {
            if (i == j) continue;
            const auto& a = front[i].objectives;
            const auto& b = front[j].objectives;
            if (b.payoff >= a.payoff && b.probability >= a.probability &&
                (b.payoff > a.payoff || b.probability > a.probability))
                return false;
        }
    return true;
}

}  // namespace

TEST_CASE("evaluate_objectives") {
    const ContractSpec spec = make_spec();

    SUBCASE("at the strike the payoff is zero") {
        const auto obj = evaluate_objectives(spec, {1.0, 100.0}, {5000, 1, 3});
        CHECK(obj.payoff == 0.0);
        CHECK(obj.probability ==
              probcal(spec, 100.0, 1.0, {5000, 1, 3}));
    }
    SUBCASE("zero asset value") {
        const auto obj = evaluate_objectives(spec, {1.0, 0.0}, {1000, 1, 3});
        CHECK(obj.payoff == 0.0);
        CHECK(obj.probability == 1.0);
    }
    SUBCASE("payoff 10 and lognormal-consistent probability at 110") {
        const std::int64_t n = 100000;
        const auto obj = evaluate_objectives(spec, {1.0, 110.0}, {n, 1, 19});
        CHECK(obj.payoff == doctest::Approx(10.0));
        const double p = oracles::quad_exceed_prob(100.0, 0.05, 0.2, 1.0, 110.0);
        CHECK(std::abs(obj.probability - p) <=
              3.0 * std::sqrt(p * (1 - p) / double(n)));
    }
}

TEST_CASE("scalarized_fitness") {
    const NormBounds norm{0.0, 20.0, 0.0, 1.0};

    SUBCASE("pure payoff weight orders by payoff") {
        const double lo = scalarized_fitness({10.0, 0.1}, {1.0, 0.0}, norm);
        const double hi = scalarized_fitness({5.0, 0.9}, {1.0, 0.0}, norm);
        CHECK(lo < hi);
    }
    SUBCASE("pure probability weight orders by probability") {
        const double lo = scalarized_fitness({5.0, 0.9}, {0.0, 1.0}, norm);
        const double hi = scalarized_fitness({10.0, 0.1}, {0.0, 1.0}, norm);
        CHECK(lo < hi);
    }
    SUBCASE("utopia corner scores -1 for convex weights") {
        CHECK(scalarized_fitness({20.0, 1.0}, {0.3, 0.7}, norm) ==
              doctest::Approx(-1.0));
    }
    SUBCASE("degenerate bounds rejected") {
        CHECK_THROWS_AS(
            scalarized_fitness({1.0, 0.5}, {0.5, 0.5}, {2.0, 2.0, 0.0, 1.0}),
            std::invalid_argument);
    }
}

TEST_CASE("nondominated_filter") {
    SUBCASE("drops the dominated middle point") {
        const auto out =
            nondominated_filter({point(1.0, 0.5), point(2.0, 0.4), point(1.5, 0.3)});
        REQUIRE(out.size() == 2);
        CHECK(out[0].objectives.payoff == 2.0);  // descending payoff order
        CHECK(out[1].objectives.payoff == 1.0);
    }
    SUBCASE("singleton passes through") {
        const auto out = nondominated_filter({point(3.0, 0.3)});
        CHECK(out.size() == 1);
    }
    SUBCASE("duplicates keep one representative") {
        const auto out = nondominated_filter({point(2.0, 0.4), point(2.0, 0.4)});
        CHECK(out.size() == 1);
    }
    SUBCASE("random sets: output non-dominated and filter is idempotent") {
        std::mt19937_64 rng(21);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (int rep = 0; rep < 50; ++rep) {
            std::vector<ParetoPoint> pts;
            for (int k = 0; k < 40; ++k) pts.push_back(point(10 * u(rng), u(rng)));
            const auto once = nondominated_filter(pts);
            CHECK(mutually_nondominated(once));
            const auto twice = nondominated_filter(once);
            REQUIRE(twice.size() == once.size());
            // sorted by descending payoff with non-decreasing probability
            for (std::size_t i = 1; i < once.size(); ++i) {
                CHECK(once[i].objectives.payoff < once[i - 1].objectives.payoff);
                CHECK(once[i].objectives.probability >
                      once[i - 1].objectives.probability);
            }
        }
    }
}

TEST_CASE("generate_front recovers the convex toy front") {
    // maximize f1 = 4 - x^2 and f2 = 4 - (x-2)^2; Pareto set is x in [0, 2]
    auto eval = [](const Eigen::VectorXd& x) {
        return ObjectivePair{4.0 - x[0] * x[0],
                             4.0 - (x[0] - 2.0) * (x[0] - 2.0)};
    };
    BiObjectiveProblem problem;
    problem.make_eval = [eval](std::uint64_t) { return eval; };
    problem.report_eval = eval;
    problem.bounds = {{-1.0, 3.0}};

    AwsConfig aws = quick_aws();
    const auto front = generate_front(problem, quick_de(), aws);

    REQUIRE(front.size() >= 5);
    for (const auto& p : front) {
        CHECK(p.x[0] >= -1e-4);
        CHECK(p.x[0] <= 2.0 + 1e-4);
    }
    // each point is optimal within the set at its own weight
    for (const auto& p : front) {
        const double own = p.weight.w1 * p.normalized[0] +
                           p.weight.w2 * p.normalized[1];
        for (const auto& q : front) {
            const double other = p.weight.w1 * q.normalized[0] +
                                 p.weight.w2 * q.normalized[1];
            CHECK(own >= other - 1e-6);
        }
    }
    // both single-objective extremes present
    bool has_payoff_extreme = false, has_prob_extreme = false;
    for (const auto& p : front) {
        if (p.extreme && p.weight.w1 == 1.0) has_payoff_extreme = true;
        if (p.extreme && p.weight.w2 == 1.0) has_prob_extreme = true;
    }
    CHECK(has_payoff_extreme);
    CHECK(has_prob_extreme);
}

TEST_CASE("generate_pareto_front on a contract") {
    const ContractSpec spec = make_spec();
    const auto front = generate_pareto_front(spec, quick_de(), quick_aws());

    SUBCASE("non-dominated and invariant under re-filtering") {
        CHECK(mutually_nondominated(front));
        CHECK(nondominated_filter(front).size() == front.size());
        CHECK(front.size() >= 2);
    }
    SUBCASE("monotone trade-off after sorting by payoff") {
        for (std::size_t i = 1; i < front.size(); ++i) {
            CHECK(front[i].objectives.payoff <= front[i - 1].objectives.payoff);
            CHECK(front[i].objectives.probability >=
                  front[i - 1].objectives.probability);
        }
    }
    SUBCASE("extreme weights attain the extreme objectives") {
        double max_payoff = 0.0, max_prob = 0.0;
        for (const auto& p : front) {
            max_payoff = std::max(max_payoff, p.objectives.payoff);
            max_prob = std::max(max_prob, p.objectives.probability);
        }
        for (const auto& p : front) {
            if (p.extreme && p.weight.w1 == 1.0)
                CHECK(p.objectives.payoff == max_payoff);
            if (p.extreme && p.weight.w2 == 1.0)
                CHECK(p.objectives.probability == max_prob);
        }
    }
    SUBCASE("candidates stay within the search bounds") {
        const Bounds bounds = candidate_bounds(spec);
        for (const auto& p : front) {
            CHECK(p.candidate.time == spec.maturity_years());  // European
            CHECK(p.candidate.asset_value >= bounds[0].first);
            CHECK(p.candidate.asset_value <= bounds[0].second);
        }
    }
    SUBCASE("deterministic per seed") {
        const auto again = generate_pareto_front(spec, quick_de(), quick_aws());
        REQUIRE(again.size() == front.size());
        for (std::size_t i = 0; i < front.size(); ++i) {
            CHECK(again[i].candidate.asset_value == front[i].candidate.asset_value);
            CHECK(again[i].objectives.probability ==
                  front[i].objectives.probability);
        }
    }
}

TEST_CASE("american front searches over exercise time too") {
    const ContractSpec spec =
        make_spec(100.0, 90.0, 0.05, 0.3, 252, ExerciseStyle::American);
    const Bounds bounds = candidate_bounds(spec);
    REQUIRE(bounds.size() == 2);
    const auto front = generate_pareto_front(spec, quick_de(), quick_aws());
    CHECK(front.size() >= 2);
    for (const auto& p : front) {
        CHECK(p.candidate.time >= bounds[0].first);
        CHECK(p.candidate.time <= bounds[0].second);
        CHECK(p.candidate.asset_value <= bounds[1].second);
    }
}

TEST_CASE("degenerate volatility collapses the front") {
    ContractSpec spec = make_spec();
    spec.volatility = 1e-9;
    const auto front = generate_pareto_front(spec, quick_de(), quick_aws());
    // the deterministic terminal price bounds the attainable payoff
    const double terminal = 100.0 * std::exp(0.05);
    for (const auto& p : front)
        if (p.objectives.probability > 0.5)
            CHECK(p.objectives.payoff <= terminal - 100.0 + 1e-3);
}
