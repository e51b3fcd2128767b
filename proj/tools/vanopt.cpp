#include "vanopt/dataio.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace vanopt;

namespace {

constexpr std::uint64_t kDefaultSeed = 42;

std::string out_dir_default() {
    if (const char* env = std::getenv("VANOPT_OUT_DIR")) return env;
    return "out";
}

RunConfig load_run_config(const std::string& config_path) {
    if (config_path.empty()) return RunConfig{};
    return load_config(config_path);
}

std::string sanitize(const std::string& label) {
    std::string s = label;
    for (char& c : s)
        if (!std::isalnum(static_cast<unsigned char>(c))) c = '_';
    return s;
}

std::string fmt2(const std::optional<double>& v) {
    if (!v) return "-";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", *v);
    return buf;
}

void render_table(const std::vector<ComparisonRow>& rows) {
    std::printf("%-32s %10s %10s %10s %10s %10s %8s %8s %8s %8s\n", "contract",
                "market", "bs", "binomial", "de", "cmde", "%bs", "%binom",
                "%de", "%cmde");
    for (const auto& r : rows)
        std::printf("%-32s %10s %10s %10s %10s %10s %8s %8s %8s %8s\n",
                    r.label.c_str(), fmt2(r.market_price).c_str(),
                    fmt2(r.bs_price).c_str(), fmt2(r.binomial_price).c_str(),
                    fmt2(r.de_price).c_str(), fmt2(r.cmde_price).c_str(),
                    fmt2(r.bs_pct_err).c_str(), fmt2(r.binomial_pct_err).c_str(),
                    fmt2(r.de_pct_err).c_str(), fmt2(r.cmde_pct_err).c_str());
}

double sphere(const Eigen::VectorXd& x) { return x.squaredNorm(); }

double rosenbrock(const Eigen::VectorXd& x) {
    double sum = 0.0;
    for (int d = 0; d + 1 < x.size(); ++d) {
        const double a = x[d + 1] - x[d] * x[d];
        const double b = 1.0 - x[d];
        sum += 100.0 * a * a + b * b;
    }
    return sum;
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

int run_bench(const std::string& suite, int trials, std::uint64_t seed) {
    struct Case {
        const char* name;
        Objective fn;
        Bounds bounds;
    };
    std::vector<Case> cases;
    if (suite == "sphere" || suite == "all")
        cases.push_back({"sphere", sphere, {{-5.0, 5.0}, {-5.0, 5.0}}});
    if (suite == "rosenbrock" || suite == "all")
        cases.push_back({"rosenbrock", rosenbrock, {{-5.0, 5.0}, {-5.0, 5.0}}});
    if (cases.empty()) {
        std::cerr << "error: unknown suite '" << suite
                  << "' (expected sphere, rosenbrock, or all)\n";
        return 1;
    }

    for (const auto& c : cases) {
        std::vector<double> cmde_final, rand1_final, best1_final, ctb_final;
        for (int t = 0; t < trials; ++t) {
            DEConfig cfg;
            cfg.bounds = c.bounds;
            cfg.seed = seed + static_cast<std::uint64_t>(t);
            cmde_final.push_back(run_cmde(c.fn, cfg).best_fitness);
            rand1_final.push_back(
                run_single_strategy_de(c.fn, cfg, StrategyId::Rand1).best_fitness);
            best1_final.push_back(
                run_single_strategy_de(c.fn, cfg, StrategyId::Best1).best_fitness);
            ctb_final.push_back(
                run_single_strategy_de(c.fn, cfg, StrategyId::CurrentToBest1)
                    .best_fitness);
            std::cerr << c.name << " trial " << (t + 1) << "/" << trials << "\r";
        }
        std::cerr << "\n";
        std::printf("%s (%d trials): median final fitness\n", c.name, trials);
        std::printf("  cmde            %.3e\n", median(cmde_final));
        std::printf("  rand1           %.3e\n", median(rand1_final));
        std::printf("  best1           %.3e\n", median(best1_final));
        std::printf("  current-to-best %.3e\n", median(ctb_final));
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bi-objective vanilla call option pricing: CmDE optimizer, "
                 "adaptive weighted-sum Pareto fronts, Black-Scholes and "
                 "binomial baselines"};
    app.require_subcommand(1);

    std::string contracts_path, config_path, out_arg, methods = "bs,binomial,de,cmde";
    std::string suite = "all", strategy;
    std::uint64_t seed = kDefaultSeed;
    bool strict = false;
    double spot = 0, strike = 0, rate = 0, vol = 0, target = 0, time_arg = 0;
    int days = 0, days_per_year = 252, steps = 1000, trials = 30;
    std::int64_t paths = 100000;

    auto add_seed = [&](CLI::App* cmd) {
        cmd->add_option("--seed", seed, "Random seed (fixed default keeps runs reproducible)")
            ->capture_default_str();
    };

    auto* pareto = app.add_subcommand("pareto", "Export one Pareto-front CSV per contract");
    pareto->add_option("--contracts", contracts_path, "Contract CSV")->required();
    pareto->add_option("--config", config_path, "Run config file");
    pareto->add_option("--out", out_arg, "Output directory");
    add_seed(pareto);

    auto* price = app.add_subcommand("price", "Print one extracted price per contract");
    price->add_option("--contracts", contracts_path, "Contract CSV")->required();
    price->add_option("--config", config_path, "Run config file");
    price->add_option("--strategy", strategy,
                      "Extraction strategy: expected-discounted, knee, weighted");
    add_seed(price);

    auto* compare = app.add_subcommand(
        "compare", "Baselines + DE + CmDE comparison report per contract");
    compare->add_option("--contracts", contracts_path, "Contract CSV")->required();
    compare->add_option("--config", config_path, "Run config file");
    compare->add_option("--out", out_arg, "Report CSV path");
    compare->add_option("--methods", methods, "Comma list of bs,binomial,de,cmde")
        ->capture_default_str();
    compare->add_flag("--strict", strict,
                      "Exit 2 when any optimizer diagnostic is raised");
    add_seed(compare);

    auto* baseline = app.add_subcommand(
        "baseline", "Black-Scholes and binomial prices for one contract");
    baseline->add_option("--spot", spot, "Spot price")->required();
    baseline->add_option("--strike", strike, "Strike price")->required();
    baseline->add_option("--rate", rate, "Annual risk-free rate")->capture_default_str();
    baseline->add_option("--vol", vol, "Annual volatility")->required();
    baseline->add_option("--days", days, "Trading days to expiry")->required();
    baseline->add_option("--days-per-year", days_per_year, "Trading days per year")
        ->capture_default_str();
    baseline->add_option("--steps", steps, "Binomial tree steps")->capture_default_str();

    auto* bench = app.add_subcommand(
        "bench", "CmDE vs single-strategy DE on test functions");
    bench->add_option("--suite", suite, "sphere, rosenbrock, or all")
        ->capture_default_str();
    bench->add_option("--trials", trials, "Seeded trials per function")
        ->capture_default_str();
    add_seed(bench);

    auto* simulate = app.add_subcommand(
        "simulate", "Monte Carlo exceedance probability vs the analytic value");
    simulate->add_option("--spot", spot, "Spot price")->required();
    simulate->add_option("--rate", rate, "Annual risk-free rate")->capture_default_str();
    simulate->add_option("--vol", vol, "Annual volatility")->required();
    simulate->add_option("--days", days, "Trading days to expiry")->required();
    simulate->add_option("--days-per-year", days_per_year, "Trading days per year")
        ->capture_default_str();
    simulate->add_option("--target", target, "Exceedance level")->required();
    simulate->add_option("--time", time_arg, "Evaluation time (years)")->required();
    simulate->add_option("--paths", paths, "Monte Carlo paths")->capture_default_str();
    add_seed(simulate);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*pareto) {
            RunConfig cfg = load_run_config(config_path);
            cfg.de.seed = seed;
            const std::string dir = !out_arg.empty() ? out_arg
                                    : cfg.out_dir != "out" ? cfg.out_dir
                                                           : out_dir_default();
            fs::create_directories(dir);
            const auto specs = load_contracts(contracts_path, cfg.days_per_year);
            int n = 0;
            for (const auto& spec : specs) {
                const auto front = generate_pareto_front(spec, cfg.de, cfg.aws);
                std::ostringstream name;
                name << dir << "/" << sanitize(spec.label) << "_pareto.csv";
                export_pareto_csv(front, name.str());
                std::cerr << "wrote " << name.str() << " (" << front.size()
                          << " points)\n";
                ++n;
            }
            std::cerr << n << " front(s) exported\n";
        } else if (*price) {
            RunConfig cfg = load_run_config(config_path);
            cfg.de.seed = seed;
            if (!strategy.empty()) cfg.extraction_strategy = strategy;
            const auto specs = load_contracts(contracts_path, cfg.days_per_year);
            for (const auto& spec : specs) {
                const auto front = generate_pareto_front(spec, cfg.de, cfg.aws);
                const auto est = extract_price(front, spec, cfg.extraction_strategy);
                std::printf("%s,%.17g\n", spec.label.c_str(), est.value);
            }
        } else if (*compare) {
            RunConfig cfg = load_run_config(config_path);
            cfg.de.seed = seed;
            ReportConfig rc;
            rc.de = cfg.de;
            rc.aws = cfg.aws;
            rc.binomial = cfg.binomial;
            rc.extraction_strategy = cfg.extraction_strategy;
            rc.run_bs = rc.run_binomial = rc.run_de = rc.run_cmde = false;
            std::stringstream ss(methods);
            std::string tok;
            while (std::getline(ss, tok, ',')) {
                if (tok == "bs") rc.run_bs = true;
                else if (tok == "binomial") rc.run_binomial = true;
                else if (tok == "de") rc.run_de = true;
                else if (tok == "cmde") rc.run_cmde = true;
                else {
                    std::cerr << "error: unknown method '" << tok << "'\n";
                    return 1;
                }
            }
            FrontDiagnostics diag;
            rc.diagnostics = &diag;
            const auto specs = load_contracts(contracts_path, cfg.days_per_year);
            const auto rows = build_comparison_report(specs, rc);
            if (!out_arg.empty()) {
                export_report_csv(rows, out_arg);
                std::cerr << "wrote " << out_arg << "\n";
            }
            render_table(rows);
            if (strict && diag.dominated_discards > 0) {
                std::cerr << "strict: " << diag.dominated_discards
                          << " dominated sub-optimization result(s)\n";
                return 2;
            }
        } else if (*baseline) {
            ContractSpec spec;
            spec.spot = spot;
            spec.strike = strike;
            spec.rate = rate;
            spec.volatility = vol;
            spec.maturity_days = days;
            spec.days_per_year = days_per_year;
            if (days == 0) {
                // expired contract: intrinsic value
                std::printf("intrinsic %.17g\n", call_payoff(spot, strike));
                return 0;
            }
            std::printf("black_scholes %.17g\n", black_scholes_call(spec));
            std::printf("binomial %.17g\n",
                        binomial_american_call(spec, BinomialConfig{steps}));
        } else if (*bench) {
            return run_bench(suite, trials, seed);
        } else if (*simulate) {
            ContractSpec spec;
            spec.spot = spot;
            spec.strike = 0.0;
            spec.rate = rate;
            spec.volatility = vol;
            spec.maturity_days = days;
            spec.days_per_year = days_per_year;
            spec.validate();
            PathConfig pc{paths, 1, seed};
            const double mc = probcal(spec, target, time_arg, pc);
            const double analytic = target > 0.0
                                        ? lognormal_exceed_prob(spec, target, time_arg)
                                        : 1.0;
            std::printf("mc %.17g\nanalytic %.17g\ndiff %.17g\n", mc, analytic,
                        mc - analytic);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
