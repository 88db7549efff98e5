#include "wks/harness/commands.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    using wks::harness::ExperimentConfig;
    CLI::App app{"Weighted k-server on uniform metrics: simulations, lower-bound experiments and property checks"};
    app.require_subcommand(1);

    ExperimentConfig cfg;
    std::optional<std::size_t> universe, random_t, samples, max_t;
    std::optional<std::uint64_t> beta;
    std::optional<std::string> weights, requests;
    bool no_opt = false;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--k", cfg.k, "number of servers")->check(CLI::Range(1, 64));
        sub->add_option("--universe", universe, "number of points");
        sub->add_option("--seed", cfg.seed, "master seed");
        sub->add_option("--out", cfg.out, "output directory");
    };
    auto weighted = [&](CLI::App* sub) {
        sub->add_option("--weights", weights, "comma-separated weights w1,...,wk (rationals allowed)");
        sub->add_option("--beta", beta, "use weights 1,beta,...,beta^(k-1)");
    };
    auto inputs = [&](CLI::App* sub) {
        sub->add_option("--requests", requests, "file of point indices");
        sub->add_option("--random", random_t, "uniform random requests of this length per trial");
        sub->add_option("--trials", cfg.trials, "number of trials");
    };

    auto* simulate = app.add_subcommand("simulate", "compose a pattern builder with the serving engine");
    common(simulate);
    weighted(simulate);
    inputs(simulate);
    simulate->add_option("--spc", cfg.spc, "pattern builder: lazy or oracle");
    simulate->add_flag("--no-opt", no_opt, "skip the offline optimum");

    auto* adversary = app.add_subcommand("adversary", "run the randomized hard input against the serving engine");
    common(adversary);
    adversary->add_option("--beta", beta, "weight ratio (integer >= 2)");
    adversary->add_option("--calls", cfg.calls, "top-level strategy calls per trial");
    adversary->add_option("--trials", cfg.trials, "number of trials");

    auto* opt = app.add_subcommand("opt", "exact offline optima");
    common(opt);
    weighted(opt);
    inputs(opt);

    auto* verify = app.add_subcommand("verify", "run property suites");
    common(verify);
    verify->add_option("--suite", cfg.suite, "oracle|dichotomy|subset|uniformity|counting|setsystem|adversary|all");
    verify->add_option("--samples", samples, "random instances or trials per suite");
    verify->add_option("--max-t", max_t, "longest random instance");

    auto* ratio = app.add_subcommand("ratio", "print n_ell, H(n_ell) and the ratio constants");
    common(ratio);
    ratio->add_option("--beta", beta, "also print adversary cost constants for this beta");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : wks::harness::kValidationError;
    }

    cfg.mode = app.get_subcommands().front()->get_name();
    cfg.k_given = app.get_subcommands().front()->count("--k") > 0;
    cfg.universe = universe;
    cfg.random_t = random_t;
    cfg.samples = samples;
    cfg.max_t = max_t;
    cfg.beta = beta;
    cfg.weights = weights;
    cfg.requests_file = requests;
    cfg.with_opt = !no_opt;
    return wks::harness::run_guarded(cfg, std::cout, std::cerr);
}
