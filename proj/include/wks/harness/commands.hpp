#pragma once

// The experiment modes behind the command-line tool. Each writes its files
// under config.out and returns a process exit code.
//
// Seeding: trial i uses seed_i = derive_seed(seed, i). Random requests for
// the trial come from Rng(seed_i), the serving engine from
// Rng(splitmix64(seed_i)).

#include "wks/adversary.hpp"
#include "wks/composer.hpp"
#include "wks/harness/stats.hpp"
#include "wks/harness/suites.hpp"
#include "wks/harness/trace_io.hpp"
#include "wks/offline_opt.hpp"
#include "wks/spc.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace wks::harness {

enum ExitCode : int { kSuccess = 0, kValidationError = 1, kSuiteFailure = 2, kBudgetExceeded = 3 };

struct ExperimentConfig {
    std::string mode;
    int k = 2;
    bool k_given = false;  // verify suites use their own defaults otherwise
    std::optional<std::size_t> universe;
    std::optional<std::string> weights;  // "w1,w2,..."
    std::optional<std::uint64_t> beta;
    std::optional<std::string> requests_file;
    std::optional<std::size_t> random_t;
    std::size_t trials = 1;
    std::uint64_t seed = 1;
    std::size_t calls = 500;
    std::string out = "wks_out";
    std::string suite = "all";
    std::string spc = "lazy";
    std::optional<std::size_t> samples;
    std::optional<std::size_t> max_t;
    bool with_opt = true;
};

inline constexpr std::uint64_t kDefaultBeta = 10;

inline Weights parse_weights(const std::string& text) {
    std::vector<Rational> w;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) throw InvalidArgument("weights: empty entry");
        w.push_back(parse_rational(item));
    }
    return Weights(std::move(w));
}

/// Weights for simulate/opt: explicit list, or 1, beta, ..., beta^(k-1).
inline Weights resolve_weights(const ExperimentConfig& c) {
    if (c.weights) {
        Weights w = parse_weights(*c.weights);
        if (w.k() != c.k) throw InvalidArgument("--weights lists " + std::to_string(w.k()) + " values but --k is " + std::to_string(c.k));
        return w;
    }
    return Weights::geometric(c.k, c.beta.value_or(kDefaultBeta));
}

inline void validate(const ExperimentConfig& c) {
    static const std::vector<std::string> modes{"simulate", "adversary", "opt", "verify", "ratio"};
    if (std::find(modes.begin(), modes.end(), c.mode) == modes.end()) throw InvalidArgument("unknown mode '" + c.mode + "'");
    if (c.k < 1) throw InvalidArgument("--k must be >= 1");
    if (c.beta && *c.beta < 2) throw InvalidArgument("--beta must be an integer >= 2");
    if (c.weights && c.beta) throw InvalidArgument("give either --weights or --beta, not both");
    if (c.mode == "simulate" || c.mode == "opt") {
        if (!c.universe || *c.universe == 0) throw InvalidArgument("--universe must be >= 1");
        if (c.requests_file.has_value() == c.random_t.has_value()) {
            throw InvalidArgument("give exactly one of --requests <file> and --random <T>");
        }
        if (c.random_t && *c.random_t == 0) throw InvalidArgument("--random T must be >= 1");
        if (c.trials == 0) throw InvalidArgument("--trials must be >= 1");
        if (c.spc != "lazy" && c.spc != "oracle") throw InvalidArgument("--spc must be lazy or oracle");
        resolve_weights(c);
    }
    if (c.mode == "adversary") {
        if (c.weights) throw InvalidArgument("adversary weights are 1, beta, ..., beta^(k-1); use --beta");
        if (c.calls == 0) throw InvalidArgument("--calls must be >= 1");
        if (c.trials == 0) throw InvalidArgument("--trials must be >= 1");
        const BigInt need = n_sequence(c.k - 1) + 1;
        if (c.universe && BigInt(*c.universe) != need) {
            throw InvalidArgument("adversary needs --universe n_{k-1}+1 = " + need.str());
        }
    }
    if (c.mode == "verify") {
        const auto& names = suite_names();
        if (c.suite != "all" && std::find(names.begin(), names.end(), c.suite) == names.end()) {
            throw InvalidArgument("unknown suite '" + c.suite + "'");
        }
        if (c.samples && *c.samples == 0) throw InvalidArgument("--samples must be >= 1");
    }
}

namespace detail {

inline std::ofstream open_output(const ExperimentConfig& c, const std::string& name) {
    std::error_code ec;
    std::filesystem::create_directories(c.out, ec);
    if (ec) throw InvalidArgument("cannot create output directory '" + c.out + "': " + ec.message());
    const auto path = std::filesystem::path(c.out) / name;
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InvalidArgument("cannot write '" + path.string() + "'");
    return f;
}

inline RequestSequence trial_requests(const ExperimentConfig& c, const std::optional<RequestSequence>& fixed,
                                      std::uint64_t trial_seed) {
    if (fixed) return *fixed;
    Rng rng(trial_seed);
    RequestSequence r;
    for (std::size_t t = 0; t < *c.random_t; ++t) r.push_back(static_cast<Point>(rng.uniform_index(*c.universe)));
    return r;
}

inline std::optional<RequestSequence> load_requests(const ExperimentConfig& c) {
    if (!c.requests_file) return std::nullopt;
    std::ifstream f(*c.requests_file);
    if (!f) throw InvalidArgument("cannot read requests file '" + *c.requests_file + "'");
    RequestSequence r = read_requests(f);
    if (r.empty()) throw InvalidArgument("requests file is empty");
    validate_requests(r, Universe(*c.universe));
    return r;
}

inline std::string join_levels(const ExtensionTrace& trace) {
    std::string s;
    for (int x : trace.levels()) {
        if (!s.empty()) s += ' ';
        s += std::to_string(x);
    }
    return s;
}

}  // namespace detail

inline int run_simulate(const ExperimentConfig& c, std::ostream& log) {
    const Weights weights = resolve_weights(c);
    const Universe universe(*c.universe);
    const auto fixed = detail::load_requests(c);

    auto trials_csv = detail::open_output(c, "trials.csv");
    trials_csv << "trial,seed,T,spc_pattern_cost,rsp_cost,opt_cost,ratio_to_pattern,ratio_to_opt";
    for (int ell = 1; ell <= c.k; ++ell) {
        trials_csv << ",intervals_" << ell << ",forced_" << ell << ",unforced_" << ell << ",relocations_" << ell;
    }
    trials_csv << '\n';

    std::vector<double> rsp, pattern, opt, to_pattern, to_opt;
    for (std::size_t i = 0; i < c.trials; ++i) {
        const std::uint64_t seed = derive_seed(c.seed, i);
        const RequestSequence requests = detail::trial_requests(c, fixed, seed);
        std::unique_ptr<SpcAlgorithm> spc;
        if (c.spc == "oracle") spc = std::make_unique<OracleSpc>(requests, weights, universe);
        else spc = std::make_unique<LazySpc>(universe, c.k);
        const ComposedRun run = compose_run(*spc, splitmix64(seed), requests, weights, universe, c.with_opt);
        if (auto msg = check_counting_bounds(run.rsp_report); !msg.empty()) {
            throw InvariantViolation("trial " + std::to_string(i) + ": " + msg);
        }

        auto trace_file = detail::open_output(c, "trial_" + std::to_string(i) + ".jsonl");
        for (const auto& step : run.steps) trace_file << to_json_line(to_record(step)) << '\n';

        const double r = to_double(run.rsp_cost);
        const double pc = to_double(run.spc_pattern_cost);
        rsp.push_back(r);
        pattern.push_back(pc);
        to_pattern.push_back(r / pc);
        trials_csv << i << ',' << seed << ',' << requests.size() << ',' << fmt(pc) << ',' << fmt(r) << ',';
        if (run.opt_cost) {
            const double o = to_double(*run.opt_cost);
            opt.push_back(o);
            to_opt.push_back(r / o);
            trials_csv << fmt(o) << ',' << fmt(r / pc) << ',' << fmt(r / o);
        } else {
            trials_csv << ",," << fmt(r / pc) << ',';
        }
        for (int ell = 1; ell <= c.k; ++ell) {
            const auto& rep = run.rsp_report;
            trials_csv << ',' << rep.intervals_at(ell) << ',' << rep.forced_at(ell) << ',' << rep.unforced_at(ell) << ','
                       << rep.relocations_at(ell);
        }
        trials_csv << '\n';
    }

    auto summary = detail::open_output(c, "summary.csv");
    summary << summary_csv_header() << '\n';
    summary << summary_csv_row("rsp_cost", summarize(rsp)) << '\n';
    summary << summary_csv_row("spc_pattern_cost", summarize(pattern)) << '\n';
    summary << summary_csv_row("ratio_to_pattern", summarize(to_pattern)) << '\n';
    if (c.with_opt) {
        summary << summary_csv_row("opt_cost", summarize(opt)) << '\n';
        summary << summary_csv_row("ratio_to_opt", summarize(to_opt)) << '\n';
    }
    log << "simulate: " << c.trials << " trials, mean cost " << fmt(summarize(rsp).mean) << ", mean ratio to pattern "
        << fmt(summarize(to_pattern).mean);
    if (c.with_opt) log << ", mean ratio to OPT " << fmt(summarize(to_opt).mean);
    log << '\n';
    return kSuccess;
}

inline int run_adversary(const ExperimentConfig& c, std::ostream& log) {
    const std::uint64_t beta = c.beta.value_or(kDefaultBeta);
    auto calls_csv = detail::open_output(c, "calls.csv");
    calls_csv << "trial,call,ell_ext,marked,first_t,last_t,alg_cost,lower_pattern_cost\n";
    auto trials_csv = detail::open_output(c, "trials.csv");
    trials_csv << "trial,seed,calls,emissions,alg_cost_per_call,pattern_cost_per_call,ratio,accounted_calls,accounted_intervals\n";

    std::vector<double> alg, pat, ratio;
    LowerBoundStats last;
    for (std::size_t i = 0; i < c.trials; ++i) {
        const std::uint64_t seed = derive_seed(c.seed, i);
        LowerBoundStats s = run_lower_bound_experiment(c.k, beta, c.calls, seed);
        if (auto msg = check_counting_bounds(s.report); !msg.empty()) {
            throw InvariantViolation("trial " + std::to_string(i) + ": " + msg);
        }
        for (std::size_t j = 0; j < s.per_call.size(); ++j) {
            const auto& cc = s.per_call[j];
            calls_csv << i << ',' << j << ',' << cc.ell_ext << ',' << cc.marked << ',' << cc.first_t << ',' << cc.last_t << ','
                      << fmt(cc.alg_cost) << ',' << fmt(cc.lower_pattern_cost) << '\n';
        }
        trials_csv << i << ',' << seed << ',' << s.calls << ',' << s.emissions << ',' << fmt(s.alg_cost_per_call) << ','
                   << fmt(s.pattern_cost_per_call) << ',' << fmt(s.ratio) << ',' << s.accounted_calls << ','
                   << s.accounted_intervals << '\n';
        alg.push_back(s.alg_cost_per_call);
        pat.push_back(s.pattern_cost_per_call);
        ratio.push_back(s.ratio);
        last = std::move(s);
    }

    const Summary sa = summarize(alg), sp = summarize(pat), sr = summarize(ratio);
    auto summary = detail::open_output(c, "summary.csv");
    summary << summary_csv_header() << '\n';
    summary << summary_csv_row("alg_cost_per_call", sa) << '\n';
    summary << summary_csv_row("pattern_cost_per_call", sp) << '\n';
    summary << summary_csv_row("ratio", sr) << '\n';
    auto predicted = detail::open_output(c, "predicted.csv");
    predicted << "quantity,value\n";
    predicted << "alg_cost_per_call," << fmt(last.predicted_alg_per_call) << '\n';
    predicted << "pattern_cost_per_call," << fmt(last.predicted_pattern_per_call) << '\n';
    predicted << "asymptotic_ratio," << fmt(last.asymptotic_ratio) << '\n';

    log << "adversary: k=" << c.k << " beta=" << beta << " calls=" << c.calls << " trials=" << c.trials << '\n'
        << "  alg cost/call     " << fmt(sa.mean) << " (predicted " << fmt(last.predicted_alg_per_call) << ")\n"
        << "  pattern cost/call " << fmt(sp.mean) << " (predicted " << fmt(last.predicted_pattern_per_call) << ")\n"
        << "  ratio             " << fmt(sr.mean) << " (asymptote " << fmt(last.asymptotic_ratio) << ")\n";
    return kSuccess;
}

inline int run_opt(const ExperimentConfig& c, std::ostream& log) {
    const Weights weights = resolve_weights(c);
    const Universe universe(*c.universe);
    const auto fixed = detail::load_requests(c);
    auto opt_csv = detail::open_output(c, "opt.csv");
    opt_csv << "trial,seed,T,opt_cost,opt_hierarchical_cost,hierarchical_trace\n";
    std::vector<double> plain, hier;
    for (std::size_t i = 0; i < c.trials; ++i) {
        const std::uint64_t seed = derive_seed(c.seed, i);
        const RequestSequence requests = detail::trial_requests(c, fixed, seed);
        const Rational o = opt_cost(requests, weights, universe);
        const HierarchicalOptimum h = opt_hierarchical(requests, weights, universe);
        opt_csv << i << ',' << seed << ',' << requests.size() << ',' << to_string(o) << ',' << to_string(h.cost) << ','
                << detail::join_levels(h.trace) << '\n';
        plain.push_back(to_double(o));
        hier.push_back(to_double(h.cost));
    }
    auto summary = detail::open_output(c, "summary.csv");
    summary << summary_csv_header() << '\n';
    summary << summary_csv_row("opt_cost", summarize(plain)) << '\n';
    summary << summary_csv_row("opt_hierarchical_cost", summarize(hier)) << '\n';
    log << "opt: " << c.trials << " trials, mean OPT " << fmt(summarize(plain).mean) << ", mean hierarchical OPT "
        << fmt(summarize(hier).mean) << '\n';
    return kSuccess;
}

inline int run_verify(const ExperimentConfig& c, std::ostream& log) {
    SuiteParams p;
    p.seed = c.seed;
    p.samples = c.samples;
    p.max_t = c.max_t;
    if (c.universe) p.universe = c.universe;
    if (c.k_given) p.k = c.k;
    const auto results = run_suite(c.suite, p);
    Json report = Json::array();
    bool ok = true;
    for (const auto& r : results) {
        report.push_back(r.to_json());
        ok = ok && r.passed;
        log << r.name << ": " << (r.passed ? "PASS" : "FAIL") << " (" << r.instances << " instances, " << r.checks
            << " checks, " << r.failures << " failures)\n";
    }
    auto f = detail::open_output(c, "verify.json");
    f << report.dump(2) << '\n';
    return ok ? kSuccess : kSuiteFailure;
}

inline int run_ratio(const ExperimentConfig& c, std::ostream& log) {
    const auto cs = ratio_constants(c.k);
    std::optional<std::vector<BigInt>> adv;
    if (c.beta) adv = adversary_cost_constants(c.k, *c.beta);
    auto f = detail::open_output(c, "ratio.csv");
    std::string header = "ell,n_ell,harmonic_n_ell,c_ell,c_ell_decimal";
    if (adv) header += ",c_adv_ell";
    f << header << '\n';
    log << header << '\n';
    for (int ell = 1; ell <= c.k; ++ell) {
        const BigInt n = n_sequence(ell);
        std::string h = n <= 1000000 ? to_string(harmonic(n)) : "";
        std::string row = std::to_string(ell) + ',' + n.str() + ',' + h + ',' + to_string(cs[static_cast<std::size_t>(ell - 1)]) +
                          ',' + fmt(to_double(cs[static_cast<std::size_t>(ell - 1)]));
        if (adv) row += ',' + (ell < c.k ? (*adv)[static_cast<std::size_t>(ell)].str() : std::string());
        f << row << '\n';
        log << row << '\n';
    }
    return kSuccess;
}

inline int run_command(const ExperimentConfig& c, std::ostream& log = std::cout) {
    validate(c);
    if (c.mode == "simulate") return run_simulate(c, log);
    if (c.mode == "adversary") return run_adversary(c, log);
    if (c.mode == "opt") return run_opt(c, log);
    if (c.mode == "verify") return run_verify(c, log);
    return run_ratio(c, log);
}

/// run_command with errors mapped to exit codes and reported on `err`.
inline int run_guarded(const ExperimentConfig& c, std::ostream& log, std::ostream& err) {
    try {
        return run_command(c, log);
    } catch (const BudgetExceeded& e) {
        err << "budget exceeded: " << e.what() << '\n';
        return kBudgetExceeded;
    } catch (const InvariantViolation& e) {
        err << "property failure: " << e.what() << '\n';
        return kSuiteFailure;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kValidationError;
    }
}

}  // namespace wks::harness
