// Acceptance gate: one PASS/FAIL line per criterion. Exits non-zero if any
// criterion fails.

#include "wks/adversary.hpp"
#include "wks/composer.hpp"
#include "wks/feasibility.hpp"
#include "wks/harness/instances.hpp"
#include "wks/harness/suites.hpp"
#include "wks/offline_opt.hpp"
#include "wks/spc.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace wks;
using namespace wks::harness;

namespace {

struct Verdict {
    int id = 0;
    std::string title;
    bool pass = false;
    std::string detail;
    double seconds = 0;
};

std::vector<Verdict> verdicts;
EngineAudit audit;  // every engine run in this binary, for criteria 4 and 6

void record(int id, const std::string& title, const std::function<std::pair<bool, std::string>()>& body) {
    std::cerr << "running criterion " << id << " (" << title << ")..." << std::endl;
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    v.id = id;
    v.title = title;
    try {
        auto [ok, detail] = body();
        v.pass = ok;
        v.detail = detail;
    } catch (const std::exception& e) {
        v.pass = false;
        v.detail = std::string("exception: ") + e.what();
    }
    v.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    verdicts.push_back(v);
}

std::string num(double x, int digits = 4) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, x);
    return buf;
}

// Runs one engine over a fixed stream and audits it.
CostReport run_engine(const Universe& u, int k, std::uint64_t seed, const RequestSequence& reqs, const ExtensionTrace& trace,
                      const std::string& label) {
    RspEngine e(u, k, seed);
    if (!audit.drive(e, reqs, trace, label)) throw InvariantViolation(audit.messages.back());
    return e.cost_report(Weights(std::vector<Rational>(static_cast<std::size_t>(k), 1)));
}

std::pair<bool, std::string> criterion_oracle() {
    SuiteParams p;
    p.k = 3;
    p.universe = 4;
    p.max_t = 7;
    p.samples = 1000;
    p.seed = 1;
    const auto r = oracle_suite(p);
    std::ostringstream d;
    d << r.failures << " mismatches; " << r.metrics["exhaustive_instances"].get<std::size_t>()
      << " exhaustive instances (k<=2, T<=5, |U|<=3) and " << r.metrics["random_instances"].get<std::size_t>()
      << " random instances (k=3, T<=7, |U|=4); " << r.checks << " Q-set comparisons";
    if (!r.passed) d << "; first: " << r.counterexamples.front().dump();
    return {r.passed, d.str()};
}

std::pair<bool, std::string> criterion_dichotomy() {
    SuiteParams p;
    p.k = 2;
    p.universe = 6;
    p.max_t = 6;
    p.samples = 1000;
    p.seed = 2;
    const auto r = dichotomy_suite(p);
    std::ostringstream d;
    d << r.failures << " violations over " << r.instances << " instances, " << r.checks
      << " Q-sets; largest non-ALL Q = " << r.metrics["max_non_all_size"].get<std::size_t>() << " (bound n_2 = 4)";
    return {r.passed, d.str()};
}

std::pair<bool, std::string> criterion_subset() {
    SuiteParams p;
    p.k = 2;
    p.universe = 6;
    p.max_t = 6;
    p.samples = 1000;
    p.seed = 2;
    const auto r = subset_suite(p);
    std::ostringstream d;
    d << r.failures << " violations over " << r.instances << " instances, " << r.checks << " containment checks";
    if (!r.passed) d << "; first: " << r.counterexamples.front().dump();
    return {r.passed, d.str()};
}

std::pair<bool, std::string> criterion_uniformity() {
    SuiteParams p;
    p.samples = 10000;
    p.seed = 5;
    const auto r = uniformity_suite(p);
    const auto& light = r.metrics["light_server"];
    std::ostringstream d;
    d << p.samples.value() << " seeds, heavy server pinned in every run; light server frequencies ";
    for (const auto& f : light["frequencies"]) d << num(f.get<double>(), 4) << ' ';
    d << "vs 1/5 +- " << num(light["tolerance"].get<double>(), 4) << "; heavy server over {a,b}: ";
    for (const auto& f : r.metrics["heavy_server"]["frequencies"]) d << num(f.get<double>(), 4) << ' ';
    return {r.passed, d.str()};
}

std::pair<bool, std::string> criterion_expected_movements() {
    const int k = 2;
    const std::size_t trials = 1000;
    const double h1 = to_double(harmonic(n_sequence(1))), h2 = to_double(harmonic(n_sequence(2)));
    const auto c = ratio_constants(k);
    const double c1 = to_double(c[0]), c2 = to_double(c[1]);

    struct Fixed {
        std::string name;
        Universe u;
        RequestSequence reqs;
        ExtensionTrace trace;
    };
    std::vector<Fixed> fixed;
    Rng rng(7007);
    {
        RequestSequence reqs;
        for (int t = 0; t < 30; ++t) reqs.push_back(static_cast<Point>(rng.uniform_index(4)));
        LazySpc lazy(Universe(4), k);
        ExtensionTrace tr(k);
        for (Point x : reqs) tr.push_back(lazy.step(x));
        fixed.push_back({"lazy", Universe(4), reqs, tr});
        fixed.push_back({"oracle", Universe(4), reqs, oracle_spc(reqs, Weights::geometric(k, 10), Universe(4))});
    }
    {
        const auto in = feasible_instance(k, 6, 30, rng);
        fixed.push_back({"feasible", Universe(6), in.requests, in.trace});
    }
    {
        const auto s = adversary_stream(k, 5, Universe(3), 10, 77);
        fixed.push_back({"adversary", Universe(3), s.requests(), s.trace()});
    }

    bool ok = true;
    std::ostringstream d;
    for (const auto& f : fixed) {
        double x[2] = {0, 0}, y[2] = {0, 0};
        for (std::size_t i = 0; i < trials; ++i) {
            const auto r = run_engine(f.u, k, derive_seed(700, i), f.reqs, f.trace, "criterion 7 " + f.name);
            for (int l = 0; l < 2; ++l) {
                x[l] += static_cast<double>(r.forced[static_cast<std::size_t>(l)]);
                y[l] += static_cast<double>(r.unforced[static_cast<std::size_t>(l)]);
            }
        }
        for (auto& v : x) v /= trials;
        for (auto& v : y) v /= trials;
        const auto ivs = intervals(f.trace);
        const double i1 = static_cast<double>(ivs.count(1)), i2 = static_cast<double>(ivs.count(2));
        const bool this_ok = y[0] <= h1 * x[0] * 1.1 && y[1] <= h2 * x[1] * 1.1 && x[0] + y[0] <= c1 * i1 * 1.1 &&
                             x[1] + y[1] <= c2 * i2 * 1.1;
        ok = ok && this_ok;
        d << f.name << ": Y1/X1=" << num(y[0] / x[0], 3) << "<=" << num(h1, 3) << ", Y2/X2=" << num(x[1] > 0 ? y[1] / x[1] : 0, 3)
          << "<=" << num(h2, 3) << ", (X1+Y1)/|I1|=" << num((x[0] + y[0]) / i1, 3) << "<=" << num(c1, 3)
          << ", (X2+Y2)/|I2|=" << num((x[1] + y[1]) / i2, 3) << "<=" << num(c2, 3) << (this_ok ? "" : " FAILED") << "; ";
    }
    d << trials << " trials per instance";
    return {ok, d.str()};
}

std::pair<bool, std::string> criterion_offline() {
    std::size_t instances = 0, mismatches = 0, dominance = 0;
    std::string first;
    for (int k = 1; k <= 2; ++k) {
        const std::vector<Weights> weight_sets =
            k == 1 ? std::vector<Weights>{Weights({Rational(1)})}
                   : std::vector<Weights>{Weights({Rational(1), Rational(10)}), Weights({Rational(2), Rational(3)})};
        for (std::size_t n = 1; n <= 3; ++n) {
            for (std::size_t T = 1; T <= 5; ++T) {
                const auto tails = all_tuples(static_cast<std::size_t>(k) + 1, static_cast<int>(T) - 1);
                for (const auto& reqs : all_tuples(n, static_cast<int>(T))) {
                    // Feasible traces do not depend on the weights.
                    std::vector<ExtensionTrace> feasible;
                    for (const auto& tail : tails) {
                        std::vector<int> ells{k};
                        for (Point x : tail) ells.push_back(static_cast<int>(x));
                        ExtensionTrace tr(k, ells);
                        if (is_feasible(tr, reqs)) feasible.push_back(std::move(tr));
                    }
                    for (const auto& w : weight_sets) {
                        ++instances;
                        Rational best = -1;
                        for (const auto& tr : feasible) {
                            const Rational cost = pattern_cost(tr, w);
                            if (best < 0 || cost < best) best = cost;
                        }
                        const auto h = opt_hierarchical(reqs, w, Universe(n));
                        const Rational plain = opt_cost(reqs, w, Universe(n));
                        if (h.cost != best) {
                            ++mismatches;
                            if (first.empty()) first = "hierarchical optimum " + to_string(h.cost) + " vs enumeration " + to_string(best);
                        }
                        if (plain > h.cost) ++dominance;
                    }
                }
            }
        }
    }
    const Rational example = opt_cost({0, 1, 0, 1}, Weights({Rational(1), Rational(10)}), Universe(2));
    const bool ok = mismatches == 0 && dominance == 0 && example == 11;
    std::ostringstream d;
    d << instances << " (instance, weights) pairs: " << mismatches << " hierarchical mismatches, " << dominance
      << " cases with opt_cost > opt_hierarchical; opt_cost(a,b,a,b; 1,10) = " << to_string(example);
    if (!first.empty()) d << "; first: " << first;
    return {ok, d.str()};
}

std::pair<bool, std::string> criterion_setsystem() {
    const auto r = setsystem_suite(SuiteParams{});
    const double secs = r.metrics["seconds"].get<double>();
    std::ostringstream d;
    for (const auto& lvl : r.metrics["levels"]) {
        d << "level " << lvl["level"].get<int>() << ": " << lvl.value("sets", 0) << " sets of size " << lvl.value("set_size", 0)
          << " on " << lvl["points"].get<std::size_t>() << " points; ";
    }
    d << num(secs, 4) << " s";
    return {r.passed && secs < 1.0, d.str()};
}

std::pair<bool, std::string> criterion_adversary_structure() {
    std::size_t streams = 0, calls = 0, prefixes = 0, violations = 0;
    std::string first;
    for (std::uint64_t beta : {2u, 3u, 5u, 10u, 100u}) {
        for (std::uint64_t seed = 0; seed < 4; ++seed) {
            const std::size_t budget = 20 + 10 * seed;  // up to 50 calls
            const Universe u(3);
            const auto s = adversary_stream(2, beta, u, budget, derive_seed(1000 + beta, seed));
            ++streams;
            calls += s.calls.size() + s.top_calls.size();
            for (const auto& v : check_stream_structure(s)) {
                ++violations;
                if (first.empty()) first = v;
            }
            PatternTree tree(2);
            LabelSetEvaluator eval(tree, u);
            for (const auto& e : s.emissions) {
                tree.append(e.point, e.level);
                ++prefixes;
                if (!eval.pattern_feasible()) {
                    ++violations;
                    if (first.empty()) first = "infeasible prefix at t=" + std::to_string(tree.time());
                    break;
                }
            }
        }
    }
    std::ostringstream d;
    d << streams << " streams (k=2, beta in {2,3,5,10,100}, <=50 calls), " << calls << " strategy calls checked for emission counts, "
      << "level structure and cost <= c_adv; " << prefixes << " prefixes feasible; " << violations << " violations";
    if (!first.empty()) d << "; first: " << first;
    return {violations == 0, d.str()};
}

std::pair<bool, std::string> criterion_lower_bound(bool& flagged) {
    const int seeds = 20;
    const std::size_t calls = 500;
    double alg = 0, pat = 0;
    LowerBoundStats last;
    for (int s = 0; s < seeds; ++s) {
        auto st = run_lower_bound_experiment(2, 100, calls, derive_seed(2024, static_cast<std::uint64_t>(s)));
        audit.check(st.report, st.emissions, "lower bound seed " + std::to_string(s));
        alg += st.alg_cost_per_call;
        pat += st.pattern_cost_per_call;
        last = std::move(st);
    }
    alg /= seeds;
    pat /= seeds;
    const double ratio = alg / pat;
    const double target_alg = last.predicted_alg_per_call, target_pat = 23.2;
    const bool alg_low = alg < target_alg * 0.9;
    flagged = alg > target_alg * 1.1;
    const bool pat_ok = std::abs(pat - target_pat) <= target_pat * 0.1;
    const bool ratio_ok = ratio >= 1.30 && ratio <= 1.55;
    std::ostringstream d;
    d << seeds << " seeds x " << calls << " calls: alg cost/call " << num(alg, 3) << " (target 33 +- 10%"
      << (flagged ? ", ABOVE TARGET: reported, not failed" : "") << "), pattern cost/call " << num(pat, 3)
      << " (target 23.2 +- 10%), ratio " << num(ratio, 4) << " (range [1.30, 1.55], asymptote " << num(last.asymptotic_ratio, 2)
      << ")";
    return {!alg_low && pat_ok && ratio_ok, d.str()};
}

}  // namespace

int main() {
    record(1, "oracle equivalence", criterion_oracle);
    record(2, "generalized dichotomy", criterion_dichotomy);
    record(3, "subset property", criterion_subset);
    record(5, "uniformity", criterion_uniformity);
    record(7, "expected movement bounds", criterion_expected_movements);
    record(8, "offline oracles", criterion_offline);
    record(9, "set-system", criterion_setsystem);
    record(10, "adversary structure", criterion_adversary_structure);
    bool flagged = false;
    record(11, "lower-bound experiment", [&] { return criterion_lower_bound(flagged); });

    // Criteria 4 and 6 span every engine run above plus a dedicated batch.
    SuiteParams counting;
    counting.samples = 300;
    counting.seed = 6;
    record(6, "deterministic counting bounds", [&] {
        counting_suite(counting, &audit);
        std::ostringstream d;
        d << audit.violations - audit.faults << " bound violations across " << audit.runs << " engine runs (" << audit.steps << " audited steps)";
        if (!audit.messages.empty()) d << "; first: " << audit.messages.front();
        return std::make_pair(audit.violations == audit.faults, d.str());
    });
    record(4, "serving and nonemptiness", [&] {
        std::ostringstream d;
        d << audit.runs << " audited engine runs (" << audit.steps << " steps), " << audit.faults
          << " service or empty-Q faults";
        return std::make_pair(audit.faults == 0, d.str());
    });

    std::sort(verdicts.begin(), verdicts.end(), [](const Verdict& x, const Verdict& y) { return x.id < y.id; });
    int failed = 0;
    for (const auto& v : verdicts) {
        std::cout << (v.pass ? "[PASS] " : "[FAIL] ") << "criterion " << v.id << " " << v.title << ": " << v.detail << " ("
                  << num(v.seconds, 1) << " s)" << std::endl;
        failed += !v.pass;
    }
    if (flagged) std::cout << "note: criterion 11 algorithm cost is above its target band (reported, not failed)" << std::endl;
    std::cout << (failed == 0 ? "ACCEPTANCE: all criteria passed" : "ACCEPTANCE: " + std::to_string(failed) + " criteria failed")
              << std::endl;
    return failed == 0 ? 0 : 1;
}
