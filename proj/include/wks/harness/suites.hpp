#pragma once

// Property suites shared by the CLI's verify mode and the test binaries.
// Each returns machine-readable results with a few counterexamples.

#include "wks/adversary.hpp"
#include "wks/composer.hpp"
#include "wks/feasibility.hpp"
#include "wks/harness/instances.hpp"
#include "wks/labeling_oracle.hpp"
#include "wks/pattern_tree.hpp"
#include "wks/rsp_engine.hpp"
#include "wks/spc.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace wks::harness {

using Json = nlohmann::ordered_json;

inline constexpr std::size_t kMaxCounterexamples = 5;

struct SuiteResult {
    std::string name;
    bool passed = true;
    std::size_t instances = 0;
    std::size_t checks = 0;
    std::size_t failures = 0;
    Json metrics = Json::object();
    std::vector<Json> counterexamples;

    void fail(Json example) {
        passed = false;
        ++failures;
        if (counterexamples.size() < kMaxCounterexamples) counterexamples.push_back(std::move(example));
    }

    Json to_json() const {
        Json j;
        j["suite"] = name;
        j["passed"] = passed;
        j["instances"] = instances;
        j["checks"] = checks;
        j["failures"] = failures;
        j["metrics"] = metrics;
        j["counterexamples"] = counterexamples;
        return j;
    }
};

struct SuiteParams {
    std::optional<int> k;
    std::optional<std::size_t> universe;
    std::optional<std::size_t> samples;
    std::optional<std::size_t> max_t;
    std::uint64_t seed = 1;
};

inline Json instance_json(const ExtensionTrace& trace, const RequestSequence& requests) {
    Json j;
    j["k"] = trace.k();
    j["trace"] = trace.levels();
    j["requests"] = requests;
    return j;
}

namespace detail {

inline std::vector<Point> q_points(const LabelSet& q, const Universe& u) { return q.materialize(u); }

// Q at every prefix, level and top tuple: table[t-1][ell-1][tuple index],
// tuples from all_tuples(|U|, k-ell).
using QTable = std::vector<std::vector<std::vector<LabelSet>>>;

inline QTable q_table(const Instance& in, const Universe& universe) {
    const int k = in.trace.k();
    PatternTree tree(k);
    LabelSetEvaluator eval(tree, universe);
    QTable table;
    for (std::size_t t = 1; t <= in.trace.size(); ++t) {
        tree.append(in.requests[t - 1], in.trace.at(t));
        auto& row = table.emplace_back(static_cast<std::size_t>(k));
        for (int ell = 1; ell <= k; ++ell) {
            for (const auto& tops : all_tuples(universe.size(), k - ell)) {
                row[static_cast<std::size_t>(ell - 1)].push_back(eval.compute_q(ell, tops));
            }
        }
    }
    return table;
}

inline std::vector<Point> truncated_requests(const RequestSequence& r, std::size_t t) {
    return RequestSequence(r.begin(), r.begin() + static_cast<std::ptrdiff_t>(t));
}

}  // namespace detail

/// compute_q against brute force: every instance with k <= 2, T <= 5,
/// |U| <= 3 (explicit labeling enumeration), plus random k = 3 instances
/// (configuration reachability) with every prefix compared.
inline SuiteResult oracle_suite(const SuiteParams& p) {
    SuiteResult r;
    r.name = "oracle";
    std::size_t exhaustive = 0;

    for (int k = 1; k <= 2; ++k) {
        for (std::size_t n = 1; n <= 3; ++n) {
            const Universe universe(n);
            for (std::size_t T = 1; T <= 5; ++T) {
                for (const auto& tail : all_tuples(static_cast<std::size_t>(k) + 1, static_cast<int>(T) - 1)) {
                    std::vector<int> ells{k};
                    for (Point x : tail) ells.push_back(static_cast<int>(x));
                    const ExtensionTrace trace(k, ells);
                    const IntervalSet pattern = intervals(trace);
                    for (const auto& requests : all_tuples(n, static_cast<int>(T))) {
                        ++exhaustive;
                        const auto labelings = enumerate_labelings(trace, requests, universe);
                        const PatternTree tree = PatternTree::build(trace, requests);
                        LabelSetEvaluator eval(tree, universe);
                        for (int ell = 1; ell <= k; ++ell) {
                            for (const auto& tops : all_tuples(n, k - ell)) {
                                ++r.checks;
                                const auto want = last_labels_from(labelings, pattern, ell, tops);
                                const auto got = eval.compute_q(ell, tops).materialize(universe);
                                if (want != got) {
                                    Json ex = instance_json(trace, requests);
                                    ex["universe"] = n;
                                    ex["ell"] = ell;
                                    ex["tops"] = tops;
                                    ex["expected"] = want;
                                    ex["computed"] = got;
                                    r.fail(ex);
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    const int k = p.k.value_or(3);
    const std::size_t n = p.universe.value_or(4);
    const std::size_t max_t = p.max_t.value_or(7);
    const std::size_t samples = p.samples.value_or(1000);
    const Universe universe(n);
    Rng rng(derive_seed(p.seed, 0x0AC1E));
    for (std::size_t s = 0; s < samples; ++s) {
        const std::size_t T = 1 + rng.uniform_index(max_t);
        const Instance in = mixed_instance(k, n, T, rng);
        const auto table = detail::q_table(in, universe);
        for (std::size_t t = 1; t <= T; ++t) {
            const auto prefix = in.trace.prefix(t);
            const auto reqs = detail::truncated_requests(in.requests, t);
            const auto reach = reachable_last_labels(prefix, reqs, universe);
            for (int ell = 1; ell <= k; ++ell) {
                const auto tuples = all_tuples(n, k - ell);
                for (std::size_t i = 0; i < tuples.size(); ++i) {
                    ++r.checks;
                    const auto want = last_labels_from_reachable(reach, universe, k, ell, tuples[i]);
                    const auto got = table[t - 1][static_cast<std::size_t>(ell - 1)][i].materialize(universe);
                    if (want != got) {
                        Json ex = instance_json(prefix, reqs);
                        ex["universe"] = n;
                        ex["ell"] = ell;
                        ex["tops"] = tuples[i];
                        ex["expected"] = want;
                        ex["computed"] = got;
                        r.fail(ex);
                    }
                }
            }
        }
    }
    r.instances = exhaustive + samples;
    r.metrics["exhaustive_instances"] = exhaustive;
    r.metrics["random_instances"] = samples;
    r.metrics["random_k"] = k;
    r.metrics["random_universe"] = n;
    r.metrics["random_max_t"] = max_t;
    return r;
}

struct EnsembleSpec {
    int k;
    std::size_t universe;
    std::size_t max_t;
    std::size_t samples;
    std::uint64_t seed;
};

inline EnsembleSpec ensemble_spec(const SuiteParams& p) {
    return {p.k.value_or(2), p.universe.value_or(6), p.max_t.value_or(6), p.samples.value_or(1000),
            derive_seed(p.seed, 0xD1C0)};
}

/// Visits every instance of the seeded ensemble together with its Q table.
inline void for_each_ensemble_instance(const EnsembleSpec& spec,
                                       const std::function<void(const Instance&, const detail::QTable&)>& visit) {
    Rng rng(spec.seed);
    const Universe universe(spec.universe);
    for (std::size_t s = 0; s < spec.samples; ++s) {
        const std::size_t T = 1 + rng.uniform_index(spec.max_t);
        const Instance in = mixed_instance(spec.k, spec.universe, T, rng);
        visit(in, detail::q_table(in, universe));
    }
}

/// Every Q is ALL or has at most n_ell points.
inline SuiteResult dichotomy_suite(const SuiteParams& p) {
    SuiteResult r;
    r.name = "dichotomy";
    const auto spec = ensemble_spec(p);
    const Universe universe(spec.universe);
    std::size_t max_explicit = 0;
    std::size_t all_count = 0;
    for_each_ensemble_instance(spec, [&](const Instance& in, const detail::QTable& table) {
        ++r.instances;
        for (std::size_t t = 1; t <= table.size(); ++t) {
            for (int ell = 1; ell <= spec.k; ++ell) {
                const BigInt bound = n_sequence(ell);
                for (const auto& q : table[t - 1][static_cast<std::size_t>(ell - 1)]) {
                    ++r.checks;
                    if (q.is_all()) {
                        ++all_count;
                        continue;
                    }
                    max_explicit = std::max(max_explicit, q.points().size());
                    if (BigInt(q.points().size()) > bound) {
                        Json ex = instance_json(in.trace.prefix(t), detail::truncated_requests(in.requests, t));
                        ex["ell"] = ell;
                        ex["q"] = q.points();
                        r.fail(ex);
                    }
                }
            }
        }
    });
    r.metrics["k"] = spec.k;
    r.metrics["universe"] = spec.universe;
    r.metrics["max_t"] = spec.max_t;
    r.metrics["max_non_all_size"] = max_explicit;
    r.metrics["all_count"] = all_count;
    return r;
}

/// For ell > ell_t, Q at t is a subset of Q at t-1 (same top labels).
inline SuiteResult subset_suite(const SuiteParams& p) {
    SuiteResult r;
    r.name = "subset";
    const auto spec = ensemble_spec(p);
    for_each_ensemble_instance(spec, [&](const Instance& in, const detail::QTable& table) {
        ++r.instances;
        for (std::size_t t = 2; t <= table.size(); ++t) {
            for (int ell = in.trace.at(t) + 1; ell <= spec.k; ++ell) {
                const auto& now = table[t - 1][static_cast<std::size_t>(ell - 1)];
                const auto& before = table[t - 2][static_cast<std::size_t>(ell - 1)];
                for (std::size_t i = 0; i < now.size(); ++i) {
                    ++r.checks;
                    if (!now[i].subset_of(before[i])) {
                        Json ex = instance_json(in.trace.prefix(t), detail::truncated_requests(in.requests, t));
                        ex["ell"] = ell;
                        ex["tops"] = all_tuples(spec.universe, spec.k - ell)[i];
                        ex["q_t"] = now[i].to_string();
                        ex["q_t_minus_1"] = before[i].to_string();
                        r.fail(ex);
                    }
                }
            }
        }
    });
    r.metrics["k"] = spec.k;
    r.metrics["universe"] = spec.universe;
    return r;
}

/// Empirical frequency check: each of `counts` within 4 standard errors
/// of the uniform share.
inline bool within_uniform_tolerance(const std::vector<std::size_t>& counts, std::size_t trials, Json* detail = nullptr) {
    const double share = 1.0 / static_cast<double>(counts.size());
    const double tol = 4.0 * std::sqrt(share * (1 - share) / static_cast<double>(trials));
    bool ok = true;
    Json freqs = Json::array();
    for (auto c : counts) {
        const double f = static_cast<double>(c) / static_cast<double>(trials);
        freqs.push_back(f);
        ok = ok && std::abs(f - share) <= tol;
    }
    if (detail) {
        (*detail)["frequencies"] = freqs;
        (*detail)["expected"] = share;
        (*detail)["tolerance"] = tol;
    }
    return ok;
}

/// Scripted k = 2 instances on five points (a=0, b=1, c=2). With requests
/// a b a c a and levels 2 0 1 0 1 the heavy server is pinned to a from
/// t = 4 and the light one is resampled from ALL at t = 5. With requests
/// a b and levels 2 0 the heavy server is uniform over {a, b}.
inline SuiteResult uniformity_suite(const SuiteParams& p) {
    SuiteResult r;
    r.name = "uniformity";
    const std::size_t trials = p.samples.value_or(10000);
    const Universe universe(5);
    const RequestSequence light_reqs{0, 1, 0, 2, 0};
    const std::vector<int> light_ells{2, 0, 1, 0, 1};
    std::vector<std::size_t> light(5, 0), heavy(2, 0);
    for (std::size_t i = 0; i < trials; ++i) {
        RspEngine engine(universe, 2, derive_seed(p.seed, i));
        for (std::size_t t = 0; t < light_reqs.size(); ++t) engine.step(light_reqs[t], light_ells[t]);
        ++r.checks;
        const auto& pos = engine.positions();
        if (pos[1] != 0) {
            Json ex;
            ex["trial"] = i;
            ex["heavy_position"] = pos[1];
            r.fail(ex);
            continue;
        }
        ++light[pos[0]];

        RspEngine two(universe, 2, derive_seed(p.seed ^ 0x5EED, i));
        two.step(0, 2);
        two.step(1, 0);
        const Point h = two.positions()[1];
        ++r.checks;
        if (h > 1) {
            Json ex;
            ex["trial"] = i;
            ex["heavy_position"] = h;
            r.fail(ex);
            continue;
        }
        ++heavy[h];
    }
    r.instances = trials;
    Json light_detail, heavy_detail;
    if (!within_uniform_tolerance(light, trials, &light_detail)) r.fail(Json{{"light_server", light_detail}});
    if (!within_uniform_tolerance(heavy, trials, &heavy_detail)) r.fail(Json{{"heavy_server", heavy_detail}});
    r.metrics["trials"] = trials;
    r.metrics["light_server"] = light_detail;
    r.metrics["heavy_server"] = heavy_detail;
    return r;
}

/// Audits finished engine runs: counting bounds, service, no empty Q.
struct EngineAudit {
    std::size_t runs = 0;
    std::size_t steps = 0;
    std::size_t violations = 0;
    std::size_t faults = 0;  // service or empty-Q failures, included in violations
    std::vector<std::string> messages;

    void note(const std::string& what) {
        ++violations;
        if (messages.size() < kMaxCounterexamples) messages.push_back(what);
    }

    void check(const RspEngine& engine, const std::string& label) {
        ++runs;
        steps += engine.time();
        const auto report = engine.cost_report(Weights(std::vector<Rational>(static_cast<std::size_t>(engine.k()), 1)));
        if (auto msg = check_counting_bounds(report); !msg.empty()) note(label + ": " + msg);
    }

    void check(const CostReport& report, std::size_t run_steps, const std::string& label) {
        ++runs;
        steps += run_steps;
        if (auto msg = check_counting_bounds(report); !msg.empty()) note(label + ": " + msg);
    }

    /// Steps an engine through a stream; service and empty-Q faults are
    /// recorded rather than thrown.
    bool drive(RspEngine& engine, const RequestSequence& requests, const ExtensionTrace& trace, const std::string& label) {
        try {
            for (std::size_t t = 1; t <= requests.size(); ++t) engine.step(requests[t - 1], trace.at(t));
        } catch (const InvariantViolation& e) {
            note(label + ": " + e.what());
            ++faults;
            ++runs;
            return false;
        }
        check(engine, label);
        return true;
    }
};

/// Engine runs on feasible random streams, lazy-SPC streams and adversary
/// streams; every run must serve all requests, never see an empty Q and
/// satisfy the counting bounds.
inline SuiteResult counting_suite(const SuiteParams& p, EngineAudit* shared = nullptr) {
    SuiteResult r;
    r.name = "counting";
    EngineAudit local;
    EngineAudit& audit = shared ? *shared : local;
    const std::size_t samples = p.samples.value_or(300);
    Rng rng(derive_seed(p.seed, 0xC0C0));
    for (std::size_t s = 0; s < samples; ++s) {
        const int k = 1 + static_cast<int>(s % 3);
        const std::size_t n = 2 + rng.uniform_index(5);
        const std::size_t T = 1 + rng.uniform_index(40);
        const Universe universe(n);
        const Instance in = feasible_instance(k, n, T, rng);
        RspEngine engine(universe, k, rng.next());
        audit.drive(engine, in.requests, in.trace, "feasible stream " + std::to_string(s));

        RequestSequence reqs;
        for (std::size_t t = 0; t < T; ++t) reqs.push_back(static_cast<Point>(rng.uniform_index(n)));
        LazySpc spc(universe, k);
        ExtensionTrace trace(k);
        for (Point x : reqs) trace.push_back(spc.step(x));
        RspEngine lazy(universe, k, rng.next());
        audit.drive(lazy, reqs, trace, "lazy stream " + std::to_string(s));
    }
    const std::size_t adv_runs = std::max<std::size_t>(1, samples / 10);
    for (std::size_t s = 0; s < adv_runs; ++s) {
        const int k = 1 + static_cast<int>(s % 3);
        const std::uint64_t beta = 2 + rng.uniform_index(4);
        const Universe universe(static_cast<std::size_t>((n_sequence(k - 1) + 1).convert_to<long long>()));
        const auto stream = adversary_stream(k, beta, universe, 10, rng.next());
        RspEngine engine(universe, k, rng.next());
        audit.drive(engine, stream.requests(), stream.trace(), "adversary stream " + std::to_string(s));
    }
    r.instances = audit.runs;
    r.checks = audit.steps;
    for (const auto& m : audit.messages) r.fail(Json{{"violation", m}});
    r.failures = audit.violations;
    r.passed = audit.violations == 0;
    r.metrics["runs"] = audit.runs;
    r.metrics["steps"] = audit.steps;
    return r;
}

/// The set-system construction verifies at levels 1..4.
inline SuiteResult setsystem_suite(const SuiteParams& p) {
    SuiteResult r;
    r.name = "setsystem";
    const int max_level = p.k.value_or(4);
    const auto start = std::chrono::steady_clock::now();
    Json levels = Json::array();
    for (int ell = 1; ell <= max_level; ++ell) {
        const auto n = static_cast<std::size_t>(n_sequence(ell).convert_to<long long>());
        std::vector<Point> ground(n);
        for (std::size_t i = 0; i < n; ++i) ground[i] = static_cast<Point>(i);
        ++r.instances;
        ++r.checks;
        Json info;
        info["level"] = ell;
        info["points"] = n;
        try {
            const SetSystem sys = build_set_system(ground, ell);
            const auto violations = verify_set_system(ground, sys.sets, ell);
            info["sets"] = sys.sets.size();
            info["set_size"] = sys.sets.empty() ? 0 : sys.sets[0].size();
            if (!violations.empty()) {
                info["violations"] = violations;
                r.fail(info);
            }
        } catch (const std::exception& e) {
            info["error"] = e.what();
            r.fail(info);
        }
        levels.push_back(info);
    }
    r.metrics["levels"] = levels;
    r.metrics["seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

/// Adversary streams: per-call structure and cost bounds, feasibility of
/// every prefix, and the constructive labeling.
inline SuiteResult adversary_suite(const SuiteParams& p) {
    SuiteResult r;
    r.name = "adversary";
    const std::size_t samples = p.samples.value_or(12);
    Rng rng(derive_seed(p.seed, 0xADF));
    std::size_t calls_checked = 0;
    for (std::size_t s = 0; s < samples; ++s) {
        const int k = s % 4 == 3 ? 3 : (s % 4 == 2 ? 1 : 2);
        const std::uint64_t beta = k == 3 ? 2 + rng.uniform_index(2) : 2 + rng.uniform_index(9);
        const std::size_t budget = k == 3 ? 8 : 1 + rng.uniform_index(50);
        const Universe universe(static_cast<std::size_t>((n_sequence(k - 1) + 1).convert_to<long long>()));
        const std::uint64_t seed = rng.next();
        const auto stream = adversary_stream(k, beta, universe, budget, seed);
        ++r.instances;
        Json where;
        where["k"] = k;
        where["beta"] = beta;
        where["calls"] = budget;
        where["seed"] = seed;

        ++r.checks;
        calls_checked += stream.calls.size() + stream.top_calls.size();
        if (auto v = check_stream_structure(stream); !v.empty()) {
            Json ex = where;
            ex["violations"] = v;
            r.fail(ex);
        }

        PatternTree tree(k);
        LabelSetEvaluator eval(tree, universe);
        for (std::size_t t = 1; t <= stream.emissions.size(); ++t) {
            tree.append(stream.emissions[t - 1].point, stream.emissions[t - 1].level);
            ++r.checks;
            if (!eval.pattern_feasible()) {
                Json ex = where;
                ex["infeasible_prefix"] = t;
                r.fail(ex);
                break;
            }
        }

        ++r.checks;
        try {
            const Labeling lab = constructive_labeling(stream);
            if (!labeling_serves(intervals(stream.trace()), stream.requests(), lab)) {
                Json ex = where;
                ex["error"] = "constructive labeling leaves a request unserved";
                r.fail(ex);
            }
        } catch (const std::exception& e) {
            Json ex = where;
            ex["error"] = e.what();
            r.fail(ex);
        }
    }
    r.metrics["calls_checked"] = calls_checked;
    return r;
}

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"oracle", "dichotomy", "subset", "uniformity",
                                                "counting", "setsystem", "adversary"};
    return names;
}

inline std::vector<SuiteResult> run_suite(const std::string& name, const SuiteParams& p) {
    if (name == "all") {
        std::vector<SuiteResult> out;
        for (const auto& n : suite_names()) out.push_back(run_suite(n, p).front());
        return out;
    }
    if (name == "oracle") return {oracle_suite(p)};
    if (name == "dichotomy") return {dichotomy_suite(p)};
    if (name == "subset") return {subset_suite(p)};
    if (name == "uniformity") return {uniformity_suite(p)};
    if (name == "counting") return {counting_suite(p)};
    if (name == "setsystem") return {setsystem_suite(p)};
    if (name == "adversary") return {adversary_suite(p)};
    throw InvalidArgument("unknown suite '" + name + "'");
}

}  // namespace wks::harness
