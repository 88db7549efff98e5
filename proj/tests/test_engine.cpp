#include "brute_force.hpp"

#include "wks/composer.hpp"
#include "wks/harness/instances.hpp"
#include "wks/offline_opt.hpp"
#include "wks/rsp_engine.hpp"
#include "wks/spc.hpp"

#include <gtest/gtest.h>

#include <map>

using namespace wks;

namespace {

constexpr Point a = 0, b = 1, c = 2;

std::vector<double> as_doubles(const Weights& w) {
    std::vector<double> out;
    for (const auto& x : w.values()) out.push_back(to_double(x));
    return out;
}

RequestSequence random_requests(Rng& rng, std::size_t n, std::size_t T) {
    RequestSequence r;
    for (std::size_t t = 0; t < T; ++t) r.push_back(static_cast<Point>(rng.uniform_index(n)));
    return r;
}

}  // namespace

TEST(RspEngine, InitialState) {
    RspEngine e(Universe(3), 2, 7);
    EXPECT_TRUE(e.positions().empty());
    EXPECT_EQ(e.time(), 0u);
    EXPECT_THROW(e.step(a, 1), InvalidArgument);
    EXPECT_THROW(e.cost_report(Weights::geometric(2, 2)), InvalidArgument);
    e.step(a, 2);
    EXPECT_EQ(e.positions().size(), 2u);

    RspEngine single(Universe(1), 1, 0);
    single.step(0, 1);
    EXPECT_EQ(single.current_q(1), LabelSet::all());
}

TEST(RspEngine, SingleServerFollowsRequests) {
    RspEngine e(Universe(3), 1, 1);
    const auto out = e.step(a, 1);
    EXPECT_EQ(out.at(1).kind, MovementKind::forced);
    EXPECT_EQ(out.at(1).q_size, 1u);
    EXPECT_EQ(e.positions()[0], a);
    e.step(b, 1);
    e.step(a, 1);
    const auto r = e.cost_report(Weights({Rational(1)}));
    EXPECT_EQ(r.forced_at(1), 3u);
    EXPECT_EQ(r.unforced_at(1), 0u);
    EXPECT_EQ(r.relocations_at(1), 3u);
    EXPECT_EQ(r.weighted_cost, 3);
}

TEST(RspEngine, SingletonUniverseCostsOnePlacement) {
    RspEngine e(Universe(1), 1, 3);
    e.step(0, 1);
    const auto out = e.step(0, 0);
    EXPECT_EQ(out.at(1).kind, MovementKind::none);
    const auto r = e.cost_report(Weights({Rational(1)}));
    EXPECT_EQ(r.forced_at(1), 1u);
    EXPECT_EQ(r.unforced_at(1), 0u);
    EXPECT_EQ(r.relocations_at(1), 1u);
}

TEST(RspEngine, UnforcedMoveWhenLightServerLeavesQ) {
    // Find a seed whose first step lands the heavy server on a and the light one on c.
    std::optional<std::uint64_t> seed;
    for (std::uint64_t s = 0; s < 1000 && !seed; ++s) {
        RspEngine probe(Universe(3), 2, s);
        probe.step(a, 2);
        if (probe.positions()[1] == a && probe.positions()[0] == c) seed = s;
    }
    ASSERT_TRUE(seed.has_value());
    RspEngine e(Universe(3), 2, *seed);
    e.step(a, 2);
    EXPECT_TRUE(e.current_q(2).is_all());
    const auto out = e.step(b, 0);
    EXPECT_EQ(out.at(2).kind, MovementKind::none);
    EXPECT_EQ(e.positions()[1], a);
    EXPECT_EQ(out.at(1).kind, MovementKind::unforced);
    EXPECT_EQ(out.at(1).q_size, 1u);
    EXPECT_EQ(e.positions()[0], b);
    EXPECT_TRUE(out.at(1).flag_after);
}

TEST(RspEngine, RejectsInfeasibleRevealWithoutStateChange) {
    RspEngine e(Universe(3), 1, 4);
    e.step(a, 1);
    const auto before = e.positions();
    EXPECT_THROW(e.step(b, 0), InfeasibleReveal);
    EXPECT_EQ(e.time(), 1u);
    EXPECT_EQ(e.positions(), before);
    EXPECT_NO_THROW(e.step(b, 1));
    EXPECT_EQ(e.positions()[0], b);
}

TEST(RspEngine, BranchOrderServiceAndMembership) {
    Rng rng(31);
    for (int rep = 0; rep < 150; ++rep) {
        const int k = 1 + rep % 3;
        const std::size_t n = 2 + rng.uniform_index(4);
        const auto in = harness::feasible_instance(k, n, 1 + rng.uniform_index(25), rng);
        RspEngine e(Universe(n), k, rng.next());
        for (std::size_t t = 1; t <= in.trace.size(); ++t) {
            const auto prev = e.positions();
            const auto out = e.step(in.requests[t - 1], in.trace.at(t));
            bool flag = false;
            for (int l = k; l >= 1; --l) {
                const auto& lo = out.at(l);
                const bool forced = flag || l <= out.ell;
                ASSERT_EQ(lo.kind == MovementKind::forced, forced);
                if (lo.kind == MovementKind::none) ASSERT_EQ(lo.position, prev[static_cast<std::size_t>(l - 1)]);
                if (lo.kind == MovementKind::unforced) flag = true;
                ASSERT_EQ(lo.flag_after, flag);
                ASSERT_EQ(lo.relocated, prev.empty() || lo.position != prev[static_cast<std::size_t>(l - 1)]);
            }
            const auto& pos = e.positions();
            ASSERT_NE(std::find(pos.begin(), pos.end(), in.requests[t - 1]), pos.end());
            for (int l = 1; l <= k; ++l) ASSERT_TRUE(e.current_q(l).contains(pos[static_cast<std::size_t>(l - 1)]));
        }
        ASSERT_EQ(check_counting_bounds(e.cost_report(Weights::geometric(k, 2))), "");
    }
}

TEST(RspEngine, DeterministicPerSeed) {
    Rng rng(2);
    const auto in = harness::feasible_instance(3, 5, 40, rng);
    RspEngine x(Universe(5), 3, 99), y(Universe(5), 3, 99);
    for (std::size_t t = 1; t <= in.trace.size(); ++t) {
        x.step(in.requests[t - 1], in.trace.at(t));
        y.step(in.requests[t - 1], in.trace.at(t));
        ASSERT_EQ(x.positions(), y.positions());
    }
}

TEST(RspEngine, ForcedResampleIgnoresPreviousPosition) {
    // Requests a, a with levels 2, 1 and the heavy server on a: at t = 2 the
    // light server is redrawn from ALL, so it stays put with probability 1/3.
    const std::size_t trials = 6000;
    std::size_t stayed = 0, conditioned = 0;
    for (std::size_t i = 0; i < trials; ++i) {
        RspEngine e(Universe(3), 2, derive_seed(77, i));
        e.step(a, 2);
        if (e.positions()[1] != a) continue;
        const Point before = e.positions()[0];
        e.step(a, 1);
        ++conditioned;
        if (e.positions()[0] == before) ++stayed;
    }
    const double p = static_cast<double>(stayed) / static_cast<double>(conditioned);
    EXPECT_NEAR(p, 1.0 / 3.0, 4 * std::sqrt((1.0 / 3) * (2.0 / 3) / static_cast<double>(conditioned)));
}

TEST(LazySpc, Examples) {
    EXPECT_EQ(lazy_spc_step({a}, ExtensionTrace(1, {1}), a), 0);
    EXPECT_EQ(lazy_spc_step({a}, ExtensionTrace(1, {1}), b), 1);
    EXPECT_EQ(lazy_spc_step({a, b}, ExtensionTrace(2, {2, 0}), a), 0);
    EXPECT_EQ(lazy_spc_step({}, ExtensionTrace(2), a), 2);
}

TEST(LazySpc, MinimalFeasibleAndMatchesPureStep) {
    Rng rng(41);
    for (int rep = 0; rep < 60; ++rep) {
        const int k = 1 + rep % 3;
        const std::size_t n = 2 + rng.uniform_index(4);
        const auto reqs = random_requests(rng, n, 1 + rng.uniform_index(20));
        LazySpc spc(Universe(n), k);
        RequestSequence history;
        ExtensionTrace trace(k);
        for (Point sigma : reqs) {
            const int ell = spc.step(sigma);
            ASSERT_EQ(ell, lazy_spc_step(history, trace, sigma));
            history.push_back(sigma);
            for (int lower = trace.empty() ? k : 0; lower < ell; ++lower) {
                ASSERT_FALSE(is_feasible(extend(trace, lower), history));
            }
            trace.push_back(ell);
            ASSERT_TRUE(is_feasible(trace, history));
        }
        spc.reset();
        EXPECT_EQ(spc.step(reqs[0]), k);
    }
}

TEST(OracleSpc, Examples) {
    const auto one = oracle_spc({a, a, a}, Weights({Rational(1)}), Universe(2));
    EXPECT_EQ(one, ExtensionTrace(1, {1, 0, 0}));
    EXPECT_EQ(pattern_cost(one, Weights({Rational(1)})), 1);
    const auto two = oracle_spc({a, b}, Weights({Rational(1)}), Universe(2));
    EXPECT_EQ(two, ExtensionTrace(1, {1, 1}));
    const Weights w({Rational(1), Rational(10)});
    const auto three = oracle_spc({a, b, a, b}, w, Universe(3));
    EXPECT_EQ(three, ExtensionTrace(2, {2, 0, 0, 0}));
    EXPECT_EQ(pattern_cost(three, w), 11);
}

TEST(OracleSpc, PrefixesFeasibleAndReplayChecksRequests) {
    Rng rng(43);
    for (int rep = 0; rep < 40; ++rep) {
        const int k = 1 + rep % 2;
        const std::size_t n = 2 + rng.uniform_index(3);
        const auto reqs = random_requests(rng, n, 1 + rng.uniform_index(12));
        const Weights w = Weights::geometric(k, 3);
        OracleSpc spc(reqs, w, Universe(n));
        ExtensionTrace trace(k);
        RequestSequence history;
        for (Point sigma : reqs) {
            trace.push_back(spc.step(sigma));
            history.push_back(sigma);
            ASSERT_TRUE(is_feasible(trace, history));
        }
        EXPECT_EQ(trace, spc.planned());
        EXPECT_THROW(spc.step(reqs[0]), InvalidArgument);
    }
    OracleSpc spc({a, b}, Weights({Rational(1)}), Universe(2));
    EXPECT_THROW(spc.step(b), InvalidArgument);
}

TEST(OptCost, Examples) {
    EXPECT_EQ(opt_cost({a, b, a}, Weights({Rational(1)}), Universe(2)), 3);
    EXPECT_EQ(opt_cost({a, b, a, b}, Weights({Rational(1), Rational(10)}), Universe(2)), 11);
    EXPECT_EQ(opt_cost({a, a, a}, Weights({Rational(5)}), Universe(1)), 5);
    EXPECT_EQ(opt_cost({a, b}, Weights({Rational(1, 2), Rational(3, 4)}), Universe(3)), Rational(5, 4));
    EXPECT_THROW(opt_cost(RequestSequence(100, 0), Weights::geometric(4, 2), Universe(50)), BudgetExceeded);
}

TEST(OptHierarchical, Examples) {
    const Weights w({Rational(1), Rational(10)});
    const auto h = opt_hierarchical({a, b, a, b}, w, Universe(3));
    EXPECT_EQ(h.cost, 11);
    EXPECT_EQ(h.trace, ExtensionTrace(2, {2, 0, 0, 0}));
    EXPECT_TRUE(labeling_serves(intervals(h.trace), {a, b, a, b}, h.labeling));
}

TEST(OfflineOpt, AgreesWithBruteForceRandom) {
    Rng rng(47);
    for (int rep = 0; rep < 120; ++rep) {
        const int k = 1 + rep % 2;
        const std::size_t n = 1 + rng.uniform_index(3);
        const auto reqs = random_requests(rng, n, 1 + rng.uniform_index(5));
        const Weights w({Rational(1), Rational(1 + static_cast<int>(rng.uniform_index(5)))});
        const Weights wk = k == 1 ? Weights({Rational(2)}) : w;
        const Rational plain = opt_cost(reqs, wk, Universe(n));
        const auto hier = opt_hierarchical(reqs, wk, Universe(n));
        ASSERT_DOUBLE_EQ(to_double(plain), brute::min_serving_cost(reqs, as_doubles(wk), n));
        ASSERT_DOUBLE_EQ(to_double(hier.cost), brute::min_pattern_cost(reqs, as_doubles(wk), n));
        ASSERT_LE(plain, hier.cost);
        ASSERT_EQ(pattern_cost(hier.trace, wk), hier.cost);
        ASSERT_TRUE(labeling_serves(intervals(hier.trace), reqs, hier.labeling));
        if (k == 1) ASSERT_EQ(plain, hier.cost);
    }
}

TEST(OfflineOpt, ParkingPointSuffices) {
    Rng rng(53);
    for (int rep = 0; rep < 60; ++rep) {
        const std::size_t n = 3 + rng.uniform_index(3);
        const auto reqs = random_requests(rng, n, 2 + rng.uniform_index(6));
        std::map<Point, Point> relabel;
        RequestSequence compact;
        for (Point p : reqs) {
            auto it = relabel.emplace(p, static_cast<Point>(relabel.size())).first;
            compact.push_back(it->second);
        }
        const Weights w = Weights::geometric(2, 1 + rng.uniform_index(6) + 1);
        ASSERT_EQ(opt_cost(reqs, w, Universe(n)), opt_cost(compact, w, Universe(relabel.size() + 1)));
    }
}

TEST(Composer, Examples) {
    const Weights w1({Rational(1)});
    OracleSpc oracle({a, b, a}, w1, Universe(2));
    const auto run = compose_run(oracle, 5, {a, b, a}, w1, Universe(2));
    EXPECT_EQ(run.spc_trace, ExtensionTrace(1, {1, 1, 1}));
    EXPECT_EQ(run.spc_pattern_cost, 3);
    EXPECT_EQ(run.rsp_cost, 3);
    EXPECT_EQ(*run.opt_cost, 3);

    LazySpc lazy(Universe(1), 1);
    const auto single = compose_run(lazy, 1, {0, 0}, w1, Universe(1));
    EXPECT_EQ(single.spc_pattern_cost, 1);
    EXPECT_EQ(single.rsp_cost, 1);
    EXPECT_EQ(*single.opt_cost, 1);

    for (std::size_t t = 0; t < run.steps.size(); ++t) {
        bool served = false;
        for (const auto& lo : run.steps[t].levels) served = served || lo.position == run.requests[t];
        EXPECT_TRUE(served);
    }
}

TEST(Composer, CostChainingOnSmallEnsembles) {
    const Weights w({Rational(1), Rational(10)});
    const double c1 = to_double(ratio_constants(2)[0]);
    double sum = 0;
    const int seeds = 200;
    for (int s = 0; s < seeds; ++s) {
        OracleSpc spc({a, b, a, b}, w, Universe(3));
        sum += to_double(compose_run(spc, derive_seed(9, static_cast<std::uint64_t>(s)), {a, b, a, b}, w, Universe(3), false).rsp_cost);
    }
    EXPECT_LE(sum / seeds, 11 * c1 * 1.1);

    Rng rng(59);
    for (int inst = 0; inst < 5; ++inst) {
        const int k = 1 + inst % 2;
        const std::size_t n = 3 + rng.uniform_index(3);
        const auto reqs = random_requests(rng, n, 20);
        const Weights wk = Weights::geometric(k, 4);
        const double ck = to_double(ratio_constants(k)[0]);
        double total = 0, pattern = 0;
        for (int s = 0; s < 100; ++s) {
            LazySpc spc(Universe(n), k);
            const auto run = compose_run(spc, derive_seed(inst, static_cast<std::uint64_t>(s)), reqs, wk, Universe(n), false);
            total += to_double(run.rsp_cost);
            pattern = to_double(run.spc_pattern_cost);
        }
        EXPECT_LE(total / 100, ck * pattern * 1.1);
    }
}

TEST(Composer, PropagatesInfeasibleReveal) {
    struct Stubborn final : SpcAlgorithm {
        int calls = 0;
        int k() const override { return 1; }
        int step(Point) override { return calls++ == 0 ? 1 : 0; }
        void reset() override { calls = 0; }
        const char* name() const override { return "stubborn"; }
    } spc;
    EXPECT_THROW(compose_run(spc, 1, {a, b}, Weights({Rational(1)}), Universe(2)), InfeasibleReveal);
}
