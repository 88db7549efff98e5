#pragma once

// Exact offline optima on the uniform metric, by dynamic programming over
// configurations (one point per server; servers are distinguishable, so no
// symmetry reduction). Every server's first placement is charged.
//
// Weights are scaled to integers over a common denominator so the DP runs
// on 64-bit integers; results are converted back to exact rationals.

#include "wks/core_model.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace wks {

inline constexpr double kDefaultOptBudget = 1e8;

struct HierarchicalOptimum {
    Rational cost = 0;
    ExtensionTrace trace{1};
    Labeling labeling;
};

namespace detail {

struct ScaledWeights {
    std::vector<std::int64_t> w;  // w[i] for server i+1
    BigInt denominator = 1;
};

inline ScaledWeights scale_weights(const Weights& weights) {
    BigInt den = 1;
    for (const auto& x : weights.values()) den = boost::multiprecision::lcm(den, BigInt(boost::multiprecision::denominator(x)));
    ScaledWeights out;
    out.denominator = den;
    for (const auto& x : weights.values()) {
        const BigInt v = boost::multiprecision::numerator(x) * (den / boost::multiprecision::denominator(x));
        if (v > BigInt(std::numeric_limits<std::int64_t>::max() / (1LL << 24))) {
            throw InvalidArgument("offline optimum: weights too large for exact integer DP");
        }
        out.w.push_back(v.convert_to<std::int64_t>());
    }
    return out;
}

struct ConfigSpace {
    std::size_t n;
    int k;
    std::size_t count;
    std::vector<std::size_t> stride;  // stride[i] = n^i; digit of server i+1 has stride[i]

    ConfigSpace(std::size_t universe, int servers, double budget, std::size_t steps) : n(universe), k(servers) {
        const double states = std::pow(static_cast<double>(n), static_cast<double>(k));
        if (states * static_cast<double>(std::max<std::size_t>(steps, 1)) * (k + 1) > budget) {
            throw BudgetExceeded("offline optimum: |U|^k * T exceeds the transition budget");
        }
        count = static_cast<std::size_t>(states);
        stride.assign(static_cast<std::size_t>(k) + 1, 1);
        for (int i = 1; i <= k; ++i) stride[static_cast<std::size_t>(i)] = stride[static_cast<std::size_t>(i - 1)] * n;
    }

    Point digit(std::size_t c, int server) const {
        return static_cast<Point>((c / stride[static_cast<std::size_t>(server - 1)]) % n);
    }
    bool holds(std::size_t c, Point p) const {
        for (int i = 1; i <= k; ++i) {
            if (digit(c, i) == p) return true;
        }
        return false;
    }
};

constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;

}  // namespace detail

/// Minimum weighted movement cost of serving `requests` with k servers.
inline Rational opt_cost(const RequestSequence& requests, const Weights& weights, const Universe& universe,
                         double budget = kDefaultOptBudget) {
    validate_requests(requests, universe);
    if (requests.empty()) return 0;
    const auto scaled = detail::scale_weights(weights);
    const detail::ConfigSpace space(universe.size(), weights.k(), budget, requests.size());

    std::int64_t all = 0;
    for (auto w : scaled.w) all += w;
    std::vector<std::int64_t> cost(space.count);
    for (std::size_t c = 0; c < space.count; ++c) cost[c] = space.holds(c, requests[0]) ? all : detail::kInf;

    for (std::size_t t = 1; t < requests.size(); ++t) {
        // The movement cost is a sum over servers, so relax one coordinate at a time.
        for (int server = 1; server <= weights.k(); ++server) {
            const std::size_t s = space.stride[static_cast<std::size_t>(server - 1)];
            const std::int64_t w = scaled.w[static_cast<std::size_t>(server - 1)];
            for (std::size_t base = 0; base < space.count; ++base) {
                if ((base / s) % space.n != 0) continue;
                std::int64_t best = detail::kInf;
                for (std::size_t x = 0; x < space.n; ++x) best = std::min(best, cost[base + x * s]);
                if (best >= detail::kInf) continue;
                for (std::size_t x = 0; x < space.n; ++x) cost[base + x * s] = std::min(cost[base + x * s], best + w);
            }
        }
        for (std::size_t c = 0; c < space.count; ++c) {
            if (!space.holds(c, requests[t])) cost[c] = detail::kInf;
        }
    }
    std::int64_t best = detail::kInf;
    for (auto v : cost) best = std::min(best, v);
    return Rational(BigInt(best), scaled.denominator);
}

/// Minimum-cost feasible hierarchical pattern with a witnessing labeling.
/// State: labels of the current last intervals at every level; an
/// ell-extension relabels levels 1..ell and costs w_1 + ... + w_ell.
/// Ties prefer the smaller extension level, then the smaller configuration.
inline HierarchicalOptimum opt_hierarchical(const RequestSequence& requests, const Weights& weights,
                                            const Universe& universe, double budget = kDefaultOptBudget) {
    validate_requests(requests, universe);
    const int k = weights.k();
    HierarchicalOptimum result;
    result.trace = ExtensionTrace(k);
    result.labeling.labels.assign(static_cast<std::size_t>(k), {});
    if (requests.empty()) return result;

    const auto scaled = detail::scale_weights(weights);
    const detail::ConfigSpace space(universe.size(), k, budget, requests.size());
    const std::size_t T = requests.size();

    std::vector<std::int64_t> prefix_w(static_cast<std::size_t>(k) + 1, 0);
    for (int i = 1; i <= k; ++i) prefix_w[static_cast<std::size_t>(i)] = prefix_w[static_cast<std::size_t>(i - 1)] + scaled.w[static_cast<std::size_t>(i - 1)];

    // choice[t][c] = (ell_t, predecessor configuration) for t >= 2.
    std::vector<std::vector<std::uint8_t>> level_choice(T);
    std::vector<std::vector<std::uint32_t>> pred(T);

    std::vector<std::int64_t> cost(space.count);
    for (std::size_t c = 0; c < space.count; ++c) cost[c] = space.holds(c, requests[0]) ? prefix_w[static_cast<std::size_t>(k)] : detail::kInf;

    for (std::size_t t = 1; t < T; ++t) {
        // marginal[ell][h] = min over the lowest ell digits of cost, indexed by the high digits.
        std::vector<std::vector<std::int64_t>> marginal(static_cast<std::size_t>(k) + 1);
        std::vector<std::vector<std::uint32_t>> argmin(static_cast<std::size_t>(k) + 1);
        marginal[0] = cost;
        argmin[0].resize(space.count);
        for (std::size_t c = 0; c < space.count; ++c) argmin[0][c] = static_cast<std::uint32_t>(c);
        for (int ell = 1; ell <= k; ++ell) {
            const auto& prev = marginal[static_cast<std::size_t>(ell - 1)];
            const std::size_t size = prev.size() / space.n;
            auto& m = marginal[static_cast<std::size_t>(ell)];
            auto& a = argmin[static_cast<std::size_t>(ell)];
            m.assign(size, detail::kInf);
            a.assign(size, 0);
            for (std::size_t h = 0; h < size; ++h) {
                for (std::size_t x = 0; x < space.n; ++x) {
                    const std::size_t from = h * space.n + x;
                    if (prev[from] < m[h]) {
                        m[h] = prev[from];
                        a[h] = argmin[static_cast<std::size_t>(ell - 1)][from];
                    }
                }
            }
        }

        std::vector<std::int64_t> next(space.count, detail::kInf);
        level_choice[t].assign(space.count, 0);
        pred[t].assign(space.count, 0);
        for (std::size_t c = 0; c < space.count; ++c) {
            if (!space.holds(c, requests[t])) continue;
            for (int ell = 0; ell <= k; ++ell) {
                const std::size_t h = c / space.stride[static_cast<std::size_t>(ell)];
                const std::int64_t base = marginal[static_cast<std::size_t>(ell)][h];
                if (base >= detail::kInf) continue;
                const std::int64_t v = base + prefix_w[static_cast<std::size_t>(ell)];
                if (v < next[c]) {
                    next[c] = v;
                    level_choice[t][c] = static_cast<std::uint8_t>(ell);
                    pred[t][c] = argmin[static_cast<std::size_t>(ell)][h];
                }
            }
        }
        cost.swap(next);
    }

    std::size_t best = 0;
    for (std::size_t c = 1; c < space.count; ++c) {
        if (cost[c] < cost[best]) best = c;
    }
    if (cost[best] >= detail::kInf) throw InvariantViolation("opt_hierarchical: no feasible pattern");
    result.cost = Rational(BigInt(cost[best]), scaled.denominator);

    // Walk back to recover configurations and levels.
    std::vector<std::size_t> configs(T);
    std::vector<int> ells(T);
    configs[T - 1] = best;
    for (std::size_t t = T - 1; t >= 1; --t) {
        ells[t] = level_choice[t][configs[t]];
        configs[t - 1] = pred[t][configs[t]];
    }
    ells[0] = k;
    result.trace = ExtensionTrace(k, ells);
    for (std::size_t t = 0; t < T; ++t) {
        for (int ell = 1; ell <= ells[t]; ++ell) {
            result.labeling.labels[static_cast<std::size_t>(ell - 1)].push_back(space.digit(configs[t], ell));
        }
    }
    return result;
}

}  // namespace wks
