#pragma once

// Brute-force labelings, straight from the definition of a feasible
// labeling: every request time t must lie in some interval labeled sigma_t.
// Shares nothing with the fls decomposition and serves as its oracle.
//
// Intervals are labeled in order of their start time; once all intervals
// starting at or before t are labeled, request t is checked, which prunes
// dead branches without changing the set of labelings produced.

#include "wks/core_model.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace wks {

inline constexpr double kDefaultLabelingBudget = 1e7;

namespace detail {

struct LabelingSearch {
    const IntervalSet& pattern;
    const RequestSequence& requests;
    std::size_t universe;
    // Intervals grouped by start time: starts[t] lists (level, index).
    std::vector<std::vector<std::pair<int, std::size_t>>> starts;
    // Optional fixed labels, keyed by (level, index).
    std::map<std::pair<int, std::size_t>, Point> fixed;
    Labeling current;

    LabelingSearch(const IntervalSet& p, const RequestSequence& r, std::size_t u) : pattern(p), requests(r), universe(u) {
        starts.resize(requests.size() + 2);
        current.labels.resize(static_cast<std::size_t>(p.k()));
        for (int ell = 1; ell <= p.k(); ++ell) {
            current.labels[static_cast<std::size_t>(ell - 1)].assign(p.count(ell), 0);
            for (std::size_t i = 0; i < p.count(ell); ++i) starts[p.level(ell)[i].begin].push_back({ell, i});
        }
    }

    bool served(std::size_t t) const {
        for (int ell = 1; ell <= pattern.k(); ++ell) {
            if (current.at(ell, pattern.index_at(ell, t)) == requests[t - 1]) return true;
        }
        return false;
    }

    // Labels the j-th interval starting at time t, then continues. The visitor
    // returns false to stop the search.
    bool run(std::size_t t, std::size_t j, const std::function<bool(const Labeling&)>& visit) {
        if (t > requests.size()) return visit(current);
        const auto& group = starts[t];
        if (j == group.size()) {
            if (!served(t)) return true;
            return run(t + 1, 0, visit);
        }
        const auto [ell, idx] = group[j];
        auto& slot = current.labels[static_cast<std::size_t>(ell - 1)][idx];
        if (auto it = fixed.find({ell, idx}); it != fixed.end()) {
            slot = it->second;
            return run(t, j + 1, visit);
        }
        for (std::size_t p = 0; p < universe; ++p) {
            slot = static_cast<Point>(p);
            if (!run(t, j + 1, visit)) return false;
        }
        return true;
    }
};

}  // namespace detail

/// All feasible labelings of the pattern, in search order. Throws
/// BudgetExceeded when |U|^(#intervals) exceeds `budget`.
inline std::vector<Labeling> enumerate_labelings(const ExtensionTrace& trace, const RequestSequence& requests,
                                                 const Universe& universe, double budget = kDefaultLabelingBudget) {
    detail::require(trace.size() == requests.size(), "enumerate_labelings: trace and requests differ in length");
    validate_requests(requests, universe);
    const IntervalSet pattern = intervals(trace);
    const double work = std::pow(static_cast<double>(universe.size()), static_cast<double>(pattern.total_count()));
    if (work > budget) {
        throw BudgetExceeded("enumerate_labelings: |U|^#intervals = " + std::to_string(work) + " exceeds budget");
    }
    std::vector<Labeling> out;
    detail::LabelingSearch search(pattern, requests, universe.size());
    search.run(1, 0, [&](const Labeling& l) {
        out.push_back(l);
        return true;
    });
    return out;
}

/// A feasible labeling agreeing with `fixed` (keyed by level and interval
/// index), if one exists. Exhaustive search with the same pruning; no budget.
inline std::optional<Labeling> find_feasible_labeling(const ExtensionTrace& trace, const RequestSequence& requests,
                                                      const Universe& universe,
                                                      const std::map<std::pair<int, std::size_t>, Point>& fixed = {}) {
    detail::require(trace.size() == requests.size(), "find_feasible_labeling: trace and requests differ in length");
    validate_requests(requests, universe);
    const IntervalSet pattern = intervals(trace);
    detail::LabelingSearch search(pattern, requests, universe.size());
    search.fixed = fixed;
    std::optional<Labeling> found;
    search.run(1, 0, [&](const Labeling& l) {
        found = l;
        return false;
    });
    return found;
}

/// Labels the last interval at `ell` can take over feasible labelings whose
/// last intervals at levels ell+1..k carry `top_labels` (p^{ell+1}..p^k).
/// Computed from an explicit labeling list.
inline std::vector<Point> last_labels_from(const std::vector<Labeling>& labelings, const IntervalSet& pattern, int ell,
                                           const std::vector<Point>& top_labels) {
    std::vector<bool> seen;
    std::vector<Point> out;
    for (const auto& l : labelings) {
        bool match = true;
        for (int i = ell + 1; i <= pattern.k() && match; ++i) {
            match = l.at(i, pattern.count(i) - 1) == top_labels[static_cast<std::size_t>(i - ell - 1)];
        }
        if (!match) continue;
        const Point p = l.at(ell, pattern.count(ell) - 1);
        if (p >= seen.size()) seen.resize(p + 1, false);
        if (!seen[p]) {
            seen[p] = true;
            out.push_back(p);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Every label tuple (L^1, ..., L^k) of the last intervals that some feasible
/// labeling realizes, by forward reachability over configurations: at time
/// t, levels <= ell_t may take any label, higher levels keep theirs, and the
/// configuration must contain sigma_t. Tuples are encoded base |U| with
/// level 1 as the least significant digit; returns one flag per tuple.
inline std::vector<bool> reachable_last_labels(const ExtensionTrace& trace, const RequestSequence& requests,
                                               const Universe& universe, double budget = kDefaultLabelingBudget) {
    detail::require(trace.size() == requests.size(), "reachable_last_labels: trace and requests differ in length");
    detail::require(!trace.empty(), "reachable_last_labels: empty trace");
    validate_requests(requests, universe);
    const std::size_t n = universe.size();
    const int k = trace.k();
    const double states = std::pow(static_cast<double>(n), static_cast<double>(k));
    if (states * static_cast<double>(trace.size()) > budget) throw BudgetExceeded("reachable_last_labels: too many states");
    const auto count = static_cast<std::size_t>(states);
    std::vector<std::size_t> stride(static_cast<std::size_t>(k) + 1, 1);
    for (int i = 1; i <= k; ++i) stride[static_cast<std::size_t>(i)] = stride[static_cast<std::size_t>(i - 1)] * n;

    auto digit = [&](std::size_t c, int level) { return (c / stride[static_cast<std::size_t>(level - 1)]) % n; };
    auto holds = [&](std::size_t c, Point p) {
        for (int i = 1; i <= k; ++i) {
            if (digit(c, i) == p) return true;
        }
        return false;
    };

    std::vector<bool> reach(count, false);
    for (std::size_t c = 0; c < count; ++c) reach[c] = holds(c, requests[0]);
    for (std::size_t t = 2; t <= trace.size(); ++t) {
        const int ell = trace.at(t);
        // Configurations agreeing on levels > ell are interchangeable.
        const std::size_t low = stride[static_cast<std::size_t>(ell)];
        std::vector<bool> next(count, false);
        for (std::size_t high = 0; high < count; high += low) {
            bool any = false;
            for (std::size_t c = high; c < high + low && !any; ++c) any = reach[c];
            if (!any) continue;
            for (std::size_t c = high; c < high + low; ++c) next[c] = holds(c, requests[t - 1]);
        }
        reach.swap(next);
    }
    return reach;
}

/// Q^ell from a reachability table; `top_labels` lists p^{ell+1}..p^k.
inline std::vector<Point> last_labels_from_reachable(const std::vector<bool>& reach, const Universe& universe, int k,
                                                     int ell, const std::vector<Point>& top_labels) {
    const std::size_t n = universe.size();
    std::vector<bool> seen(n, false);
    for (std::size_t c = 0; c < reach.size(); ++c) {
        if (!reach[c]) continue;
        std::size_t rest = c;
        std::vector<std::size_t> d(static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i) {
            d[static_cast<std::size_t>(i)] = rest % n;
            rest /= n;
        }
        bool match = true;
        for (int i = ell + 1; i <= k && match; ++i) {
            match = d[static_cast<std::size_t>(i - 1)] == top_labels[static_cast<std::size_t>(i - ell - 1)];
        }
        if (match) seen[d[static_cast<std::size_t>(ell - 1)]] = true;
    }
    std::vector<Point> out;
    for (std::size_t p = 0; p < n; ++p) {
        if (seen[p]) out.push_back(static_cast<Point>(p));
    }
    return out;
}

}  // namespace wks
