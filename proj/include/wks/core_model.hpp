#pragma once

// Universe, weights, requests, hierarchical service patterns (stored as
// extension traces), interval reconstruction, pattern costs and the numeric
// sequences used by the analysis.
//
// Time is 1-based: request t occupies [t, t+1), and a pattern over T
// requests partitions [1, T+1) at every level.

#include "wks/errors.hpp"
#include "wks/numeric.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

namespace wks {

using Point = std::uint32_t;

class Universe {
public:
    explicit Universe(std::size_t size) : size_(size) {
        detail::require(size >= 1, "universe must contain at least one point");
    }
    std::size_t size() const { return size_; }
    bool contains(Point p) const { return p < size_; }
    bool operator==(const Universe&) const = default;

private:
    std::size_t size_;
};

/// Server weights w_1 <= ... <= w_k, all positive.
class Weights {
public:
    explicit Weights(std::vector<Rational> w) : w_(std::move(w)) {
        detail::require(!w_.empty(), "weights: need at least one server");
        for (std::size_t i = 0; i < w_.size(); ++i) {
            detail::require(w_[i] > 0, "weights must be positive");
            if (i > 0) detail::require(w_[i - 1] <= w_[i], "weights must be non-decreasing");
        }
    }

    /// 1, beta, ..., beta^(k-1).
    static Weights geometric(int k, std::uint64_t beta) {
        detail::require(k >= 1, "weights: k must be >= 1");
        std::vector<Rational> w;
        BigInt v = 1;
        for (int i = 0; i < k; ++i) {
            w.emplace_back(v);
            v *= beta;
        }
        return Weights(std::move(w));
    }

    int k() const { return static_cast<int>(w_.size()); }
    /// Weight of server `level` (1-based).
    const Rational& operator[](int level) const { return w_.at(static_cast<std::size_t>(level - 1)); }
    const std::vector<Rational>& values() const { return w_; }
    Rational total() const {
        Rational s = 0;
        for (const auto& x : w_) s += x;
        return s;
    }

private:
    std::vector<Rational> w_;
};

using RequestSequence = std::vector<Point>;

inline void validate_requests(const RequestSequence& requests, const Universe& universe) {
    for (Point p : requests) {
        detail::require(universe.contains(p), "request " + std::to_string(p) + " outside the universe");
    }
}

/// A hierarchical service pattern encoded by its extension levels
/// ell_1..ell_T. The first level is always k: every server moves for the
/// first request.
class ExtensionTrace {
public:
    explicit ExtensionTrace(int k) : k_(k) { detail::require(k >= 1, "trace: k must be >= 1"); }

    ExtensionTrace(int k, std::vector<int> ells) : k_(k) {
        detail::require(k >= 1, "trace: k must be >= 1");
        ells_.reserve(ells.size());
        for (int ell : ells) push_back(ell);
    }

    int k() const { return k_; }
    std::size_t size() const { return ells_.size(); }
    bool empty() const { return ells_.empty(); }
    /// ell_t for 1-based t.
    int at(std::size_t t) const { return ells_.at(t - 1); }
    const std::vector<int>& levels() const { return ells_; }

    void push_back(int ell) {
        detail::require(ell >= 0 && ell <= k_, "extension level " + std::to_string(ell) + " outside 0.." + std::to_string(k_));
        detail::require(!ells_.empty() || ell == k_, "the first extension must move all k servers");
        ells_.push_back(ell);
    }

    ExtensionTrace prefix(std::size_t t) const {
        ExtensionTrace out(k_);
        out.ells_.assign(ells_.begin(), ells_.begin() + static_cast<std::ptrdiff_t>(std::min(t, ells_.size())));
        return out;
    }

    bool operator==(const ExtensionTrace&) const = default;

private:
    int k_;
    std::vector<int> ells_;
};

/// The ell-extension of `trace`.
inline ExtensionTrace extend(const ExtensionTrace& trace, int ell) {
    ExtensionTrace out = trace;
    out.push_back(ell);
    return out;
}

/// Half-open integer interval [begin, end).
struct Interval {
    std::size_t begin = 0;
    std::size_t end = 0;

    std::size_t length() const { return end - begin; }
    bool contains(std::size_t t) const { return begin <= t && t < end; }
    bool operator==(const Interval&) const = default;
    auto operator<=>(const Interval&) const = default;
};

/// Per-level partitions of [1, T+1), derived from an extension trace.
class IntervalSet {
public:
    IntervalSet() = default;
    explicit IntervalSet(std::vector<std::vector<Interval>> levels) : levels_(std::move(levels)) {}

    int k() const { return static_cast<int>(levels_.size()); }
    const std::vector<Interval>& level(int ell) const { return levels_.at(static_cast<std::size_t>(ell - 1)); }
    /// L_T^ell.
    const Interval& last(int ell) const { return level(ell).back(); }
    std::size_t count(int ell) const { return level(ell).size(); }

    /// Index of the interval at level `ell` containing time t.
    std::size_t index_at(int ell, std::size_t t) const {
        const auto& ivs = level(ell);
        auto it = std::upper_bound(ivs.begin(), ivs.end(), t,
                                   [](std::size_t x, const Interval& iv) { return x < iv.begin; });
        return static_cast<std::size_t>(it - ivs.begin()) - 1;
    }

    std::size_t total_count() const {
        std::size_t n = 0;
        for (const auto& l : levels_) n += l.size();
        return n;
    }

    bool operator==(const IntervalSet&) const = default;

private:
    std::vector<std::vector<Interval>> levels_;
};

inline IntervalSet intervals(const ExtensionTrace& trace) {
    const int k = trace.k();
    std::vector<std::vector<Interval>> levels(static_cast<std::size_t>(k));
    for (std::size_t t = 1; t <= trace.size(); ++t) {
        const int ell = trace.at(t);
        for (int i = 1; i <= k; ++i) {
            auto& lvl = levels[static_cast<std::size_t>(i - 1)];
            if (i <= ell) {
                lvl.push_back({t, t + 1});
            } else {
                lvl.back().end = t + 1;
            }
        }
    }
    return IntervalSet(std::move(levels));
}

/// An assignment of a point to every interval of a pattern.
/// labels[ell-1][i] labels the i-th interval of level ell.
struct Labeling {
    std::vector<std::vector<Point>> labels;

    Point at(int ell, std::size_t index) const { return labels.at(static_cast<std::size_t>(ell - 1)).at(index); }
    bool operator==(const Labeling&) const = default;
    auto operator<=>(const Labeling&) const = default;
};

/// True iff `labeling` serves every request of `requests` on `pattern`.
inline bool labeling_serves(const IntervalSet& pattern, const RequestSequence& requests, const Labeling& labeling) {
    if (static_cast<int>(labeling.labels.size()) != pattern.k()) return false;
    for (int ell = 1; ell <= pattern.k(); ++ell) {
        if (labeling.labels[static_cast<std::size_t>(ell - 1)].size() != pattern.count(ell)) return false;
    }
    for (std::size_t t = 1; t <= requests.size(); ++t) {
        bool served = false;
        for (int ell = 1; ell <= pattern.k() && !served; ++ell) {
            served = labeling.at(ell, pattern.index_at(ell, t)) == requests[t - 1];
        }
        if (!served) return false;
    }
    return true;
}

/// Per-level movement accounting.
///
/// For algorithm runs `forced` / `unforced` count resampling events and
/// `relocations` counts steps where the position actually changed
/// (including the initial placement); the weighted cost uses relocations.
/// For patterns only `interval_count` is meaningful and the weighted cost
/// is sum_ell w_ell * interval_count_ell.
struct CostReport {
    std::vector<std::size_t> interval_count;
    std::vector<std::size_t> forced;
    std::vector<std::size_t> unforced;
    std::vector<std::size_t> relocations;
    Rational weighted_cost = 0;

    int k() const { return static_cast<int>(interval_count.size()); }
    std::size_t intervals_at(int ell) const { return interval_count.at(static_cast<std::size_t>(ell - 1)); }
    std::size_t forced_at(int ell) const { return forced.at(static_cast<std::size_t>(ell - 1)); }
    std::size_t unforced_at(int ell) const { return unforced.at(static_cast<std::size_t>(ell - 1)); }
    std::size_t relocations_at(int ell) const { return relocations.at(static_cast<std::size_t>(ell - 1)); }
};

/// X^ell <= X^(ell+1) + Y^(ell+1) + |I^ell| for ell < k, and X^k <= |I^k|.
/// Returns an empty string when the bounds hold, otherwise a description
/// of the first violated one.
inline std::string check_counting_bounds(const CostReport& r) {
    const int k = r.k();
    for (int ell = 1; ell <= k; ++ell) {
        const std::size_t x = r.forced_at(ell);
        const std::size_t bound = ell < k ? r.forced_at(ell + 1) + r.unforced_at(ell + 1) + r.intervals_at(ell)
                                          : r.intervals_at(ell);
        if (x > bound) {
            return "X^" + std::to_string(ell) + "=" + std::to_string(x) + " exceeds bound " + std::to_string(bound);
        }
        if (r.relocations_at(ell) > r.forced_at(ell) + r.unforced_at(ell)) {
            return "relocations at level " + std::to_string(ell) + " exceed resamples";
        }
    }
    return {};
}

inline Rational pattern_cost(const ExtensionTrace& trace, const Weights& weights) {
    detail::require(weights.k() == trace.k(), "pattern_cost: weights and trace disagree on k");
    const IntervalSet ivs = intervals(trace);
    Rational cost = 0;
    for (int ell = 1; ell <= trace.k(); ++ell) cost += weights[ell] * static_cast<unsigned long long>(ivs.count(ell));
    return cost;
}

inline CostReport pattern_report(const ExtensionTrace& trace, const Weights& weights) {
    detail::require(weights.k() == trace.k(), "pattern_report: weights and trace disagree on k");
    const IntervalSet ivs = intervals(trace);
    const auto k = static_cast<std::size_t>(trace.k());
    CostReport r;
    r.interval_count.resize(k);
    r.forced.assign(k, 0);
    r.unforced.assign(k, 0);
    r.relocations.assign(k, 0);
    for (int ell = 1; ell <= trace.k(); ++ell) {
        r.interval_count[static_cast<std::size_t>(ell - 1)] = ivs.count(ell);
        r.weighted_cost += weights[ell] * static_cast<unsigned long long>(ivs.count(ell));
    }
    return r;
}

/// Turns arbitrary per-step sets of moved servers (1-based indices) into a
/// hierarchical trace: whenever a server moves, every lighter server is
/// made to move with it. The first step always moves everything.
inline ExtensionTrace hierarchify(const std::vector<std::set<int>>& move_sets, int k) {
    ExtensionTrace trace(k);
    for (std::size_t t = 0; t < move_sets.size(); ++t) {
        int ell = 0;
        for (int s : move_sets[t]) {
            detail::require(s >= 1 && s <= k, "hierarchify: server index " + std::to_string(s) + " outside 1..k");
            ell = std::max(ell, s);
        }
        trace.push_back(t == 0 ? k : ell);
    }
    return trace;
}

/// H(n) = 1 + 1/2 + ... + 1/n.
inline Rational harmonic(const BigInt& n) {
    detail::require(n >= 1, "harmonic: n must be >= 1");
    detail::require(n <= 1000000, "harmonic: n too large for exact summation");
    const auto m = n.convert_to<long long>();
    // Sum over a common denominator; far cheaper than normalising each partial sum.
    BigInt den = 1;
    for (long long i = 1; i <= m; ++i) den = boost::multiprecision::lcm(den, BigInt(i));
    BigInt num = 0;
    for (long long i = 1; i <= m; ++i) num += den / i;
    return Rational(num, den);
}

/// n_0 = 1, n_ell = (ceil(n_{ell-1}/2) + 1) * (floor(n_{ell-1}/2) + 1).
inline BigInt n_sequence(int ell) {
    detail::require(ell >= 0, "n_sequence: level must be >= 0");
    BigInt n = 1;
    for (int i = 1; i <= ell; ++i) n = (n / 2 + n % 2 + 1) * (n / 2 + 1);
    return n;
}

/// Number of sets in the level-ell set system: ceil(n_{ell-1}/2) + 1.
inline BigInt set_system_size(int ell) {
    const BigInt prev = n_sequence(ell - 1);
    return prev / 2 + prev % 2 + 1;
}

/// c_k = H(n_k) + 1 and c_ell = (H(n_ell) + 1) * (c_{ell+1} + 1).
/// Element [ell-1] holds c_ell.
inline std::vector<Rational> ratio_constants(int k) {
    detail::require(k >= 1, "ratio_constants: k must be >= 1");
    std::vector<Rational> c(static_cast<std::size_t>(k));
    c[static_cast<std::size_t>(k - 1)] = harmonic(n_sequence(k)) + 1;
    for (int ell = k - 1; ell >= 1; --ell) {
        c[static_cast<std::size_t>(ell - 1)] = (harmonic(n_sequence(ell)) + 1) * (c[static_cast<std::size_t>(ell)] + 1);
    }
    return c;
}

/// Per-call pattern cost bounds for the lower-bound adversary:
/// c_0 = 0 and c_ell = beta^(ell-1) + beta * (ceil(n_{ell-1}/2) + 1) * c_{ell-1}.
/// Element [ell] holds c_ell for ell = 0..k-1.
inline std::vector<BigInt> adversary_cost_constants(int k, std::uint64_t beta) {
    detail::require(k >= 1, "adversary_cost_constants: k must be >= 1");
    detail::require(beta >= 2, "adversary_cost_constants: beta must be >= 2");
    std::vector<BigInt> c(static_cast<std::size_t>(k));
    c[0] = 0;
    BigInt beta_pow = 1;  // beta^(ell-1)
    for (int ell = 1; ell < k; ++ell) {
        c[static_cast<std::size_t>(ell)] = beta_pow + BigInt(beta) * set_system_size(ell) * c[static_cast<std::size_t>(ell - 1)];
        beta_pow *= beta;
    }
    return c;
}

}  // namespace wks
