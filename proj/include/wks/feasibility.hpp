#pragma once

// Exact feasible-label sets.
//
// fls(ell, I, C) is the set of labels p for interval I at level ell such
// that levels 1..ell restricted to I admit a labeling serving every request
// in I that is not already covered by C + {p}. For ell = 1 the residual
// requests decide it directly; for ell >= 2, p works iff every child
// interval J at level ell-1 has fls(ell-1, J, C + {p}) nonempty.
//
// Points neither requested inside I nor in C are interchangeable, and fls is
// monotone in C. So either the base case "every child is feasible under C
// alone" holds and the answer is the whole universe, or only requested,
// uncovered points can work and the answer is an explicit finite set.
//
// Q^ell(p^{ell+1}..p^k) decomposes along the chain of last intervals
// L^k > L^{k-1} > ... > L^ell: complete level-k intervals must be feasible
// on their own, complete children of L^i must be feasible under
// {p^k..p^i}, and the answer is fls(ell, L^ell, {p^k..p^{ell+1}}).

#include "wks/core_model.hpp"
#include "wks/pattern_tree.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace wks {

/// Either the whole universe or an explicit (possibly empty) finite set.
/// An explicit set never equals the whole universe.
class LabelSet {
public:
    static LabelSet all() { return LabelSet(true, {}); }
    static LabelSet none() { return LabelSet(false, {}); }

    /// Canonicalizing constructor: a set covering the universe becomes ALL.
    static LabelSet of(std::vector<Point> points, const Universe& universe) {
        std::sort(points.begin(), points.end());
        points.erase(std::unique(points.begin(), points.end()), points.end());
        if (points.size() >= universe.size()) return all();
        return LabelSet(false, std::move(points));
    }

    bool is_all() const { return all_; }
    bool empty() const { return !all_ && points_.empty(); }
    bool contains(Point p) const { return all_ || std::binary_search(points_.begin(), points_.end(), p); }
    /// Explicit members (empty for ALL).
    const std::vector<Point>& points() const { return points_; }
    std::size_t size(const Universe& universe) const { return all_ ? universe.size() : points_.size(); }

    /// Members as an explicit list over `universe`.
    std::vector<Point> materialize(const Universe& universe) const {
        if (!all_) return points_;
        std::vector<Point> out(universe.size());
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = static_cast<Point>(i);
        return out;
    }

    /// Subset test; ALL contains everything.
    bool subset_of(const LabelSet& other) const {
        if (other.all_) return true;
        if (all_) return false;
        return std::includes(other.points_.begin(), other.points_.end(), points_.begin(), points_.end());
    }

    std::string to_string() const {
        if (all_) return "ALL";
        std::string s = "{";
        for (std::size_t i = 0; i < points_.size(); ++i) s += (i ? "," : "") + std::to_string(points_[i]);
        return s + "}";
    }

    bool operator==(const LabelSet&) const = default;

private:
    LabelSet(bool all, std::vector<Point> points) : all_(all), points_(std::move(points)) {}

    bool all_ = false;
    std::vector<Point> points_;
};

/// Labels already fixed at strictly higher levels. Kept sorted.
class CoveredSet {
public:
    CoveredSet() = default;
    CoveredSet(std::initializer_list<Point> pts) : points_(pts) { normalize(); }
    explicit CoveredSet(std::vector<Point> pts) : points_(std::move(pts)) { normalize(); }

    void insert(Point p) {
        auto it = std::lower_bound(points_.begin(), points_.end(), p);
        if (it == points_.end() || *it != p) points_.insert(it, p);
    }
    bool contains(Point p) const { return std::binary_search(points_.begin(), points_.end(), p); }
    const std::vector<Point>& points() const { return points_; }

    /// The part of this set inside `support` (sorted).
    std::vector<Point> restricted_to(const std::vector<Point>& support) const {
        std::vector<Point> out;
        std::set_intersection(points_.begin(), points_.end(), support.begin(), support.end(), std::back_inserter(out));
        return out;
    }

private:
    void normalize() {
        std::sort(points_.begin(), points_.end());
        points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
    }

    std::vector<Point> points_;
};

/// Evaluates fls and Q-sets on a PatternTree. Results for intervals are
/// memoized by (node stamp, covered points inside the node's support);
/// complete intervals keep their entries for the evaluator's lifetime,
/// entries for the current chain are dropped whenever the tree changes.
///
/// Bound to one tree; not thread-safe.
class LabelSetEvaluator {
public:
    LabelSetEvaluator(const PatternTree& tree, Universe universe) : tree_(&tree), universe_(universe) {}

    const Universe& universe() const { return universe_; }

    LabelSet fls(PatternTree::NodeId id, const CoveredSet& covered) {
        sync();
        return eval(id, covered.restricted_to(tree_->node(id).support));
    }

    /// Every complete level-k interval is feasible on its own. Verified
    /// roots are remembered, so repeated calls cost O(1) amortized.
    bool complete_roots_feasible() {
        sync();
        const auto& roots = tree_->roots();
        const std::size_t complete = roots.empty() ? 0 : roots.size() - 1;
        while (!verified_roots_.empty() &&
               (verified_roots_.size() > complete ||
                tree_->node(roots[verified_roots_.size() - 1]).stamp != verified_roots_.back())) {
            verified_roots_.pop_back();
        }
        while (verified_roots_.size() < complete) {
            const auto id = roots[verified_roots_.size()];
            if (eval(id, {}).empty()) return false;
            verified_roots_.push_back(tree_->node(id).stamp);
        }
        return true;
    }

    /// The whole pattern admits a feasible labeling.
    bool pattern_feasible() {
        if (tree_->time() == 0) return true;
        if (!complete_roots_feasible()) return false;
        return !fls(tree_->last(tree_->k()), {}).empty();
    }

    /// Q^ell with top labels p^{ell+1}..p^k given in that order.
    LabelSet compute_q(int ell, std::span<const Point> top_labels) {
        const int k = tree_->k();
        detail::require(tree_->time() > 0, "compute_q: empty pattern");
        detail::require(ell >= 1 && ell <= k, "compute_q: level out of range");
        detail::require(static_cast<int>(top_labels.size()) == k - ell,
                        "compute_q: expected " + std::to_string(k - ell) + " top labels");
        for (Point p : top_labels) detail::require(universe_.contains(p), "compute_q: top label outside universe");
        if (!complete_roots_feasible()) return LabelSet::none();

        CoveredSet covered;
        for (int i = k; i > ell; --i) {
            covered.insert(top_labels[static_cast<std::size_t>(i - ell - 1)]);
            const auto& node = tree_->node(tree_->last(i));
            const auto current_child = tree_->last(i - 1);
            for (auto child : node.children) {
                if (child == current_child) continue;
                if (eval(child, covered.restricted_to(tree_->node(child).support)).empty()) return LabelSet::none();
            }
        }
        const auto last = tree_->last(ell);
        return eval(last, covered.restricted_to(tree_->node(last).support));
    }

    std::size_t cache_size() const { return persistent_.size() + transient_.size(); }

private:
    struct Key {
        std::uint64_t stamp;
        std::vector<Point> covered;
        bool operator==(const Key&) const = default;
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const {
            std::uint64_t h = k.stamp * 0x9E3779B97F4A7C15ULL;
            for (Point p : k.covered) h = (h ^ p) * 0x100000001B3ULL;
            return static_cast<std::size_t>(h ^ (h >> 29));
        }
    };
    using Cache = std::unordered_map<Key, LabelSet, KeyHash>;

    void sync() {
        if (seen_version_ != tree_->version()) {
            transient_.clear();
            seen_version_ = tree_->version();
        }
    }

    // `covered` is already restricted to the node's support.
    LabelSet eval(PatternTree::NodeId id, std::vector<Point> covered) {
        const auto& node = tree_->node(id);
        Cache& cache = tree_->is_current(id) ? transient_ : persistent_;
        Key key{node.stamp, std::move(covered)};
        if (auto it = cache.find(key); it != cache.end()) return it->second;
        LabelSet result = compute(node, key.covered);
        cache.emplace(std::move(key), result);
        return result;
    }

    LabelSet compute(const PatternTree::Node& node, const std::vector<Point>& covered) {
        std::vector<Point> uncovered;
        std::set_difference(node.support.begin(), node.support.end(), covered.begin(), covered.end(),
                            std::back_inserter(uncovered));
        if (node.level == 1) {
            if (uncovered.empty()) return LabelSet::all();
            if (uncovered.size() == 1) return LabelSet::of(uncovered, universe_);
            return LabelSet::none();
        }

        // Children that fail without an extra label; only they can reject a candidate.
        std::vector<PatternTree::NodeId> failing;
        for (auto child : node.children) {
            if (eval(child, restrict(covered, tree_->node(child).support)).empty()) failing.push_back(child);
        }
        if (failing.empty()) return LabelSet::all();

        // A candidate outside some failing child's support leaves that child unchanged.
        std::vector<Point> candidates = uncovered;
        for (auto child : failing) {
            std::vector<Point> tmp;
            const auto& sup = tree_->node(child).support;
            std::set_intersection(candidates.begin(), candidates.end(), sup.begin(), sup.end(), std::back_inserter(tmp));
            candidates.swap(tmp);
        }

        std::vector<Point> accepted;
        for (Point p : candidates) {
            std::vector<Point> with_p = covered;
            with_p.insert(std::lower_bound(with_p.begin(), with_p.end(), p), p);
            bool ok = true;
            for (auto child : failing) {
                if (eval(child, restrict(with_p, tree_->node(child).support)).empty()) {
                    ok = false;
                    break;
                }
            }
            if (ok) accepted.push_back(p);
        }
        return LabelSet::of(std::move(accepted), universe_);
    }

    static std::vector<Point> restrict(const std::vector<Point>& covered, const std::vector<Point>& support) {
        std::vector<Point> out;
        std::set_intersection(covered.begin(), covered.end(), support.begin(), support.end(), std::back_inserter(out));
        return out;
    }

    const PatternTree* tree_;
    Universe universe_;
    std::uint64_t seen_version_ = static_cast<std::uint64_t>(-1);
    Cache persistent_;
    Cache transient_;
    std::vector<std::uint64_t> verified_roots_;
};

namespace detail {
inline Universe universe_covering(const RequestSequence& requests) {
    Point max = 0;
    for (Point p : requests) max = std::max(max, p);
    return Universe(static_cast<std::size_t>(max) + 1);
}
}  // namespace detail

/// fls for interval `iv` at level `ell` of the pattern given by `trace`.
inline LabelSet fls(const ExtensionTrace& trace, const RequestSequence& requests, const Universe& universe, int ell,
                    Interval iv, const CoveredSet& covered) {
    validate_requests(requests, universe);
    const PatternTree tree = PatternTree::build(trace, requests);
    const auto id = tree.find(ell, iv);
    detail::require(id.has_value(), "fls: [" + std::to_string(iv.begin) + "," + std::to_string(iv.end) +
                                        ") is not an interval at level " + std::to_string(ell));
    LabelSetEvaluator eval(tree, universe);
    return eval.fls(*id, covered);
}

/// The pattern admits a labeling serving every request.
inline bool is_feasible(const ExtensionTrace& trace, const RequestSequence& requests) {
    const PatternTree tree = PatternTree::build(trace, requests);
    if (tree.time() == 0) return true;
    LabelSetEvaluator eval(tree, detail::universe_covering(requests));
    for (auto root : tree.roots()) {
        if (eval.fls(root, {}).empty()) return false;
    }
    return true;
}

/// Q_T^ell(p^{ell+1}, ..., p^k) for the full trace; `top_labels` lists
/// p^{ell+1}..p^k in that order.
inline LabelSet compute_q(const ExtensionTrace& trace, const RequestSequence& requests, const Universe& universe, int ell,
                          std::span<const Point> top_labels) {
    validate_requests(requests, universe);
    const PatternTree tree = PatternTree::build(trace, requests);
    LabelSetEvaluator eval(tree, universe);
    return eval.compute_q(ell, top_labels);
}

}  // namespace wks
