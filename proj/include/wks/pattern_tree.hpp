#pragma once

// Incremental tree view of a hierarchical service pattern.
//
// Every interval is a node; a level-ell node's children are the level
// (ell-1) intervals it contains. Each node keeps its support: the distinct
// points requested inside it. Nodes carry a stamp that changes whenever the
// node's content changes, so (stamp, ...) is a sound memoization key even
// across appends and undos.

#include "wks/core_model.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

namespace wks {

class PatternTree {
public:
    using NodeId = std::uint32_t;
    static constexpr NodeId kNone = static_cast<NodeId>(-1);

    struct Node {
        int level = 0;
        std::size_t begin = 0;
        std::size_t end = 0;
        NodeId parent = kNone;
        std::vector<NodeId> children;
        std::vector<Point> support;  // sorted
        std::uint64_t stamp = 0;
    };

    explicit PatternTree(int k) : k_(k), last_(static_cast<std::size_t>(k) + 1, kNone) {
        detail::require(k >= 1, "pattern tree: k must be >= 1");
    }

    static PatternTree build(const ExtensionTrace& trace, const RequestSequence& requests) {
        detail::require(trace.size() == requests.size(), "trace length " + std::to_string(trace.size()) +
                                                             " does not match " + std::to_string(requests.size()) +
                                                             " requests");
        PatternTree tree(trace.k());
        for (std::size_t t = 1; t <= trace.size(); ++t) tree.append(requests[t - 1], trace.at(t));
        return tree;
    }

    int k() const { return k_; }
    /// Number of requests absorbed so far (T).
    std::size_t time() const { return time_; }
    std::uint64_t version() const { return version_; }

    const Node& node(NodeId id) const { return nodes_[id]; }
    std::size_t node_count() const { return nodes_.size(); }
    /// L^ell: the current last interval at level ell.
    NodeId last(int ell) const { return last_[static_cast<std::size_t>(ell)]; }
    const std::vector<NodeId>& roots() const { return roots_; }
    bool is_current(NodeId id) const { return last(nodes_[id].level) == id; }
    std::size_t interval_count(int ell) const { return counts_[static_cast<std::size_t>(ell)]; }

    /// Node for interval `iv` at level `ell`, if it is one.
    std::optional<NodeId> find(int ell, Interval iv) const {
        if (ell < 1 || ell > k_) return std::nullopt;
        for (NodeId id = 0; id < nodes_.size(); ++id) {
            const Node& n = nodes_[id];
            if (n.level == ell && n.begin == iv.begin && n.end == iv.end) return id;
        }
        return std::nullopt;
    }

    /// Applies the ell-extension and absorbs request `sigma` at time T+1.
    void append(Point sigma, int ell) {
        detail::require(ell >= 0 && ell <= k_, "extension level " + std::to_string(ell) + " outside 0.." + std::to_string(k_));
        detail::require(time_ > 0 || ell == k_, "the first extension must move all k servers");

        Undo u;
        u.node_count = nodes_.size();
        u.roots = roots_.size();
        u.last = last_;
        u.sigma = sigma;
        const std::size_t t = ++time_;

        for (int i = k_; i >= 1; --i) {
            if (i <= ell) {
                Node n;
                n.level = i;
                n.begin = t;
                n.end = t + 1;
                n.stamp = next_stamp_++;
                const NodeId id = static_cast<NodeId>(nodes_.size());
                if (i < k_) {
                    n.parent = last(i + 1);
                    nodes_[n.parent].children.push_back(id);
                } else {
                    roots_.push_back(id);
                }
                nodes_.push_back(std::move(n));
                last_[static_cast<std::size_t>(i)] = id;
                ++counts_[static_cast<std::size_t>(i)];
            } else {
                Node& n = nodes_[last(i)];
                u.extended.push_back({last(i), n.stamp});
                n.end = t + 1;
                n.stamp = next_stamp_++;
            }
        }
        for (int i = 1; i <= k_; ++i) {
            auto& sup = nodes_[last(i)].support;
            auto it = std::lower_bound(sup.begin(), sup.end(), sigma);
            if (it == sup.end() || *it != sigma) {
                sup.insert(it, sigma);
                u.inserted.push_back(last(i));
            }
        }
        u.ell = ell;
        undo_ = std::move(u);
        ++version_;
    }

    /// Reverts the most recent append. Only one level of undo is kept.
    void undo_last() {
        detail::require(undo_.has_value(), "pattern tree: nothing to undo");
        Undo u = std::move(*undo_);
        undo_.reset();
        for (NodeId id : u.inserted) {
            auto& sup = nodes_[id].support;
            sup.erase(std::lower_bound(sup.begin(), sup.end(), u.sigma));
        }
        for (auto [id, stamp] : u.extended) {
            nodes_[id].end -= 1;
            nodes_[id].stamp = stamp;
        }
        while (nodes_.size() > u.node_count) {
            const Node& n = nodes_.back();
            if (n.parent != kNone) nodes_[n.parent].children.pop_back();
            --counts_[static_cast<std::size_t>(n.level)];
            nodes_.pop_back();
        }
        roots_.resize(u.roots);
        last_ = u.last;
        --time_;
        ++version_;
    }

    IntervalSet interval_set() const {
        std::vector<std::vector<Interval>> levels(static_cast<std::size_t>(k_));
        for (const Node& n : nodes_) levels[static_cast<std::size_t>(n.level - 1)].push_back({n.begin, n.end});
        return IntervalSet(std::move(levels));
    }

private:
    struct Undo {
        std::size_t node_count = 0;
        std::size_t roots = 0;
        std::vector<NodeId> last;
        std::vector<std::pair<NodeId, std::uint64_t>> extended;
        std::vector<NodeId> inserted;
        Point sigma = 0;
        int ell = 0;
    };

    int k_;
    std::size_t time_ = 0;
    std::uint64_t version_ = 0;
    std::uint64_t next_stamp_ = 1;
    std::vector<Node> nodes_;
    std::vector<NodeId> last_;
    std::vector<NodeId> roots_;
    std::vector<std::size_t> counts_ = std::vector<std::size_t>(static_cast<std::size_t>(k_) + 1, 0);
    std::optional<Undo> undo_;
};

}  // namespace wks
