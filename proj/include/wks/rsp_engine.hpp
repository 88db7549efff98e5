#pragma once

// Randomized serving against a revealed service pattern.
//
// For each input (sigma_t, ell_t) the servers are decided from the heaviest
// (level k) down to the lightest. Server ell is resampled uniformly from
// Q_t^ell(s^{ell+1}, ..., s^k) when a heavier server made an unforced move
// in this step or ell <= ell_t (forced), or when its current position left
// that set (unforced, which also forces every lighter server). Otherwise it
// stays. This keeps each server at a uniformly random point of its Q-set
// given the heavier positions.

#include "wks/core_model.hpp"
#include "wks/feasibility.hpp"
#include "wks/pattern_tree.hpp"
#include "wks/random.hpp"

#include <optional>
#include <string>
#include <vector>

namespace wks {

enum class MovementKind { none, forced, unforced };

inline const char* to_string(MovementKind kind) {
    switch (kind) {
        case MovementKind::forced: return "forced";
        case MovementKind::unforced: return "unforced";
        default: return "none";
    }
}

struct LevelOutcome {
    MovementKind kind = MovementKind::none;
    Point position = 0;
    bool relocated = false;
    bool q_all = false;
    std::size_t q_size = 0;  // |Q| over the universe
    bool flag_after = false;
};

struct StepOutcome {
    std::size_t t = 0;
    Point sigma = 0;
    int ell = 0;
    std::vector<LevelOutcome> levels;  // [ell-1] describes server ell

    const LevelOutcome& at(int level) const { return levels.at(static_cast<std::size_t>(level - 1)); }
};

class RspEngine {
public:
    RspEngine(Universe universe, int k, std::uint64_t seed)
        : universe_(universe), k_(k), seed_(seed), rng_(seed), tree_(k), eval_(tree_, universe_), trace_(k) {
        detail::require(k >= 1, "rsp engine: k must be >= 1");
        const auto n = static_cast<std::size_t>(k);
        forced_.assign(n, 0);
        unforced_.assign(n, 0);
        relocations_.assign(n, 0);
    }

    // The evaluator holds a pointer to tree_.
    RspEngine(const RspEngine&) = delete;
    RspEngine& operator=(const RspEngine&) = delete;

    int k() const { return k_; }
    const Universe& universe() const { return universe_; }
    std::uint64_t seed() const { return seed_; }
    std::size_t time() const { return tree_.time(); }
    const ExtensionTrace& trace() const { return trace_; }
    const RequestSequence& requests() const { return requests_; }
    const PatternTree& tree() const { return tree_; }

    /// Server positions s^1..s^k; empty before the first step.
    const std::vector<Point>& positions() const { return positions_; }

    /// Q^ell for the current pattern given the current heavier positions.
    LabelSet current_q(int ell) {
        detail::require(!positions_.empty(), "current_q: no step taken");
        std::vector<Point> tops(positions_.begin() + ell, positions_.end());
        return eval_.compute_q(ell, tops);
    }

    StepOutcome step(Point sigma, int ell) {
        detail::require(universe_.contains(sigma), "rsp step: request outside the universe");
        detail::require(ell >= 0 && ell <= k_, "rsp step: extension level outside 0..k");
        detail::require(tree_.time() > 0 || ell == k_, "rsp step: the first extension must move all k servers");

        tree_.append(sigma, ell);
        if (!eval_.pattern_feasible()) {
            tree_.undo_last();
            throw InfeasibleReveal("revealed " + std::to_string(ell) + "-extension at t=" +
                                   std::to_string(tree_.time() + 1) + " is infeasible for the request history");
        }
        trace_.push_back(ell);
        requests_.push_back(sigma);

        const bool first = positions_.empty();
        if (first) positions_.assign(static_cast<std::size_t>(k_), 0);

        StepOutcome out;
        out.t = tree_.time();
        out.sigma = sigma;
        out.ell = ell;
        out.levels.resize(static_cast<std::size_t>(k_));

        bool flag = false;
        for (int level = k_; level >= 1; --level) {
            const auto idx = static_cast<std::size_t>(level - 1);
            const std::span<const Point> tops(positions_.data() + level, positions_.size() - idx - 1);
            const LabelSet q = eval_.compute_q(level, tops);
            if (q.empty()) {
                throw EmptyQ("empty Q-set at level " + std::to_string(level) + ", t=" + std::to_string(out.t));
            }
            LevelOutcome& lo = out.levels[idx];
            lo.q_all = q.is_all();
            lo.q_size = q.size(universe_);

            const Point before = positions_[idx];
            if (flag || level <= ell) {
                lo.kind = MovementKind::forced;
                positions_[idx] = sample(q);
                ++forced_[idx];
            } else if (!q.contains(before)) {
                lo.kind = MovementKind::unforced;
                positions_[idx] = sample(q);
                ++unforced_[idx];
                flag = true;
            }
            lo.position = positions_[idx];
            lo.relocated = first || positions_[idx] != before;
            if (lo.relocated) ++relocations_[idx];
            lo.flag_after = flag;
        }

        bool served = false;
        for (Point p : positions_) served = served || p == sigma;
        if (!served) throw InvariantViolation("request at t=" + std::to_string(out.t) + " left unserved");
        return out;
    }

    CostReport cost_report(const Weights& weights) const {
        detail::require(tree_.time() > 0, "cost_report: no step taken");
        detail::require(weights.k() == k_, "cost_report: weights and engine disagree on k");
        CostReport r;
        r.forced = forced_;
        r.unforced = unforced_;
        r.relocations = relocations_;
        r.interval_count.resize(static_cast<std::size_t>(k_));
        for (int ell = 1; ell <= k_; ++ell) {
            r.interval_count[static_cast<std::size_t>(ell - 1)] = tree_.interval_count(ell);
            r.weighted_cost += weights[ell] * static_cast<unsigned long long>(relocations_[static_cast<std::size_t>(ell - 1)]);
        }
        return r;
    }

private:
    Point sample(const LabelSet& q) {
        if (q.is_all()) return static_cast<Point>(rng_.uniform_index(universe_.size()));
        const auto& pts = q.points();
        return pts[rng_.uniform_index(pts.size())];
    }

    Universe universe_;
    int k_;
    std::uint64_t seed_;
    Rng rng_;
    PatternTree tree_;
    LabelSetEvaluator eval_;
    ExtensionTrace trace_;
    RequestSequence requests_;
    std::vector<Point> positions_;
    std::vector<std::size_t> forced_;
    std::vector<std::size_t> unforced_;
    std::vector<std::size_t> relocations_;
};

}  // namespace wks
