#pragma once

// Service-pattern construction: online algorithms that, for each request,
// commit only to which servers move (an extension level), keeping the
// pattern feasible for the requests so far.
//
// Two baselines live here. Neither carries a competitiveness guarantee.
//   LazySpc    - smallest extension level that keeps the pattern feasible.
//   OracleSpc  - clairvoyant; replays a minimum-cost feasible hierarchical
//                pattern computed offline for the whole sequence.

#include "wks/core_model.hpp"
#include "wks/feasibility.hpp"
#include "wks/offline_opt.hpp"
#include "wks/pattern_tree.hpp"

#include <memory>

namespace wks {

class SpcAlgorithm {
public:
    virtual ~SpcAlgorithm() = default;
    virtual int k() const = 0;
    /// Extension level ell_t for request sigma_t.
    virtual int step(Point sigma) = 0;
    virtual void reset() = 0;
    virtual const char* name() const = 0;
};

class LazySpc final : public SpcAlgorithm {
public:
    LazySpc(Universe universe, int k) : universe_(universe), k_(k) { reset(); }

    int k() const override { return k_; }
    const char* name() const override { return "lazy"; }

    void reset() override {
        tree_ = std::make_unique<PatternTree>(k_);
        eval_ = std::make_unique<LabelSetEvaluator>(*tree_, universe_);
    }

    int step(Point sigma) override {
        detail::require(universe_.contains(sigma), "lazy spc: request outside the universe");
        const int from = tree_->time() == 0 ? k_ : 0;
        for (int ell = from; ell <= k_; ++ell) {
            tree_->append(sigma, ell);
            if (eval_->pattern_feasible()) return ell;
            tree_->undo_last();
        }
        // The k-extension can always label the fresh level-1 interval with sigma.
        throw InvariantViolation("lazy spc: no feasible extension");
    }

private:
    Universe universe_;
    int k_;
    std::unique_ptr<PatternTree> tree_;
    std::unique_ptr<LabelSetEvaluator> eval_;
};

/// One lazy step from a given history: the minimal ell whose ell-extension
/// of `trace` is feasible for history + sigma.
inline int lazy_spc_step(const RequestSequence& history, const ExtensionTrace& trace, Point sigma) {
    detail::require(history.size() == trace.size(), "lazy_spc_step: history and trace differ in length");
    if (trace.empty()) return trace.k();
    RequestSequence next = history;
    next.push_back(sigma);
    for (int ell = 0; ell <= trace.k(); ++ell) {
        if (is_feasible(extend(trace, ell), next)) return ell;
    }
    throw InvariantViolation("lazy_spc_step: no feasible extension");
}

/// Minimum-cost feasible hierarchical trace for the whole sequence.
inline ExtensionTrace oracle_spc(const RequestSequence& requests, const Weights& weights, const Universe& universe) {
    return opt_hierarchical(requests, weights, universe).trace;
}

class OracleSpc final : public SpcAlgorithm {
public:
    OracleSpc(const RequestSequence& requests, const Weights& weights, const Universe& universe)
        : requests_(requests), trace_(oracle_spc(requests, weights, universe)) {}

    int k() const override { return trace_.k(); }
    const char* name() const override { return "oracle"; }
    void reset() override { t_ = 0; }
    const ExtensionTrace& planned() const { return trace_; }

    int step(Point sigma) override {
        detail::require(t_ < requests_.size(), "oracle spc: more requests than planned");
        detail::require(requests_[t_] == sigma, "oracle spc: request differs from the planned sequence");
        return trace_.at(++t_);
    }

private:
    RequestSequence requests_;
    ExtensionTrace trace_;
    std::size_t t_ = 0;
};

}  // namespace wks
