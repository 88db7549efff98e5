#pragma once

// Weighted k-server from a pattern-construction algorithm and the serving
// engine: each request goes to the SPC algorithm, its extension level and
// the request go to the engine, and the composed algorithm's servers sit
// wherever the engine's servers are.

#include "wks/offline_opt.hpp"
#include "wks/rsp_engine.hpp"
#include "wks/spc.hpp"

#include <optional>
#include <vector>

namespace wks {

struct ComposedRun {
    RequestSequence requests;
    ExtensionTrace spc_trace{1};
    std::vector<StepOutcome> steps;  // positions of the composed algorithm per step
    CostReport rsp_report;
    Rational spc_pattern_cost = 0;
    Rational rsp_cost = 0;
    std::optional<Rational> opt_cost;
};

inline ComposedRun compose_run(SpcAlgorithm& spc, std::uint64_t rsp_seed, const RequestSequence& requests,
                               const Weights& weights, const Universe& universe, bool with_opt = true) {
    detail::require(spc.k() == weights.k(), "compose_run: spc and weights disagree on k");
    detail::require(!requests.empty(), "compose_run: empty request sequence");
    validate_requests(requests, universe);

    ComposedRun run;
    run.requests = requests;
    run.spc_trace = ExtensionTrace(weights.k());
    RspEngine engine(universe, weights.k(), rsp_seed);
    run.steps.reserve(requests.size());
    for (Point sigma : requests) {
        const int ell = spc.step(sigma);
        run.spc_trace.push_back(ell);
        run.steps.push_back(engine.step(sigma, ell));
    }
    run.rsp_report = engine.cost_report(weights);
    run.rsp_cost = run.rsp_report.weighted_cost;
    run.spc_pattern_cost = pattern_cost(run.spc_trace, weights);
    if (with_opt) run.opt_cost = opt_cost(requests, weights, universe);
    return run;
}

}  // namespace wks
