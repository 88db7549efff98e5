#pragma once

// Random inputs for the property suites.

#include "wks/core_model.hpp"
#include "wks/random.hpp"

#include <vector>

namespace wks::harness {

struct Instance {
    ExtensionTrace trace{1};
    RequestSequence requests;
};

/// Extension levels skewed toward the low end (minimum of two uniform draws).
inline ExtensionTrace random_trace(int k, std::size_t T, Rng& rng) {
    ExtensionTrace trace(k);
    for (std::size_t t = 1; t <= T; ++t) {
        if (t == 1) {
            trace.push_back(k);
            continue;
        }
        const auto a = static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(k) + 1));
        const auto b = static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(k) + 1));
        trace.push_back(std::min(a, b));
    }
    return trace;
}

/// Uniform requests; the pattern may well be infeasible.
inline Instance random_instance(int k, std::size_t universe, std::size_t T, Rng& rng) {
    Instance in;
    in.trace = random_trace(k, T, rng);
    for (std::size_t t = 0; t < T; ++t) in.requests.push_back(static_cast<Point>(rng.uniform_index(universe)));
    return in;
}

/// Draws a labeling first and requests the label of a random level at each
/// time, so the pattern is feasible.
inline Instance feasible_instance(int k, std::size_t universe, std::size_t T, Rng& rng) {
    Instance in;
    in.trace = random_trace(k, T, rng);
    const IntervalSet pattern = intervals(in.trace);
    std::vector<std::vector<Point>> labels(static_cast<std::size_t>(k));
    for (int ell = 1; ell <= k; ++ell) {
        for (std::size_t i = 0; i < pattern.count(ell); ++i) {
            labels[static_cast<std::size_t>(ell - 1)].push_back(static_cast<Point>(rng.uniform_index(universe)));
        }
    }
    for (std::size_t t = 1; t <= T; ++t) {
        const int ell = 1 + static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(k)));
        in.requests.push_back(labels[static_cast<std::size_t>(ell - 1)][pattern.index_at(ell, t)]);
    }
    return in;
}

/// Three feasible instances for every uniform one.
inline Instance mixed_instance(int k, std::size_t universe, std::size_t T, Rng& rng) {
    return rng.uniform_index(4) == 0 ? random_instance(k, universe, T, rng) : feasible_instance(k, universe, T, rng);
}

/// Every tuple in U^m, first coordinate varying fastest.
inline std::vector<std::vector<Point>> all_tuples(std::size_t universe, int m) {
    std::vector<std::vector<Point>> out;
    std::vector<Point> cur(static_cast<std::size_t>(m), 0);
    while (true) {
        out.push_back(cur);
        int i = 0;
        while (i < m && ++cur[static_cast<std::size_t>(i)] == universe) cur[static_cast<std::size_t>(i++)] = 0;
        if (i == m) break;
    }
    return out;
}

}  // namespace wks::harness
