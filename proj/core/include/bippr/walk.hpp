#pragma once

#include <cstddef>
#include <vector>

#include "bippr/graph.hpp"
#include "bippr/random.hpp"

namespace bippr {

/// Terminal node and length of a geometric-length walk.
struct WalkEnd {
    NodeId terminal;
    std::size_t length;
};

/// Walk whose length L satisfies P(L = l) = alpha (1 - alpha)^l, l >= 0.
/// Before every step the walk stops with probability alpha, so it may end at
/// `start` without moving. The terminal node is distributed as pi_start.
WalkEnd sample_geometric_walk(const Graph& g, NodeId start, double alpha, RandomStream& rng);

/// Full trajectory of a fixed-length walk; positions[0] is the start.
struct WalkRecord {
    std::vector<NodeId> positions;

    std::size_t length() const noexcept { return positions.empty() ? 0 : positions.size() - 1; }
};

/// Walk of exactly `ell` steps.
WalkRecord sample_fixed_walk(const Graph& g, NodeId start, std::size_t ell, RandomStream& rng);

/// In-place variant that reuses `positions`' storage.
void sample_fixed_walk_into(const Graph& g, NodeId start, std::size_t ell, RandomStream& rng,
                            std::vector<NodeId>& positions);

}  // namespace bippr
