#include "bippr/walk.hpp"

#include "bippr/errors.hpp"

namespace bippr {

WalkEnd sample_geometric_walk(const Graph& g, NodeId start, double alpha, RandomStream& rng) {
    detail::require_teleport(alpha);
    g.require_walkable(start, "walk start");
    NodeId at = start;
    std::size_t length = 0;
    while (rng.uniform() >= alpha) {
        at = g.step_unchecked(at, rng);
        ++length;
    }
    return {at, length};
}

void sample_fixed_walk_into(const Graph& g, NodeId start, std::size_t ell, RandomStream& rng,
                            std::vector<NodeId>& positions) {
    g.require_walkable(start, "walk start");
    positions.resize(ell + 1);
    positions[0] = start;
    for (std::size_t k = 1; k <= ell; ++k) {
        positions[k] = g.step_unchecked(positions[k - 1], rng);
    }
}

WalkRecord sample_fixed_walk(const Graph& g, NodeId start, std::size_t ell, RandomStream& rng) {
    WalkRecord record;
    sample_fixed_walk_into(g, start, ell, rng, record.positions);
    return record;
}

}  // namespace bippr
