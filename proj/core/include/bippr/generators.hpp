#pragma once

#include <cstddef>

#include "bippr/graph.hpp"
#include "bippr/random.hpp"

namespace bippr::gen {

/// K_n with unit weights.
Graph complete(std::size_t n);
/// Star with `leaves` leaves; the center is node 0 and labelled "c".
Graph star(std::size_t leaves);
/// Path 0 - 1 - ... - (n-1).
Graph path(std::size_t n);

/// G(n, p) Erdős–Rényi graph, made connected by joining every extra
/// component to the first with one random edge.
Graph erdos_renyi_connected(std::size_t n, double p, RandomStream& rng);

/// Barabási–Albert preferential attachment: starts from a clique on
/// `attach + 1` nodes and adds nodes with `attach` degree-biased edges each.
/// Always connected.
Graph barabasi_albert(std::size_t n, std::size_t attach, RandomStream& rng);

/// Copy of g with independent edge weights drawn uniformly from [lo, hi).
Graph randomly_weighted(const Graph& g, double lo, double hi, RandomStream& rng);

}  // namespace bippr::gen
