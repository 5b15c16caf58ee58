#pragma once

#include <cstddef>
#include <vector>

#include "bippr/diffusion_weights.hpp"
#include "bippr/graph.hpp"

namespace bippr {

/// Dense length-n vector; a probability distribution where noted.
using DenseVector = std::vector<double>;

/// One step of the walk chain applied to a row vector: (x W)[v] = sum_u x[u] w_uv / d_u.
/// Mass on isolated nodes is dropped (no node reachable by a walk is isolated).
DenseVector apply_transition(const Graph& g, const DenseVector& x);

/// Exact Personalized PageRank from source s by power iteration
/// pi <- alpha e_s + (1 - alpha) pi W starting at e_s, stopped once the
/// successive-iterate infinity-norm difference is at most tol * alpha.
DenseVector exact_ppr(const Graph& g, double alpha, NodeId s, double tol = 1e-13);

/// Power iteration from an arbitrary start distribution sigma (dense, sums to 1).
DenseVector exact_ppr_from(const Graph& g, double alpha, const DenseVector& sigma,
                           double tol = 1e-13);

/// result[l] = e_s W^l for l = 0..ell_max.
std::vector<DenseVector> exact_mstp(const Graph& g, NodeId s, std::size_t ell_max);

/// Truncated diffusion sum_l alphas[l] (e_s W^l). The tail mass is not added.
DenseVector exact_diffusion(const Graph& g, const DiffusionWeights& weights, NodeId s);

/// Global PageRank (uniform start over all nodes), used by push-only error bounds.
DenseVector exact_global_pagerank(const Graph& g, double alpha, double tol = 1e-13);

}  // namespace bippr
