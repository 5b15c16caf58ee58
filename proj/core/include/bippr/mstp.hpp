#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "bippr/diffusion_weights.hpp"
#include "bippr/graph.hpp"
#include "bippr/random.hpp"
#include "bippr/sparse_vector.hpp"

namespace bippr {

/// Per-length estimates q[l] and residuals r[l], l = 0..ell_max, of the
/// multi-level forward push from `source`. For every t and l <= ell_max:
///     p_s^l[t] = q[l][t] + sum_{k<=l} sum_v r[k][v] p_v^{l-k}[t].
/// Levels below ell_max end with r[l][v] / d_v <= r_max; level ell_max is
/// never pushed and holds pure residual.
struct MstpState {
    NodeId source = 0;
    std::size_t ell_max = 0;
    double r_max = 0.0;
    std::vector<SparseVector> estimate;
    std::vector<SparseVector> residual;
    std::size_t push_count = 0;
    double degree_work = 0.0;
};

/// Called after every push with the state, the level pushed and the node.
using MstpObserver = std::function<void(const MstpState& state, std::size_t level, NodeId pushed)>;

/// Multi-level push from e_s. Levels 0..ell_max-1 are processed in order;
/// within a level nodes over threshold are pushed FIFO, moving r[l][v] into
/// q[l][v] and r[l][v] w_vu / d_v into r[l+1][u].
MstpState approximate_mstp(const Graph& g, NodeId s, std::size_t ell_max, double r_max,
                           const MstpObserver& observer = {});

struct MstpEstimate {
    double value = 0.0;
    double push_term = 0.0;
    double walk_term = 0.0;
    std::uint64_t walks = 0;
    std::uint64_t walk_steps = 0;
    /// Largest per-walk contribution from pushed levels (bounded by d_t r_max).
    double max_pushed_sample = 0.0;
    /// Largest per-walk contribution from the unpushed top level (unbounded).
    double max_top_sample = 0.0;
};

/// Unbiased estimate of p_s^ell[t]: q[ell][t] plus the mean over `walks`
/// length-ell walks W from t of sum_k r[k][W_{ell-k}] d_t / d_{W_{ell-k}}.
/// When r[0..ell] are all empty the result is exact and no walks are taken.
MstpEstimate bidir_mstp(const Graph& g, const MstpState& state, NodeId t, std::size_t ell,
                        std::uint64_t walks, const RandomStream& rng, unsigned threads = 1);

struct DiffusionOptions {
    /// One batch of length-ell_max walks serves every level through its
    /// prefixes. When false each level draws its own batch.
    bool shared_walks = true;
    unsigned threads = 1;
};

struct LevelEstimate {
    std::size_t ell = 0;
    double weight = 0.0;
    double estimate = 0.0;
};

struct DiffusionEstimate {
    double value = 0.0;
    /// Tail mass of the weights: |f - E[value]| <= trunc_bound.
    double trunc_bound = 0.0;
    std::size_t ell_max = 0;
    std::vector<LevelEstimate> per_level;
    std::size_t push_count = 0;
    double push_work = 0.0;
    std::uint64_t walk_steps = 0;
    double max_pushed_sample = 0.0;
    double max_top_sample = 0.0;
};

/// Bidirectional estimate of sum_l alphas[l] p_s^l[t] for the truncated
/// diffusion described by `weights`.
DiffusionEstimate estimate_diffusion(const Graph& g, NodeId s, NodeId t,
                                     const DiffusionWeights& weights, double r_max,
                                     std::uint64_t walks_per_level, const RandomStream& rng,
                                     const DiffusionOptions& options = {});

}  // namespace bippr
