#pragma once

#include <cstddef>
#include <functional>

#include "bippr/graph.hpp"
#include "bippr/sparse_vector.hpp"

namespace bippr {

/// Output of the forward local push from a source distribution.
///
/// For every node t the pair satisfies
///     pi_src[t] = estimate[t] + sum_v residual[v] * pi_v[t],
/// and on return residual[v] / d_v <= r_max for all v.
struct PushResult {
    SparseVector estimate;
    SparseVector residual;
    std::size_t push_count = 0;
    /// Sum of d_u over pushed nodes; at most 1 / (alpha r_max).
    double degree_work = 0.0;
    double alpha = 0.0;
    double r_max = 0.0;

    /// 1 / (alpha r_max): the worst-case degree_work.
    double work_bound() const noexcept { return 1.0 / (alpha * r_max); }
};

/// Called after every individual push with the intermediate state and the
/// node just pushed. Intended for invariant instrumentation in tests.
using PushObserver = std::function<void(const PushResult& state, NodeId pushed)>;

/// Forward push from e_s. Nodes whose residual ratio r[u]/d_u strictly
/// exceeds r_max are pushed in FIFO order: alpha r[u] settles into the
/// estimate and (1 - alpha) r[u] w_uv / d_u moves to each neighbor v.
/// Throws DomainError for an isolated s, alpha outside (0,1) or r_max <= 0.
PushResult approximate_pagerank(const Graph& g, double alpha, NodeId s, double r_max,
                                const PushObserver& observer = {});

/// Same loop with the residual initialised to `sigma` (nonnegative, sums to
/// 1 within 1e-12, support free of isolated nodes).
PushResult push_from_distribution(const Graph& g, double alpha, const SparseVector& sigma,
                                  double r_max, const PushObserver& observer = {});

}  // namespace bippr
