#include "bippr/push.hpp"

#include <cmath>
#include <deque>
#include <stdexcept>
#include <unordered_set>

#include "bippr/errors.hpp"

namespace bippr {

namespace {

PushResult run_push(const Graph& g, double alpha, const SparseVector& sigma, double r_max,
                    const PushObserver& observer) {
    PushResult state;
    state.alpha = alpha;
    state.r_max = r_max;
    state.residual = sigma;

    std::deque<NodeId> frontier;
    std::unordered_set<NodeId> queued;
    auto over = [&](NodeId v, double r) { return r / g.degree_unchecked(v) > r_max; };

    for (const auto& [v, r] : sigma.sorted_entries()) {
        if (over(v, r)) {
            frontier.push_back(v);
            queued.insert(v);
        }
    }

    const double budget = state.work_bound() * (1.0 + 1e-12);
    while (!frontier.empty()) {
        const NodeId u = frontier.front();
        frontier.pop_front();
        queued.erase(u);

        // Residuals only grow while a node waits in the queue.
        const double ru = state.residual.take(u);
        const double du = g.degree_unchecked(u);
        state.estimate.add(u, alpha * ru);
        const double share = (1.0 - alpha) * ru / du;
        const auto nbrs = g.neighbors(u);
        const auto ws = g.weights(u);
        for (std::size_t k = 0; k < nbrs.size(); ++k) {
            const NodeId v = nbrs[k];
            const double rv = state.residual.add(v, share * ws[k]);
            if (over(v, rv) && queued.insert(v).second) {
                frontier.push_back(v);
            }
        }

        ++state.push_count;
        state.degree_work += du;
        if (state.degree_work > budget) {
            throw std::logic_error("push exceeded the 1/(alpha r_max) work bound");
        }
        if (observer) {
            observer(state, u);
        }
    }
    return state;
}

void require_r_max(double r_max) {
    if (!(r_max > 0.0) || !std::isfinite(r_max)) {
        throw DomainError("r_max must be positive");
    }
}

}  // namespace

PushResult approximate_pagerank(const Graph& g, double alpha, NodeId s, double r_max,
                                const PushObserver& observer) {
    detail::require_teleport(alpha);
    require_r_max(r_max);
    g.require_walkable(s, "source");
    SparseVector sigma;
    sigma.set(s, 1.0);
    return run_push(g, alpha, sigma, r_max, observer);
}

PushResult push_from_distribution(const Graph& g, double alpha, const SparseVector& sigma,
                                  double r_max, const PushObserver& observer) {
    detail::require_teleport(alpha);
    require_r_max(r_max);
    if (sigma.empty()) {
        throw DomainError("source distribution is empty");
    }
    for (const auto& [v, x] : sigma) {
        g.require_walkable(v, "source distribution");
        if (!(x >= 0.0) || !std::isfinite(x)) {
            throw DomainError("source distribution has a negative entry");
        }
    }
    if (std::abs(sigma.sum() - 1.0) > 1e-12) {
        throw DomainError("source distribution must sum to 1");
    }
    return run_push(g, alpha, sigma, r_max, observer);
}

}  // namespace bippr
