#include "bippr/exact.hpp"

#include <algorithm>
#include <cmath>

#include "bippr/errors.hpp"

namespace bippr {

DenseVector apply_transition(const Graph& g, const DenseVector& x) {
    DenseVector out(g.num_nodes(), 0.0);
    for (NodeId u = 0; u < g.num_nodes(); ++u) {
        if (x[u] == 0.0 || g.is_isolated(u)) {
            continue;
        }
        const double share = x[u] / g.degree_unchecked(u);
        const auto nbrs = g.neighbors(u);
        const auto ws = g.weights(u);
        for (std::size_t k = 0; k < nbrs.size(); ++k) {
            out[nbrs[k]] += share * ws[k];
        }
    }
    return out;
}

DenseVector exact_ppr_from(const Graph& g, double alpha, const DenseVector& sigma, double tol) {
    detail::require_teleport(alpha);
    if (!(tol > 0.0)) {
        throw DomainError("tolerance must be positive");
    }
    if (sigma.size() != g.num_nodes()) {
        throw DomainError("start distribution has the wrong length");
    }
    DenseVector pi = sigma;
    // The l1 error contracts by (1 - alpha) per sweep; the cap only guards
    // against tolerances below floating-point resolution.
    const double sweeps = std::ceil(std::log(tol * alpha * 0.5) / std::log1p(-alpha));
    const auto max_sweeps = static_cast<std::size_t>(std::min(2.0 * sweeps + 100.0, 1e7));
    for (std::size_t sweep = 0;; ++sweep) {
        DenseVector next = apply_transition(g, pi);
        double diff = 0.0;
        for (std::size_t v = 0; v < next.size(); ++v) {
            next[v] = alpha * sigma[v] + (1.0 - alpha) * next[v];
            diff = std::max(diff, std::abs(next[v] - pi[v]));
        }
        pi = std::move(next);
        if (diff <= tol * alpha || sweep >= max_sweeps) {
            return pi;
        }
    }
}

DenseVector exact_ppr(const Graph& g, double alpha, NodeId s, double tol) {
    g.require_walkable(s, "source");
    DenseVector sigma(g.num_nodes(), 0.0);
    sigma[s] = 1.0;
    return exact_ppr_from(g, alpha, sigma, tol);
}

std::vector<DenseVector> exact_mstp(const Graph& g, NodeId s, std::size_t ell_max) {
    g.require_walkable(s, "source");
    std::vector<DenseVector> out;
    out.reserve(ell_max + 1);
    DenseVector x(g.num_nodes(), 0.0);
    x[s] = 1.0;
    out.push_back(x);
    for (std::size_t l = 1; l <= ell_max; ++l) {
        out.push_back(apply_transition(g, out.back()));
    }
    return out;
}

DenseVector exact_diffusion(const Graph& g, const DiffusionWeights& weights, NodeId s) {
    weights.validate();
    const auto levels = exact_mstp(g, s, weights.ell_max());
    DenseVector out(g.num_nodes(), 0.0);
    for (std::size_t l = 0; l < levels.size(); ++l) {
        for (std::size_t v = 0; v < out.size(); ++v) {
            out[v] += weights.alphas[l] * levels[l][v];
        }
    }
    return out;
}

DenseVector exact_global_pagerank(const Graph& g, double alpha, double tol) {
    if (g.num_nodes() == 0) {
        throw DomainError("empty graph");
    }
    DenseVector sigma(g.num_nodes(), 1.0 / static_cast<double>(g.num_nodes()));
    return exact_ppr_from(g, alpha, sigma, tol);
}

}  // namespace bippr
