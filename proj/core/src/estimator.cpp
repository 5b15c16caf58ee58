#include "bippr/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "bippr/errors.hpp"
#include "bippr/parallel.hpp"
#include "bippr/walk.hpp"

namespace bippr {

namespace {

constexpr double kMaxWalks = 9007199254740992.0;  // 2^53

void require_open_unit(double x, const char* name) {
    if (!(x > 0.0 && x < 1.0)) {
        throw DomainError(std::string(name) + " must lie in (0, 1)");
    }
}

void require_eps(double eps) {
    if (!(eps > 0.0 && eps <= 1.0)) {
        throw DomainError("eps must lie in (0, 1]");
    }
}

void require_positive(double x, const char* name) {
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw DomainError(std::string(name) + " must be positive");
    }
}

struct WalkSum {
    double sum = 0.0;
    std::uint64_t steps = 0;
    double max_sample = 0.0;

    WalkSum& operator+=(const WalkSum& o) noexcept {
        sum += o.sum;
        steps += o.steps;
        max_sample = std::max(max_sample, o.max_sample);
        return *this;
    }
};

}  // namespace

double chernoff_c(double p_fail) {
    require_open_unit(p_fail, "p_fail");
    return 3.0 * std::log(2.0 / p_fail);
}

double choose_r_max(double eps, double delta, double d_t, double p_fail) {
    require_eps(eps);
    require_positive(delta, "delta");
    require_positive(d_t, "d_t");
    require_open_unit(p_fail, "p_fail");
    const double r_max = eps / std::sqrt(std::log(1.0 / p_fail)) * std::sqrt(delta / d_t);
    return std::min(r_max, 1.0);
}

std::uint64_t num_walks(double c, double d_t, double r_max, double eps, double delta) {
    require_positive(c, "c");
    require_positive(d_t, "d_t");
    require_positive(r_max, "r_max");
    require_positive(eps, "eps");
    require_positive(delta, "delta");
    const double w = std::ceil(c * d_t * r_max / (eps * eps * delta));
    if (!(w <= kMaxWalks)) {
        throw DomainError("walk count exceeds 2^53");
    }
    return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(w));
}

double significance_delta(const Graph& g, NodeId t) {
    const double d_t = g.degree(t);
    if (g.num_edges() == 0) {
        throw DomainError("graph has no edges");
    }
    return d_t / g.total_weight();
}

BipprParams BipprParams::make(double alpha, double delta, double eps, double p_fail, double d_t,
                              std::optional<double> c_override,
                              std::optional<double> r_max_override) {
    detail::require_teleport(alpha);
    BipprParams p;
    p.alpha = alpha;
    p.delta = delta;
    p.eps = eps;
    p.p_fail = p_fail;
    p.c = c_override ? *c_override : chernoff_c(p_fail);
    p.r_max = r_max_override ? std::min(*r_max_override, 1.0) : choose_r_max(eps, delta, d_t, p_fail);
    p.walks = num_walks(p.c, d_t, p.r_max, eps, delta);
    p.validate();
    return p;
}

void BipprParams::validate() const {
    detail::require_teleport(alpha);
    require_positive(delta, "delta");
    require_eps(eps);
    require_open_unit(p_fail, "p_fail");
    require_positive(c, "c");
    require_positive(r_max, "r_max");
    if (r_max > 1.0) {
        throw DomainError("r_max must not exceed 1");
    }
    if (walks == 0) {
        throw DomainError("walk count must be positive");
    }
}

PreparedSource::PreparedSource(const Graph& g, NodeId s, double alpha, double r_max)
    : graph_(&g), source_(s), push_(approximate_pagerank(g, alpha, s, r_max)) {}

PprEstimate PreparedSource::query(NodeId t, const BipprParams& params, const RandomStream& rng,
                                  unsigned threads) const {
    params.validate();
    const Graph& g = *graph_;
    g.require_walkable(t, "target");
    if (params.alpha != push_.alpha || params.r_max != push_.r_max) {
        throw DomainError("query parameters do not match the prepared push");
    }

    const double d_t = g.degree_unchecked(t);
    const SparseVector& residual = push_.residual;
    const double alpha = params.alpha;
    const double sample_cap = d_t * params.r_max * (1.0 + 1e-12);

    const WalkSum total = chunked_reduce<WalkSum>(params.walks, threads, [&](std::size_t i, WalkSum& acc) {
        RandomStream stream = rng.split(i);
        const WalkEnd end = sample_geometric_walk(g, t, alpha, stream);
        acc.steps += end.length;
        const double r = residual.get(end.terminal);
        if (r == 0.0) {
            return;
        }
        const double x = r * d_t / g.degree_unchecked(end.terminal);
        if (x > sample_cap) {
            throw std::logic_error("walk sample exceeds d_t * r_max; push stopping rule violated");
        }
        acc.sum += x;
        acc.max_sample = std::max(acc.max_sample, x);
    });

    PprEstimate est;
    est.params = params;
    est.push_term = push_.estimate.get(t);
    est.walk_term = total.sum / static_cast<double>(params.walks);
    est.value = est.push_term + est.walk_term;
    est.push_count = push_.push_count;
    est.push_work = push_.degree_work;
    est.walk_steps = total.steps;
    est.walks = params.walks;
    est.d_t = d_t;
    est.max_sample = total.max_sample;
    return est;
}

PprEstimate estimate_ppr(const Graph& g, NodeId s, NodeId t, const BipprParams& params,
                         const RandomStream& rng, unsigned threads) {
    params.validate();
    g.require_walkable(t, "target");
    const PreparedSource prepared(g, s, params.alpha, params.r_max);
    return prepared.query(t, params, rng, threads);
}

}  // namespace bippr
