#include "bippr/monte_carlo.hpp"

#include <algorithm>
#include <cmath>

#include "bippr/errors.hpp"
#include "bippr/parallel.hpp"
#include "bippr/walk.hpp"

namespace bippr {

namespace {

struct HitCount {
    std::uint64_t hits = 0;
    std::uint64_t steps = 0;

    HitCount& operator+=(const HitCount& o) noexcept {
        hits += o.hits;
        steps += o.steps;
        return *this;
    }
};

}  // namespace

PprEstimate mc_estimate(const Graph& g, NodeId s, NodeId t, double alpha, std::uint64_t walks,
                        const RandomStream& rng, unsigned threads) {
    detail::require_teleport(alpha);
    if (walks == 0) {
        throw DomainError("num_walks must be positive");
    }
    g.require_walkable(s, "source");
    if (!g.contains(t)) {
        throw DomainError("target out of range");
    }

    const HitCount total = chunked_reduce<HitCount>(walks, threads, [&](std::size_t i, HitCount& acc) {
        RandomStream stream = rng.split(i);
        const WalkEnd end = sample_geometric_walk(g, s, alpha, stream);
        acc.steps += end.length;
        acc.hits += end.terminal == t ? 1 : 0;
    });

    PprEstimate est;
    est.params.alpha = alpha;
    est.params.walks = walks;
    est.walk_term = static_cast<double>(total.hits) / static_cast<double>(walks);
    est.value = est.walk_term;
    est.walk_steps = total.steps;
    est.walks = walks;
    est.d_t = g.degree_unchecked(t);
    est.max_sample = total.hits > 0 ? 1.0 : 0.0;
    return est;
}

std::uint64_t mc_num_walks(double delta, double eps, double p_fail) {
    if (!(delta > 0.0) || !(eps > 0.0 && eps <= 1.0)) {
        throw DomainError("delta must be positive and eps in (0, 1]");
    }
    const double w = std::ceil(chernoff_c(p_fail) / (eps * eps * delta));
    if (!(w <= 9007199254740992.0)) {
        throw DomainError("walk count exceeds 2^53");
    }
    return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(w));
}

}  // namespace bippr
