#include "bippr/mstp.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

#include "bippr/errors.hpp"
#include "bippr/parallel.hpp"
#include "bippr/walk.hpp"

namespace bippr {

namespace {

/// Per-level walk sums for a shared batch.
struct LevelSums {
    std::vector<double> sums;
    std::uint64_t steps = 0;
    double max_pushed = 0.0;
    double max_top = 0.0;

    LevelSums& operator+=(const LevelSums& o) {
        if (sums.size() < o.sums.size()) {
            sums.resize(o.sums.size(), 0.0);
        }
        for (std::size_t l = 0; l < o.sums.size(); ++l) {
            sums[l] += o.sums[l];
        }
        steps += o.steps;
        max_pushed = std::max(max_pushed, o.max_pushed);
        max_top = std::max(max_top, o.max_top);
        return *this;
    }
};

/// Adds sum_{k<=l} r[k][W_{l-k}] d_t / d_{W_{l-k}} to acc.sums[l] for every
/// l <= top, given one walk W of length top.
void accumulate_walk(const Graph& g, const MstpState& state, double d_t,
                     const std::vector<NodeId>& walk, std::size_t top, LevelSums& acc) {
    const double cap = d_t * state.r_max * (1.0 + 1e-12);
    if (acc.sums.size() < top + 1) {
        acc.sums.resize(top + 1, 0.0);
    }
    for (std::size_t k = 0; k <= top; ++k) {
        const SparseVector& r = state.residual[k];
        if (r.empty()) {
            continue;
        }
        const bool pushed_level = k < state.ell_max;
        for (std::size_t l = k; l <= top; ++l) {
            const NodeId v = walk[l - k];
            const double rv = r.get(v);
            if (rv == 0.0) {
                continue;
            }
            const double x = rv * d_t / g.degree_unchecked(v);
            if (pushed_level) {
                if (x > cap) {
                    throw std::logic_error("level sample exceeds d_t * r_max; push stopping rule violated");
                }
                acc.max_pushed = std::max(acc.max_pushed, x);
            } else {
                acc.max_top = std::max(acc.max_top, x);
            }
            acc.sums[l] += x;
        }
    }
}

bool residual_free(const MstpState& state, std::size_t ell) {
    for (std::size_t k = 0; k <= ell; ++k) {
        if (!state.residual[k].empty()) {
            return false;
        }
    }
    return true;
}

/// Walk sums for levels 0..top from one batch of `walks` length-top walks.
LevelSums sample_levels(const Graph& g, const MstpState& state, NodeId t, std::size_t top,
                        std::uint64_t walks, const RandomStream& rng, unsigned threads) {
    const double d_t = g.degree_unchecked(t);
    return chunked_reduce<LevelSums>(walks, threads, [&](std::size_t i, LevelSums& acc) {
        thread_local std::vector<NodeId> positions;
        RandomStream stream = rng.split(i);
        sample_fixed_walk_into(g, t, top, stream, positions);
        acc.steps += top;
        accumulate_walk(g, state, d_t, positions, top, acc);
    });
}

void check_walks(std::uint64_t walks) {
    if (walks == 0) {
        throw DomainError("walk count must be positive");
    }
}

}  // namespace

MstpState approximate_mstp(const Graph& g, NodeId s, std::size_t ell_max, double r_max,
                           const MstpObserver& observer) {
    g.require_walkable(s, "source");
    if (!(r_max > 0.0) || !std::isfinite(r_max)) {
        throw DomainError("r_max must be positive");
    }
    MstpState state;
    state.source = s;
    state.ell_max = ell_max;
    state.r_max = r_max;
    state.estimate.resize(ell_max + 1);
    state.residual.resize(ell_max + 1);
    state.residual[0].set(s, 1.0);

    for (std::size_t level = 0; level < ell_max; ++level) {
        // Pushes at this level only feed level + 1, so the frontier is fixed
        // once the level is reached.
        std::deque<NodeId> frontier;
        for (const auto& [v, r] : state.residual[level].sorted_entries()) {
            if (r / g.degree_unchecked(v) > r_max) {
                frontier.push_back(v);
            }
        }
        SparseVector& here = state.residual[level];
        SparseVector& next = state.residual[level + 1];
        for (const NodeId v : frontier) {
            const double rv = here.take(v);
            const double dv = g.degree_unchecked(v);
            state.estimate[level].add(v, rv);
            const double share = rv / dv;
            const auto nbrs = g.neighbors(v);
            const auto ws = g.weights(v);
            for (std::size_t k = 0; k < nbrs.size(); ++k) {
                next.add(nbrs[k], share * ws[k]);
            }
            ++state.push_count;
            state.degree_work += dv;
            if (observer) {
                observer(state, level, v);
            }
        }
    }
    return state;
}

MstpEstimate bidir_mstp(const Graph& g, const MstpState& state, NodeId t, std::size_t ell,
                        std::uint64_t walks, const RandomStream& rng, unsigned threads) {
    g.require_walkable(t, "target");
    check_walks(walks);
    if (ell > state.ell_max) {
        throw DomainError("requested length exceeds the state's ell_max");
    }
    MstpEstimate est;
    est.push_term = state.estimate[ell].get(t);
    if (!residual_free(state, ell)) {
        const LevelSums sums = sample_levels(g, state, t, ell, walks, rng, threads);
        est.walk_term = sums.sums[ell] / static_cast<double>(walks);
        est.walks = walks;
        est.walk_steps = sums.steps;
        est.max_pushed_sample = sums.max_pushed;
        est.max_top_sample = sums.max_top;
    }
    est.value = est.push_term + est.walk_term;
    return est;
}

DiffusionEstimate estimate_diffusion(const Graph& g, NodeId s, NodeId t,
                                     const DiffusionWeights& weights, double r_max,
                                     std::uint64_t walks_per_level, const RandomStream& rng,
                                     const DiffusionOptions& options) {
    weights.validate();
    check_walks(walks_per_level);
    g.require_walkable(t, "target");
    const std::size_t top = weights.ell_max();
    const MstpState state = approximate_mstp(g, s, top, r_max);

    DiffusionEstimate out;
    out.ell_max = top;
    out.trunc_bound = weights.tail;
    out.push_count = state.push_count;
    out.push_work = state.degree_work;
    out.per_level.resize(top + 1);

    std::vector<double> level_values(top + 1, 0.0);
    if (options.shared_walks) {
        if (!residual_free(state, top)) {
            const LevelSums sums = sample_levels(g, state, t, top, walks_per_level, rng, options.threads);
            for (std::size_t l = 0; l <= top; ++l) {
                level_values[l] = sums.sums[l] / static_cast<double>(walks_per_level);
            }
            out.walk_steps = sums.steps;
            out.max_pushed_sample = sums.max_pushed;
            out.max_top_sample = sums.max_top;
        }
        for (std::size_t l = 0; l <= top; ++l) {
            level_values[l] += state.estimate[l].get(t);
        }
    } else {
        for (std::size_t l = 0; l <= top; ++l) {
            if (weights.alphas[l] == 0.0) {
                continue;
            }
            const MstpEstimate level = bidir_mstp(g, state, t, l, walks_per_level, rng.split(l), options.threads);
            level_values[l] = level.value;
            out.walk_steps += level.walk_steps;
            out.max_pushed_sample = std::max(out.max_pushed_sample, level.max_pushed_sample);
            out.max_top_sample = std::max(out.max_top_sample, level.max_top_sample);
        }
    }

    for (std::size_t l = 0; l <= top; ++l) {
        out.per_level[l] = {l, weights.alphas[l], level_values[l]};
        out.value += weights.alphas[l] * level_values[l];
    }
    return out;
}

}  // namespace bippr
