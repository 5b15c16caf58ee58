#pragma once

#include <cstdint>

#include "bippr/estimator.hpp"

namespace bippr {

/// Plain Monte-Carlo baseline: fraction of `walks` geometric walks from s
/// that end at t. push_term is 0; walk i draws from rng.split(i).
PprEstimate mc_estimate(const Graph& g, NodeId s, NodeId t, double alpha, std::uint64_t walks,
                        const RandomStream& rng, unsigned threads = 1);

/// ceil(c / (eps^2 delta)) with c = chernoff_c(p_fail): the walk count that
/// gives the Monte-Carlo estimator the same accuracy target as BiPPR.
std::uint64_t mc_num_walks(double delta, double eps, double p_fail);

}  // namespace bippr
