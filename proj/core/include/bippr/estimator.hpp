#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "bippr/graph.hpp"
#include "bippr/push.hpp"
#include "bippr/random.hpp"

namespace bippr {

/// 3 ln(2 / p_fail): the Chernoff constant that makes each failure case
/// at most p_fail. Requires 0 < p_fail < 1.
double chernoff_c(double p_fail);

/// Residual threshold balancing push work against walk work:
/// eps / sqrt(ln(1/p_fail)) * sqrt(delta / d_t), clamped to at most 1.
double choose_r_max(double eps, double delta, double d_t, double p_fail);

/// ceil(c d_t r_max / (eps^2 delta)), never less than 1.
std::uint64_t num_walks(double c, double d_t, double r_max, double eps, double delta);

/// Significance threshold d_t / m (weighted graphs: d_t / total edge weight).
double significance_delta(const Graph& g, NodeId t);

/// Parameters of one bidirectional query. `make` fills c, r_max and the
/// walk count from the accuracy targets and the target degree.
struct BipprParams {
    double alpha = 0.2;
    double delta = 0.0;
    double eps = 0.1;
    double p_fail = 0.01;
    double c = 0.0;
    double r_max = 0.0;
    std::uint64_t walks = 0;

    static BipprParams make(double alpha, double delta, double eps, double p_fail, double d_t,
                            std::optional<double> c_override = std::nullopt,
                            std::optional<double> r_max_override = std::nullopt);

    void validate() const;
};

/// A PPR estimate with its provenance. value == push_term + walk_term.
struct PprEstimate {
    double value = 0.0;
    double push_term = 0.0;
    double walk_term = 0.0;
    BipprParams params;
    std::size_t push_count = 0;
    double push_work = 0.0;
    std::uint64_t walk_steps = 0;
    std::uint64_t walks = 0;
    double d_t = 0.0;
    /// Largest single walk sample; bounded by d_t r_max for the bidirectional estimator.
    double max_sample = 0.0;
};

/// Forward push from one source, kept for any number of target queries.
/// The push state is immutable once built and may be queried concurrently.
class PreparedSource {
public:
    PreparedSource(const Graph& g, NodeId s, double alpha, double r_max);

    /// Samples params.walks geometric walks from t; walk i draws from
    /// rng.split(i). params.alpha and params.r_max must match the push.
    PprEstimate query(NodeId t, const BipprParams& params, const RandomStream& rng,
                      unsigned threads = 1) const;

    NodeId source() const noexcept { return source_; }
    const PushResult& push() const noexcept { return push_; }

private:
    const Graph* graph_;
    NodeId source_;
    PushResult push_;
};

/// Bidirectional estimate of pi_s[t]: forward push from s, then reverse
/// geometric walks from t averaging r_s[V] d_t / d_V over terminals V.
/// Unbiased; within max(eps pi, 2e delta) of pi_s[t] with probability at
/// least 1 - p_fail.
PprEstimate estimate_ppr(const Graph& g, NodeId s, NodeId t, const BipprParams& params,
                         const RandomStream& rng, unsigned threads = 1);

}  // namespace bippr
