#include <bippr/errors.hpp>
#include <bippr/exact.hpp>
#include <bippr/generators.hpp>
#include <bippr/push.hpp>

#include <gtest/gtest.h>

#include <cmath>

#include "support/oracles.hpp"

namespace bippr {
namespace {

using testing::id;

/// max_t |pi_sigma[t] - p[t] - sum_v r[v] pi_v[t]| against the direct-solve matrix.
double invariant_gap(const PushResult& state, const std::vector<double>& target,
                     const std::vector<std::vector<double>>& ppr) {
    double worst = 0.0;
    for (std::size_t t = 0; t < target.size(); ++t) {
        double rhs = state.estimate.get(static_cast<NodeId>(t));
        for (const auto& [v, r] : state.residual) {
            rhs += r * ppr[v][t];
        }
        worst = std::max(worst, std::abs(target[t] - rhs));
    }
    return worst;
}

void expect_terminal_conditions(const Graph& g, const PushResult& res) {
    for (const auto& [v, r] : res.residual) {
        EXPECT_GE(r, 0.0);
        EXPECT_LE(r / g.degree(v), res.r_max);
    }
    EXPECT_LE(res.degree_work, res.work_bound());
    EXPECT_NEAR(res.estimate.sum() + res.residual.sum(), 1.0, 1e-12);
}

TEST(ApproximatePageRank, K2SinglePush) {
    const Graph g = testing::k2();
    const PushResult res = approximate_pagerank(g, 0.2, id(g, "a"), 0.9);
    EXPECT_EQ(res.push_count, 1u);
    EXPECT_EQ(res.estimate.size(), 1u);
    EXPECT_DOUBLE_EQ(res.estimate.get(id(g, "a")), 0.2);
    EXPECT_EQ(res.residual.size(), 1u);
    EXPECT_DOUBLE_EQ(res.residual.get(id(g, "b")), 0.8);
    EXPECT_EQ(res.degree_work, 1.0);
}

TEST(ApproximatePageRank, AlreadyBelowThreshold) {
    const Graph g = testing::graph_from_text("s a\ns b\ns c\ns d\ns e\n");
    const PushResult res = approximate_pagerank(g, 0.2, id(g, "s"), 0.5);
    EXPECT_EQ(res.push_count, 0u);
    EXPECT_TRUE(res.estimate.empty());
    EXPECT_EQ(res.residual.size(), 1u);
    EXPECT_EQ(res.residual.get(id(g, "s")), 1.0);
}

TEST(ApproximatePageRank, TieDoesNotPush) {
    const Graph g = testing::graph_from_text("s a\ns b\n");
    // Initial ratio 1/2 equals r_max exactly.
    const PushResult res = approximate_pagerank(g, 0.2, id(g, "s"), 0.5);
    EXPECT_EQ(res.push_count, 0u);
}

TEST(ApproximatePageRank, K2SmallThresholdMatchesOracle) {
    const Graph g = testing::k2();
    const auto ppr = testing::ppr_matrix(g, 0.2);
    const PushResult res = approximate_pagerank(g, 0.2, 0, 0.04);
    expect_terminal_conditions(g, res);
    EXPECT_LE(res.residual.max_value(), 0.04);
    EXPECT_LE(invariant_gap(res, ppr[0], ppr), 1e-12);
}

TEST(ApproximatePageRank, InvariantAfterEveryPush) {
    RandomStream rng(1, 0);
    for (int trial = 0; trial < 4; ++trial) {
        Graph g = trial % 2 == 0 ? gen::erdos_renyi_connected(40, 0.12, rng)
                                 : gen::barabasi_albert(45, 2, rng);
        if (trial == 3) {
            g = gen::randomly_weighted(g, 0.3, 3.0, rng);
        }
        for (const double alpha : {0.1, 0.3}) {
            const auto ppr = testing::ppr_matrix(g, alpha);
            const NodeId s = static_cast<NodeId>(rng.below(g.num_nodes()));
            std::size_t observed = 0;
            double worst = 0.0;
            const PushResult res = approximate_pagerank(g, alpha, s, 0.01, [&](const PushResult& state, NodeId) {
                ++observed;
                worst = std::max(worst, invariant_gap(state, ppr[s], ppr));
            });
            EXPECT_EQ(observed, res.push_count);
            EXPECT_GT(res.push_count, 0u);
            EXPECT_LE(worst, 1e-10);
            expect_terminal_conditions(g, res);
        }
    }
}

TEST(ApproximatePageRank, SelfLoopRoutesMassBack) {
    const Graph g = testing::graph_from_text("a a\na b\n");
    const auto ppr = testing::ppr_matrix(g, 0.2);
    double worst = 0.0;
    const PushResult res = approximate_pagerank(g, 0.2, id(g, "a"), 0.01, [&](const PushResult& state, NodeId) {
        worst = std::max(worst, invariant_gap(state, ppr[id(g, "a")], ppr));
    });
    EXPECT_LE(worst, 1e-12);
    expect_terminal_conditions(g, res);

    // First push: a holds 1, loop and edge each receive 0.8 / 2.
    const PushResult first = approximate_pagerank(g, 0.2, id(g, "a"), 0.45);
    EXPECT_DOUBLE_EQ(first.estimate.get(id(g, "a")), 0.2);
    EXPECT_DOUBLE_EQ(first.residual.get(id(g, "a")), 0.4);
    EXPECT_DOUBLE_EQ(first.residual.get(id(g, "b")), 0.4);
}

TEST(ApproximatePageRank, WorkBoundAcrossThresholds) {
    RandomStream rng(2, 0);
    const Graph g = gen::barabasi_albert(300, 3, rng);
    for (const double alpha : {0.05, 0.2, 0.6}) {
        for (const double r_max : {0.3, 0.03, 1e-3, 1e-4}) {
            const PushResult res = approximate_pagerank(g, alpha, 0, r_max);
            EXPECT_LE(res.degree_work, 1.0 / (alpha * r_max));
            expect_terminal_conditions(g, res);
        }
    }
}

TEST(ApproximatePageRank, Deterministic) {
    RandomStream rng(3, 0);
    const Graph g = gen::erdos_renyi_connected(150, 0.05, rng);
    const PushResult a = approximate_pagerank(g, 0.15, 7, 1e-4);
    const PushResult b = approximate_pagerank(g, 0.15, 7, 1e-4);
    EXPECT_EQ(a.estimate.sorted_entries(), b.estimate.sorted_entries());
    EXPECT_EQ(a.residual.sorted_entries(), b.residual.sorted_entries());
    EXPECT_EQ(a.push_count, b.push_count);
    EXPECT_EQ(a.degree_work, b.degree_work);
}

TEST(ApproximatePageRank, RejectsBadArguments) {
    const Graph g = Graph::from_edges(3, std::vector<Graph::Edge>{{0, 1, 1.0}});
    EXPECT_THROW(approximate_pagerank(g, 0.2, 2, 0.1), DomainError);
    EXPECT_THROW(approximate_pagerank(g, 0.2, 0, 0.0), DomainError);
    EXPECT_THROW(approximate_pagerank(g, 0.2, 0, -1.0), DomainError);
    EXPECT_THROW(approximate_pagerank(g, 1.0, 0, 0.1), DomainError);
}

TEST(PushFromDistribution, PointMassMatchesSingleSource) {
    RandomStream rng(4, 0);
    const Graph g = gen::erdos_renyi_connected(80, 0.08, rng);
    SparseVector sigma;
    sigma.set(5, 1.0);
    const PushResult a = push_from_distribution(g, 0.2, sigma, 1e-3);
    const PushResult b = approximate_pagerank(g, 0.2, 5, 1e-3);
    EXPECT_EQ(a.estimate.sorted_entries(), b.estimate.sorted_entries());
    EXPECT_EQ(a.residual.sorted_entries(), b.residual.sorted_entries());
}

TEST(PushFromDistribution, UniformOnK2BelowThreshold) {
    const Graph g = testing::k2();
    SparseVector sigma;
    sigma.set(0, 0.5);
    sigma.set(1, 0.5);
    const PushResult res = push_from_distribution(g, 0.2, sigma, 0.9);
    EXPECT_EQ(res.push_count, 0u);
    EXPECT_TRUE(res.estimate.empty());
    EXPECT_EQ(res.residual.get(0), 0.5);
    EXPECT_EQ(res.residual.get(1), 0.5);
}

TEST(PushFromDistribution, InvariantAgainstDistributionOracle) {
    RandomStream rng(5, 0);
    const Graph g = gen::barabasi_albert(30, 2, rng);
    std::vector<double> dense(g.num_nodes(), 0.0);
    SparseVector sigma;
    const NodeId support[] = {0, 4, 9, 17};
    const double mass[] = {0.1, 0.2, 0.3, 0.4};
    for (int i = 0; i < 4; ++i) {
        sigma.set(support[i], mass[i]);
        dense[support[i]] = mass[i];
    }
    const auto target = testing::solve_ppr(g, 0.2, dense);
    const auto ppr = testing::ppr_matrix(g, 0.2);
    double worst = 0.0;
    const PushResult res = push_from_distribution(g, 0.2, sigma, 0.005, [&](const PushResult& state, NodeId) {
        worst = std::max(worst, invariant_gap(state, target, ppr));
    });
    EXPECT_GT(res.push_count, 0u);
    EXPECT_LE(worst, 1e-10);
    expect_terminal_conditions(g, res);
}

TEST(PushFromDistribution, UniformOnTriangleIsSymmetric) {
    const Graph g = testing::k3();
    SparseVector sigma;
    for (NodeId v = 0; v < 3; ++v) {
        sigma.set(v, 1.0 / 3.0);
    }
    // Ratios 1/6 <= r_max: nothing moves and the state stays uniform.
    const PushResult idle = push_from_distribution(g, 0.2, sigma, 0.2);
    EXPECT_EQ(idle.push_count, 0u);
    for (NodeId v = 0; v < 3; ++v) {
        EXPECT_EQ(idle.residual.get(v), 1.0 / 3.0);
    }
    // Past the threshold FIFO order breaks exact symmetry, but every
    // estimate converges on the uniform fixed point.
    const auto ppr = testing::ppr_matrix(g, 0.2);
    const std::vector<double> uniform(3, 1.0 / 3.0);
    const PushResult res = push_from_distribution(g, 0.2, sigma, 1e-3);
    EXPECT_LE(invariant_gap(res, uniform, ppr), 1e-12);
    for (NodeId v = 0; v < 3; ++v) {
        EXPECT_LE(res.estimate.get(v), 1.0 / 3.0);
        EXPECT_LE(1.0 / 3.0 - res.estimate.get(v), res.residual.sum());
    }
}

TEST(PushFromDistribution, RejectsInvalidSigma) {
    const Graph g = Graph::from_edges(3, std::vector<Graph::Edge>{{0, 1, 1.0}});
    SparseVector short_mass;
    short_mass.set(0, 0.4);
    EXPECT_THROW(push_from_distribution(g, 0.2, short_mass, 0.1), DomainError);
    SparseVector negative;
    negative.set(0, 1.5);
    negative.set(1, -0.5);
    EXPECT_THROW(push_from_distribution(g, 0.2, negative, 0.1), DomainError);
    SparseVector isolated;
    isolated.set(2, 1.0);
    EXPECT_THROW(push_from_distribution(g, 0.2, isolated, 0.1), DomainError);
    EXPECT_THROW(push_from_distribution(g, 0.2, SparseVector{}, 0.1), DomainError);
}

}  // namespace
}  // namespace bippr
