#include <bippr/errors.hpp>
#include <bippr/exact.hpp>
#include <bippr/generators.hpp>
#include <bippr/walk.hpp>

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "support/oracles.hpp"

namespace bippr {
namespace {

using testing::id;

TEST(GeometricWalk, TeleportLimitStaysHome) {
    RandomStream rng(1, 0);
    const Graph g = gen::erdos_renyi_connected(20, 0.3, rng);
    int home = 0;
    for (int i = 0; i < 10000; ++i) {
        home += sample_geometric_walk(g, 3, 1.0 - 1e-12, rng).terminal == 3 ? 1 : 0;
    }
    EXPECT_GE(home, 10000 * (1.0 - 1e-9));
}

TEST(GeometricWalk, K2TerminalFrequency) {
    const Graph g = testing::k2();
    RandomStream rng(2, 0);
    int at_a = 0;
    constexpr int kN = 100000;
    for (int i = 0; i < kN; ++i) {
        at_a += sample_geometric_walk(g, 0, 0.2, rng).terminal == 0 ? 1 : 0;
    }
    EXPECT_NEAR(at_a / double(kN), 5.0 / 9.0, 0.005);
}

TEST(GeometricWalk, LengthLaw) {
    RandomStream rng(3, 0);
    const Graph g = gen::barabasi_albert(50, 2, rng);
    constexpr int kN = 100000;
    const double alpha = 0.2;
    std::vector<int> counts(8, 0);
    double total = 0;
    for (int i = 0; i < kN; ++i) {
        const std::size_t len = sample_geometric_walk(g, 0, alpha, rng).length;
        total += static_cast<double>(len);
        if (len < counts.size()) {
            ++counts[len];
        }
    }
    EXPECT_NEAR(total / kN, (1 - alpha) / alpha, 0.05);
    const double sd0 = std::sqrt(kN * alpha * (1 - alpha));
    EXPECT_NEAR(counts[0], kN * alpha, 3 * sd0);
    for (int l = 0; l <= 5; ++l) {
        const double ratio = double(counts[l + 1]) / counts[l];
        EXPECT_NEAR(ratio, 1 - alpha, 0.05 * (1 - alpha)) << "l=" << l;
    }
}

TEST(GeometricWalk, TerminalLawMatchesExactPpr) {
    RandomStream graph_rng(4, 0);
    const std::vector<Graph> graphs = {
        testing::k3(), testing::s3(), testing::path3(),
        gen::erdos_renyi_connected(10, 0.3, graph_rng),
        gen::randomly_weighted(gen::barabasi_albert(9, 2, graph_rng), 0.5, 3.0, graph_rng)};
    constexpr int kN = 100000;
    for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
        const Graph& g = graphs[gi];
        const DenseVector pi = exact_ppr(g, 0.3, 0);
        std::vector<int> hits(g.num_nodes(), 0);
        RandomStream rng(5, gi);
        for (int i = 0; i < kN; ++i) {
            ++hits[sample_geometric_walk(g, 0, 0.3, rng).terminal];
        }
        double chi2 = 0;
        std::size_t cells = 0;
        for (NodeId v = 0; v < g.num_nodes(); ++v) {
            const double expected = kN * pi[v];
            if (expected > 0) {
                chi2 += (hits[v] - expected) * (hits[v] - expected) / expected;
                ++cells;
            }
        }
        // Significance 1e-3: upper normal quantile 3.090.
        EXPECT_LT(chi2, testing::chi_square_critical(cells - 1, 3.090)) << "graph " << gi;
    }
}

TEST(GeometricWalk, IsolatedStartRejected) {
    const Graph g = Graph::from_edges(3, std::vector<Graph::Edge>{{0, 1, 1.0}});
    RandomStream rng(6, 0);
    EXPECT_THROW(sample_geometric_walk(g, 2, 0.2, rng), DomainError);
    EXPECT_THROW(sample_geometric_walk(g, 0, 0.0, rng), DomainError);
}

TEST(FixedWalk, ZeroLength) {
    const Graph g = testing::k3();
    RandomStream rng(7, 0);
    const WalkRecord w = sample_fixed_walk(g, 1, 0, rng);
    EXPECT_EQ(w.positions, std::vector<NodeId>{1});
    EXPECT_EQ(w.length(), 0u);
}

TEST(FixedWalk, K2Alternates) {
    const Graph g = testing::k2();
    RandomStream rng(8, 0);
    const WalkRecord w = sample_fixed_walk(g, 0, 3, rng);
    EXPECT_EQ(w.positions, (std::vector<NodeId>{0, 1, 0, 1}));
}

TEST(FixedWalk, TriangleReturnProbability) {
    const Graph g = testing::k3();
    RandomStream rng(9, 0);
    int home = 0;
    constexpr int kN = 100000;
    for (int i = 0; i < kN; ++i) {
        home += sample_fixed_walk(g, 0, 2, rng).positions[2] == 0 ? 1 : 0;
    }
    EXPECT_NEAR(home / double(kN), exact_mstp(g, 0, 2)[2][0], 0.005);
}

TEST(FixedWalk, ConsecutivePositionsAreEdges) {
    RandomStream rng(10, 0);
    const Graph g = gen::randomly_weighted(gen::erdos_renyi_connected(60, 0.08, rng), 0.1, 2.0, rng);
    for (int i = 0; i < 200; ++i) {
        const WalkRecord w = sample_fixed_walk(g, static_cast<NodeId>(i % 60), 15, rng);
        ASSERT_EQ(w.length(), 15u);
        for (std::size_t k = 0; k + 1 < w.positions.size(); ++k) {
            const auto nbrs = g.neighbors(w.positions[k]);
            EXPECT_TRUE(std::binary_search(nbrs.begin(), nbrs.end(), w.positions[k + 1]));
        }
    }
}

TEST(FixedWalk, ReproducibleForSameStream) {
    RandomStream rng(11, 0);
    const Graph g = gen::barabasi_albert(100, 3, rng);
    RandomStream a(99, 5);
    RandomStream b(99, 5);
    EXPECT_EQ(sample_fixed_walk(g, 4, 50, a).positions, sample_fixed_walk(g, 4, 50, b).positions);
    RandomStream c(99, 5);
    RandomStream d(99, 5);
    const WalkEnd x = sample_geometric_walk(g, 4, 0.1, c);
    const WalkEnd y = sample_geometric_walk(g, 4, 0.1, d);
    EXPECT_EQ(x.terminal, y.terminal);
    EXPECT_EQ(x.length, y.length);
}

}  // namespace
}  // namespace bippr
