#include <bippr/errors.hpp>
#include <bippr/generators.hpp>
#include <bippr/graph.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "support/oracles.hpp"

namespace bippr {
namespace {

using testing::graph_from_text;
using testing::id;

TEST(LoadEdgeList, PathGraph) {
    const Graph g = graph_from_text("a b\nb c");
    EXPECT_EQ(g.num_nodes(), 3u);
    EXPECT_EQ(g.num_edges(), 2u);
    EXPECT_EQ(g.degree(0), 1.0);
    EXPECT_EQ(g.degree(1), 2.0);
    EXPECT_EQ(g.degree(2), 1.0);
    EXPECT_EQ(g.label(0), "a");
    EXPECT_EQ(g.label(2), "c");
    EXPECT_TRUE(g.unit_weights());
}

TEST(LoadEdgeList, DuplicateEdgesMergeBySum) {
    const Graph g = graph_from_text("a b 2.0\na b 3.0");
    EXPECT_EQ(g.num_nodes(), 2u);
    EXPECT_EQ(g.num_edges(), 1u);
    EXPECT_EQ(g.degree(id(g, "a")), 5.0);
    EXPECT_EQ(g.neighbors(id(g, "a")).size(), 1u);
}

TEST(LoadEdgeList, ReversedDuplicateMerges) {
    const Graph g = graph_from_text("a b\nb a");
    EXPECT_EQ(g.num_edges(), 1u);
    EXPECT_EQ(g.degree(0), 2.0);
    EXPECT_FALSE(g.unit_weights());
}

TEST(LoadEdgeList, SelfLoopCountsOnce) {
    const Graph g = graph_from_text("a a");
    EXPECT_EQ(g.num_nodes(), 1u);
    EXPECT_EQ(g.num_edges(), 1u);
    EXPECT_EQ(g.degree(0), 1.0);
    EXPECT_TRUE(validate(g).ok());
}

TEST(LoadEdgeList, CommentsAndBlankLines) {
    const Graph g = graph_from_text("# header\n\n  a   b  # trailing\n\t\nb c 0.5\n");
    EXPECT_EQ(g.num_nodes(), 3u);
    EXPECT_EQ(g.degree(id(g, "b")), 1.5);
}

TEST(LoadEdgeList, LoneTokenDeclaresIsolatedNode) {
    const Graph g = graph_from_text("a b\nz\nb\n");
    EXPECT_EQ(g.num_nodes(), 3u);
    EXPECT_EQ(g.num_edges(), 1u);
    EXPECT_TRUE(g.is_isolated(id(g, "z")));
    EXPECT_FALSE(g.is_isolated(id(g, "b")));
}

TEST(LoadEdgeList, ErrorsCarryLineNumber) {
    auto line_of = [](const std::string& text, bool weighted) -> std::size_t {
        try {
            graph_from_text(text, weighted);
        } catch (const ParseError& e) {
            return e.line();
        }
        return 0;
    };
    EXPECT_EQ(line_of("a b\nc d 1 2\n", true), 2u);
    EXPECT_EQ(line_of("a b\n# x\na b c d\n", true), 3u);
    EXPECT_EQ(line_of("a b x1\n", true), 1u);
    EXPECT_EQ(line_of("a b 0\n", true), 1u);
    EXPECT_EQ(line_of("a b -1\n", true), 1u);
    EXPECT_EQ(line_of("a b\nb c 2\n", false), 2u);
    EXPECT_EQ(line_of("a b inf\n", true), 1u);
}

TEST(LoadEdgeList, MissingFileIsIoError) {
    EXPECT_THROW(load_edge_list(std::filesystem::path("/nonexistent/graph.txt"), true), IoError);
}

TEST(Degree, NamedGraphs) {
    const Graph s3 = testing::s3();
    EXPECT_EQ(s3.degree(id(s3, "c")), 3.0);
    const Graph k2 = testing::k2();
    EXPECT_EQ(k2.degree(0), 1.0);
    EXPECT_EQ(k2.degree(1), 1.0);
    const Graph w = graph_from_text("a b 2.5");
    EXPECT_EQ(w.degree(id(w, "a")), 2.5);
}

TEST(Degree, OutOfRangeIsDomainError) {
    const Graph g = testing::k2();
    EXPECT_THROW(g.degree(2), DomainError);
}

TEST(Step, SoleNeighbor) {
    const Graph g = testing::k2();
    RandomStream rng(1, 0);
    for (int i = 0; i < 100; ++i) {
        EXPECT_EQ(g.step(0, rng), 1u);
    }
}

TEST(Step, SelfLoopOnlyNode) {
    const Graph g = graph_from_text("a a\nb c");
    RandomStream rng(2, 0);
    EXPECT_EQ(g.step(id(g, "a"), rng), id(g, "a"));
}

TEST(Step, IsolatedNodeRejected) {
    const Graph g = Graph::from_edges(3, std::vector<Graph::Edge>{{0, 1, 1.0}});
    RandomStream rng(3, 0);
    EXPECT_TRUE(g.is_isolated(2));
    EXPECT_THROW(g.step(2, rng), DomainError);
    EXPECT_THROW(g.step(7, rng), DomainError);
}

// Per-neighbor frequency within 4 binomial standard deviations of w_vu / d_v.
void expect_step_law(const Graph& g, NodeId v, std::uint64_t seed) {
    constexpr int kSamples = 100000;
    RandomStream rng(seed, 0);
    std::vector<int> hits(g.num_nodes(), 0);
    for (int i = 0; i < kSamples; ++i) {
        ++hits[g.step(v, rng)];
    }
    const auto nbrs = g.neighbors(v);
    const auto ws = g.weights(v);
    for (std::size_t k = 0; k < nbrs.size(); ++k) {
        const double p = ws[k] / g.degree(v);
        const double sd = std::sqrt(kSamples * p * (1 - p));
        EXPECT_NEAR(hits[nbrs[k]], kSamples * p, 4 * sd) << "neighbor " << nbrs[k];
    }
}

TEST(Step, UniformOnTriangle) {
    const Graph g = testing::k3();
    RandomStream rng(4, 0);
    int to_b = 0;
    constexpr int kSamples = 100000;
    for (int i = 0; i < kSamples; ++i) {
        to_b += g.step(id(g, "a"), rng) == id(g, "b") ? 1 : 0;
    }
    EXPECT_NEAR(to_b / double(kSamples), 0.5, 0.01);
    expect_step_law(g, id(g, "a"), 5);
}

TEST(Step, WeightedLaw) {
    const Graph g = graph_from_text("a b 1\na c 2\na d 7\na a 0.5\n");
    expect_step_law(g, id(g, "a"), 6);
}

TEST(Validate, RandomGraphsSatisfyInvariants) {
    RandomStream rng(7, 0);
    for (int trial = 0; trial < 10; ++trial) {
        const Graph base = gen::erdos_renyi_connected(60, 0.1, rng);
        const Graph g = gen::randomly_weighted(base, 0.1, 3.0, rng);
        const GraphReport report = validate(g);
        EXPECT_TRUE(report.ok());
        EXPECT_EQ(report.num_isolated, 0u);
        EXPECT_NEAR(report.degree_sum, 2.0 * g.total_weight(), 1e-9 * report.degree_sum);
        EXPECT_EQ(validate(base).degree_sum, 2.0 * static_cast<double>(base.num_edges()));
    }
}

TEST(Validate, IsolatedNodesCounted) {
    const Graph g = Graph::from_edges(4, std::vector<Graph::Edge>{{0, 1, 1.0}});
    const GraphReport report = validate(g);
    EXPECT_TRUE(report.ok());
    EXPECT_EQ(report.num_isolated, 2u);
}

TEST(Generators, Connected) {
    RandomStream rng(8, 0);
    const Graph er = gen::erdos_renyi_connected(200, 0.01, rng);
    const Graph ba = gen::barabasi_albert(200, 3, rng);
    for (const Graph* g : {&er, &ba}) {
        // Breadth-first reachability from node 0.
        std::vector<bool> seen(g->num_nodes(), false);
        std::vector<NodeId> stack{0};
        seen[0] = true;
        std::size_t count = 1;
        while (!stack.empty()) {
            const NodeId u = stack.back();
            stack.pop_back();
            for (const NodeId v : g->neighbors(u)) {
                if (!seen[v]) {
                    seen[v] = true;
                    ++count;
                    stack.push_back(v);
                }
            }
        }
        EXPECT_EQ(count, g->num_nodes());
    }
    EXPECT_EQ(ba.num_edges(), 6u + 3u * (200u - 4u));
}

}  // namespace
}  // namespace bippr
