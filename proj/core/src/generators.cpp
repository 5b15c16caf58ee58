#include "bippr/generators.hpp"

#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "bippr/errors.hpp"

namespace bippr::gen {

Graph complete(std::size_t n) {
    std::vector<Graph::Edge> edges;
    for (NodeId u = 0; u < n; ++u) {
        for (NodeId v = u + 1; v < n; ++v) {
            edges.push_back({u, v, 1.0});
        }
    }
    return Graph::from_edges(n, edges);
}

Graph star(std::size_t leaves) {
    std::vector<Graph::Edge> edges;
    std::vector<std::string> labels{"c"};
    for (NodeId leaf = 1; leaf <= leaves; ++leaf) {
        edges.push_back({0, leaf, 1.0});
        labels.push_back("l" + std::to_string(leaf));
    }
    return Graph::from_edges(leaves + 1, edges, std::move(labels));
}

Graph path(std::size_t n) {
    std::vector<Graph::Edge> edges;
    for (NodeId u = 0; u + 1 < n; ++u) {
        edges.push_back({u, u + 1, 1.0});
    }
    return Graph::from_edges(n, edges);
}

namespace {

NodeId find_root(std::vector<NodeId>& parent, NodeId x) {
    while (parent[x] != x) {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    return x;
}

}  // namespace

Graph erdos_renyi_connected(std::size_t n, double p, RandomStream& rng) {
    if (n == 0 || !(p >= 0.0 && p <= 1.0)) {
        throw DomainError("erdos_renyi_connected needs n > 0 and p in [0, 1]");
    }
    std::vector<Graph::Edge> edges;
    std::vector<NodeId> parent(n);
    std::iota(parent.begin(), parent.end(), NodeId{0});
    for (NodeId u = 0; u < n; ++u) {
        for (NodeId v = u + 1; v < n; ++v) {
            if (rng.uniform() < p) {
                edges.push_back({u, v, 1.0});
                parent[find_root(parent, u)] = find_root(parent, v);
            }
        }
    }
    for (NodeId v = 1; v < n; ++v) {
        if (find_root(parent, v) != find_root(parent, 0)) {
            const auto u = static_cast<NodeId>(rng.below(v));
            // u < v and v is the first node of its component seen so far,
            // so u lies in an already-joined component.
            edges.push_back({u, v, 1.0});
            parent[find_root(parent, v)] = find_root(parent, u);
        }
    }
    if (n == 1) {
        edges.push_back({0, 0, 1.0});
    }
    return Graph::from_edges(n, edges);
}

Graph barabasi_albert(std::size_t n, std::size_t attach, RandomStream& rng) {
    if (attach == 0 || n <= attach) {
        throw DomainError("barabasi_albert needs 0 < attach < n");
    }
    std::vector<Graph::Edge> edges;
    std::vector<NodeId> endpoints;  // each node repeated once per incident edge
    for (NodeId u = 0; u <= attach; ++u) {
        for (NodeId v = u + 1; v <= attach; ++v) {
            edges.push_back({u, v, 1.0});
            endpoints.push_back(u);
            endpoints.push_back(v);
        }
    }
    for (auto v = static_cast<NodeId>(attach + 1); v < n; ++v) {
        std::set<NodeId> chosen;
        while (chosen.size() < attach) {
            chosen.insert(endpoints[rng.below(endpoints.size())]);
        }
        for (const NodeId u : chosen) {
            edges.push_back({u, v, 1.0});
            endpoints.push_back(u);
            endpoints.push_back(v);
        }
    }
    return Graph::from_edges(n, edges);
}

Graph randomly_weighted(const Graph& g, double lo, double hi, RandomStream& rng) {
    if (!(lo > 0.0 && hi > lo)) {
        throw DomainError("weight range must satisfy 0 < lo < hi");
    }
    std::vector<Graph::Edge> edges;
    for (NodeId u = 0; u < g.num_nodes(); ++u) {
        for (const NodeId v : g.neighbors(u)) {
            if (u <= v) {
                edges.push_back({u, v, lo + (hi - lo) * rng.uniform()});
            }
        }
    }
    std::vector<std::string> labels;
    for (NodeId u = 0; u < g.num_nodes(); ++u) {
        labels.push_back(g.label(u));
    }
    return Graph::from_edges(g.num_nodes(), edges, std::move(labels));
}

}  // namespace bippr::gen
