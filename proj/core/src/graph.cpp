#include "bippr/graph.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <tuple>

#include "bippr/errors.hpp"

namespace bippr {

namespace detail {

void require_teleport(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw DomainError("teleport probability alpha must lie in (0, 1)");
    }
}

}  // namespace detail

Graph Graph::from_edges(std::size_t num_nodes, std::span<const Edge> edges,
                        std::vector<std::string> labels) {
    if (num_nodes >= std::numeric_limits<NodeId>::max()) {
        throw DomainError("too many nodes");
    }
    if (!labels.empty() && labels.size() != num_nodes) {
        throw DomainError("label table size does not match node count");
    }

    // Merge duplicates on the canonical (min, max) pair; std::map keeps the
    // adjacency order deterministic.
    std::map<std::pair<NodeId, NodeId>, double> merged;
    for (const auto& e : edges) {
        if (e.u >= num_nodes || e.v >= num_nodes) {
            throw DomainError("edge endpoint out of range");
        }
        if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
            throw DomainError("edge weights must be positive and finite");
        }
        merged[std::minmax(e.u, e.v)] += e.weight;
    }

    Graph g;
    g.degree_.assign(num_nodes, 0.0);
    g.offsets_.assign(num_nodes + 1, 0);
    for (const auto& [key, w] : merged) {
        const auto [u, v] = key;
        ++g.offsets_[u + 1];
        if (u != v) {
            ++g.offsets_[v + 1];
        }
        g.total_weight_ += w;
        g.unit_weights_ = g.unit_weights_ && w == 1.0;
    }
    g.num_edges_ = merged.size();
    for (std::size_t i = 0; i < num_nodes; ++i) {
        g.offsets_[i + 1] += g.offsets_[i];
    }

    const std::size_t entries = g.offsets_.back();
    g.targets_.resize(entries);
    g.weights_.resize(entries);
    std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
    // Ascending (u, v) iteration fills each row in ascending neighbor order:
    // row x receives its smaller neighbors (as v) before its larger ones (as u).
    for (const auto& [key, w] : merged) {
        const auto [u, v] = key;
        g.targets_[cursor[u]] = v;
        g.weights_[cursor[u]++] = w;
        if (u != v) {
            g.targets_[cursor[v]] = u;
            g.weights_[cursor[v]++] = w;
        }
    }
    g.cumulative_.resize(entries);
    for (std::size_t i = 0; i < num_nodes; ++i) {
        double running = 0.0;
        for (std::size_t k = g.offsets_[i]; k < g.offsets_[i + 1]; ++k) {
            running += g.weights_[k];
            g.cumulative_[k] = running;
        }
        g.degree_[i] = running;
        g.degree_sum_ += running;
    }

    if (labels.empty()) {
        labels.reserve(num_nodes);
        for (std::size_t i = 0; i < num_nodes; ++i) {
            labels.push_back(std::to_string(i));
        }
    }
    g.labels_ = std::move(labels);
    g.index_.reserve(num_nodes);
    for (std::size_t i = 0; i < num_nodes; ++i) {
        if (!g.index_.emplace(g.labels_[i], static_cast<NodeId>(i)).second) {
            throw DomainError("duplicate node label '" + g.labels_[i] + "'");
        }
    }
    return g;
}

double Graph::degree(NodeId v) const {
    if (!contains(v)) {
        throw DomainError("node " + std::to_string(v) + " out of range");
    }
    return degree_[v];
}

void Graph::require_walkable(NodeId v, std::string_view role) const {
    if (!contains(v)) {
        throw DomainError(std::string(role) + " node " + std::to_string(v) + " out of range");
    }
    if (is_isolated(v)) {
        throw DomainError(std::string(role) + " node '" + labels_[v] + "' is isolated");
    }
}

NodeId Graph::step(NodeId v, RandomStream& rng) const {
    require_walkable(v, "walk");
    return step_unchecked(v, rng);
}

NodeId Graph::step_unchecked(NodeId v, RandomStream& rng) const noexcept {
    const std::size_t lo = offsets_[v];
    const std::size_t hi = offsets_[v + 1];
    if (unit_weights_) {
        return targets_[lo + rng.below(hi - lo)];
    }
    const double u = rng.uniform() * degree_[v];
    const auto first = cumulative_.begin() + static_cast<std::ptrdiff_t>(lo);
    const auto last = cumulative_.begin() + static_cast<std::ptrdiff_t>(hi);
    auto it = std::upper_bound(first, last, u);
    if (it == last) {
        --it;  // u rounded up to d_v
    }
    return targets_[static_cast<std::size_t>(it - cumulative_.begin())];
}

std::optional<NodeId> Graph::find(std::string_view label) const {
    const auto it = index_.find(std::string(label));
    if (it == index_.end()) {
        return std::nullopt;
    }
    return it->second;
}

namespace {

std::vector<std::string_view> tokenize(std::string_view line) {
    std::vector<std::string_view> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
        }
        const std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
        }
        if (i > start) {
            tokens.push_back(line.substr(start, i - start));
        }
    }
    return tokens;
}

}  // namespace

Graph load_edge_list(std::istream& in, bool weighted) {
    std::vector<std::string> labels;
    std::unordered_map<std::string, NodeId> index;
    std::vector<Graph::Edge> edges;

    auto intern = [&](std::string_view token) {
        auto [it, inserted] = index.emplace(std::string(token), static_cast<NodeId>(labels.size()));
        if (inserted) {
            labels.emplace_back(token);
        }
        return it->second;
    };

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view view(line);
        if (const auto hash = view.find('#'); hash != std::string_view::npos) {
            view = view.substr(0, hash);
        }
        const auto tokens = tokenize(view);
        if (tokens.empty()) {
            continue;
        }
        const std::size_t max_tokens = weighted ? 3 : 2;
        if (tokens.size() > max_tokens) {
            throw ParseError(line_no, "expected at most " + std::to_string(max_tokens) + " tokens, found " +
                                          std::to_string(tokens.size()));
        }
        if (tokens.size() == 1) {
            intern(tokens[0]);
            continue;
        }
        double w = 1.0;
        if (tokens.size() == 3) {
            const auto tok = tokens[2];
            const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), w);
            if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
                throw ParseError(line_no, "weight '" + std::string(tok) + "' is not a number");
            }
            if (!(w > 0.0) || !std::isfinite(w)) {
                throw ParseError(line_no, "weight must be positive and finite");
            }
        }
        const NodeId u = intern(tokens[0]);
        const NodeId v = intern(tokens[1]);
        edges.push_back({u, v, w});
    }
    if (in.bad()) {
        throw IoError("error while reading edge list");
    }
    const std::size_t n = labels.size();
    return Graph::from_edges(n, edges, std::move(labels));
}

Graph load_edge_list(const std::filesystem::path& path, bool weighted) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open graph file '" + path.string() + "'");
    }
    return load_edge_list(in, weighted);
}

GraphReport validate(const Graph& g) {
    GraphReport report;
    report.num_nodes = g.num_nodes();
    report.num_edges = g.num_edges();
    report.total_weight = g.total_weight();
    report.degree_sum = g.degree_sum();
    report.symmetric = true;
    report.positive_weights = true;
    report.degrees_consistent = true;

    // Multiset of (u, v, w) out of every u must equal the multiset into u.
    std::vector<std::tuple<NodeId, NodeId, double>> forward;
    std::vector<std::tuple<NodeId, NodeId, double>> backward;
    double loop_weight = 0.0;
    for (NodeId u = 0; u < g.num_nodes(); ++u) {
        const auto nbrs = g.neighbors(u);
        const auto ws = g.weights(u);
        if (nbrs.empty()) {
            ++report.num_isolated;
        }
        double incident = 0.0;
        for (std::size_t k = 0; k < nbrs.size(); ++k) {
            incident += ws[k];
            if (!(ws[k] > 0.0)) {
                report.positive_weights = false;
            }
            if (nbrs[k] == u) {
                ++report.num_self_loops;
                loop_weight += ws[k];
                continue;
            }
            forward.emplace_back(u, nbrs[k], ws[k]);
            backward.emplace_back(nbrs[k], u, ws[k]);
        }
        if (incident != g.degree_unchecked(u)) {
            report.degrees_consistent = false;
        }
    }
    std::sort(forward.begin(), forward.end());
    std::sort(backward.begin(), backward.end());
    report.symmetric = forward == backward;

    const double expected = 2.0 * g.total_weight() - loop_weight;
    const double scale = std::max(1.0, std::abs(expected));
    report.degree_sum_consistent = std::abs(g.degree_sum() - expected) <= 1e-9 * scale;
    return report;
}

}  // namespace bippr
