#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "bippr/random.hpp"

namespace bippr {

using NodeId = std::uint32_t;

/// Immutable undirected weighted graph in compressed adjacency form.
///
/// Every undirected edge {u, v} with u != v is stored as two adjacency
/// entries with identical weight; a self-loop {u, u} is stored once and
/// contributes its weight once to d_u. Duplicate input edges are merged by
/// summing weights. Isolated nodes may be stored, but any operation that
/// walks from or pushes through one rejects it.
class Graph {
public:
    struct Edge {
        NodeId u;
        NodeId v;
        double weight = 1.0;
    };

    Graph() = default;

    /// Builds a graph over nodes [0, num_nodes). When `labels` is empty the
    /// decimal node index is used as the label.
    static Graph from_edges(std::size_t num_nodes, std::span<const Edge> edges,
                            std::vector<std::string> labels = {});

    std::size_t num_nodes() const noexcept { return degree_.size(); }
    /// Distinct undirected edges, self-loops included, each counted once.
    std::size_t num_edges() const noexcept { return num_edges_; }
    /// Sum of merged edge weights, each undirected edge counted once.
    double total_weight() const noexcept { return total_weight_; }
    /// Sum of all weighted degrees.
    double degree_sum() const noexcept { return degree_sum_; }
    /// True when every merged edge weight is exactly 1.
    bool unit_weights() const noexcept { return unit_weights_; }

    /// Weighted degree d_v; throws DomainError when v is out of range.
    double degree(NodeId v) const;
    /// Unchecked degree for hot loops.
    double degree_unchecked(NodeId v) const noexcept { return degree_[v]; }

    std::span<const NodeId> neighbors(NodeId v) const noexcept {
        return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
    }
    std::span<const double> weights(NodeId v) const noexcept {
        return {weights_.data() + offsets_[v], weights_.data() + offsets_[v + 1]};
    }

    bool contains(NodeId v) const noexcept { return v < num_nodes(); }
    bool is_isolated(NodeId v) const noexcept { return offsets_[v] == offsets_[v + 1]; }

    /// Throws DomainError if v is out of range or isolated. `role` names the
    /// argument in the message ("source", "target", ...).
    void require_walkable(NodeId v, std::string_view role) const;

    /// One random-walk transition: neighbor u with probability w_vu / d_v.
    /// Throws DomainError for an isolated or out-of-range v.
    NodeId step(NodeId v, RandomStream& rng) const;
    /// As step() without the argument check.
    NodeId step_unchecked(NodeId v, RandomStream& rng) const noexcept;

    const std::string& label(NodeId v) const { return labels_.at(v); }
    std::optional<NodeId> find(std::string_view label) const;

private:
    std::vector<std::size_t> offsets_{0};
    std::vector<NodeId> targets_;
    std::vector<double> weights_;
    std::vector<double> cumulative_;  // running weight sum within each node's range
    std::vector<double> degree_;
    std::vector<std::string> labels_;
    std::unordered_map<std::string, NodeId> index_;
    std::size_t num_edges_ = 0;
    double total_weight_ = 0.0;
    double degree_sum_ = 0.0;
    bool unit_weights_ = true;
};

/// Reads an edge list: one "u v" or "u v w" per line, '#' comments, blank
/// lines ignored. A lone "u" declares a node without adding an edge. Labels are arbitrary tokens mapped to dense ids in order of
/// first appearance. When `weighted` is false only two-token lines are
/// accepted. Throws ParseError with the offending line number.
Graph load_edge_list(std::istream& in, bool weighted);

/// File variant; throws IoError when the file cannot be opened.
Graph load_edge_list(const std::filesystem::path& path, bool weighted);

/// Result of an adjacency consistency check.
struct GraphReport {
    std::size_t num_nodes = 0;
    std::size_t num_edges = 0;
    std::size_t num_isolated = 0;
    std::size_t num_self_loops = 0;
    double total_weight = 0.0;
    double degree_sum = 0.0;
    bool symmetric = false;
    bool positive_weights = false;
    bool degrees_consistent = false;  // d_v == sum of incident weights
    bool degree_sum_consistent = false;  // sum d_v == 2W - W_loops (1e-9 relative)

    bool ok() const noexcept {
        return symmetric && positive_weights && degrees_consistent && degree_sum_consistent;
    }
};

/// Recomputes every structural invariant from the stored adjacency.
GraphReport validate(const Graph& g);

}  // namespace bippr
