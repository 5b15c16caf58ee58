#pragma once

#include <cstddef>
#include <unordered_map>
#include <utility>
#include <vector>

#include "bippr/graph.hpp"

namespace bippr {

/// Sparse map NodeId -> real. Exact zeros are never stored.
class SparseVector {
public:
    using Entry = std::pair<NodeId, double>;

    SparseVector() = default;

    /// Value at v, 0 when absent.
    double get(NodeId v) const noexcept {
        const auto it = values_.find(v);
        return it == values_.end() ? 0.0 : it->second;
    }
    double operator[](NodeId v) const noexcept { return get(v); }

    void set(NodeId v, double x);
    /// Adds x to entry v; returns the new value.
    double add(NodeId v, double x);
    /// Removes v, returning its previous value (0 when absent).
    double take(NodeId v) noexcept;

    bool contains(NodeId v) const noexcept { return values_.contains(v); }
    std::size_t size() const noexcept { return values_.size(); }
    bool empty() const noexcept { return values_.empty(); }
    void clear() noexcept { values_.clear(); }

    /// Sum of entries (entries are nonnegative wherever this is used).
    double sum() const;
    double max_value() const noexcept;

    /// Entries ordered by node id; stable output for dumps and comparisons.
    std::vector<Entry> sorted_entries() const;

    /// Dense copy of length n.
    std::vector<double> to_dense(std::size_t n) const;

    auto begin() const noexcept { return values_.begin(); }
    auto end() const noexcept { return values_.end(); }

private:
    std::unordered_map<NodeId, double> values_;
};

}  // namespace bippr
