#include "bippr/sparse_vector.hpp"

#include <algorithm>

namespace bippr {

void SparseVector::set(NodeId v, double x) {
    if (x == 0.0) {
        values_.erase(v);
    } else {
        values_[v] = x;
    }
}

double SparseVector::add(NodeId v, double x) {
    auto [it, inserted] = values_.try_emplace(v, 0.0);
    it->second += x;
    const double result = it->second;
    if (result == 0.0) {
        values_.erase(it);
    }
    return result;
}

double SparseVector::take(NodeId v) noexcept {
    const auto it = values_.find(v);
    if (it == values_.end()) {
        return 0.0;
    }
    const double x = it->second;
    values_.erase(it);
    return x;
}

double SparseVector::sum() const {
    // Summed in node order so the result does not depend on hash layout.
    double total = 0.0;
    for (const auto& [v, x] : sorted_entries()) {
        total += x;
    }
    return total;
}

double SparseVector::max_value() const noexcept {
    double best = 0.0;
    for (const auto& [v, x] : values_) {
        best = std::max(best, x);
    }
    return best;
}

std::vector<SparseVector::Entry> SparseVector::sorted_entries() const {
    std::vector<Entry> out(values_.begin(), values_.end());
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<double> SparseVector::to_dense(std::size_t n) const {
    std::vector<double> out(n, 0.0);
    for (const auto& [v, x] : values_) {
        out.at(v) = x;
    }
    return out;
}

}  // namespace bippr
