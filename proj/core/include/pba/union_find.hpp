#pragma once

#include <cstddef>
#include <numeric>
#include <vector>

namespace pba {

/// Disjoint sets over 0..n-1. The representative of a set is always its
/// least index, so callers that number elements by priority get a
/// deterministic canonical member for free.
class UnionFind {
  public:
    UnionFind() = default;
    explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

    std::size_t size() const { return parent_.size(); }

    std::size_t add() {
        parent_.push_back(parent_.size());
        return parent_.size() - 1;
    }

    std::size_t find(std::size_t x) {
        std::size_t root = x;
        while (parent_[root] != root) root = parent_[root];
        while (parent_[x] != root) {
            std::size_t next = parent_[x];
            parent_[x] = root;
            x = next;
        }
        return root;
    }

    /// Returns true when two distinct sets were merged.
    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (b < a) std::swap(a, b);
        parent_[b] = a;
        return true;
    }

    bool same(std::size_t a, std::size_t b) { return find(a) == find(b); }

  private:
    std::vector<std::size_t> parent_;
};

} // namespace pba
