#pragma once

#include "pba/bitset.hpp"

#include <functional>
#include <vector>

namespace pba {

/// Undirected graph as adjacency bitsets. Self loops are ignored.
struct BitGraph {
    std::vector<Bitset> adj;

    explicit BitGraph(std::size_t n = 0) : adj(n, Bitset(n)) {}
    std::size_t size() const { return adj.size(); }
    void add_edge(std::size_t a, std::size_t b) {
        adj[a].set(b);
        adj[b].set(a);
    }
    bool has_edge(std::size_t a, std::size_t b) const { return adj[a].test(b); }
};

/// Called once per maximal clique (members in increasing order). Return
/// false to stop the enumeration.
using CliqueVisitor = std::function<bool(const std::vector<std::size_t>&)>;

/// Bron–Kerbosch with Tomita pivoting, restricted to `vertices`.
/// Returns false if the visitor stopped early.
bool for_each_maximal_clique(const BitGraph& graph, const Bitset& vertices, const CliqueVisitor& visit);
bool for_each_maximal_clique(const BitGraph& graph, const CliqueVisitor& visit);

/// All maximal cliques, each sorted, list sorted lexicographically.
std::vector<std::vector<std::size_t>> maximal_cliques(const BitGraph& graph);

} // namespace pba
