#include "pba/cliques.hpp"

#include <algorithm>

namespace pba {

namespace {

class BronKerbosch {
  public:
    BronKerbosch(const BitGraph& g, const CliqueVisitor& visit) : g_(g), visit_(visit) {}

    bool run(Bitset p) {
        Bitset x(g_.size());
        std::vector<std::size_t> r;
        return expand(r, std::move(p), std::move(x));
    }

  private:
    bool expand(std::vector<std::size_t>& r, Bitset p, Bitset x) {
        if (p.none()) {
            if (x.none()) {
                std::vector<std::size_t> clique = r;
                std::sort(clique.begin(), clique.end());
                return visit_(clique);
            }
            return true;
        }
        // Tomita pivot: the vertex of P ∪ X with most neighbours in P.
        std::size_t pivot = Bitset::npos;
        std::size_t best = 0;
        Bitset px = p | x;
        for_each_bit(px, [&](std::size_t u) {
            std::size_t c = (p & g_.adj[u]).count();
            if (pivot == Bitset::npos || c > best) {
                pivot = u;
                best = c;
            }
        });
        Bitset candidates = p;
        Bitset pivot_nbrs = g_.adj[pivot];
        pivot_nbrs.reset(pivot);
        candidates -= pivot_nbrs;
        for (auto v = candidates.find_first(); v != Bitset::npos; v = candidates.find_next(v)) {
            Bitset nbrs = g_.adj[v];
            nbrs.reset(v);
            r.push_back(v);
            bool go_on = expand(r, p & nbrs, x & nbrs);
            r.pop_back();
            if (!go_on) return false;
            p.reset(v);
            x.set(v);
        }
        return true;
    }

    const BitGraph& g_;
    const CliqueVisitor& visit_;
};

} // namespace

bool for_each_maximal_clique(const BitGraph& graph, const Bitset& vertices, const CliqueVisitor& visit) {
    return BronKerbosch(graph, visit).run(vertices);
}

bool for_each_maximal_clique(const BitGraph& graph, const CliqueVisitor& visit) {
    Bitset all(graph.size());
    all.set();
    return for_each_maximal_clique(graph, all, visit);
}

std::vector<std::vector<std::size_t>> maximal_cliques(const BitGraph& graph) {
    std::vector<std::vector<std::size_t>> out;
    for_each_maximal_clique(graph, [&](const std::vector<std::size_t>& c) {
        out.push_back(c);
        return true;
    });
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace pba
