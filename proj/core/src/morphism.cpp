#include "pba/algebra.hpp"

#include "map_search.hpp"

#include <algorithm>
#include <stdexcept>

namespace pba {

MorphismCheck is_morphism(const ElementMap& map, const FinitePBA& source, const FinitePBA& target) {
    MorphismCheck out;
    auto fail = [&](std::string what, std::vector<ElementId> witness) {
        out.ok = false;
        out.violation = std::move(what);
        out.witness = std::move(witness);
        return out;
    };
    if (map.size() != source.size()) return fail("map is not total", {});
    for (ElementId a = 0; a < source.size(); ++a) {
        if (map[a] >= target.size()) return fail("image out of range", {a});
    }
    if (map[source.zero()] != target.zero()) return fail("0 not preserved", {source.zero()});
    if (map[source.one()] != target.one()) return fail("1 not preserved", {source.one()});
    for (ElementId a = 0; a < source.size(); ++a) {
        if (map[source.neg(a)] != target.neg(map[a])) return fail("negation not preserved", {a});
        const auto& row = source.partners(a);
        for (std::size_t k = 0; k < row.size(); ++k) {
            ElementId b = row[k];
            if (b < a) continue;
            if (!target.comm(map[a], map[b])) return fail("commeasurability not preserved", {a, b});
            if (target.meet(map[a], map[b]) != map[source.meet_row(a)[k]]) return fail("meet not preserved", {a, b});
            if (target.join(map[a], map[b]) != map[source.join_row(a)[k]]) return fail("join not preserved", {a, b});
        }
    }
    return out;
}

namespace {

// Morphisms into two(): every block picks the atom that is sent to 1. A
// block's candidates are the atoms consistent with the elements already
// valued; blocks with one candidate are fixed, then the search branches on
// the block with the fewest candidates.
class TwoValuedSearch {
  public:
    TwoValuedSearch(const FinitePBA& A, const std::function<bool(const ElementMap&)>& visit) : A_(A), visit_(visit) {}

    std::size_t run() {
        std::vector<int> value(A_.size(), -1);
        std::vector<int> chosen(A_.blocks().size(), -1);
        search(value, chosen);
        return found_;
    }

  private:
    std::uint64_t candidates(std::size_t b, const std::vector<int>& value) const {
        const Block& block = A_.blocks()[b];
        std::uint64_t cand = block.atoms.size() >= 64 ? ~0ULL : (1ULL << block.atoms.size()) - 1;
        for (std::size_t k = 0; k < block.elements.size() && cand; ++k) {
            int v = value[block.elements[k]];
            if (v == 1) cand &= block.masks[k];
            if (v == 0) cand &= ~block.masks[k];
        }
        return cand;
    }

    static void fix(const Block& block, int atom, std::vector<int>& value) {
        for (std::size_t k = 0; k < block.elements.size(); ++k) value[block.elements[k]] = (block.masks[k] >> atom) & 1u;
    }

    bool search(std::vector<int> value, std::vector<int> chosen) {
        const auto& blocks = A_.blocks();
        while (true) {
            bool progress = false;
            for (std::size_t b = 0; b < blocks.size(); ++b) {
                if (chosen[b] >= 0) continue;
                std::uint64_t cand = candidates(b, value);
                if (cand == 0) return true;
                if ((cand & (cand - 1)) == 0) {
                    chosen[b] = __builtin_ctzll(cand);
                    fix(blocks[b], chosen[b], value);
                    progress = true;
                }
            }
            if (!progress) break;
        }
        std::size_t best = blocks.size();
        int best_count = 65;
        std::uint64_t best_cand = 0;
        for (std::size_t b = 0; b < blocks.size(); ++b) {
            if (chosen[b] >= 0) continue;
            std::uint64_t cand = candidates(b, value);
            int count = __builtin_popcountll(cand);
            if (count < best_count) {
                best = b;
                best_count = count;
                best_cand = cand;
            }
        }
        if (best == blocks.size()) {
            ElementMap h(A_.size());
            for (ElementId a = 0; a < A_.size(); ++a) h[a] = value[a] == 1 ? 1 : 0;
            auto check = is_morphism(h, A_, two());
            if (!check.ok) throw std::logic_error("morphism search produced an invalid map: " + check.violation);
            ++found_;
            return visit_(h);
        }
        for (std::uint64_t c = best_cand; c; c &= c - 1) {
            int atom = __builtin_ctzll(c);
            std::vector<int> v2 = value;
            std::vector<int> c2 = chosen;
            c2[best] = atom;
            fix(blocks[best], atom, v2);
            if (!search(std::move(v2), std::move(c2))) return false;
        }
        return true;
    }

    const FinitePBA& A_;
    const std::function<bool(const ElementMap&)>& visit_;
    std::size_t found_ = 0;
};

} // namespace

std::size_t for_each_morphism_to_2(const FinitePBA& A, const std::function<bool(const ElementMap&)>& visit) {
    return TwoValuedSearch(A, visit).run();
}

std::optional<ElementMap> find_morphism_to_2(const FinitePBA& A) {
    std::optional<ElementMap> out;
    for_each_morphism_to_2(A, [&](const ElementMap& h) {
        out = h;
        return false;
    });
    return out;
}

std::vector<ElementMap> all_morphisms_to_2(const FinitePBA& A, std::size_t limit) {
    std::vector<ElementMap> out;
    for_each_morphism_to_2(A, [&](const ElementMap& h) {
        out.push_back(h);
        return out.size() < limit;
    });
    return out;
}

std::vector<ElementMap> all_morphisms(const FinitePBA& A, const FinitePBA& B, std::size_t limit) {
    std::vector<ElementMap> out;
    MapSearch search(A, B, MapSearch::Mode::morphism);
    search.run([&](const ElementMap& h) {
        out.push_back(h);
        return out.size() < limit;
    });
    return out;
}

} // namespace pba
