#include "pba/algebra.hpp"

#include "map_search.hpp"

#include <algorithm>
#include <map>

namespace pba {

namespace {

struct Refined {
    std::vector<std::size_t> a;
    std::vector<std::size_t> b;
    std::size_t classes = 0;
};

// Colour refinement run on both algebras with one shared palette.
Refined refine(const FinitePBA& A, const FinitePBA& B) {
    auto initial = [](const FinitePBA& X, ElementId e) {
        std::size_t below = 0;
        const auto& row = X.partners(e);
        for (std::size_t k = 0; k < row.size(); ++k) below += X.meet_row(e)[k] == row[k];
        return std::vector<std::size_t>{e == X.zero(), e == X.one(), row.size(), below};
    };
    Refined r;
    std::vector<std::vector<std::size_t>> sa(A.size()), sb(B.size());
    for (ElementId e = 0; e < A.size(); ++e) sa[e] = initial(A, e);
    for (ElementId e = 0; e < B.size(); ++e) sb[e] = initial(B, e);
    std::size_t previous = 0;
    while (true) {
        std::map<std::vector<std::size_t>, std::size_t> palette;
        for (const auto& s : sa) palette.emplace(s, 0);
        for (const auto& s : sb) palette.emplace(s, 0);
        std::size_t next = 0;
        for (auto& [key, id] : palette) id = next++;
        r.a.resize(A.size());
        r.b.resize(B.size());
        for (ElementId e = 0; e < A.size(); ++e) r.a[e] = palette[sa[e]];
        for (ElementId e = 0; e < B.size(); ++e) r.b[e] = palette[sb[e]];
        r.classes = palette.size();
        if (r.classes == previous) break;
        previous = r.classes;
        auto signature = [](const FinitePBA& X, const std::vector<std::size_t>& colour, ElementId e) {
            std::vector<std::size_t> s{colour[e], colour[X.neg(e)]};
            std::vector<std::size_t> around;
            for (ElementId y : X.partners(e)) around.push_back(colour[y]);
            std::sort(around.begin(), around.end());
            s.insert(s.end(), around.begin(), around.end());
            return s;
        };
        for (ElementId e = 0; e < A.size(); ++e) sa[e] = signature(A, r.a, e);
        for (ElementId e = 0; e < B.size(); ++e) sb[e] = signature(B, r.b, e);
    }
    return r;
}

} // namespace

std::optional<ElementMap> find_isomorphism(const FinitePBA& A, const FinitePBA& B) {
    if (A.size() != B.size() || A.blocks().size() != B.blocks().size()) return std::nullopt;
    Refined r = refine(A, B);
    std::vector<std::size_t> ca = r.a, cb = r.b;
    std::sort(ca.begin(), ca.end());
    std::sort(cb.begin(), cb.end());
    if (ca != cb) return std::nullopt;

    // Branch first on elements whose colour class is smallest.
    std::vector<std::size_t> class_size(r.classes, 0);
    for (auto c : r.a) ++class_size[c];
    std::vector<ElementId> order(A.size());
    for (ElementId e = 0; e < A.size(); ++e) order[e] = e;
    std::stable_sort(order.begin(), order.end(),
                     [&](ElementId x, ElementId y) { return class_size[r.a[x]] < class_size[r.a[y]]; });

    std::optional<ElementMap> out;
    MapSearch search(A, B, MapSearch::Mode::isomorphism);
    search.set_colours(r.a, r.b);
    search.set_order(std::move(order));
    search.run([&](const ElementMap& h) {
        out = h;
        return false;
    });
    if (out && !is_morphism(*out, A, B).ok) throw std::logic_error("isomorphism search produced a non-morphism");
    return out;
}

} // namespace pba
