#pragma once

#include "pba/pba.hpp"
#include "pba_cli/examples.hpp"
#include "support/generators.hpp"

#include <string>
#include <vector>

namespace fixtures {

struct Named {
    std::string name;
    pba::FinitePBA algebra;
};

/// The algebra entries of the example registry, built once.
inline const std::vector<Named>& registry_algebras() {
    static const std::vector<Named> all = [] {
        namespace ex = pba::examples;
        pba::FinitePBA four = pba::from_boolean({"p", "q"});
        return std::vector<Named>{
            {"two", pba::two()},
            {"four", four},
            {"sixteen", pba::from_boolean({"p", "q", "r", "s"})},
            {"four-plus-four", pba::coproduct(four, four).algebra},
            {"glued-uv-uw", pba::from_glued_contexts(ex::glued_uv_uw())},
            {"chsh-algebra", pba::build_BX(ex::chsh()).algebra},
            {"magic-square-algebra", pba::build_BX(ex::magic_square()).algebra},
            {"magic-square-forced", ex::forced_magic_square()},
            {"cabello-18", pba::from_glued_contexts(ex::cabello_18())},
        };
    }();
    return all;
}

inline const pba::FinitePBA& registry_algebra(const std::string& name) {
    for (const auto& n : registry_algebras()) {
        if (n.name == name) return n.algebra;
    }
    throw std::out_of_range(name);
}

/// Registry algebras small enough for quadratic-per-pair sweeps.
inline std::vector<Named> small_registry_algebras() {
    std::vector<Named> out;
    for (const auto& n : registry_algebras()) {
        if (n.algebra.size() <= 128) out.push_back(n);
    }
    return out;
}

/// Value of each element: atoms below it over the atom count of its first
/// block. A state when every block has the same number of atoms and the
/// uniform atom values agree across blocks.
inline pba::StateValues uniform_atom_state(const pba::FinitePBA& A) {
    pba::StateValues v(A.size());
    std::vector<bool> done(A.size(), false);
    for (const auto& b : A.blocks()) {
        for (std::size_t k = 0; k < b.elements.size(); ++k) {
            pba::ElementId e = b.elements[k];
            if (done[e]) continue;
            v[e] = gen::ratio(__builtin_popcountll(b.masks[k]), static_cast<long>(b.atoms.size()));
            done[e] = true;
        }
    }
    return v;
}

/// Tables with one thing broken, with the axiom that must be reported and
/// the witness it must carry.
struct Mutation {
    std::string what;
    pba::PbaTables tables;
    std::string axiom;
    std::vector<pba::ElementId> witness;
};

inline std::vector<Mutation> mutations_of_four() {
    const pba::PbaTables base = pba::from_boolean({"p", "q"}).to_tables();
    // ids: 0 = bottom, 1 = p, 2 = q, 3 = top
    std::vector<Mutation> out;
    auto erase_pair = [](std::vector<std::pair<pba::ElementId, pba::ElementId>>& v, pba::ElementId a, pba::ElementId b) {
        std::erase_if(v, [&](const auto& e) { return (e.first == a && e.second == b) || (e.first == b && e.second == a); });
    };
    auto erase_entry = [](std::vector<pba::TableEntry>& v, pba::ElementId a, pba::ElementId b) {
        std::erase_if(v, [&](const auto& e) { return (e.a == a && e.b == b) || (e.a == b && e.b == a); });
    };
    {
        Mutation m{"drop reflexive pair of p", base, "reflexivity", {1}};
        erase_pair(m.tables.comm, 1, 1);
        erase_entry(m.tables.meet, 1, 1);
        erase_entry(m.tables.join, 1, 1);
        out.push_back(std::move(m));
    }
    {
        Mutation m{"drop the pair (0, p)", base, "constants commeasurable", {0, 1}};
        erase_pair(m.tables.comm, 0, 1);
        erase_entry(m.tables.meet, 0, 1);
        erase_entry(m.tables.join, 0, 1);
        out.push_back(std::move(m));
    }
    {
        Mutation m{"neg(p) = 0", base, "involution", {1}};
        m.tables.neg[1] = 0;
        out.push_back(std::move(m));
    }
    {
        Mutation m{"missing meet of (p, q)", base, "operation domain mismatch", {1, 2}};
        erase_entry(m.tables.meet, 1, 2);
        out.push_back(std::move(m));
    }
    {
        Mutation m{"meet(p, q) = p", base, "not Boolean", {1, 2}};
        for (auto& e : m.tables.meet) {
            if ((e.a == 1 && e.b == 2) || (e.a == 2 && e.b == 1)) e.value = 1;
        }
        out.push_back(std::move(m));
    }
    return out;
}

} // namespace fixtures
