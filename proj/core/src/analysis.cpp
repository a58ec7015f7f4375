#include "pba/analysis.hpp"

#include "pba/cliques.hpp"
#include "pba/errors.hpp"
#include "pba/lp.hpp"

#include <algorithm>
#include <set>

namespace pba {

std::vector<Bitset> up_sets(const FinitePBA& A) {
    std::vector<Bitset> up(A.size(), Bitset(A.size()));
    for (ElementId a = 0; a < A.size(); ++a) {
        const auto& row = A.partners(a);
        for (std::size_t k = 0; k < row.size(); ++k) {
            if (A.meet_row(a)[k] == a) up[a].set(row[k]);
        }
    }
    return up;
}

std::vector<Bitset> down_sets(const FinitePBA& A) {
    std::vector<Bitset> down(A.size(), Bitset(A.size()));
    for (ElementId a = 0; a < A.size(); ++a) {
        const auto& row = A.partners(a);
        for (std::size_t k = 0; k < row.size(); ++k) {
            if (A.meet_row(a)[k] == a) down[row[k]].set(a);
        }
    }
    return down;
}

std::vector<Bitset> perp_sets(const FinitePBA& A) {
    auto up = up_sets(A);
    auto down = down_sets(A);
    std::vector<Bitset> perp(A.size(), Bitset(A.size()));
    for (ElementId a = 0; a < A.size(); ++a) {
        for_each_bit(up[a], [&](std::size_t c) { perp[a] |= down[A.neg(static_cast<ElementId>(c))]; });
    }
    return perp;
}

ElementPairs perp_pairs(const FinitePBA& A) {
    auto perp = perp_sets(A);
    ElementPairs out;
    for (ElementId a = 0; a < A.size(); ++a) {
        Bitset bad = perp[a] - A.comm_row(a);
        for_each_bit(bad, [&](std::size_t b) {
            if (b > a) out.emplace_back(a, static_cast<ElementId>(b));
        });
    }
    return out;
}

StateReport is_state(const FinitePBA& A, const StateValues& values) {
    StateReport report;
    if (values.size() != A.size()) {
        report.violations.push_back({"values not total", {}, "expected " + std::to_string(A.size()) + " values"});
        return report;
    }
    for (ElementId a = 0; a < A.size(); ++a) {
        if (sgn(values[a]) < 0 || values[a] > 1) report.violations.push_back({"range", {a}, to_string(values[a])});
        if (values[A.neg(a)] != 1 - values[a]) report.violations.push_back({"negation", {a}, ""});
        const auto& row = A.partners(a);
        for (std::size_t k = 0; k < row.size(); ++k) {
            ElementId b = row[k];
            if (b < a) continue;
            if (values[A.join_row(a)[k]] + values[A.meet_row(a)[k]] != values[a] + values[b]) {
                report.violations.push_back({"additivity", {a, b}, ""});
            }
        }
    }
    if (sgn(values[A.zero()]) != 0) report.violations.push_back({"zero", {A.zero()}, to_string(values[A.zero()])});

    // Probability measure on the atoms of each block.
    bool measures = true;
    for (const Block& block : A.blocks()) {
        Rational total;
        for (ElementId x : block.atoms) {
            if (sgn(values[x]) < 0) measures = false;
            total += values[x];
        }
        if (total != 1) measures = false;
        for (std::size_t k = 0; k < block.elements.size() && measures; ++k) {
            Rational s;
            for (std::size_t i = 0; i < block.atoms.size(); ++i) {
                if (block.masks[k] >> i & 1u) s += values[block.atoms[i]];
            }
            if (s != values[block.elements[k]]) measures = false;
        }
        if (!measures) break;
    }
    if (measures != report.ok()) throw std::logic_error("is_state: clause check and block measure check disagree");
    return report;
}

StateValues indicator_state(const ElementMap& h) {
    StateValues v(h.size());
    for (std::size_t a = 0; a < h.size(); ++a) v[a] = h[a] == 1 ? 1 : 0;
    return v;
}

StateValues mixture_state(const FinitePBA& A, const std::vector<ElementMap>& morphisms,
                          const std::vector<Rational>& weights) {
    if (morphisms.size() != weights.size()) throw PreconditionError("mixture_state: size mismatch");
    StateValues v(A.size());
    for (std::size_t k = 0; k < morphisms.size(); ++k) {
        for (ElementId a = 0; a < A.size(); ++a) {
            if (morphisms[k][a] == 1) v[a] += weights[k];
        }
    }
    return v;
}

CnfProblem ks_cnf(const FinitePBA& A) {
    CnfProblem cnf;
    cnf.num_vars = A.size();
    auto var = [](ElementId a) { return static_cast<Literal>(a) + 1; };
    cnf.add({-var(A.zero())});
    cnf.add({var(A.one())});
    for (ElementId a = 0; a < A.size(); ++a) {
        ElementId n = A.neg(a);
        if (n < a) continue;
        if (n == a) {
            cnf.add({var(a)});
            cnf.add({-var(a)});
            continue;
        }
        cnf.add({var(a), var(n)});
        cnf.add({-var(a), -var(n)});
    }
    for (ElementId a = 0; a < A.size(); ++a) {
        const auto& row = A.partners(a);
        for (std::size_t k = 0; k < row.size(); ++k) {
            ElementId b = row[k];
            if (b <= a) continue;
            Literal x = var(a);
            Literal y = var(b);
            Literal m = var(A.meet_row(a)[k]);
            Literal j = var(A.join_row(a)[k]);
            cnf.add({-m, x});
            cnf.add({-m, y});
            cnf.add({m, -x, -y});
            cnf.add({j, -x});
            cnf.add({j, -y});
            cnf.add({-j, x, y});
        }
    }
    return cnf;
}

namespace {

std::optional<ElementMap> ks_direct(const FinitePBA& A) { return find_morphism_to_2(A); }

std::optional<ElementMap> ks_via_cnf(const FinitePBA& A) {
    auto model = dpll(ks_cnf(A));
    if (!model) return std::nullopt;
    ElementMap h(A.size());
    for (ElementId a = 0; a < A.size(); ++a) h[a] = (*model)[a] ? 1 : 0;
    auto check = is_morphism(h, A, two());
    if (!check.ok) throw std::logic_error("ks_check: SAT model is not a morphism: " + check.violation);
    return h;
}

} // namespace

KsVerdict ks_check(const FinitePBA& A, KsMethod method) {
    KsVerdict v;
    std::optional<ElementMap> cert;
    switch (method) {
    case KsMethod::direct:
        v.method = "direct";
        cert = ks_direct(A);
        break;
    case KsMethod::cnf:
        v.method = "cnf";
        cert = ks_via_cnf(A);
        break;
    case KsMethod::both: {
        v.method = "both";
        cert = ks_direct(A);
        auto other = ks_via_cnf(A);
        if (cert.has_value() != other.has_value()) throw std::logic_error("ks_check: direct and cnf routes disagree");
        break;
    }
    }
    v.has_ks = !cert.has_value();
    v.certificate = std::move(cert);
    return v;
}

ContextualityVerdict noncontextual(const FinitePBA& A, const StateValues& values, std::size_t morphism_limit) {
    StateReport report = is_state(A, values);
    if (!report.ok()) throw PreconditionError("noncontextual: values are not a state (" + report.violations[0].axiom + ")");
    ContextualityVerdict v;
    std::size_t count = for_each_morphism_to_2(A, [&](const ElementMap& h) {
        v.morphisms.push_back(h);
        return v.morphisms.size() <= morphism_limit;
    });
    if (count > morphism_limit) throw SizeLimitExceeded("noncontextual: too many morphisms to 2");

    std::set<ElementId> atoms;
    for (const Block& b : A.blocks()) atoms.insert(b.atoms.begin(), b.atoms.end());
    LpProblem lp;
    lp.num_vars = v.morphisms.size();
    LpProblem::Row all;
    for (std::size_t k = 0; k < v.morphisms.size(); ++k) all.emplace_back(k, Rational(1));
    lp.add_row(std::move(all), Rational(1));
    for (ElementId x : atoms) {
        LpProblem::Row row;
        for (std::size_t k = 0; k < v.morphisms.size(); ++k) {
            if (v.morphisms[k][x] == 1) row.emplace_back(k, Rational(1));
        }
        lp.add_row(std::move(row), values[x]);
    }
    v.lp_rows = lp.rows.size();
    LpResult r = lp_feasible(lp);
    v.noncontextual = r.feasible;
    if (r.feasible) {
        v.weights = r.point;
        StateValues back = mixture_state(A, v.morphisms, v.weights);
        if (back != values) throw std::logic_error("noncontextual: witness does not reproduce the state");
    } else {
        v.farkas = r.farkas;
    }
    return v;
}

TransitivityVerdict transitivity_check(const FinitePBA& A) {
    auto up = up_sets(A);
    auto down = down_sets(A);
    TransitivityVerdict v;
    for (ElementId b = 0; b < A.size() && v.holds; ++b) {
        for (auto a = down[b].find_first(); a != Bitset::npos; a = down[b].find_next(a)) {
            Bitset missing = up[b] - up[a];
            auto c = missing.find_first();
            if (c != Bitset::npos) {
                v.holds = false;
                v.witness = {static_cast<ElementId>(a), b, static_cast<ElementId>(c)};
                break;
            }
        }
    }
    return v;
}

LepVerdict lep_check(const FinitePBA& A) {
    auto up = up_sets(A);
    auto down = down_sets(A);
    LepVerdict v;
    for (ElementId a = 0; a < A.size() && v.holds; ++a) {
        Bitset perp(A.size());
        for_each_bit(up[a], [&](std::size_t c) { perp |= down[A.neg(static_cast<ElementId>(c))]; });
        Bitset bad = perp - A.comm_row(a);
        auto b = bad.find_first();
        if (b == Bitset::npos) continue;
        for (auto c = up[a].find_first(); c != Bitset::npos; c = up[a].find_next(c)) {
            if (down[A.neg(static_cast<ElementId>(c))].test(b)) {
                v.holds = false;
                v.witness = {a, static_cast<ElementId>(b), static_cast<ElementId>(c)};
                break;
            }
        }
    }
    if (v.holds != transitivity_check(A).holds) throw std::logic_error("lep_check: LEP and transitivity disagree");
    return v;
}

PepVerdict pep_check_state(const FinitePBA& A, const StateValues& values) {
    if (values.size() != A.size()) throw PreconditionError("pep_check_state: values not total");
    auto perp = perp_sets(A);
    Bitset support(A.size());
    for (ElementId a = 0; a < A.size(); ++a) {
        if (sgn(values[a]) > 0) support.set(a);
    }
    BitGraph graph(A.size());
    for (ElementId a = 0; a < A.size(); ++a) {
        graph.adj[a] = perp[a] & support;
        graph.adj[a].reset(a);
    }
    PepVerdict v;
    for_each_maximal_clique(graph, support, [&](const std::vector<std::size_t>& clique) {
        Rational s;
        for (auto a : clique) s += values[a];
        if (s > v.max_sum) v.max_sum = s;
        if (s > 1) {
            v.holds = false;
            v.sum = s;
            v.family.assign(clique.begin(), clique.end());
            return false;
        }
        return true;
    });
    return v;
}

PepExtensionResult pep_via_extension(const FinitePBA& A, const StateValues& values, std::size_t depth) {
    StateReport report = is_state(A, values);
    if (!report.ok()) throw PreconditionError("pep_via_extension: values are not a state");
    PepExtensionResult out;
    QuotientAlgebra q = perp_extension(A, depth);
    out.quotient_size = q.size();
    if (!q.stabilized()) return out;
    const FinitePBA& Q = *q.algebra();

    LpProblem lp;
    lp.num_vars = Q.size();
    for (const Block& block : Q.blocks()) {
        LpProblem::Row total;
        for (ElementId x : block.atoms) total.emplace_back(x, Rational(1));
        lp.add_row(std::move(total), Rational(1));
        for (std::size_t k = 0; k < block.elements.size(); ++k) {
            if (__builtin_popcountll(block.masks[k]) == 1) continue;
            LpProblem::Row row{{block.elements[k], Rational(1)}};
            for (std::size_t i = 0; i < block.atoms.size(); ++i) {
                if (block.masks[k] >> i & 1u) row.emplace_back(block.atoms[i], Rational(-1));
            }
            lp.add_row(std::move(row), Rational(0));
        }
    }
    for (ElementId a = 0; a < A.size(); ++a) lp.add_row({{q.eta()[a], Rational(1)}}, values[a]);
    LpResult r = lp_feasible(lp);
    if (!r.feasible) {
        out.outcome = Outcome::none;
        return out;
    }
    out.outcome = Outcome::some;
    out.extended = r.point;
    if (!is_state(Q, out.extended).ok()) throw std::logic_error("pep_via_extension: extension is not a state");
    if (!pep_check_state(A, values).holds) throw std::logic_error("pep_via_extension: extension exists but PEP fails");
    return out;
}

} // namespace pba
