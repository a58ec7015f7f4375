#pragma once
// Test-only reference implementations. None of these call into the solver
// or search code they are used to check.

#include "pba/pba.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace oracle {

using pba::ElementId;
using pba::FinitePBA;
using pba::Rational;

// ------------------------------------------------------------------- SAT

/// Number of satisfying assignments by plain enumeration.
inline std::uint64_t count_models(const pba::CnfProblem& p) {
    std::uint64_t count = 0;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << p.num_vars); ++m) {
        bool ok = true;
        for (const auto& c : p.clauses) {
            bool sat = false;
            for (auto lit : c) {
                std::size_t v = static_cast<std::size_t>(std::abs(lit)) - 1;
                if (((m >> v) & 1u) == (lit > 0 ? 1u : 0u)) {
                    sat = true;
                    break;
                }
            }
            if (!sat) {
                ok = false;
                break;
            }
        }
        if (ok) ++count;
    }
    return count;
}

// ------------------------------------------------------- Fourier-Motzkin

/// Feasibility of { x >= 0 : A x = b } by substituting out the equalities
/// and eliminating the remaining variables one at a time.
inline bool fm_feasible(std::size_t n, std::vector<std::vector<Rational>> A, std::vector<Rational> b) {
    // Reduced row echelon form of [A | b].
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < A.size(); ++c) {
        std::size_t p = r;
        while (p < A.size() && A[p][c] == 0) ++p;
        if (p == A.size()) continue;
        std::swap(A[p], A[r]);
        std::swap(b[p], b[r]);
        Rational inv = 1 / A[r][c];
        for (auto& v : A[r]) v *= inv;
        b[r] *= inv;
        for (std::size_t i = 0; i < A.size(); ++i) {
            if (i == r || A[i][c] == 0) continue;
            Rational f = A[i][c];
            for (std::size_t k = 0; k < n; ++k) A[i][k] -= f * A[r][k];
            b[i] -= f * b[r];
        }
        pivot_col.push_back(c);
        ++r;
    }
    for (std::size_t i = r; i < A.size(); ++i) {
        if (b[i] != 0) return false;
    }
    std::vector<bool> is_pivot(n, false);
    for (auto c : pivot_col) is_pivot[c] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < n; ++c) {
        if (!is_pivot[c]) free_cols.push_back(c);
    }
    // Rows g . y <= h over the free variables y.
    using Ineq = std::pair<std::vector<Rational>, Rational>;
    std::set<std::pair<std::vector<Rational>, Rational>> rows;
    auto add = [&](std::vector<Rational> g, Rational h) {
        Rational scale = 0;
        for (const auto& v : g) {
            if (v != 0) {
                scale = abs(v);
                break;
            }
        }
        if (scale != 0) {
            for (auto& v : g) v /= scale;
            h /= scale;
        }
        rows.insert({std::move(g), std::move(h)});
    };
    std::size_t m = free_cols.size();
    for (std::size_t i = 0; i < r; ++i) {
        // basic = b_i - sum a_ik y_k >= 0  <=>  sum a_ik y_k <= b_i
        std::vector<Rational> g(m);
        for (std::size_t k = 0; k < m; ++k) g[k] = A[i][free_cols[k]];
        add(std::move(g), b[i]);
    }
    for (std::size_t k = 0; k < m; ++k) {
        std::vector<Rational> g(m);
        g[k] = -1;
        add(std::move(g), 0);
    }
    for (std::size_t k = 0; k < m; ++k) {
        std::vector<Ineq> pos, neg, rest;
        for (const auto& row : rows) {
            if (row.first[k] > 0) pos.push_back(row);
            else if (row.first[k] < 0) neg.push_back(row);
            else rest.push_back(row);
        }
        rows.clear();
        for (auto& row : rest) rows.insert(row);
        for (const auto& p : pos) {
            for (const auto& q : neg) {
                Rational fp = -q.first[k];
                Rational fq = p.first[k];
                std::vector<Rational> g(m);
                for (std::size_t j = 0; j < m; ++j) g[j] = fp * p.first[j] + fq * q.first[j];
                g[k] = 0;
                add(std::move(g), fp * p.second + fq * q.second);
            }
        }
    }
    for (const auto& row : rows) {
        if (row.second < 0) return false;
    }
    return true;
}

// ------------------------------------------------------------ morphisms

/// Direct check of the morphism conditions into two().
inline bool is_two_valued_morphism(const FinitePBA& A, const std::vector<int>& v) {
    if (v[A.zero()] != 0 || v[A.one()] != 1) return false;
    for (ElementId a = 0; a < A.size(); ++a) {
        if (v[A.neg(a)] != 1 - v[a]) return false;
        for (ElementId b = a; b < A.size(); ++b) {
            if (!A.comm(a, b)) continue;
            if (v[A.meet(a, b)] != (v[a] & v[b])) return false;
            if (v[A.join(a, b)] != (v[a] | v[b])) return false;
        }
    }
    return true;
}

/// Every map A -> {0,1}; only for very small carriers.
inline std::size_t count_two_valued_morphisms(const FinitePBA& A) {
    std::size_t n = A.size();
    std::size_t count = 0;
    std::vector<int> v(n);
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
        for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<int>((m >> i) & 1u);
        if (is_two_valued_morphism(A, v)) ++count;
    }
    return count;
}

/// Choices of one atom per context such that an atom chosen in one of its
/// contexts is chosen in all of them. 4^9 candidates for the 18-atom set.
inline std::size_t count_glued_colourings(const pba::GluedContextSpec& spec) {
    std::size_t k = spec.contexts.size();
    std::vector<std::size_t> choice(k, 0);
    std::size_t count = 0;
    while (true) {
        std::set<std::string> chosen;
        for (std::size_t c = 0; c < k; ++c) chosen.insert(spec.contexts[c].atoms[choice[c]]);
        bool ok = true;
        for (std::size_t c = 0; c < k && ok; ++c) {
            for (const auto& a : spec.contexts[c].atoms) {
                if (chosen.count(a) && a != spec.contexts[c].atoms[choice[c]]) {
                    ok = false;
                    break;
                }
            }
        }
        if (ok) ++count;
        std::size_t i = 0;
        while (i < k && ++choice[i] == spec.contexts[i].atoms.size()) choice[i++] = 0;
        if (i == k) break;
    }
    return count;
}

// ------------------------------------------------------------- scenarios

/// Global assignments of a scenario in mixed radix, last measurement fastest.
inline std::vector<std::vector<std::size_t>> global_assignments(const pba::Scenario& s) {
    std::vector<std::vector<std::size_t>> out{{}};
    for (std::size_t x = 0; x < s.size(); ++x) {
        std::vector<std::vector<std::size_t>> next;
        for (const auto& g : out) {
            for (std::size_t o = 0; o < s.outcomes(x).size(); ++o) {
                auto h = g;
                h.push_back(o);
                next.push_back(std::move(h));
            }
        }
        out = std::move(next);
    }
    return out;
}

/// Number of distinct sets of global assignments cut out by event sets of
/// the maximal contexts.
inline std::size_t count_cylinders(const pba::Scenario& s) {
    auto globals = global_assignments(s);
    std::set<std::vector<bool>> seen;
    for (const auto& ctx : pba::maximal_cliques(s)) {
        std::size_t n = s.num_events(ctx);
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
            std::vector<bool> cyl(globals.size());
            for (std::size_t g = 0; g < globals.size(); ++g) {
                pba::Event e;
                for (auto x : ctx) e.push_back(globals[g][x]);
                cyl[g] = (mask >> s.event_index(ctx, e)) & 1u;
            }
            seen.insert(std::move(cyl));
        }
    }
    return seen.size();
}

/// Noncontextuality of a model: a distribution on global assignments
/// whose marginals are the model, decided by Fourier-Motzkin.
inline bool model_has_global_section(const pba::EmpiricalModel& m) {
    const auto& s = m.scenario;
    auto globals = global_assignments(s);
    std::vector<std::vector<Rational>> A;
    std::vector<Rational> b;
    A.emplace_back(globals.size(), Rational(1));
    b.emplace_back(1);
    for (const auto& d : m.distributions) {
        for (std::size_t e = 0; e < d.probs.size(); ++e) {
            std::vector<Rational> row(globals.size());
            pba::Event ev = s.event_at(d.context, e);
            for (std::size_t g = 0; g < globals.size(); ++g) {
                bool match = true;
                for (std::size_t k = 0; k < d.context.size(); ++k) match = match && globals[g][d.context[k]] == ev[k];
                if (match) row[g] = 1;
            }
            A.push_back(std::move(row));
            b.push_back(d.probs[e]);
        }
    }
    return fm_feasible(globals.size(), std::move(A), std::move(b));
}

// ---------------------------------------------------------- truth tables

/// Truth table (bit v = value at valuation v) of a base element of 4+4,
/// where the first summand has atoms p, ~p and the second q, ~q.
/// Variables: bit 0 of v is p, bit 1 is q.
inline std::uint32_t summand_table(std::size_t k, std::uint32_t subset) {
    // subset of {atom, ~atom} of summand k, as in from_boolean ids.
    std::uint32_t t = 0;
    for (std::uint32_t v = 0; v < 4; ++v) {
        std::uint32_t var = (v >> k) & 1u;
        bool in = var ? (subset & 1u) : (subset & 2u);
        if (in) t |= 1u << v;
    }
    return t;
}

/// Two-valued assignments of the 3x3 grid with every row and the first two
/// columns of even parity and the last column odd.
inline std::size_t count_forced_square_assignments() {
    std::size_t n = 0;
    for (std::uint32_t v = 0; v < 512; ++v) {
        auto bit = [&](int r, int c) { return (v >> (3 * r + c)) & 1u; };
        bool ok = true;
        for (int r = 0; r < 3; ++r) ok = ok && ((bit(r, 0) ^ bit(r, 1) ^ bit(r, 2)) == 0);
        for (int c = 0; c < 3; ++c) ok = ok && ((bit(0, c) ^ bit(1, c) ^ bit(2, c)) == (c == 2 ? 1u : 0u));
        if (ok) ++n;
    }
    return n;
}

} // namespace oracle
