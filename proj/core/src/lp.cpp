#include "pba/lp.hpp"

#include <algorithm>
#include <stdexcept>

#ifndef NDEBUG
#include <set>
#endif

namespace pba {

namespace {

using Matrix = std::vector<std::vector<Rational>>;

void check_dimensions(const LpProblem& p) {
    if (p.rows.size() != p.rhs.size()) throw std::invalid_argument("lp: row count differs from rhs size");
    for (const auto& row : p.rows) {
        for (const auto& [col, coef] : row) {
            (void)coef;
            if (col >= p.num_vars) throw std::invalid_argument("lp: column index out of range");
        }
    }
}

} // namespace

LpResult lp_feasible(const LpProblem& problem) {
    check_dimensions(problem);
    const std::size_t m = problem.rows.size();
    const std::size_t n = problem.num_vars;
    const std::size_t width = n + m;

    // Rows are negated where needed so the artificial basis starts feasible.
    std::vector<int> sign(m, 1);
    Matrix t(m, std::vector<Rational>(width));
    std::vector<Rational> beta(m);
    for (std::size_t i = 0; i < m; ++i) {
        if (sgn(problem.rhs[i]) < 0) sign[i] = -1;
        for (const auto& [col, coef] : problem.rows[i]) t[i][col] += sign[i] * coef;
        t[i][n + i] = 1;
        beta[i] = sign[i] * problem.rhs[i];
    }
    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) basis[i] = n + i;

    // Reduced costs of the phase-one objective (sum of artificials).
    std::vector<Rational> d(width);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < m; ++i) d[j] -= t[i][j];
    }

    LpResult result;
#ifndef NDEBUG
    std::set<std::vector<std::size_t>> seen;
#endif
    while (true) {
#ifndef NDEBUG
        std::vector<std::size_t> key = basis;
        std::sort(key.begin(), key.end());
        if (!seen.insert(key).second) throw std::logic_error("lp: basis repeated");
#endif
        std::size_t enter = width;
        for (std::size_t j = 0; j < width; ++j) {
            if (sgn(d[j]) < 0) {
                enter = j;
                break;
            }
        }
        if (enter == width) break;

        std::size_t leave = m;
        Rational best;
        for (std::size_t i = 0; i < m; ++i) {
            if (sgn(t[i][enter]) <= 0) continue;
            Rational ratio = beta[i] / t[i][enter];
            if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                leave = i;
                best = ratio;
            }
        }
        // The phase-one objective is bounded below by zero.
        if (leave == m) throw std::logic_error("lp: unbounded phase-one direction");

        Rational piv = t[leave][enter];
        for (std::size_t j = 0; j < width; ++j) {
            if (sgn(t[leave][j]) != 0) t[leave][j] /= piv;
        }
        beta[leave] /= piv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == leave || sgn(t[i][enter]) == 0) continue;
            Rational f = t[i][enter];
            for (std::size_t j = 0; j < width; ++j) {
                if (sgn(t[leave][j]) != 0) t[i][j] -= f * t[leave][j];
            }
            beta[i] -= f * beta[leave];
        }
        if (sgn(d[enter]) != 0) {
            Rational f = d[enter];
            for (std::size_t j = 0; j < width; ++j) {
                if (sgn(t[leave][j]) != 0) d[j] -= f * t[leave][j];
            }
        }
        basis[leave] = enter;
        ++result.pivots;
    }

    Rational objective;
    for (std::size_t i = 0; i < m; ++i) {
        if (basis[i] >= n) objective += beta[i];
    }
    if (sgn(objective) == 0) {
        result.feasible = true;
        result.point.assign(n, Rational(0));
        for (std::size_t i = 0; i < m; ++i) {
            if (basis[i] < n) result.point[basis[i]] = beta[i];
        }
        if (!verify_point(problem, result.point)) throw std::logic_error("lp: point failed re-verification");
        return result;
    }

    // Dual multipliers: the reduced cost of artificial i is 1 - pi_i.
    result.farkas.resize(m);
    for (std::size_t i = 0; i < m; ++i) result.farkas[i] = sign[i] * (1 - d[n + i]);
    if (!verify_farkas(problem, result.farkas)) throw std::logic_error("lp: Farkas certificate failed re-verification");
    return result;
}

bool verify_point(const LpProblem& problem, const std::vector<Rational>& point) {
    if (point.size() != problem.num_vars) return false;
    for (const auto& v : point) {
        if (sgn(v) < 0) return false;
    }
    for (std::size_t i = 0; i < problem.rows.size(); ++i) {
        Rational lhs;
        for (const auto& [col, coef] : problem.rows[i]) lhs += coef * point[col];
        if (lhs != problem.rhs[i]) return false;
    }
    return true;
}

bool verify_farkas(const LpProblem& problem, const std::vector<Rational>& y) {
    if (y.size() != problem.rows.size()) return false;
    std::vector<Rational> ya(problem.num_vars);
    Rational yb;
    for (std::size_t i = 0; i < problem.rows.size(); ++i) {
        if (sgn(y[i]) == 0) continue;
        for (const auto& [col, coef] : problem.rows[i]) ya[col] += y[i] * coef;
        yb += y[i] * problem.rhs[i];
    }
    if (sgn(yb) <= 0) return false;
    return std::all_of(ya.begin(), ya.end(), [](const Rational& v) { return sgn(v) <= 0; });
}

} // namespace pba
