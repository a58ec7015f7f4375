#pragma once

#include "pba/rational.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace pba {

/// Feasibility problem { x : A x = b, x >= 0 } over exact rationals.
/// Rows are stored sparsely as (column, coefficient) pairs.
struct LpProblem {
    using Row = std::vector<std::pair<std::size_t, Rational>>;

    std::size_t num_vars = 0;
    std::vector<Row> rows;
    std::vector<Rational> rhs;

    void add_row(Row row, Rational b) {
        rows.push_back(std::move(row));
        rhs.push_back(std::move(b));
    }
};

struct LpResult {
    bool feasible = false;
    /// Feasible point (size num_vars) when feasible.
    std::vector<Rational> point;
    /// Farkas multipliers y (one per row) when infeasible: y^T A <= 0 and
    /// y^T b > 0, which no non-negative solution can satisfy.
    std::vector<Rational> farkas;
    std::size_t pivots = 0;
};

/// Phase-one simplex with Bland's rule. Either certificate in the result is
/// re-verified before returning; a failed re-check throws std::logic_error.
LpResult lp_feasible(const LpProblem& problem);

bool verify_point(const LpProblem& problem, const std::vector<Rational>& point);
bool verify_farkas(const LpProblem& problem, const std::vector<Rational>& y);

} // namespace pba
