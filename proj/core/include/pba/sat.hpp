#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace pba {

/// DIMACS-style literal: +v is variable v true, -v is v false (v >= 1).
using Literal = std::int32_t;
using Clause = std::vector<Literal>;

struct CnfProblem {
    std::size_t num_vars = 0;
    std::vector<Clause> clauses;

    void add(Clause clause) { clauses.push_back(std::move(clause)); }
};

/// Assignment indexed by variable - 1.
using Assignment = std::vector<bool>;

/// Throws std::invalid_argument for a zero literal or one out of range.
void check_well_formed(const CnfProblem& problem);

bool satisfies(const CnfProblem& problem, const Assignment& assignment);

/// DPLL with unit propagation (two watched literals), branching on the
/// lowest-numbered unassigned variable, false before true. No learning, so
/// the search tree and its result are fixed by the clause order.
/// A returned assignment has been re-verified against every clause.
std::optional<Assignment> dpll(const CnfProblem& problem);

/// Visits every satisfying total assignment, in the order the search finds
/// them. The visitor returns false to stop. Returns the number visited.
std::size_t dpll_all(const CnfProblem& problem, const std::function<bool(const Assignment&)>& visit);

} // namespace pba
