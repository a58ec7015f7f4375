#pragma once

#include "pba/algebra.hpp"
#include "pba/rational.hpp"
#include "pba/sat.hpp"
#include "pba/saturation.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace pba {

/// Values of a [0,1]-valued map, indexed by element id.
using StateValues = std::vector<Rational>;

// ------------------------------------------------------------ order helpers

/// up[a] = { b : a <= b }.
std::vector<Bitset> up_sets(const FinitePBA& A);
/// down[a] = { b : b <= a }.
std::vector<Bitset> down_sets(const FinitePBA& A);
/// perp[a] = { b : a and b exclusive }.
std::vector<Bitset> perp_sets(const FinitePBA& A);
/// Exclusive pairs (a < b) that are not already commeasurable.
ElementPairs perp_pairs(const FinitePBA& A);

// ------------------------------------------------------------------ states

struct StateReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};

/// Checks the three state clauses and, independently, that the values form
/// a probability measure on the atoms of every block. The two checks must
/// agree; a disagreement throws std::logic_error.
StateReport is_state(const FinitePBA& A, const StateValues& values);

/// The 0/1 valuation of a morphism into two().
StateValues indicator_state(const ElementMap& h);

/// Sum of weights[k] * indicator of morphisms[k].
StateValues mixture_state(const FinitePBA& A, const std::vector<ElementMap>& morphisms,
                          const std::vector<Rational>& weights);

// ---------------------------------------------------------- Kochen-Specker

enum class KsMethod { direct, cnf, both };

struct KsVerdict {
    bool has_ks = false;
    /// A verified morphism into two() when has_ks is false.
    std::optional<ElementMap> certificate;
    std::string method;
};

/// One variable per element: units for the constants, equivalences for
/// negation and every defined meet and join.
CnfProblem ks_cnf(const FinitePBA& A);

/// With `both`, disagreement between the two routes throws std::logic_error.
KsVerdict ks_check(const FinitePBA& A, KsMethod method);

// ------------------------------------------------------------ contextuality

struct ContextualityVerdict {
    bool noncontextual = false;
    std::vector<ElementMap> morphisms;
    /// Weight of each morphism when noncontextual.
    std::vector<Rational> weights;
    /// Farkas multipliers over the LP rows when contextual (empty when
    /// there is no morphism at all).
    std::vector<Rational> farkas;
    std::size_t lp_rows = 0;
};

/// LP over all morphisms into two(): a distribution reproducing the state
/// on every element. Throws PreconditionError if `values` is not a state.
ContextualityVerdict noncontextual(const FinitePBA& A, const StateValues& values,
                                   std::size_t morphism_limit = 1u << 16);

// ----------------------------------------------------- exclusivity checks

struct LepVerdict {
    bool holds = true;
    /// a, b exclusive via c but not commeasurable.
    std::optional<std::array<ElementId, 3>> witness;
};

struct TransitivityVerdict {
    bool holds = true;
    /// a <= b, b <= c, not a <= c.
    std::optional<std::array<ElementId, 3>> witness;
};

/// Both run an exhaustive scan; lep_check also runs transitivity_check and
/// throws std::logic_error if the verdicts differ.
LepVerdict lep_check(const FinitePBA& A);
TransitivityVerdict transitivity_check(const FinitePBA& A);

struct PepVerdict {
    bool holds = true;
    /// A pairwise-exclusive family with sum above 1 when !holds.
    std::vector<ElementId> family;
    Rational sum;
    /// Largest family sum seen over all maximal cliques scanned.
    Rational max_sum;
};

PepVerdict pep_check_state(const FinitePBA& A, const StateValues& values);

enum class Outcome { some, none, inconclusive };

struct PepExtensionResult {
    Outcome outcome = Outcome::inconclusive;
    std::size_t quotient_size = 0;
    /// Values on the quotient classes when outcome is some.
    StateValues extended;
};

/// Saturates the exclusivity extension and looks for a state on it that
/// pulls back to `values`. A found state implies PEP; that implication is
/// checked and a failure throws std::logic_error.
PepExtensionResult pep_via_extension(const FinitePBA& A, const StateValues& values, std::size_t depth);

} // namespace pba
