#pragma once

#include "pba/algebra.hpp"
#include "pba/analysis.hpp"
#include "pba/rational.hpp"
#include "pba/saturation.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace pba {

/// Sorted measurement indices forming a clique of the compatibility graph.
using Context = std::vector<std::size_t>;

/// Outcome index per measurement of a context, aligned with the context.
using Event = std::vector<std::size_t>;

class Scenario {
  public:
    /// Measurements are sorted by name; compatibility is closed under
    /// reflexivity and symmetry. Throws PreconditionError on unknown names,
    /// duplicates or empty outcome sets.
    Scenario(std::vector<std::string> measurements,
             const std::vector<std::pair<std::string, std::string>>& compatible,
             const std::map<std::string, std::vector<std::string>>& outcomes);

    std::size_t size() const { return names_.size(); }
    const std::string& name(std::size_t x) const { return names_.at(x); }
    const std::vector<std::string>& names() const { return names_; }
    std::size_t index(const std::string& name) const;
    const std::vector<std::string>& outcomes(std::size_t x) const { return outcomes_.at(x); }
    bool compatible(std::size_t x, std::size_t y) const { return compat_.at(x).at(y); }
    bool is_context(const Context& c) const;

    /// Unordered pairs of distinct compatible measurements.
    std::vector<std::pair<std::size_t, std::size_t>> compatible_pairs() const;

    /// Joint outcomes of a context in mixed radix, last measurement fastest.
    std::size_t num_events(const Context& c) const;
    std::size_t event_index(const Context& c, const Event& e) const;
    Event event_at(const Context& c, std::size_t index) const;

    /// "[a1=0,b1=1]" for an event; "[]" for the empty context.
    std::string event_label(const Context& c, const Event& e) const;
    /// "a1,b1"
    std::string context_key(const Context& c) const;

  private:
    std::vector<std::string> names_;
    std::vector<std::vector<std::string>> outcomes_;
    std::vector<std::vector<bool>> compat_;
};

/// Inclusion-maximal contexts, each sorted, list sorted lexicographically.
std::vector<Context> maximal_cliques(const Scenario& s);

struct Distribution {
    Context context;
    /// Indexed by Scenario::event_index.
    std::vector<Rational> probs;
};

/// e_tau restricted to sigma (sigma must be a subset of tau's context).
Distribution marginalise(const Scenario& s, const Distribution& tau, const Context& sigma);

struct EmpiricalModel {
    explicit EmpiricalModel(Scenario sc) : scenario(std::move(sc)) {}

    Scenario scenario;
    /// One per maximal context, in maximal_cliques order.
    std::vector<Distribution> distributions;

    /// Marginal on any context, taken from the first maximal context
    /// containing it.
    Distribution on(const Context& c) const;
};

struct ModelViolation {
    std::string kind;
    Context sigma;
    Context tau;
    Event event;
    std::string detail;
};

struct ModelReport {
    std::vector<ModelViolation> violations;
    bool ok() const { return violations.empty(); }
};

ModelReport validate_model(const EmpiricalModel& m);

/// A point mass on the restriction of one global assignment.
EmpiricalModel deterministic_model(const Scenario& s, const std::vector<std::size_t>& global);

// -------------------------------------------------------- scenario algebra

struct ScenarioElement {
    /// Minimal support.
    Context support;
    /// Subset of Ev(support), bit i = event index i.
    std::uint64_t events = 0;
};

struct ScenarioAlgebra {
    FinitePBA algebra;
    std::vector<ScenarioElement> elements;
    std::map<std::pair<Context, std::uint64_t>, ElementId> index;

    /// The element of a subset of Ev(c), for any context c, after reduction
    /// to minimal support.
    ElementId element(const Scenario& s, const Context& c, std::uint64_t events) const;
    ElementId event_element(const Scenario& s, const Context& c, const Event& e) const;
};

constexpr std::size_t kDefaultAlgebraLimit = 1u << 13;

/// Closed-form algebra: elements are event sets with minimal cylinder
/// support. Throws SizeLimitExceeded when the subsets of the maximal
/// contexts number more than `limit`.
ScenarioAlgebra build_BX(const Scenario& s, std::size_t limit = kDefaultAlgebraLimit);

struct SaturatedScenario {
    Coproduct base;
    QuotientAlgebra quotient;
};

/// Saturates the coproduct of the single-measurement algebras with the
/// compatibility relation.
SaturatedScenario build_AX_saturated(const Scenario& s, std::size_t depth);

StateValues model_to_state(const ScenarioAlgebra& sa, const EmpiricalModel& m);
EmpiricalModel state_to_model(const Scenario& s, const ScenarioAlgebra& sa, const StateValues& values);

struct EventRef {
    std::size_t context;  // index into maximal_cliques
    std::size_t event;    // event index within that context
};

struct ModelPepVerdict {
    bool holds = true;
    std::vector<EventRef> family;
    Rational sum;
    Rational max_sum;
};

/// Maximal cliques of the exclusivity graph on events of maximal contexts
/// with positive probability.
ModelPepVerdict model_pep_check(const EmpiricalModel& m);

struct ModelContextuality {
    bool noncontextual = false;
    /// Global assignments in mixed radix (last measurement fastest).
    std::vector<Rational> weights;
    std::vector<Rational> farkas;
    std::size_t num_global = 0;
};

/// LP for a distribution over global assignments marginalising to the
/// model on every maximal context.
ModelContextuality model_noncontextual(const EmpiricalModel& m);

} // namespace pba
