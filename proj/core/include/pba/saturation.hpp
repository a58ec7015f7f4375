#pragma once

#include "pba/algebra.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pba {

using ElementPairs = std::vector<std::pair<ElementId, ElementId>>;

enum class TermKind : std::uint8_t { generator, zero, one, neg, meet, join };

/// Node of the hash-consed term store. For a generator `a` is the base
/// element; for operations `a`, `b` are child term ids.
struct PreTerm {
    TermKind kind = TermKind::zero;
    std::uint32_t a = 0;
    std::uint32_t b = 0;
    std::uint32_t depth = 0;
};

/// Free-standing term tree, used to query a finished quotient.
struct Term {
    TermKind kind = TermKind::zero;
    ElementId element = 0;
    std::vector<Term> args;

    static Term gen(ElementId a) { return {TermKind::generator, a, {}}; }
    static Term zero() { return {TermKind::zero, 0, {}}; }
    static Term one() { return {TermKind::one, 0, {}}; }
    static Term neg(Term t) { return {TermKind::neg, 0, {std::move(t)}}; }
    static Term meet(Term t, Term u) { return {TermKind::meet, 0, {std::move(t), std::move(u)}}; }
    static Term join(Term t, Term u) { return {TermKind::join, 0, {std::move(t), std::move(u)}}; }
};

struct ExtensionSpec {
    explicit ExtensionSpec(FinitePBA b) : base(std::move(b)) {}

    FinitePBA base;
    /// Pairs to be made commeasurable.
    ElementPairs relation;
    /// Pairs to be identified.
    ElementPairs force_equal;
    /// Adds the rule: u <= t and v <= ~t give u, v commeasurable.
    bool lep_rule = false;
    std::size_t depth_limit = 4;
    /// The run stops, unstabilized, once this many classes exist.
    std::size_t class_limit = 20000;
    /// Cap on 2-valued models examined per clique by the Boolean rule.
    std::size_t model_limit = 1u << 16;
    bool trace = false;
};

/// Read-only view of a running saturation, handed to observers after each
/// phase. Class ids are only stable between two calls.
class SaturationView {
  public:
    virtual ~SaturationView() = default;
    virtual std::size_t num_classes() const = 0;
    virtual std::size_t num_terms() const = 0;
    virtual const PreTerm& term(std::uint32_t t) const = 0;
    virtual ElementId term_class(std::uint32_t t) const = 0;
    virtual std::uint32_t rep_term(ElementId c) const = 0;
    virtual ElementId neg(ElementId c) const = 0;
    virtual bool comm(ElementId c, ElementId d) const = 0;
    virtual ElementId meet(ElementId c, ElementId d) const = 0;
    virtual ElementId join(ElementId c, ElementId d) const = 0;
};

using SaturationObserver = std::function<void(const SaturationView&, std::string_view phase)>;

/// Result of a saturation run: classes of defined terms with the induced
/// partial structure. Ids in [0, size()) are classes; undefined operations
/// return FinitePBA::none.
class QuotientAlgebra {
  public:
    bool stabilized() const;
    /// Expansion rounds performed (one per term depth).
    std::size_t levels() const;
    std::size_t size() const;
    std::size_t comm_pairs() const;

    /// Class of each base element.
    const std::vector<ElementId>& eta() const;

    ElementId zero() const;
    ElementId one() const;
    ElementId neg(ElementId c) const;
    bool comm(ElementId c, ElementId d) const;
    ElementId meet(ElementId c, ElementId d) const;
    ElementId join(ElementId c, ElementId d) const;
    const std::string& label(ElementId c) const;

    std::size_t num_terms() const;
    const PreTerm& term(std::uint32_t t) const;
    ElementId term_class(std::uint32_t t) const;
    std::uint32_t rep_term(ElementId c) const;
    std::string pretty(std::uint32_t t) const;

    /// Class of a term, or none when some subterm is undefined here.
    ElementId evaluate(const Term& t) const;

    /// Present exactly when stabilized; class ids coincide with element ids.
    const std::optional<FinitePBA>& algebra() const;

    const std::vector<std::string>& trace() const;

    struct Data;
    explicit QuotientAlgebra(std::shared_ptr<const Data> d) : d_(std::move(d)) {}

  private:
    std::shared_ptr<const Data> d_;
};

QuotientAlgebra saturate(const ExtensionSpec& spec, const SaturationObserver& observer = {});

/// Extension by the exclusivity relation of A, without the LEP rule.
QuotientAlgebra perp_extension(const FinitePBA& A, std::size_t depth);

/// Saturation with the LEP rule and no extra relation.
QuotientAlgebra lep_saturate(const FinitePBA& A, std::size_t depth);

/// Identifies f(a) with g(a) for every a in the common source.
QuotientAlgebra coequaliser(const ElementMap& f, const ElementMap& g, const FinitePBA& target, std::size_t depth);

/// The unique extension of h : spec.base -> B along eta. Throws
/// PreconditionError naming the offending pair when h is not eligible,
/// and std::logic_error if the result fails verification.
ElementMap lift_morphism(const ExtensionSpec& spec, const QuotientAlgebra& q, const ElementMap& h, const FinitePBA& B);

} // namespace pba
