#pragma once

#include "pba/bitset.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace pba {

using ElementId = std::uint32_t;

/// One entry of a partial binary operation table. The pair is unordered.
struct TableEntry {
    ElementId a;
    ElementId b;
    ElementId value;
};

/// Raw, unchecked tables as read from a document.
struct PbaTables {
    std::size_t carrier = 0;
    ElementId zero = 0;
    ElementId one = 0;
    std::vector<ElementId> neg;
    /// Unordered commeasurable pairs. Reflexive pairs must be listed too.
    std::vector<std::pair<ElementId, ElementId>> comm;
    std::vector<TableEntry> meet;
    std::vector<TableEntry> join;
    /// Empty, or one unique label per element.
    std::vector<std::string> labels;
};

struct Violation {
    std::string axiom;
    std::vector<ElementId> witness;
    std::string detail;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
    std::string summary() const;
};

/// Checks every axiom. Throws MalformedTable when the tables cannot be read
/// at all (index out of range, the same unordered pair given two values).
ValidationReport validate(const PbaTables& tables);

class InvalidAlgebra : public std::runtime_error {
  public:
    explicit InvalidAlgebra(ValidationReport report);
    const ValidationReport& report() const { return report_; }

  private:
    ValidationReport report_;
};

/// A maximal set of pairwise commeasurable elements. In a valid algebra it
/// is a Boolean subalgebra; `masks[k]` is the set of atoms below
/// `elements[k]`, one bit per entry of `atoms`.
struct Block {
    std::vector<ElementId> elements;
    std::vector<ElementId> atoms;
    std::vector<std::uint64_t> masks;

    std::uint64_t mask_of(ElementId e) const;
    bool contains(ElementId e) const;
};

/// A finite partial Boolean algebra. Immutable; copies share storage.
class FinitePBA {
  public:
    static constexpr ElementId none = UINT32_MAX;

    /// Validates; throws InvalidAlgebra or MalformedTable.
    static FinitePBA from_tables(const PbaTables& tables);

    std::size_t size() const;
    ElementId zero() const;
    ElementId one() const;
    ElementId neg(ElementId a) const;
    bool comm(ElementId a, ElementId b) const;
    const Bitset& comm_row(ElementId a) const;
    /// none when a, b are not commeasurable.
    ElementId meet(ElementId a, ElementId b) const;
    ElementId join(ElementId a, ElementId b) const;

    /// Commeasurable partners of a in increasing order, with the aligned
    /// meet and join results.
    const std::vector<ElementId>& partners(ElementId a) const;
    const std::vector<ElementId>& meet_row(ElementId a) const;
    const std::vector<ElementId>& join_row(ElementId a) const;

    const std::string& label(ElementId a) const;
    std::optional<ElementId> find_label(const std::string& label) const;

    /// Maximal Boolean subalgebras, sorted by element list.
    const std::vector<Block>& blocks() const;

    PbaTables to_tables() const;

    /// Storage layout, defined in the implementation.
    struct Data;

  private:
    explicit FinitePBA(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
    std::shared_ptr<const Data> d_;
};

// ---------------------------------------------------------------- builders

/// Power set of the atoms. Element ids are subset bitmasks (bit i = atom i),
/// so 0 is the bottom and 2^n - 1 the top.
FinitePBA from_boolean(const std::vector<std::string>& atoms);

/// The two-element algebra, ids 0 and 1.
const FinitePBA& two();

struct Coproduct {
    FinitePBA algebra;
    /// injections[k][a] is the image of element a of summand k.
    std::vector<std::vector<ElementId>> injections;
};

/// Disjoint union with the constants identified; no commeasurability
/// between summands beyond the constants. Labels are prefixed "k:" when
/// two summands share a non-constant label.
Coproduct coproduct(const std::vector<FinitePBA>& summands);
Coproduct coproduct(const FinitePBA& a, const FinitePBA& b);

struct GluedContext {
    std::string name;
    std::vector<std::string> atoms;
};

struct GluedContextSpec {
    std::vector<GluedContext> contexts;
    /// Expressions: an atom name, several atoms of one context joined by
    /// '+', optionally prefixed by '~'.
    std::vector<std::string> forced_true;
    std::vector<std::string> forced_false;
};

/// Thrown when the identification generated by a glued spec puts two
/// distinct subsets of one context (possibly 0 and 1) in one class.
class GluingCollapse : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

FinitePBA from_glued_contexts(const GluedContextSpec& spec);

// ------------------------------------------------------- order, exclusivity

bool leq(const FinitePBA& A, ElementId a, ElementId b);

/// Least c (by id) with a <= c and b <= neg(c), if any.
std::optional<ElementId> exclusive(const FinitePBA& A, ElementId a, ElementId b);

// ---------------------------------------------------------------- morphisms

using ElementMap = std::vector<ElementId>;

struct MorphismCheck {
    bool ok = true;
    std::string violation;
    std::vector<ElementId> witness;
};

MorphismCheck is_morphism(const ElementMap& map, const FinitePBA& source, const FinitePBA& target);

/// A morphism into two(), found by choosing one true atom per block.
std::optional<ElementMap> find_morphism_to_2(const FinitePBA& A);

/// Visits every morphism into two() in a fixed order; the visitor returns
/// false to stop. Returns the number visited.
std::size_t for_each_morphism_to_2(const FinitePBA& A, const std::function<bool(const ElementMap&)>& visit);

std::vector<ElementMap> all_morphisms_to_2(const FinitePBA& A, std::size_t limit = SIZE_MAX);

/// All morphisms A -> B by backtracking with propagation through the
/// operation tables. Intended for small algebras.
std::vector<ElementMap> all_morphisms(const FinitePBA& A, const FinitePBA& B, std::size_t limit = SIZE_MAX);

/// An isomorphism A -> B, if one exists.
std::optional<ElementMap> find_isomorphism(const FinitePBA& A, const FinitePBA& B);

} // namespace pba
