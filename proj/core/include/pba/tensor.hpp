#pragma once

#include "pba/algebra.hpp"
#include "pba/saturation.hpp"

#include <optional>
#include <string>
#include <vector>

namespace pba {

enum class TensorMode { otimes, boxtimes };

struct TensorResult {
    Coproduct base;
    ExtensionSpec spec;
    QuotientAlgebra quotient;
};

/// Coproduct of A and B with every cross pair made commeasurable; boxtimes
/// also enables the LEP rule in the same run.
TensorResult tensor(const FinitePBA& A, const FinitePBA& B, TensorMode mode, std::size_t depth);

/// The cross relation on the coproduct of A and B.
ElementPairs cross_relation(const Coproduct& c, const FinitePBA& A, const FinitePBA& B);

struct FaithfulnessReport {
    bool base_has_ks = false;
    /// Empty when the extension did not stabilize and nothing forced a verdict.
    std::optional<bool> extension_has_ks;
    bool stabilized = false;
    bool agree = false;
    bool inconclusive = false;
    std::optional<ElementMap> lifted;
    std::optional<ElementMap> pulled_back;
};

/// Compares the K-S property of A and of A[R]: a morphism A -> 2 is lifted
/// along eta, and one on a stabilized A[R] is pulled back.
FaithfulnessReport ks_faithfulness(const FinitePBA& A, const ElementPairs& relation, std::size_t depth);

struct CorollaryStage {
    std::size_t size = 0;
    bool stabilized = false;
    /// A lifted morphism into two() was built and verified on this stage
    /// (on its partial structure when not stabilized).
    bool verified = false;
};

struct CorollaryReport {
    std::vector<CorollaryStage> stages;
    bool passed = false;
    /// A stage did not stabilize, so later stages were not built.
    bool inconclusive = false;
};

/// Stage 0 is the tensor of A and B, stage i the exclusivity extension of
/// stage i-1. Each stage receives the lift of the previous morphism.
/// Throws PreconditionError if A or B has the K-S property.
CorollaryReport corollary_check(const FinitePBA& A, const FinitePBA& B, std::size_t k, std::size_t depth);

} // namespace pba
