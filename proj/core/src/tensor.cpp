#include "pba/tensor.hpp"

#include "pba/analysis.hpp"
#include "pba/errors.hpp"

namespace pba {

ElementPairs cross_relation(const Coproduct& c, const FinitePBA& A, const FinitePBA& B) {
    ElementPairs out;
    for (ElementId a = 0; a < A.size(); ++a) {
        if (a == A.zero() || a == A.one()) continue;
        for (ElementId b = 0; b < B.size(); ++b) {
            if (b == B.zero() || b == B.one()) continue;
            out.emplace_back(c.injections[0][a], c.injections[1][b]);
        }
    }
    return out;
}

TensorResult tensor(const FinitePBA& A, const FinitePBA& B, TensorMode mode, std::size_t depth) {
    Coproduct base = coproduct(A, B);
    ExtensionSpec spec(base.algebra);
    spec.relation = cross_relation(base, A, B);
    spec.lep_rule = mode == TensorMode::boxtimes;
    spec.depth_limit = depth;
    QuotientAlgebra q = saturate(spec);
    return TensorResult{std::move(base), std::move(spec), std::move(q)};
}

FaithfulnessReport ks_faithfulness(const FinitePBA& A, const ElementPairs& relation, std::size_t depth) {
    FaithfulnessReport r;
    KsVerdict va = ks_check(A, KsMethod::both);
    r.base_has_ks = va.has_ks;
    ExtensionSpec spec(A);
    spec.relation = relation;
    spec.depth_limit = depth;
    QuotientAlgebra q = saturate(spec);
    r.stabilized = q.stabilized();
    if (!va.has_ks) {
        r.lifted = lift_morphism(spec, q, *va.certificate, two());
        r.extension_has_ks = false;
    } else {
        // A morphism on A[R] would compose with eta to one on A.
        r.extension_has_ks = true;
    }
    if (q.stabilized()) {
        KsVerdict vq = ks_check(*q.algebra(), KsMethod::both);
        if (r.extension_has_ks && *r.extension_has_ks != vq.has_ks) {
            throw std::logic_error("ks_faithfulness: lifted morphism contradicts the quotient verdict");
        }
        r.extension_has_ks = vq.has_ks;
        if (!vq.has_ks) {
            ElementMap back(A.size());
            for (ElementId a = 0; a < A.size(); ++a) back[a] = (*vq.certificate)[q.eta()[a]];
            auto check = is_morphism(back, A, two());
            if (!check.ok) throw std::logic_error("ks_faithfulness: pulled-back map is not a morphism: " + check.violation);
            r.pulled_back = back;
        }
    }
    r.inconclusive = !r.extension_has_ks.has_value();
    r.agree = !r.inconclusive && *r.extension_has_ks == r.base_has_ks;
    return r;
}

CorollaryReport corollary_check(const FinitePBA& A, const FinitePBA& B, std::size_t k, std::size_t depth) {
    KsVerdict va = ks_check(A, KsMethod::both);
    KsVerdict vb = ks_check(B, KsMethod::both);
    if (va.has_ks || vb.has_ks) throw PreconditionError("corollary_check: an operand has the K-S property");

    CorollaryReport report;
    TensorResult t = tensor(A, B, TensorMode::otimes, depth);
    ElementMap h(t.base.algebra.size());
    for (ElementId a = 0; a < A.size(); ++a) h[t.base.injections[0][a]] = (*va.certificate)[a];
    for (ElementId b = 0; b < B.size(); ++b) h[t.base.injections[1][b]] = (*vb.certificate)[b];

    ElementMap lifted = lift_morphism(t.spec, t.quotient, h, two());
    report.stages.push_back({t.quotient.size(), t.quotient.stabilized(), true});
    std::optional<FinitePBA> current = t.quotient.algebra();
    for (std::size_t i = 1; i <= k && current; ++i) {
        ExtensionSpec spec(*current);
        spec.relation = perp_pairs(*current);
        spec.depth_limit = depth;
        QuotientAlgebra q = saturate(spec);
        lifted = lift_morphism(spec, q, lifted, two());
        report.stages.push_back({q.size(), q.stabilized(), true});
        current = q.algebra();
    }
    report.inconclusive = report.stages.size() < k + 1;
    report.passed = !report.inconclusive;
    return report;
}

} // namespace pba
