#include "support/checks.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

#include "pba/pba.hpp"
#include "pba_cli/examples.hpp"

#include <doctest.h>

#include <functional>
#include <map>
#include <set>

using namespace pba;
using checks::Cross;
using checks::InvariantProbe;
using checks::truth_tables;

TEST_SUITE("saturation") {

TEST_CASE("empty relation gives back the base") {
    for (const auto& n : fixtures::small_registry_algebras()) {
        CAPTURE(n.name);
        QuotientAlgebra q = saturate(ExtensionSpec(n.algebra));
        REQUIRE(q.stabilized());
        CHECK(q.size() == n.algebra.size());
        auto iso = find_isomorphism(n.algebra, *q.algebra());
        REQUIRE(iso);
        CHECK(*iso == q.eta());
    }
}

TEST_CASE("(4+4) with the cross relation is the 16-element Boolean algebra") {
    Cross x;
    QuotientAlgebra q = saturate(x.spec);
    REQUIRE(q.stabilized());
    CHECK(q.size() == 16);
    CHECK(find_isomorphism(*q.algebra(), from_boolean({"a", "b", "c", "d"})).has_value());
    // The truth-table oracle: classes are exactly the 16 Boolean functions
    // of p and q, with matching operations.
    auto tt = truth_tables(q, x.base);
    CHECK(std::set<std::uint32_t>(tt.begin(), tt.end()).size() == 16);
    for (ElementId c = 0; c < q.size(); ++c) {
        CHECK(tt[q.neg(c)] == (15 & ~tt[c]));
        for (ElementId d = 0; d < q.size(); ++d) {
            REQUIRE(q.comm(c, d));
            CHECK(tt[q.meet(c, d)] == (tt[c] & tt[d]));
            CHECK(tt[q.join(c, d)] == (tt[c] | tt[d]));
        }
    }
}

TEST_CASE("distributivity holds once three generators are pairwise commeasurable") {
    FinitePBA four = from_boolean({"p", "q"});
    Coproduct c = coproduct(std::vector<FinitePBA>{four, four, four});
    ExtensionSpec spec(c.algebra);
    ElementId t = c.injections[0][1], u = c.injections[1][1], v = c.injections[2][1];
    spec.relation = {{t, u}, {u, v}, {t, v}};
    QuotientAlgebra q = saturate(spec);
    REQUIRE(q.stabilized());
    Term T = Term::gen(t), U = Term::gen(u), V = Term::gen(v);
    ElementId lhs = q.evaluate(Term::meet(T, Term::join(U, V)));
    ElementId rhs = q.evaluate(Term::join(Term::meet(T, U), Term::meet(T, V)));
    CHECK(lhs != FinitePBA::none);
    CHECK(lhs == rhs);
    CHECK(q.size() == 256);

}

TEST_CASE("a small sample of Boolean identities on quotient terms") {
    Cross x;
    QuotientAlgebra q = saturate(x.spec);
    Term p = Term::gen(x.base.injections[0][1]);
    Term r = Term::gen(x.base.injections[1][1]);
    CHECK(q.evaluate(Term::neg(Term::meet(p, r))) == q.evaluate(Term::join(Term::neg(p), Term::neg(r))));
    CHECK(q.evaluate(Term::join(p, Term::meet(p, r))) == q.evaluate(p));
    CHECK(q.evaluate(Term::meet(p, Term::neg(p))) == q.zero());
    CHECK(q.evaluate(Term::join(Term::meet(p, r), Term::meet(p, Term::neg(r)))) == q.evaluate(p));
}

TEST_CASE("force_equal p = 0 in 4 gives 2") {
    FinitePBA four = from_boolean({"p", "q"});
    ExtensionSpec spec(four);
    spec.force_equal = {{1, four.zero()}};
    QuotientAlgebra q = saturate(spec);
    REQUIRE(q.stabilized());
    CHECK(q.size() == 2);
    CHECK(q.eta() == std::vector<ElementId>{q.zero(), q.zero(), q.one(), q.one()});
}

TEST_CASE("forcing 0 = 1 collapses to a single class") {
    FinitePBA four = from_boolean({"p", "q"});
    ExtensionSpec spec(four);
    spec.force_equal = {{four.zero(), four.one()}};
    QuotientAlgebra q = saturate(spec);
    CHECK(q.size() == 1);
    CHECK(q.zero() == q.one());
}

TEST_CASE("coequaliser") {
    FinitePBA four = from_boolean({"p", "q"});
    ElementMap id{0, 1, 2, 3};
    QuotientAlgebra same = coequaliser(id, id, four, 4);
    REQUIRE(same.stabilized());
    CHECK(same.size() == 4);
    // Both injections of 2 into 2+2 = 2 agree.
    Coproduct c = coproduct(two(), two());
    QuotientAlgebra q = coequaliser(c.injections[0], c.injections[1], c.algebra, 4);
    CHECK(q.size() == 2);
    // The swap p <-> q of 4 coequalises with the identity into 2.
    ElementMap swap{0, 2, 1, 3};
    QuotientAlgebra s = coequaliser(id, swap, four, 4);
    REQUIRE(s.stabilized());
    CHECK(s.size() == 1);
}

TEST_CASE("lift_morphism") {
    FinitePBA four = from_boolean({"p", "q"});
    ExtensionSpec plain(four);
    QuotientAlgebra q = saturate(plain);
    ElementMap lifted = lift_morphism(plain, q, {0, 1, 2, 3}, four);
    CHECK(lifted == ElementMap{0, 1, 2, 3});

    // Any morphism to 2 lifts across the full relation.
    Cross x;
    ExtensionSpec full(x.base.algebra);
    for (ElementId a = 0; a < x.base.algebra.size(); ++a) {
        for (ElementId b = a + 1; b < x.base.algebra.size(); ++b) full.relation.emplace_back(a, b);
    }
    QuotientAlgebra qf = saturate(full);
    REQUIRE(qf.stabilized());
    for (const auto& h : all_morphisms_to_2(x.base.algebra)) {
        ElementMap hh = lift_morphism(full, qf, h, two());
        CHECK(is_morphism(hh, *qf.algebra(), two()).ok);
        for (ElementId a = 0; a < h.size(); ++a) CHECK(hh[qf.eta()[a]] == h[a]);
    }

    // A morphism separating a forced pair is refused.
    ExtensionSpec forced(four);
    forced.force_equal = {{1, 2}};
    QuotientAlgebra qq = saturate(forced);
    CHECK_THROWS_AS(lift_morphism(forced, qq, {0, 1, 0, 1}, two()), PreconditionError);
}

TEST_CASE("lep_saturate") {
    FinitePBA sixteen = fixtures::registry_algebra("sixteen");
    QuotientAlgebra b = lep_saturate(sixteen, 4);
    REQUIRE(b.stabilized());
    CHECK(b.size() == 16);

    FinitePBA chsh = fixtures::registry_algebra("chsh-algebra");
    QuotientAlgebra q = lep_saturate(chsh, 4);
    REQUIRE(q.stabilized());
    std::size_t before = 0;
    for (ElementId a = 0; a < chsh.size(); ++a) before += chsh.comm_row(a).count();
    CHECK(q.comm_pairs() > before);
    CHECK(lep_check(*q.algebra()).holds);
    ElementId s = q.eta()[*chsh.find_label("[a1=0,b1=0]")];
    ElementId t = q.eta()[*chsh.find_label("[a1=1,b2=0]")];
    CHECK(q.comm(s, t));

    Cross x;
    ExtensionSpec with_lep = x.spec;
    with_lep.lep_rule = true;
    QuotientAlgebra ql = saturate(with_lep);
    REQUIRE(ql.stabilized());
    CHECK(find_morphism_to_2(*ql.algebra()).has_value());
}

TEST_CASE("perp_extension of CHSH adds the exclusive pairs") {
    FinitePBA chsh = fixtures::registry_algebra("chsh-algebra");
    QuotientAlgebra q = perp_extension(chsh, 4);
    REQUIRE(q.stabilized());
    for (auto [a, b] : perp_pairs(chsh)) CHECK(q.comm(q.eta()[a], q.eta()[b]));
}

TEST_CASE("depth-bounded runs are flagged") {
    FinitePBA chsh = fixtures::registry_algebra("chsh-algebra");
    ExtensionSpec spec(chsh);
    spec.relation = perp_pairs(chsh);
    spec.depth_limit = 0;
    QuotientAlgebra q = saturate(spec);
    CHECK_FALSE(q.stabilized());
    CHECK_FALSE(q.algebra().has_value());
}

TEST_CASE("invariants hold after every phase") {
    Cross x;
    FinitePBA chsh = fixtures::registry_algebra("chsh-algebra");
    FinitePBA glued = fixtures::registry_algebra("glued-uv-uw");
    ExtensionSpec lep(chsh);
    lep.lep_rule = true;
    ExtensionSpec perp(glued);
    perp.relation = perp_pairs(glued);
    std::vector<std::pair<std::string, ExtensionSpec>> specs = {{"cross", x.spec}, {"chsh lep", lep}, {"glued perp", perp}};
    for (const auto& [name, spec] : specs) {
        CAPTURE(name);
        InvariantProbe probe;
        probe.lep = spec.lep_rule;
        QuotientAlgebra q = saturate(spec, std::ref(probe));
        CHECK(q.stabilized());
        CHECK(probe.calls > 3);
        CHECK(probe.failures == 0);
        // eta is a morphism and sends related pairs to commeasurable ones.
        CHECK(is_morphism(q.eta(), spec.base, *q.algebra()).ok);
        for (auto [a, b] : spec.relation) CHECK(q.comm(q.eta()[a], q.eta()[b]));
    }
}

TEST_CASE("property: classes at depth d map into depth d+1") {
    FinitePBA chsh = fixtures::registry_algebra("chsh-algebra");
    ExtensionSpec spec(chsh);
    spec.relation = perp_pairs(chsh);
    for (std::size_t d = 0; d < 3; ++d) {
        spec.depth_limit = d;
        QuotientAlgebra lo = saturate(spec);
        spec.depth_limit = d + 1;
        QuotientAlgebra hi = saturate(spec);
        CAPTURE(d);
        std::vector<ElementId> image(lo.size());
        std::function<Term(std::uint32_t)> to_term = [&](std::uint32_t t) -> Term {
            const PreTerm& p = lo.term(t);
            switch (p.kind) {
            case TermKind::generator: return Term::gen(p.a);
            case TermKind::zero: return Term::zero();
            case TermKind::one: return Term::one();
            case TermKind::neg: return Term::neg(to_term(p.a));
            case TermKind::meet: return Term::meet(to_term(p.a), to_term(p.b));
            case TermKind::join: return Term::join(to_term(p.a), to_term(p.b));
            }
            return Term::zero();
        };
        for (ElementId c = 0; c < lo.size(); ++c) {
            image[c] = hi.evaluate(to_term(lo.rep_term(c)));
            CHECK(image[c] != FinitePBA::none);
        }
        for (ElementId c = 0; c < lo.size(); ++c) {
            for (ElementId e = 0; e < lo.size(); ++e) {
                if (lo.comm(c, e)) CHECK(hi.comm(image[c], image[e]));
            }
        }
    }
}

TEST_CASE("property: universal property on small quotients") {
    for (const auto& [name, spec] : checks::small_quotient_specs()) {
        CAPTURE(name);
        QuotientAlgebra q = saturate(spec);
        REQUIRE(q.stabilized());
        REQUIRE(q.size() <= 20);
        CHECK(checks::universal_property_failures(spec, q, checks::small_targets()) == 0);
    }
}

} // TEST_SUITE
