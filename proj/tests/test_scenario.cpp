#include "support/fixtures.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

#include "pba/pba.hpp"
#include "pba_cli/examples.hpp"

#include <doctest.h>

using namespace pba;
namespace ex = pba::examples;

namespace {

std::vector<std::string> keys(const Scenario& s) {
    std::vector<std::string> out;
    for (const auto& c : maximal_cliques(s)) out.push_back(s.context_key(c));
    return out;
}

} // namespace

TEST_SUITE("scenario") {

TEST_CASE("maximal cliques") {
    CHECK(keys(ex::chsh()) == std::vector<std::string>{"a1,b1", "a1,b2", "a2,b1", "a2,b2"});
    Scenario tri = Scenario({"x", "y", "z"}, {{"x", "y"}, {"y", "z"}, {"x", "z"}},
                            {{"x", {"0", "1"}}, {"y", {"0", "1"}}, {"z", {"0", "1"}}});
    CHECK(keys(tri) == std::vector<std::string>{"x,y,z"});
    auto magic = maximal_cliques(ex::magic_square());
    CHECK(magic.size() == 6);
    for (const auto& c : magic) CHECK(c.size() == 3);
    CHECK(keys(ex::two_incompatible()) == std::vector<std::string>{"a", "b"});
}

TEST_CASE("scenario construction errors") {
    CHECK_THROWS_AS(Scenario({"a"}, {{"a", "b"}}, {{"a", {"0"}}}), PreconditionError);
    CHECK_THROWS_AS(Scenario({"a"}, {}, {{"a", {}}}), PreconditionError);
    CHECK_THROWS_AS(Scenario({"a", "a"}, {}, {{"a", {"0"}}}), PreconditionError);
}

TEST_CASE("marginalise") {
    EmpiricalModel m = ex::pr_box();
    const Scenario& s = m.scenario;
    Distribution d = marginalise(s, m.distributions[0], {m.distributions[0].context[0]});
    CHECK(d.probs == std::vector<Rational>{Rational(1, 2), Rational(1, 2)});
    Distribution e = marginalise(s, m.distributions[0], {});
    CHECK(e.probs == std::vector<Rational>{Rational(1)});
    // Product distribution on {a, b}.
    Scenario two = ex::two_compatible();
    Distribution prod{{0, 1}, {Rational(1, 6), Rational(1, 3), Rational(1, 6), Rational(1, 3)}};
    CHECK(marginalise(two, prod, {0}).probs == std::vector<Rational>{Rational(1, 2), Rational(1, 2)});
    CHECK(marginalise(two, prod, {1}).probs == std::vector<Rational>{Rational(1, 3), Rational(2, 3)});
}

TEST_CASE("property: marginalisation is functorial") {
    gen::Rng rng(11);
    Scenario s = ex::bell_422();
    EmpiricalModel m = ex::two_pr_boxes();
    for (int i = 0; i < 30; ++i) {
        const Distribution& tau = m.distributions[gen::uniform(rng, 0, m.distributions.size() - 1)];
        Context sigma, rho;
        for (auto x : tau.context) {
            if (gen::coin(rng)) {
                sigma.push_back(x);
                if (gen::coin(rng)) rho.push_back(x);
            }
        }
        Distribution via = marginalise(s, marginalise(s, tau, sigma), rho);
        CHECK(via.probs == marginalise(s, tau, rho).probs);
    }
}

TEST_CASE("validate_model") {
    CHECK(validate_model(ex::pr_box()).ok());
    CHECK(validate_model(ex::two_pr_boxes()).ok());
    CHECK(validate_model(ex::chsh_deterministic()).ok());
    EmpiricalModel bad = ex::pr_box();
    // Shift mass within a1,b1 so that a1's marginal changes.
    bad.distributions[0].probs = {Rational(1), 0, 0, 0};
    ModelReport r = validate_model(bad);
    REQUIRE_FALSE(r.ok());
    bool overlap = false;
    for (const auto& v : r.violations) overlap = overlap || v.kind == "overlap disagreement";
    CHECK(overlap);
    EmpiricalModel neg = ex::pr_box();
    neg.distributions[0].probs = {Rational(3, 2), Rational(-1, 2), 0, 0};
    CHECK_FALSE(validate_model(neg).ok());
    EmpiricalModel missing = ex::pr_box();
    missing.distributions.pop_back();
    CHECK_FALSE(validate_model(missing).ok());
}

TEST_CASE("build_BX sizes") {
    CHECK(build_BX(ex::single_measurement()).algebra.size() == 4);
    CHECK(build_BX(ex::two_incompatible()).algebra.size() == 6);
    FinitePBA two_compat = build_BX(ex::two_compatible()).algebra;
    CHECK(two_compat.size() == 16);
    CHECK(two_compat.blocks().size() == 1);
    CHECK(two_compat.blocks()[0].atoms.size() == 4);
    ScenarioAlgebra chsh = build_BX(ex::chsh());
    CHECK(chsh.algebra.size() == 50);
    CHECK(oracle::count_cylinders(ex::chsh()) == 50);
    CHECK(build_BX(ex::magic_square()).algebra.size() == oracle::count_cylinders(ex::magic_square()));
    CHECK_THROWS_AS(build_BX(ex::bell_422()), SizeLimitExceeded);
}

TEST_CASE("build_BX: commeasurability is clique union of supports") {
    Scenario s = ex::chsh();
    ScenarioAlgebra sa = build_BX(s);
    for (ElementId a = 0; a < sa.algebra.size(); ++a) {
        for (ElementId b = 0; b < sa.algebra.size(); ++b) {
            Context u = sa.elements[a].support;
            u.insert(u.end(), sa.elements[b].support.begin(), sa.elements[b].support.end());
            std::sort(u.begin(), u.end());
            u.erase(std::unique(u.begin(), u.end()), u.end());
            CHECK(sa.algebra.comm(a, b) == s.is_context(u));
        }
    }
}

TEST_CASE("build_BX: blocks are the context algebras") {
    for (const auto& [name, s] : ex::small_scenarios()) {
        CAPTURE(name);
        ScenarioAlgebra sa = build_BX(s);
        auto ctxs = maximal_cliques(s);
        REQUIRE(sa.algebra.blocks().size() == ctxs.size());
        std::set<std::size_t> sizes;
        for (const auto& c : ctxs) {
            std::set<ElementId> elems;
            for (std::uint64_t m = 0; m < (std::uint64_t{1} << s.num_events(c)); ++m) elems.insert(sa.element(s, c, m));
            bool found = false;
            for (const auto& b : sa.algebra.blocks()) {
                found = found || std::set<ElementId>(b.elements.begin(), b.elements.end()) == elems;
            }
            CHECK(found);
        }
    }
}

TEST_CASE("property: build_BX size equals the cylinder count on random scenarios") {
    gen::Rng rng(5150);
    for (int i = 0; i < 40; ++i) {
        Scenario s = gen::scenario(rng, 5, 0.4);
        CAPTURE(i);
        bool big = false;
        for (const auto& c : maximal_cliques(s)) big = big || c.size() > 3;
        if (big) {
            CHECK_THROWS_AS(build_BX(s), SizeLimitExceeded);
            continue;
        }
        ScenarioAlgebra sa = build_BX(s);
        CHECK(sa.algebra.size() == oracle::count_cylinders(s));
        CHECK(validate(sa.algebra.to_tables()).ok());
    }
}

TEST_CASE("build_AX_saturated agrees with build_BX") {
    SaturatedScenario one = build_AX_saturated(ex::single_measurement(), 4);
    CHECK(one.quotient.stabilized());
    CHECK(one.quotient.size() == 4);
    SaturatedScenario two = build_AX_saturated(ex::two_compatible(), 4);
    CHECK(two.quotient.stabilized());
    CHECK(two.quotient.size() == 16);
    for (const auto& [name, s] : ex::small_scenarios()) {
        CAPTURE(name);
        SaturatedScenario ax = build_AX_saturated(s, 4);
        REQUIRE(ax.quotient.stabilized());
        CHECK(find_isomorphism(*ax.quotient.algebra(), build_BX(s).algebra).has_value());
    }
}

TEST_CASE("model_to_state and back") {
    Scenario s = ex::chsh();
    ScenarioAlgebra sa = build_BX(s);
    StateValues v = model_to_state(sa, ex::pr_box());
    CHECK(v[*sa.algebra.find_label("[a1=0]")] == Rational(1, 2));
    CHECK(is_state(sa.algebra, v).ok());
    for (const auto& m : {ex::pr_box(), ex::chsh_deterministic()}) {
        EmpiricalModel back = state_to_model(s, sa, model_to_state(sa, m));
        REQUIRE(back.distributions.size() == m.distributions.size());
        for (std::size_t i = 0; i < m.distributions.size(); ++i) CHECK(back.distributions[i].probs == m.distributions[i].probs);
    }
    // A deterministic model gives the indicator of a morphism to 2.
    StateValues d = model_to_state(sa, ex::chsh_deterministic());
    ElementMap h(d.size());
    for (std::size_t e = 0; e < d.size(); ++e) {
        REQUIRE((d[e] == 0 || d[e] == 1));
        h[e] = d[e] == 1 ? two().one() : two().zero();
    }
    CHECK(is_morphism(h, sa.algebra, two()).ok);
}

TEST_CASE("property: random models round-trip and give states") {
    gen::Rng rng(99);
    for (int i = 0; i < 25; ++i) {
        Scenario s = gen::scenario(rng, 4);
        ScenarioAlgebra sa = build_BX(s);
        auto hs = all_morphisms_to_2(sa.algebra);
        StateValues v = gen::mixture(rng, sa.algebra, hs);
        CHECK(is_state(sa.algebra, v).ok());
        EmpiricalModel m = state_to_model(s, sa, v);
        CHECK(validate_model(m).ok());
        CHECK(model_to_state(sa, m) == v);
    }
}

TEST_CASE("model_pep_check") {
    CHECK(model_pep_check(ex::chsh_deterministic()).holds);
    ModelPepVerdict one = model_pep_check(ex::pr_box());
    CHECK(one.holds);
    CHECK(one.max_sum <= 1);
    EmpiricalModel m = ex::two_pr_boxes();
    ModelPepVerdict two = model_pep_check(m);
    REQUIRE_FALSE(two.holds);
    CHECK(two.sum > 1);
    // Independent re-check of the family: pairwise exclusive events whose
    // probabilities add up to the reported sum.
    auto ctxs = maximal_cliques(m.scenario);
    Rational total = 0;
    for (std::size_t i = 0; i < two.family.size(); ++i) {
        const auto& fi = two.family[i];
        total += m.distributions[fi.context].probs[fi.event];
        Event ei = m.scenario.event_at(ctxs[fi.context], fi.event);
        for (std::size_t j = i + 1; j < two.family.size(); ++j) {
            const auto& fj = two.family[j];
            Event ej = m.scenario.event_at(ctxs[fj.context], fj.event);
            bool clash = false;
            for (std::size_t a = 0; a < ctxs[fi.context].size(); ++a) {
                for (std::size_t b = 0; b < ctxs[fj.context].size(); ++b) {
                    if (ctxs[fi.context][a] == ctxs[fj.context][b] && ei[a] != ej[b]) clash = true;
                }
            }
            CHECK(clash);
        }
    }
    CHECK(total == two.sum);
}

TEST_CASE("model_pep_check matches the state check restricted to events") {
    Scenario s = ex::chsh();
    ScenarioAlgebra sa = build_BX(s);
    auto perp = perp_sets(sa.algebra);
    auto ctxs = maximal_cliques(s);
    for (const auto& m : {ex::pr_box(), ex::chsh_deterministic()}) {
        StateValues v = model_to_state(sa, m);
        std::vector<ElementId> events;
        for (const auto& c : ctxs) {
            for (std::size_t e = 0; e < s.num_events(c); ++e) events.push_back(sa.event_element(s, c, s.event_at(c, e)));
        }
        // Largest sum over pairwise-exclusive subsets of the 16 events.
        Rational best = 0;
        for (std::uint32_t mask = 1; mask < (1u << events.size()); ++mask) {
            bool ok = true;
            Rational sum = 0;
            for (std::size_t i = 0; i < events.size() && ok; ++i) {
                if (!(mask >> i & 1u)) continue;
                sum += v[events[i]];
                for (std::size_t j = i + 1; j < events.size(); ++j) {
                    if ((mask >> j & 1u) && !perp[events[i]].test(events[j])) {
                        ok = false;
                        break;
                    }
                }
            }
            if (ok && sum > best) best = sum;
        }
        CHECK(model_pep_check(m).max_sum == best);
    }
}

TEST_CASE("model_noncontextual") {
    ModelContextuality pr = model_noncontextual(ex::pr_box());
    CHECK_FALSE(pr.noncontextual);
    CHECK(pr.num_global == 16);
    ModelContextuality det = model_noncontextual(ex::chsh_deterministic());
    CHECK(det.noncontextual);
    Rational total = 0;
    for (const auto& w : det.weights) total += w;
    CHECK(total == 1);
}

} // TEST_SUITE
