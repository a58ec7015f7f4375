#include "pba_cli/examples.hpp"

#include <algorithm>

namespace pba::examples {

namespace {

const std::vector<std::string> kBits = {"0", "1"};

Scenario dichotomic(const std::vector<std::string>& names, const std::vector<std::pair<std::string, std::string>>& compat) {
    std::map<std::string, std::vector<std::string>> outcomes;
    for (const auto& n : names) outcomes[n] = kBits;
    return Scenario(names, compat, outcomes);
}

/// p(a,b | x,y) = 1/2 when a xor b = x*y.
Rational pr(std::size_t x, std::size_t y, std::size_t a, std::size_t b) {
    return (a ^ b) == (x & y) ? Rational(1, 2) : Rational(0);
}

/// Setting index of a measurement name such as "a2" -> 1.
std::size_t setting(const std::string& name) { return static_cast<std::size_t>(name.back() - '1'); }

} // namespace

Scenario single_measurement() { return dichotomic({"a"}, {}); }

Scenario two_compatible() { return dichotomic({"a", "b"}, {{"a", "b"}}); }

Scenario two_incompatible() { return dichotomic({"a", "b"}, {}); }

Scenario path_three() { return dichotomic({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}}); }

Scenario chsh() {
    return dichotomic({"a1", "a2", "b1", "b2"}, {{"a1", "b1"}, {"a1", "b2"}, {"a2", "b1"}, {"a2", "b2"}});
}

Scenario magic_square() {
    std::vector<std::string> names;
    for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) names.push_back("m" + std::to_string(r) + std::to_string(c));
    }
    std::vector<std::pair<std::string, std::string>> compat;
    for (const auto& x : names) {
        for (const auto& y : names) {
            if (x < y && (x[1] == y[1] || x[2] == y[2])) compat.emplace_back(x, y);
        }
    }
    return dichotomic(names, compat);
}

Scenario bell_422() {
    std::vector<std::string> names;
    for (char p : std::string("abcd")) {
        names.push_back(std::string(1, p) + "1");
        names.push_back(std::string(1, p) + "2");
    }
    std::vector<std::pair<std::string, std::string>> compat;
    for (const auto& x : names) {
        for (const auto& y : names) {
            if (x < y && x[0] != y[0]) compat.emplace_back(x, y);
        }
    }
    return dichotomic(names, compat);
}

EmpiricalModel pr_box() {
    EmpiricalModel m(chsh());
    const Scenario& s = m.scenario;
    for (const auto& ctx : maximal_cliques(s)) {
        Distribution d{ctx, std::vector<Rational>(s.num_events(ctx))};
        for (std::size_t e = 0; e < d.probs.size(); ++e) {
            Event ev = s.event_at(ctx, e);
            d.probs[e] = pr(setting(s.name(ctx[0])), setting(s.name(ctx[1])), ev[0], ev[1]);
        }
        m.distributions.push_back(std::move(d));
    }
    return m;
}

EmpiricalModel two_pr_boxes() {
    EmpiricalModel m(bell_422());
    const Scenario& s = m.scenario;
    for (const auto& ctx : maximal_cliques(s)) {
        Distribution d{ctx, std::vector<Rational>(s.num_events(ctx))};
        for (std::size_t e = 0; e < d.probs.size(); ++e) {
            Event ev = s.event_at(ctx, e);
            auto x = [&](std::size_t k) { return setting(s.name(ctx[k])); };
            d.probs[e] = pr(x(0), x(1), ev[0], ev[1]) * pr(x(2), x(3), ev[2], ev[3]);
        }
        m.distributions.push_back(std::move(d));
    }
    return m;
}

EmpiricalModel chsh_deterministic() { return deterministic_model(chsh(), {0, 0, 0, 0}); }

GluedContextSpec glued_uv_uw() {
    GluedContextSpec spec;
    spec.contexts = {{"c1", {"u", "v"}}, {"c2", {"u", "w"}}};
    return spec;
}

GluedContextSpec cabello_18() {
    const std::vector<std::vector<std::string>> atoms = {
        {"0001", "0010", "1100", "1m00"}, {"0001", "0100", "1010", "10m0"}, {"1m1m", "1mm1", "1100", "0011"},
        {"1m1m", "1111", "10m0", "010m"}, {"0010", "0100", "1001", "100m"}, {"1mm1", "1111", "100m", "01m0"},
        {"11m1", "111m", "1m00", "0011"}, {"11m1", "m111", "1010", "010m"}, {"111m", "m111", "1001", "01m0"},
    };
    GluedContextSpec spec;
    for (std::size_t i = 0; i < atoms.size(); ++i) spec.contexts.push_back({"c" + std::to_string(i + 1), atoms[i]});
    return spec;
}

ExtensionSpec forced_magic_square_spec() {
    Scenario s = magic_square();
    ScenarioAlgebra sa = build_BX(s);
    ExtensionSpec spec(sa.algebra);
    for (const auto& ctx : maximal_cliques(s)) {
        bool row = s.name(ctx[0])[1] == s.name(ctx[1])[1];
        std::size_t parity = !row && s.name(ctx[0])[2] == '2' ? 1 : 0;
        std::uint64_t mask = 0;
        for (std::size_t e = 0; e < s.num_events(ctx); ++e) {
            Event ev = s.event_at(ctx, e);
            std::size_t p = 0;
            for (auto o : ev) p ^= o;
            if (p == parity) mask |= std::uint64_t{1} << e;
        }
        spec.force_equal.emplace_back(sa.element(s, ctx, mask), sa.algebra.one());
    }
    return spec;
}

FinitePBA forced_magic_square() {
    QuotientAlgebra q = saturate(forced_magic_square_spec());
    if (!q.algebra()) throw std::logic_error("forced magic square did not stabilize");
    return *q.algebra();
}

std::vector<std::pair<std::string, Scenario>> small_scenarios() {
    return {{"single-measurement", single_measurement()},
            {"two-compatible", two_compatible()},
            {"two-incompatible", two_incompatible()},
            {"path-three", path_three()},
            {"chsh", chsh()}};
}

} // namespace pba::examples

namespace pba::cli {

namespace ex = pba::examples;

namespace {

std::vector<ExampleEntry> build_registry() {
    std::vector<ExampleEntry> r;
    auto boolean = [](std::vector<std::string> atoms) { return [atoms] { return pba_to_json(from_boolean(atoms)); }; };
    r.push_back({"two", "pba", "two-element Boolean algebra", [] { return pba_to_json(two()); }});
    r.push_back({"four", "pba", "Boolean algebra on atoms p, q", boolean({"p", "q"})});
    r.push_back({"sixteen", "pba", "Boolean algebra on atoms p, q, r, s", boolean({"p", "q", "r", "s"})});
    r.push_back({"four-plus-four", "pba", "coproduct of two four-element algebras", [] {
                     FinitePBA f = from_boolean({"p", "q"});
                     return pba_to_json(coproduct(f, f).algebra);
                 }});
    r.push_back({"four-plus-four-cross", "extension", "4+4 with every cross pair made commeasurable", [] {
                     FinitePBA f = from_boolean({"p", "q"});
                     Coproduct c = coproduct(f, f);
                     ExtensionSpec spec(c.algebra);
                     spec.relation = cross_relation(c, f, f);
                     return extension_to_json(spec);
                 }});
    r.push_back({"glued-uv-uw", "pba", "two contexts {u,v} and {u,w} glued along u",
                 [] { return glued_to_json(ex::glued_uv_uw()); }});
    r.push_back({"cabello-18", "pba", "18 atoms in 9 four-atom contexts",
                 [] { return glued_to_json(ex::cabello_18()); }});
    r.push_back({"single-measurement", "scenario", "one two-outcome measurement",
                 [] { return scenario_to_json(ex::single_measurement()); }});
    r.push_back({"two-compatible", "scenario", "two compatible measurements",
                 [] { return scenario_to_json(ex::two_compatible()); }});
    r.push_back({"two-incompatible", "scenario", "two incompatible measurements",
                 [] { return scenario_to_json(ex::two_incompatible()); }});
    r.push_back({"path-three", "scenario", "a-b and b-c compatible", [] { return scenario_to_json(ex::path_three()); }});
    r.push_back({"chsh", "scenario", "two parties, two settings each", [] { return scenario_to_json(ex::chsh()); }});
    r.push_back({"chsh-algebra", "pba", "event algebra of the CHSH scenario",
                 [] { return pba_to_json(build_BX(ex::chsh()).algebra); }});
    r.push_back({"magic-square", "scenario", "3x3 grid, rows and columns are contexts",
                 [] { return scenario_to_json(ex::magic_square()); }});
    r.push_back({"magic-square-algebra", "pba", "event algebra of the magic-square scenario",
                 [] { return pba_to_json(build_BX(ex::magic_square()).algebra); }});
    r.push_back({"magic-square-forced", "pba", "magic-square algebra with parity constraints forced",
                 [] { return pba_to_json(ex::forced_magic_square()); }});
    r.push_back({"bell-422", "scenario", "four parties, two settings, two outcomes",
                 [] { return scenario_to_json(ex::bell_422()); }});
    r.push_back({"pr-box", "model", "PR box on CHSH", [] { return model_to_json(ex::pr_box()); }});
    r.push_back({"two-pr-boxes", "model", "independent PR boxes on (a,b) and (c,d)",
                 [] { return model_to_json(ex::two_pr_boxes()); }});
    r.push_back({"chsh-deterministic", "model", "all outcomes 0 on CHSH",
                 [] { return model_to_json(ex::chsh_deterministic()); }});
    r.push_back({"pr-box-state", "state", "PR box as a state on the CHSH algebra", [] {
                     Scenario s = ex::chsh();
                     ScenarioAlgebra sa = build_BX(s);
                     return state_to_json(scenario_to_json(s), sa.algebra, model_to_state(sa, ex::pr_box()));
                 }});
    std::sort(r.begin(), r.end(), [](const ExampleEntry& a, const ExampleEntry& b) { return a.name < b.name; });
    return r;
}

} // namespace

const std::vector<ExampleEntry>& example_registry() {
    static const std::vector<ExampleEntry> registry = build_registry();
    return registry;
}

const ExampleEntry* find_example(const std::string& name) {
    for (const auto& e : example_registry()) {
        if (e.name == name) return &e;
    }
    return nullptr;
}

} // namespace pba::cli
