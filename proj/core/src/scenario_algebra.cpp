#include "pba/errors.hpp"
#include "pba/scenario.hpp"

#include <algorithm>
#include <set>
#include <tuple>
#include <unordered_set>

namespace pba {

namespace {

constexpr std::size_t kMaxContextEvents = 12;

struct Canonical {
    Context support;
    std::uint64_t events;
};

// Reduces a subset of Ev(tau) to its minimal cylinder support: position i
// is kept when some member event leaves the set after changing its i-th
// outcome.
Canonical canonical(const Scenario& s, const Context& tau, std::uint64_t mask) {
    const std::size_t n = s.num_events(tau);
    std::vector<std::size_t> radix, stride(tau.size());
    for (auto x : tau) radix.push_back(s.outcomes(x).size());
    std::size_t st = 1;
    for (std::size_t i = tau.size(); i-- > 0;) {
        stride[i] = st;
        st *= radix[i];
    }
    std::vector<bool> relevant(tau.size(), false);
    for (std::size_t e = 0; e < n; ++e) {
        if (!(mask >> e & 1u)) continue;
        for (std::size_t i = 0; i < tau.size(); ++i) {
            if (relevant[i]) continue;
            std::size_t digit = (e / stride[i]) % radix[i];
            std::size_t base = e - digit * stride[i];
            for (std::size_t v = 0; v < radix[i]; ++v) {
                if (!(mask >> (base + v * stride[i]) & 1u)) {
                    relevant[i] = true;
                    break;
                }
            }
        }
    }
    Canonical c;
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < tau.size(); ++i) {
        if (relevant[i]) {
            c.support.push_back(tau[i]);
            keep.push_back(i);
        }
    }
    c.events = 0;
    for (std::size_t e = 0; e < n; ++e) {
        if (!(mask >> e & 1u)) continue;
        std::size_t idx = 0;
        for (auto i : keep) idx = idx * radix[i] + (e / stride[i]) % radix[i];
        c.events |= 1ULL << idx;
    }
    return c;
}

std::string element_label(const Scenario& s, const ScenarioElement& el) {
    if (el.support.empty()) return el.events ? "1" : "0";
    std::string out;
    for (std::size_t e = 0; e < s.num_events(el.support); ++e) {
        if (!(el.events >> e & 1u)) continue;
        if (!out.empty()) out += "|";
        out += s.event_label(el.support, s.event_at(el.support, e));
    }
    return out;
}

} // namespace

ElementId ScenarioAlgebra::element(const Scenario& s, const Context& c, std::uint64_t events) const {
    Canonical k = canonical(s, c, events);
    auto it = index.find({k.support, k.events});
    if (it == index.end()) throw PreconditionError("scenario algebra: no element over " + s.context_key(c));
    return it->second;
}

ElementId ScenarioAlgebra::event_element(const Scenario& s, const Context& c, const Event& e) const {
    return element(s, c, 1ULL << s.event_index(c, e));
}

ScenarioAlgebra build_BX(const Scenario& s, std::size_t limit) {
    auto maximal = maximal_cliques(s);
    std::size_t total = 0;
    for (const auto& tau : maximal) {
        std::size_t n = s.num_events(tau);
        if (n > kMaxContextEvents) {
            throw SizeLimitExceeded("build_BX: context " + s.context_key(tau) + " has " + std::to_string(n) + " events");
        }
        total += std::size_t{1} << n;
        if (total > limit) throw SizeLimitExceeded("build_BX: more than " + std::to_string(limit) + " event sets");
    }

    std::set<std::tuple<std::size_t, Context, std::uint64_t>> keys;
    std::vector<std::vector<Canonical>> per_context;
    for (const auto& tau : maximal) {
        std::vector<Canonical> cs;
        const std::uint64_t count = 1ULL << s.num_events(tau);
        for (std::uint64_t m = 0; m < count; ++m) {
            cs.push_back(canonical(s, tau, m));
            keys.emplace(cs.back().support.size(), cs.back().support, cs.back().events);
        }
        per_context.push_back(std::move(cs));
    }

    std::vector<ScenarioElement> elements;
    std::map<std::pair<Context, std::uint64_t>, ElementId> index;
    PbaTables t;
    for (const auto& [size, support, events] : keys) {
        (void)size;
        index.emplace(std::pair(support, events), static_cast<ElementId>(elements.size()));
        elements.push_back({support, events});
        t.labels.push_back(element_label(s, elements.back()));
    }
    t.carrier = elements.size();
    t.zero = index.at({Context{}, 0});
    t.one = index.at({Context{}, 1});
    t.neg.assign(t.carrier, 0);
    std::unordered_set<std::uint64_t> seen;
    for (std::size_t c = 0; c < maximal.size(); ++c) {
        const auto& cs = per_context[c];
        std::vector<ElementId> ids(cs.size());
        for (std::size_t m = 0; m < cs.size(); ++m) ids[m] = index.at({cs[m].support, cs[m].events});
        const std::uint64_t full = cs.size() - 1;
        for (std::uint64_t m = 0; m < cs.size(); ++m) {
            t.neg[ids[m]] = ids[full & ~m];
            for (std::uint64_t k = m; k < cs.size(); ++k) {
                ElementId a = std::min(ids[m], ids[k]);
                ElementId b = std::max(ids[m], ids[k]);
                if (!seen.insert(static_cast<std::uint64_t>(a) << 32 | b).second) continue;
                t.comm.emplace_back(a, b);
                t.meet.push_back({a, b, ids[m & k]});
                t.join.push_back({a, b, ids[m | k]});
            }
        }
    }
    return ScenarioAlgebra{FinitePBA::from_tables(t), std::move(elements), std::move(index)};
}

SaturatedScenario build_AX_saturated(const Scenario& s, std::size_t depth) {
    std::vector<FinitePBA> summands;
    for (std::size_t x = 0; x < s.size(); ++x) {
        std::vector<std::string> atoms;
        for (const auto& o : s.outcomes(x)) atoms.push_back("[" + s.name(x) + "=" + o + "]");
        summands.push_back(from_boolean(atoms));
    }
    Coproduct base = coproduct(summands);
    ExtensionSpec spec(base.algebra);
    spec.depth_limit = depth;
    for (auto [x, y] : s.compatible_pairs()) {
        for (ElementId a = 0; a < summands[x].size(); ++a) {
            if (a == summands[x].zero() || a == summands[x].one()) continue;
            for (ElementId b = 0; b < summands[y].size(); ++b) {
                if (b == summands[y].zero() || b == summands[y].one()) continue;
                spec.relation.emplace_back(base.injections[x][a], base.injections[y][b]);
            }
        }
    }
    QuotientAlgebra q = saturate(spec);
    return SaturatedScenario{std::move(base), std::move(q)};
}

StateValues model_to_state(const ScenarioAlgebra& sa, const EmpiricalModel& m) {
    StateValues v(sa.elements.size());
    std::map<Context, Distribution> cache;
    for (std::size_t i = 0; i < sa.elements.size(); ++i) {
        const auto& el = sa.elements[i];
        auto it = cache.find(el.support);
        if (it == cache.end()) it = cache.emplace(el.support, m.on(el.support)).first;
        for (std::size_t e = 0; e < it->second.probs.size(); ++e) {
            if (el.events >> e & 1u) v[i] += it->second.probs[e];
        }
    }
    return v;
}

EmpiricalModel state_to_model(const Scenario& s, const ScenarioAlgebra& sa, const StateValues& values) {
    if (values.size() != sa.elements.size()) throw PreconditionError("state_to_model: state does not match the algebra");
    EmpiricalModel m(s);
    for (const auto& tau : maximal_cliques(s)) {
        Distribution d{tau, std::vector<Rational>(s.num_events(tau))};
        for (std::size_t e = 0; e < d.probs.size(); ++e) d.probs[e] = values[sa.element(s, tau, 1ULL << e)];
        m.distributions.push_back(std::move(d));
    }
    return m;
}

} // namespace pba
