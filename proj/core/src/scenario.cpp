#include "pba/scenario.hpp"

#include "pba/cliques.hpp"
#include "pba/errors.hpp"
#include "pba/lp.hpp"

#include <algorithm>
#include <set>

namespace pba {

Scenario::Scenario(std::vector<std::string> measurements,
                   const std::vector<std::pair<std::string, std::string>>& compatible,
                   const std::map<std::string, std::vector<std::string>>& outcomes)
    : names_(std::move(measurements)) {
    std::sort(names_.begin(), names_.end());
    if (std::adjacent_find(names_.begin(), names_.end()) != names_.end()) {
        throw PreconditionError("scenario: duplicate measurement");
    }
    compat_.assign(names_.size(), std::vector<bool>(names_.size(), false));
    for (std::size_t x = 0; x < names_.size(); ++x) {
        compat_[x][x] = true;
        auto it = outcomes.find(names_[x]);
        if (it == outcomes.end() || it->second.empty()) {
            throw PreconditionError("scenario: measurement \"" + names_[x] + "\" has no outcomes");
        }
        if (std::set<std::string>(it->second.begin(), it->second.end()).size() != it->second.size()) {
            throw PreconditionError("scenario: duplicate outcome of \"" + names_[x] + "\"");
        }
        outcomes_.push_back(it->second);
    }
    for (const auto& [name, outs] : outcomes) {
        (void)outs;
        index(name);
    }
    for (const auto& [a, b] : compatible) {
        std::size_t x = index(a);
        std::size_t y = index(b);
        compat_[x][y] = compat_[y][x] = true;
    }
}

std::size_t Scenario::index(const std::string& name) const {
    auto it = std::lower_bound(names_.begin(), names_.end(), name);
    if (it == names_.end() || *it != name) throw PreconditionError("scenario: unknown measurement \"" + name + "\"");
    return static_cast<std::size_t>(it - names_.begin());
}

bool Scenario::is_context(const Context& c) const {
    if (!std::is_sorted(c.begin(), c.end()) || std::adjacent_find(c.begin(), c.end()) != c.end()) return false;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] >= size()) return false;
        for (std::size_t j = i + 1; j < c.size(); ++j) {
            if (!compatible(c[i], c[j])) return false;
        }
    }
    return true;
}

std::vector<std::pair<std::size_t, std::size_t>> Scenario::compatible_pairs() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t x = 0; x < size(); ++x) {
        for (std::size_t y = x + 1; y < size(); ++y) {
            if (compatible(x, y)) out.emplace_back(x, y);
        }
    }
    return out;
}

std::size_t Scenario::num_events(const Context& c) const {
    std::size_t n = 1;
    for (auto x : c) n *= outcomes_[x].size();
    return n;
}

std::size_t Scenario::event_index(const Context& c, const Event& e) const {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < c.size(); ++i) idx = idx * outcomes_[c[i]].size() + e[i];
    return idx;
}

Event Scenario::event_at(const Context& c, std::size_t index) const {
    Event e(c.size());
    for (std::size_t i = c.size(); i-- > 0;) {
        e[i] = index % outcomes_[c[i]].size();
        index /= outcomes_[c[i]].size();
    }
    return e;
}

std::string Scenario::event_label(const Context& c, const Event& e) const {
    std::string out = "[";
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i) out += ",";
        out += names_[c[i]] + "=" + outcomes_[c[i]][e[i]];
    }
    return out + "]";
}

std::string Scenario::context_key(const Context& c) const {
    std::string out;
    for (std::size_t i = 0; i < c.size(); ++i) out += (i ? "," : "") + names_[c[i]];
    return out;
}

std::vector<Context> maximal_cliques(const Scenario& s) {
    BitGraph g(s.size());
    for (auto [x, y] : s.compatible_pairs()) g.add_edge(x, y);
    return maximal_cliques(g);
}

namespace {

// Positions of sigma's measurements inside tau.
std::vector<std::size_t> positions(const Context& sigma, const Context& tau) {
    std::vector<std::size_t> pos;
    for (auto x : sigma) {
        auto it = std::lower_bound(tau.begin(), tau.end(), x);
        if (it == tau.end() || *it != x) throw PreconditionError("marginalise: context is not a subset");
        pos.push_back(static_cast<std::size_t>(it - tau.begin()));
    }
    return pos;
}

} // namespace

Distribution marginalise(const Scenario& s, const Distribution& tau, const Context& sigma) {
    auto pos = positions(sigma, tau.context);
    Distribution out{sigma, std::vector<Rational>(s.num_events(sigma))};
    for (std::size_t i = 0; i < tau.probs.size(); ++i) {
        Event e = s.event_at(tau.context, i);
        Event r(sigma.size());
        for (std::size_t k = 0; k < sigma.size(); ++k) r[k] = e[pos[k]];
        out.probs[s.event_index(sigma, r)] += tau.probs[i];
    }
    return out;
}

Distribution EmpiricalModel::on(const Context& c) const {
    for (const auto& d : distributions) {
        if (std::includes(d.context.begin(), d.context.end(), c.begin(), c.end())) return marginalise(scenario, d, c);
    }
    throw PreconditionError("model: no maximal context contains " + scenario.context_key(c));
}

ModelReport validate_model(const EmpiricalModel& m) {
    ModelReport report;
    const Scenario& s = m.scenario;
    auto maximal = maximal_cliques(s);
    if (m.distributions.size() != maximal.size()) {
        report.violations.push_back({"missing context", {}, {}, {}, "expected " + std::to_string(maximal.size()) + " distributions"});
        return report;
    }
    for (std::size_t i = 0; i < maximal.size(); ++i) {
        const auto& d = m.distributions[i];
        if (d.context != maximal[i]) {
            report.violations.push_back({"missing context", maximal[i], {}, {}, s.context_key(maximal[i])});
            return report;
        }
        if (d.probs.size() != s.num_events(d.context)) {
            report.violations.push_back({"wrong event count", d.context, {}, {}, ""});
            return report;
        }
        Rational total;
        for (std::size_t e = 0; e < d.probs.size(); ++e) {
            if (sgn(d.probs[e]) < 0) {
                report.violations.push_back({"negative entry", d.context, {}, s.event_at(d.context, e), to_string(d.probs[e])});
            }
            total += d.probs[e];
        }
        if (total != 1) report.violations.push_back({"not normalised", d.context, {}, {}, to_string(total)});
    }
    if (!report.ok()) return report;
    for (std::size_t i = 0; i < maximal.size(); ++i) {
        for (std::size_t j = i + 1; j < maximal.size(); ++j) {
            Context common;
            std::set_intersection(maximal[i].begin(), maximal[i].end(), maximal[j].begin(), maximal[j].end(),
                                  std::back_inserter(common));
            Distribution a = marginalise(s, m.distributions[i], common);
            Distribution b = marginalise(s, m.distributions[j], common);
            for (std::size_t e = 0; e < a.probs.size(); ++e) {
                if (a.probs[e] != b.probs[e]) {
                    report.violations.push_back({"overlap disagreement", maximal[i], maximal[j], s.event_at(common, e),
                                                 to_string(a.probs[e]) + " vs " + to_string(b.probs[e])});
                    break;
                }
            }
        }
    }
    return report;
}

EmpiricalModel deterministic_model(const Scenario& s, const std::vector<std::size_t>& global) {
    if (global.size() != s.size()) throw PreconditionError("deterministic_model: assignment size mismatch");
    EmpiricalModel m(s);
    for (const auto& c : maximal_cliques(s)) {
        Distribution d{c, std::vector<Rational>(s.num_events(c))};
        Event e;
        for (auto x : c) e.push_back(global[x]);
        d.probs[s.event_index(c, e)] = 1;
        m.distributions.push_back(std::move(d));
    }
    return m;
}

ModelPepVerdict model_pep_check(const EmpiricalModel& m) {
    const Scenario& s = m.scenario;
    std::vector<EventRef> vertices;
    std::vector<Event> events;
    for (std::size_t c = 0; c < m.distributions.size(); ++c) {
        const auto& d = m.distributions[c];
        for (std::size_t e = 0; e < d.probs.size(); ++e) {
            if (sgn(d.probs[e]) > 0) {
                vertices.push_back({c, e});
                events.push_back(s.event_at(d.context, e));
            }
        }
    }
    BitGraph g(vertices.size());
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        const Context& ci = m.distributions[vertices[i].context].context;
        for (std::size_t j = i + 1; j < vertices.size(); ++j) {
            const Context& cj = m.distributions[vertices[j].context].context;
            bool exclusive = false;
            for (std::size_t a = 0; a < ci.size() && !exclusive; ++a) {
                for (std::size_t b = 0; b < cj.size(); ++b) {
                    if (ci[a] == cj[b] && events[i][a] != events[j][b]) {
                        exclusive = true;
                        break;
                    }
                }
            }
            if (exclusive) g.add_edge(i, j);
        }
    }
    ModelPepVerdict v;
    for_each_maximal_clique(g, [&](const std::vector<std::size_t>& clique) {
        Rational sum;
        for (auto i : clique) sum += m.distributions[vertices[i].context].probs[vertices[i].event];
        if (sum > v.max_sum) v.max_sum = sum;
        if (sum > 1) {
            v.holds = false;
            v.sum = sum;
            for (auto i : clique) v.family.push_back(vertices[i]);
            return false;
        }
        return true;
    });
    return v;
}

ModelContextuality model_noncontextual(const EmpiricalModel& m) {
    const Scenario& s = m.scenario;
    Context all(s.size());
    for (std::size_t x = 0; x < s.size(); ++x) all[x] = x;
    ModelContextuality out;
    out.num_global = s.num_events(all);
    if (out.num_global > (1u << 16)) throw SizeLimitExceeded("model_noncontextual: too many global assignments");

    LpProblem lp;
    lp.num_vars = out.num_global;
    for (const auto& d : m.distributions) {
        std::vector<LpProblem::Row> rows(d.probs.size());
        for (std::size_t g = 0; g < out.num_global; ++g) {
            Event global = s.event_at(all, g);
            Event r;
            for (auto x : d.context) r.push_back(global[x]);
            rows[s.event_index(d.context, r)].emplace_back(g, Rational(1));
        }
        for (std::size_t e = 0; e < rows.size(); ++e) lp.add_row(std::move(rows[e]), d.probs[e]);
    }
    LpResult r = lp_feasible(lp);
    out.noncontextual = r.feasible;
    if (r.feasible) {
        out.weights = r.point;
    } else {
        out.farkas = r.farkas;
    }
    return out;
}

} // namespace pba
