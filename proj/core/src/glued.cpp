#include "pba/algebra.hpp"
#include "pba/errors.hpp"
#include "pba/saturation.hpp"
#include "pba/union_find.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>

namespace pba {

namespace {

constexpr std::size_t kMaxContextAtoms = 16;
constexpr std::size_t kColimitDepth = 6;

std::string subset_label(const GluedContext& ctx, std::uint32_t mask) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < ctx.atoms.size(); ++i) {
        if (mask >> i & 1u) names.push_back(ctx.atoms[i]);
    }
    std::sort(names.begin(), names.end());
    std::string out;
    for (const auto& n : names) out += (out.empty() ? "" : "+") + n;
    return out;
}

} // namespace

FinitePBA from_glued_contexts(const GluedContextSpec& spec) {
    if (spec.contexts.empty()) throw PreconditionError("glued spec: no contexts");
    std::vector<std::size_t> offset;
    std::size_t nodes = 0;
    for (const auto& ctx : spec.contexts) {
        if (ctx.atoms.empty()) throw PreconditionError("glued spec: context \"" + ctx.name + "\" has no atoms");
        if (ctx.atoms.size() > kMaxContextAtoms) throw SizeLimitExceeded("glued spec: context \"" + ctx.name + "\" too large");
        if (std::set<std::string>(ctx.atoms.begin(), ctx.atoms.end()).size() != ctx.atoms.size()) {
            throw PreconditionError("glued spec: repeated atom in context \"" + ctx.name + "\"");
        }
        offset.push_back(nodes);
        nodes += std::size_t{1} << ctx.atoms.size();
    }
    auto node = [&](std::size_t c, std::uint32_t mask) { return offset[c] + mask; };
    auto full = [&](std::size_t c) { return static_cast<std::uint32_t>((1u << spec.contexts[c].atoms.size()) - 1); };

    // Shared atom sets.
    UnionFind uf(nodes);
    std::map<std::string, std::size_t> by_names;
    for (std::size_t c = 0; c < spec.contexts.size(); ++c) {
        for (std::uint32_t m = 0; m <= full(c); ++m) {
            auto [it, inserted] = by_names.emplace(subset_label(spec.contexts[c], m), node(c, m));
            if (!inserted) uf.unite(it->second, node(c, m));
        }
    }
    // Closure under complement within each context.
    while (true) {
        bool changed = false;
        std::map<std::size_t, std::size_t> complement_of_root;
        for (std::size_t c = 0; c < spec.contexts.size(); ++c) {
            for (std::uint32_t m = 0; m <= full(c); ++m) {
                std::size_t r = uf.find(node(c, m));
                std::size_t comp = node(c, full(c) & ~m);
                auto [it, inserted] = complement_of_root.emplace(r, comp);
                if (!inserted) changed |= uf.unite(it->second, comp);
            }
        }
        if (!changed) break;
    }
    // Two subsets of one context in one class is a collapse.
    for (std::size_t c = 0; c < spec.contexts.size(); ++c) {
        std::map<std::size_t, std::uint32_t> seen;
        for (std::uint32_t m = 0; m <= full(c); ++m) {
            auto [it, inserted] = seen.emplace(uf.find(node(c, m)), m);
            if (!inserted) {
                const auto& ctx = spec.contexts[c];
                std::string a = it->second == 0 ? "0" : it->second == full(c) ? "1" : subset_label(ctx, it->second);
                std::string b = m == full(c) ? "1" : subset_label(ctx, m);
                throw GluingCollapse("gluing collapse in context \"" + ctx.name + "\": " + a + " = " + b);
            }
        }
    }

    // Element ids in order of first occurrence, constants first.
    std::map<std::size_t, ElementId> id_of_root;
    PbaTables t;
    auto element = [&](std::size_t c, std::uint32_t m) {
        std::size_t r = uf.find(node(c, m));
        auto [it, inserted] = id_of_root.emplace(r, static_cast<ElementId>(t.labels.size()));
        if (inserted) {
            t.labels.push_back(m == 0 ? "0" : m == full(c) ? "1" : subset_label(spec.contexts[c], m));
        }
        return it->second;
    };
    t.zero = element(0, 0);
    t.one = element(0, full(0));
    for (std::size_t c = 0; c < spec.contexts.size(); ++c) {
        for (std::uint32_t m = 0; m <= full(c); ++m) element(c, m);
    }
    t.carrier = t.labels.size();
    t.neg.assign(t.carrier, 0);
    std::set<std::pair<ElementId, ElementId>> pairs;
    for (std::size_t c = 0; c < spec.contexts.size(); ++c) {
        for (std::uint32_t m = 0; m <= full(c); ++m) {
            ElementId x = element(c, m);
            t.neg[x] = element(c, full(c) & ~m);
            for (std::uint32_t k = m; k <= full(c); ++k) {
                ElementId y = element(c, k);
                t.meet.push_back({x, y, element(c, m & k)});
                t.join.push_back({x, y, element(c, m | k)});
                if (pairs.insert(std::minmax(x, y)).second) t.comm.emplace_back(x, y);
            }
        }
    }
    // glued_id maps the union-find numbering onto the final carrier.
    std::vector<ElementId> glued_id(t.carrier);
    for (ElementId i = 0; i < t.carrier; ++i) glued_id[i] = i;
    bool direct = false;
    try {
        direct = validate(t).ok();
    } catch (const MalformedTable&) {
        // Two contexts give one pair different meets or joins.
    }
    std::optional<FinitePBA> built;
    if (direct) {
        built = FinitePBA::from_tables(t);
    } else {
        // Pairwise gluing left a clique that no context covers, or an
        // operation with two values. Fall back to the colimit: coproduct of
        // the contexts with shared atoms identified.
        std::vector<FinitePBA> summands;
        for (const auto& ctx : spec.contexts) summands.push_back(from_boolean(ctx.atoms));
        Coproduct cp = coproduct(summands);
        ExtensionSpec ext(cp.algebra);
        std::map<std::string, ElementId> first;
        for (std::size_t c = 0; c < spec.contexts.size(); ++c) {
            for (std::size_t i = 0; i < spec.contexts[c].atoms.size(); ++i) {
                ElementId e = cp.injections[c][ElementId{1} << i];
                auto [it, inserted] = first.emplace(spec.contexts[c].atoms[i], e);
                if (!inserted) ext.force_equal.emplace_back(it->second, e);
            }
        }
        ext.depth_limit = kColimitDepth;
        QuotientAlgebra q = saturate(ext);
        if (!q.stabilized()) throw PreconditionError("glued spec: context colimit did not stabilize");
        PbaTables qt = q.algebra()->to_tables();
        std::vector<bool> named(qt.carrier, false);
        named[qt.zero] = named[qt.one] = true;
        qt.labels[qt.zero] = "0";
        qt.labels[qt.one] = "1";
        for (std::size_t c = 0; c < spec.contexts.size(); ++c) {
            for (std::uint32_t m = 0; m <= full(c); ++m) {
                ElementId cls = q.eta()[cp.injections[c][m]];
                glued_id[element(c, m)] = cls;
                if (!named[cls]) {
                    qt.labels[cls] = subset_label(spec.contexts[c], m);
                    named[cls] = true;
                }
            }
        }
        // Remaining classes keep their term labels, made unique.
        std::set<std::string> used;
        for (ElementId i = 0; i < qt.carrier; ++i) {
            if (named[i]) used.insert(qt.labels[i]);
        }
        for (ElementId i = 0; i < qt.carrier; ++i) {
            if (named[i]) continue;
            if (!used.insert(qt.labels[i]).second) {
                qt.labels[i] += "#" + std::to_string(i);
                used.insert(qt.labels[i]);
            }
        }
        built = FinitePBA::from_tables(qt);
    }
    FinitePBA glued = std::move(*built);
    if (spec.forced_true.empty() && spec.forced_false.empty()) return glued;

    // Forced expressions become identifications with a constant.
    auto resolve = [&](const std::string& expr) {
        std::string body = expr;
        bool negated = !body.empty() && body[0] == '~';
        if (negated) body.erase(0, 1);
        std::vector<std::string> names;
        std::size_t start = 0;
        while (true) {
            auto plus = body.find('+', start);
            names.push_back(body.substr(start, plus - start));
            if (plus == std::string::npos) break;
            start = plus + 1;
        }
        for (std::size_t c = 0; c < spec.contexts.size(); ++c) {
            const auto& atoms = spec.contexts[c].atoms;
            std::uint32_t m = 0;
            bool all = true;
            for (const auto& n : names) {
                auto it = std::find(atoms.begin(), atoms.end(), n);
                if (it == atoms.end()) {
                    all = false;
                    break;
                }
                m |= 1u << (it - atoms.begin());
            }
            if (all) return glued_id[element(c, negated ? full(c) & ~m : m)];
        }
        throw PreconditionError("glued spec: expression \"" + expr + "\" is not a subset of one context");
    };
    ExtensionSpec ext(glued);
    for (const auto& e : spec.forced_true) ext.force_equal.emplace_back(resolve(e), glued.one());
    for (const auto& e : spec.forced_false) ext.force_equal.emplace_back(resolve(e), glued.zero());
    QuotientAlgebra q = saturate(ext);
    if (!q.stabilized()) throw PreconditionError("glued spec: forced identifications did not stabilize");
    return *q.algebra();
}

} // namespace pba
