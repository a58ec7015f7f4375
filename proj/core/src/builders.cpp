#include "pba/algebra.hpp"
#include "pba/errors.hpp"

#include <set>

namespace pba {

namespace {

constexpr std::size_t kMaxBooleanAtoms = 10;

} // namespace

FinitePBA from_boolean(const std::vector<std::string>& atoms) {
    if (atoms.empty()) throw PreconditionError("from_boolean: empty atom set");
    if (atoms.size() > kMaxBooleanAtoms) {
        throw SizeLimitExceeded("from_boolean: more than " + std::to_string(kMaxBooleanAtoms) + " atoms");
    }
    if (std::set<std::string>(atoms.begin(), atoms.end()).size() != atoms.size()) {
        throw PreconditionError("from_boolean: duplicate atom name");
    }
    const std::size_t k = atoms.size();
    const ElementId full = static_cast<ElementId>((1u << k) - 1);
    PbaTables t;
    t.carrier = std::size_t{1} << k;
    t.zero = 0;
    t.one = full;
    t.neg.resize(t.carrier);
    t.labels.resize(t.carrier);
    for (ElementId s = 0; s <= full; ++s) {
        t.neg[s] = full & ~s;
        std::string label;
        for (std::size_t i = 0; i < k; ++i) {
            if (!(s >> i & 1u)) continue;
            if (!label.empty()) label += '|';
            label += atoms[i];
        }
        t.labels[s] = s == 0 ? "0" : s == full ? "1" : label;
        for (ElementId u = s; u <= full; ++u) {
            t.comm.emplace_back(s, u);
            t.meet.push_back({s, u, s & u});
            t.join.push_back({s, u, s | u});
        }
    }
    return FinitePBA::from_tables(t);
}

const FinitePBA& two() {
    static const FinitePBA algebra = from_boolean({"p"});
    return algebra;
}

Coproduct coproduct(const std::vector<FinitePBA>& summands) {
    if (summands.empty()) throw PreconditionError("coproduct: no summands");
    for (const auto& s : summands) {
        if (s.zero() == s.one()) throw PreconditionError("coproduct: trivial summand");
    }

    std::vector<std::vector<ElementId>> injections;
    PbaTables t;
    t.zero = 0;
    t.one = 1;
    t.labels = {"0", "1"};
    std::set<std::string> seen{"0", "1"};
    bool collision = false;
    for (const auto& s : summands) {
        for (ElementId a = 0; a < s.size(); ++a) {
            if (a == s.zero() || a == s.one()) continue;
            if (!seen.insert(s.label(a)).second) collision = true;
        }
    }

    ElementId next = 2;
    for (std::size_t k = 0; k < summands.size(); ++k) {
        const auto& s = summands[k];
        std::vector<ElementId> inj(s.size());
        for (ElementId a = 0; a < s.size(); ++a) {
            if (a == s.zero()) {
                inj[a] = 0;
            } else if (a == s.one()) {
                inj[a] = 1;
            } else {
                inj[a] = next++;
                t.labels.push_back(collision ? std::to_string(k) + ":" + s.label(a) : s.label(a));
            }
        }
        injections.push_back(std::move(inj));
    }
    t.carrier = next;
    t.neg.assign(t.carrier, 0);
    t.neg[0] = 1;
    t.neg[1] = 0;
    t.comm = {{0, 0}, {0, 1}, {1, 1}};
    t.meet = {{0, 0, 0}, {0, 1, 0}, {1, 1, 1}};
    t.join = {{0, 0, 0}, {0, 1, 1}, {1, 1, 1}};
    for (std::size_t k = 0; k < summands.size(); ++k) {
        const auto& s = summands[k];
        const auto& inj = injections[k];
        for (ElementId a = 0; a < s.size(); ++a) {
            t.neg[inj[a]] = inj[s.neg(a)];
            const auto& row = s.partners(a);
            for (std::size_t i = 0; i < row.size(); ++i) {
                ElementId b = row[i];
                if (b < a) continue;
                if (inj[a] <= 1 && inj[b] <= 1) continue;
                t.comm.emplace_back(inj[a], inj[b]);
                t.meet.push_back({inj[a], inj[b], inj[s.meet_row(a)[i]]});
                t.join.push_back({inj[a], inj[b], inj[s.join_row(a)[i]]});
            }
        }
    }
    return Coproduct{FinitePBA::from_tables(t), std::move(injections)};
}

Coproduct coproduct(const FinitePBA& a, const FinitePBA& b) { return coproduct(std::vector<FinitePBA>{a, b}); }

} // namespace pba
