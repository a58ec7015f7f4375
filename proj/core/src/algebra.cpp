#include "pba/algebra.hpp"

#include "algebra_data.hpp"
#include "pba/cliques.hpp"
#include "pba/errors.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace pba {

namespace {

std::string pair_text(ElementId a, ElementId b) {
    return "(" + std::to_string(a) + "," + std::to_string(b) + ")";
}

void check_index(std::size_t n, std::size_t v, const std::string& where) {
    if (v >= n) throw MalformedTable(where + ": index " + std::to_string(v) + " out of range");
}

using PairMap = std::map<std::pair<ElementId, ElementId>, ElementId>;

PairMap read_table(std::size_t n, const std::vector<TableEntry>& entries, const std::string& name) {
    PairMap out;
    for (const auto& e : entries) {
        check_index(n, e.a, name);
        check_index(n, e.b, name);
        check_index(n, e.value, name);
        auto key = std::minmax(e.a, e.b);
        auto [it, inserted] = out.emplace(std::pair(key.first, key.second), e.value);
        if (!inserted && it->second != e.value) {
            throw MalformedTable(name + ": asymmetric relation entry " + pair_text(e.a, e.b));
        }
    }
    return out;
}

struct Checked {
    ValidationReport report;
    std::shared_ptr<FinitePBA::Data> data;
};

ElementId lookup(const FinitePBA::Data& d, const std::vector<std::vector<ElementId>>& table, ElementId a, ElementId b) {
    const auto& row = d.partners[a];
    auto it = std::lower_bound(row.begin(), row.end(), b);
    if (it == row.end() || *it != b) return FinitePBA::none;
    return table[a][static_cast<std::size_t>(it - row.begin())];
}

// Closure and Boolean checks on one maximal clique; fills `block` on success.
bool check_clique(const FinitePBA::Data& d, const std::vector<std::size_t>& clique, ValidationReport& report,
                  Block& block) {
    Bitset in(d.n);
    for (auto v : clique) in.set(v);
    for (auto v : clique) {
        auto a = static_cast<ElementId>(v);
        if (!in.test(d.neg[a])) {
            report.violations.push_back({"clique not closed", {a}, "negation leaves a maximal clique"});
            return false;
        }
        for (auto w : clique) {
            auto b = static_cast<ElementId>(w);
            if (b < a) continue;
            if (!in.test(lookup(d, d.meet, a, b)) || !in.test(lookup(d, d.join, a, b))) {
                report.violations.push_back({"clique not closed", {a, b}, "meet or join leaves a maximal clique"});
                return false;
            }
        }
    }

    // Atoms: minimal non-zero elements under meet(a,b) = a.
    std::vector<ElementId> atoms;
    for (auto v : clique) {
        auto a = static_cast<ElementId>(v);
        if (a == d.zero) continue;
        bool minimal = true;
        for (auto w : clique) {
            auto b = static_cast<ElementId>(w);
            if (b == a || b == d.zero) continue;
            if (lookup(d, d.meet, a, b) == b) {
                minimal = false;
                break;
            }
        }
        if (minimal) atoms.push_back(a);
    }
    if (atoms.size() > 62) {
        report.violations.push_back({"not Boolean", {atoms[0]}, "more than 62 atoms in one block"});
        return false;
    }
    const std::uint64_t full = atoms.size() == 64 ? ~0ULL : ((1ULL << atoms.size()) - 1);

    block.elements.assign(clique.begin(), clique.end());
    block.atoms = atoms;
    block.masks.assign(clique.size(), 0);
    std::unordered_map<std::uint64_t, ElementId> seen;
    for (std::size_t k = 0; k < clique.size(); ++k) {
        auto a = static_cast<ElementId>(clique[k]);
        std::uint64_t m = 0;
        for (std::size_t i = 0; i < atoms.size(); ++i) {
            if (lookup(d, d.meet, atoms[i], a) == atoms[i]) m |= 1ULL << i;
        }
        block.masks[k] = m;
        auto [it, inserted] = seen.emplace(m, a);
        if (!inserted) {
            report.violations.push_back({"not Boolean", {it->second, a}, "distinct elements above the same atoms"});
            return false;
        }
    }
    auto mask = [&](ElementId e) { return block.mask_of(e); };
    if (mask(d.zero) != 0 || mask(d.one) != full) {
        report.violations.push_back({"not Boolean", {d.zero, d.one}, "constants are not bottom and top"});
        return false;
    }
    for (std::size_t k = 0; k < clique.size(); ++k) {
        auto a = static_cast<ElementId>(clique[k]);
        if (mask(d.neg[a]) != (full & ~block.masks[k])) {
            report.violations.push_back({"not Boolean", {a}, "negation is not complement"});
            return false;
        }
        for (std::size_t l = k; l < clique.size(); ++l) {
            auto b = static_cast<ElementId>(clique[l]);
            if (mask(lookup(d, d.meet, a, b)) != (block.masks[k] & block.masks[l])) {
                report.violations.push_back({"not Boolean", {a, b}, "meet is not intersection"});
                return false;
            }
            if (mask(lookup(d, d.join, a, b)) != (block.masks[k] | block.masks[l])) {
                report.violations.push_back({"not Boolean", {a, b}, "join is not union"});
                return false;
            }
        }
    }
    return true;
}

Checked check(const PbaTables& t) {
    Checked out;
    ValidationReport& report = out.report;
    const std::size_t n = t.carrier;
    if (n == 0) throw MalformedTable("carrier: empty");
    if (n >= FinitePBA::none) throw MalformedTable("carrier: too large");
    check_index(n, t.zero, "zero");
    check_index(n, t.one, "one");
    if (t.neg.size() != n) throw MalformedTable("neg: expected " + std::to_string(n) + " entries");
    for (auto v : t.neg) check_index(n, v, "neg");
    for (const auto& [a, b] : t.comm) {
        check_index(n, a, "comm");
        check_index(n, b, "comm");
    }
    PairMap meet = read_table(n, t.meet, "meet");
    PairMap join = read_table(n, t.join, "join");
    if (!t.labels.empty() && t.labels.size() != n) {
        throw MalformedTable("labels: expected " + std::to_string(n) + " entries");
    }

    auto d = std::make_shared<FinitePBA::Data>();
    d->n = n;
    d->zero = t.zero;
    d->one = t.one;
    d->neg = t.neg;
    d->comm.assign(n, Bitset(n));
    for (const auto& [a, b] : t.comm) {
        d->comm[a].set(b);
        d->comm[b].set(a);
    }
    d->labels.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        d->labels[i] = t.labels.empty() ? std::to_string(i) : t.labels[i];
        if (!d->label_index.emplace(d->labels[i], static_cast<ElementId>(i)).second) {
            throw MalformedTable("labels: duplicate label \"" + d->labels[i] + "\"");
        }
    }

    for (std::size_t a = 0; a < n; ++a) {
        if (!d->comm[a].test(a)) {
            report.violations.push_back({"reflexivity", {static_cast<ElementId>(a)}, "element not commeasurable with itself"});
        }
        for (ElementId c : {t.zero, t.one}) {
            if (!d->comm[c].test(a)) {
                report.violations.push_back({"constants commeasurable", {c, static_cast<ElementId>(a)}, ""});
            }
        }
        if (t.neg[t.neg[a]] != a) {
            report.violations.push_back({"involution", {static_cast<ElementId>(a)}, "neg(neg(a)) != a"});
        }
    }
    for (std::size_t a = 0; a < n; ++a) {
        for_each_bit(d->comm[a], [&](std::size_t b) {
            if (b < a) return;
            auto key = std::pair(static_cast<ElementId>(a), static_cast<ElementId>(b));
            if (!meet.count(key) || !join.count(key)) {
                report.violations.push_back({"operation domain mismatch", {key.first, key.second},
                                             "commeasurable pair without meet or join"});
            }
        });
    }
    for (const PairMap* table : {&meet, &join}) {
        for (const auto& [key, value] : *table) {
            (void)value;
            if (!d->comm[key.first].test(key.second)) {
                report.violations.push_back({"operation domain mismatch", {key.first, key.second},
                                             "operation defined on a non-commeasurable pair"});
            }
        }
    }
    if (!report.ok()) return out;

    d->partners.resize(n);
    d->meet.resize(n);
    d->join.resize(n);
    for (std::size_t a = 0; a < n; ++a) {
        for_each_bit(d->comm[a], [&](std::size_t b) {
            auto lo = static_cast<ElementId>(std::min(a, b));
            auto hi = static_cast<ElementId>(std::max(a, b));
            d->partners[a].push_back(static_cast<ElementId>(b));
            d->meet[a].push_back(meet.at({lo, hi}));
            d->join[a].push_back(join.at({lo, hi}));
        });
    }

    BitGraph graph(n);
    for (std::size_t a = 0; a < n; ++a) {
        graph.adj[a] = d->comm[a];
        graph.adj[a].reset(a);
    }
    for_each_maximal_clique(graph, [&](const std::vector<std::size_t>& clique) {
        Block block;
        if (!check_clique(*d, clique, report, block)) return false;
        d->blocks.push_back(std::move(block));
        return true;
    });
    if (!report.ok()) return out;
    std::sort(d->blocks.begin(), d->blocks.end(),
              [](const Block& x, const Block& y) { return x.elements < y.elements; });
    out.data = std::move(d);
    return out;
}

} // namespace

std::string ValidationReport::summary() const {
    if (ok()) return "ok";
    std::ostringstream os;
    for (const auto& v : violations) {
        os << v.axiom << " [";
        for (std::size_t i = 0; i < v.witness.size(); ++i) os << (i ? "," : "") << v.witness[i];
        os << "]";
        if (!v.detail.empty()) os << ": " << v.detail;
        os << "\n";
    }
    return os.str();
}

ValidationReport validate(const PbaTables& tables) { return check(tables).report; }

InvalidAlgebra::InvalidAlgebra(ValidationReport report)
    : std::runtime_error("invalid partial Boolean algebra: " + report.summary()), report_(std::move(report)) {}

std::uint64_t Block::mask_of(ElementId e) const {
    auto it = std::lower_bound(elements.begin(), elements.end(), e);
    if (it == elements.end() || *it != e) throw std::out_of_range("element not in block");
    return masks[static_cast<std::size_t>(it - elements.begin())];
}

bool Block::contains(ElementId e) const { return std::binary_search(elements.begin(), elements.end(), e); }

FinitePBA FinitePBA::from_tables(const PbaTables& tables) {
    Checked c = check(tables);
    if (!c.report.ok()) throw InvalidAlgebra(std::move(c.report));
    return FinitePBA(std::move(c.data));
}

std::size_t FinitePBA::size() const { return d_->n; }
ElementId FinitePBA::zero() const { return d_->zero; }
ElementId FinitePBA::one() const { return d_->one; }
ElementId FinitePBA::neg(ElementId a) const { return d_->neg.at(a); }
bool FinitePBA::comm(ElementId a, ElementId b) const { return d_->comm.at(a).test(b); }
const Bitset& FinitePBA::comm_row(ElementId a) const { return d_->comm.at(a); }
ElementId FinitePBA::meet(ElementId a, ElementId b) const { return lookup(*d_, d_->meet, a, b); }
ElementId FinitePBA::join(ElementId a, ElementId b) const { return lookup(*d_, d_->join, a, b); }
const std::vector<ElementId>& FinitePBA::partners(ElementId a) const { return d_->partners.at(a); }
const std::vector<ElementId>& FinitePBA::meet_row(ElementId a) const { return d_->meet.at(a); }
const std::vector<ElementId>& FinitePBA::join_row(ElementId a) const { return d_->join.at(a); }
const std::string& FinitePBA::label(ElementId a) const { return d_->labels.at(a); }
const std::vector<Block>& FinitePBA::blocks() const { return d_->blocks; }

std::optional<ElementId> FinitePBA::find_label(const std::string& label) const {
    auto it = d_->label_index.find(label);
    if (it == d_->label_index.end()) return std::nullopt;
    return it->second;
}

PbaTables FinitePBA::to_tables() const {
    PbaTables t;
    t.carrier = d_->n;
    t.zero = d_->zero;
    t.one = d_->one;
    t.neg = d_->neg;
    t.labels = d_->labels;
    for (ElementId a = 0; a < d_->n; ++a) {
        const auto& row = d_->partners[a];
        for (std::size_t k = 0; k < row.size(); ++k) {
            if (row[k] < a) continue;
            t.comm.emplace_back(a, row[k]);
            t.meet.push_back({a, row[k], d_->meet[a][k]});
            t.join.push_back({a, row[k], d_->join[a][k]});
        }
    }
    return t;
}

bool leq(const FinitePBA& A, ElementId a, ElementId b) { return A.meet(a, b) == a; }

std::optional<ElementId> exclusive(const FinitePBA& A, ElementId a, ElementId b) {
    const auto& row = A.partners(a);
    const auto& meets = A.meet_row(a);
    for (std::size_t k = 0; k < row.size(); ++k) {
        if (meets[k] != a) continue;
        ElementId c = row[k];
        if (leq(A, b, A.neg(c))) return c;
    }
    return std::nullopt;
}

} // namespace pba
