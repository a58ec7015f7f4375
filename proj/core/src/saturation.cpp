#include "pba/saturation.hpp"

#include "pba/analysis.hpp"
#include "pba/cliques.hpp"
#include "pba/errors.hpp"
#include "pba/sat.hpp"
#include "pba/union_find.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

namespace pba {

namespace {

constexpr ElementId kNone = FinitePBA::none;

using TableMap = std::unordered_map<std::uint64_t, ElementId>;

inline std::uint64_t pair_key(ElementId a, ElementId b) {
    if (a > b) std::swap(a, b);
    return static_cast<std::uint64_t>(a) << 32 | b;
}

inline std::pair<ElementId, ElementId> unpack(std::uint64_t key) {
    return {static_cast<ElementId>(key >> 32), static_cast<ElementId>(key & 0xffffffffu)};
}

inline std::uint64_t term_key(TermKind kind, std::uint32_t a, std::uint32_t b) {
    return static_cast<std::uint64_t>(kind) << 60 | static_cast<std::uint64_t>(a) << 30 | b;
}

ElementId table_get(const TableMap& table, ElementId c, ElementId d) {
    if (c == d) return c;
    auto it = table.find(pair_key(c, d));
    return it == table.end() ? kNone : it->second;
}

std::string render(const std::vector<PreTerm>& terms, const FinitePBA& base, std::uint32_t t) {
    const PreTerm& p = terms[t];
    switch (p.kind) {
    case TermKind::generator:
        return base.label(p.a);
    case TermKind::zero:
        return "0";
    case TermKind::one:
        return "1";
    case TermKind::neg:
        return "~" + render(terms, base, p.a);
    case TermKind::meet:
        return "(" + render(terms, base, p.a) + " & " + render(terms, base, p.b) + ")";
    case TermKind::join:
        return "(" + render(terms, base, p.a) + " | " + render(terms, base, p.b) + ")";
    }
    return "?";
}

} // namespace

struct QuotientAlgebra::Data {
    std::optional<FinitePBA> base;
    bool stabilized = false;
    std::size_t levels = 0;
    std::size_t n = 0;
    std::size_t comm_pairs = 0;
    ElementId zero = 0;
    ElementId one = 0;
    std::vector<ElementId> eta;
    std::vector<ElementId> neg;
    std::vector<Bitset> comm;
    TableMap meet;
    TableMap join;
    std::vector<std::string> labels;
    std::vector<PreTerm> terms;
    std::vector<ElementId> term_class;
    std::vector<std::uint32_t> rep;
    std::optional<FinitePBA> algebra;
    std::vector<std::string> trace;
};

namespace {

class Engine final : public SaturationView {
  public:
    Engine(const ExtensionSpec& spec, const SaturationObserver& observer) : spec_(spec), observer_(observer) {}

    std::shared_ptr<QuotientAlgebra::Data> run() {
        init();
        close();
        std::size_t levels = 0;
        bool stabilized = false;
        for (std::size_t round = 1; round <= spec_.depth_limit + 1 && !limit_hit_; ++round) {
            const std::size_t before = n_;
            const std::size_t comm_before = count_comm();
            const std::vector<std::uint32_t> old_reps = rep_;
            expand();
            observe("expand");
            close();
            levels = round;
            if (limit_hit_) break;
            if (n_ == before && count_comm() == comm_before) {
                std::unordered_set<ElementId> images;
                for (auto t : old_reps) images.insert(term_class_[t]);
                if (images.size() == before) {
                    stabilized = true;
                    break;
                }
            }
            log("round " + std::to_string(round) + ": " + std::to_string(n_) + " classes");
        }
        return finish(stabilized, levels);
    }

    // SaturationView
    std::size_t num_classes() const override { return n_; }
    std::size_t num_terms() const override { return terms_.size(); }
    const PreTerm& term(std::uint32_t t) const override { return terms_.at(t); }
    ElementId term_class(std::uint32_t t) const override { return term_class_.at(t); }
    std::uint32_t rep_term(ElementId c) const override { return rep_.at(c); }
    ElementId neg(ElementId c) const override { return neg_.at(c); }
    bool comm(ElementId c, ElementId d) const override { return comm_.at(c).test(d); }
    ElementId meet(ElementId c, ElementId d) const override { return comm(c, d) ? table_get(meet_, c, d) : kNone; }
    ElementId join(ElementId c, ElementId d) const override { return comm(c, d) ? table_get(join_, c, d) : kNone; }

  private:
    void observe(std::string_view phase) {
        if (observer_) observer_(*this, phase);
    }

    void log(std::string line) {
        if (spec_.trace) trace_.push_back(std::move(line));
    }

    std::string show(ElementId c) const { return render(terms_, spec_.base, rep_[c]); }

    std::size_t count_comm() const {
        std::size_t total = 0;
        for (const auto& row : comm_) total += row.count();
        return total;
    }

    std::uint32_t add_term(TermKind kind, std::uint32_t a, std::uint32_t b) {
        if ((kind == TermKind::meet || kind == TermKind::join) && b < a) std::swap(a, b);
        auto key = term_key(kind, a, b);
        auto it = term_index_.find(key);
        if (it != term_index_.end()) return it->second;
        PreTerm p{kind, a, b, 0};
        if (kind == TermKind::neg) p.depth = terms_[a].depth + 1;
        if (kind == TermKind::meet || kind == TermKind::join) p.depth = std::max(terms_[a].depth, terms_[b].depth) + 1;
        auto id = static_cast<std::uint32_t>(terms_.size());
        terms_.push_back(p);
        term_class_.push_back(kNone);
        term_index_.emplace(key, id);
        return id;
    }

    ElementId new_class(std::uint32_t t) {
        auto c = static_cast<ElementId>(n_++);
        rep_.push_back(t);
        neg_.push_back(kNone);
        term_class_[t] = c;
        uf_.add();
        if (n_ > spec_.class_limit) limit_hit_ = true;
        return c;
    }

    // Class of the term op(rep c, rep d), creating it when new.
    ElementId class_for(TermKind kind, ElementId c, ElementId d) {
        std::uint32_t t = add_term(kind, rep_[c], kind == TermKind::neg ? 0 : rep_[d]);
        if (term_class_[t] != kNone) return term_class_[t];
        ElementId k = new_class(t);
        if (spec_.trace) log("new " + render(terms_, spec_.base, t));
        return k;
    }

    void init() {
        const FinitePBA& A = spec_.base;
        const std::size_t n = A.size();
        auto check = [&](ElementId x) {
            if (x >= n) throw PreconditionError("saturate: element " + std::to_string(x) + " out of range");
        };
        for (ElementId a = 0; a < n; ++a) {
            terms_.push_back({TermKind::generator, a, 0, 0});
            term_index_.emplace(term_key(TermKind::generator, a, 0), a);
            term_class_.push_back(a);
            rep_.push_back(a);
        }
        n_ = n;
        uf_ = UnionFind(n);
        zero_ = A.zero();
        one_ = A.one();
        auto zt = add_term(TermKind::zero, 0, 0);
        term_class_[zt] = zero_;
        auto ot = add_term(TermKind::one, 0, 0);
        term_class_[ot] = one_;
        neg_.resize(n);
        comm_.assign(n, Bitset(n));
        for (ElementId a = 0; a < n; ++a) {
            neg_[a] = A.neg(a);
            comm_[a] = A.comm_row(a);
            const auto& row = A.partners(a);
            for (std::size_t k = 0; k < row.size(); ++k) {
                if (row[k] <= a) continue;
                meet_[pair_key(a, row[k])] = A.meet_row(a)[k];
                join_[pair_key(a, row[k])] = A.join_row(a)[k];
            }
        }
        for (const auto& [a, b] : spec_.relation) {
            check(a);
            check(b);
            comm_[a].set(b);
            comm_[b].set(a);
        }
        for (const auto& [a, b] : spec_.force_equal) {
            check(a);
            check(b);
            if (uf_.unite(a, b)) pending_ = true;
            log("force " + A.label(a) + " == " + A.label(b));
        }
        rebuild();
        observe("init");
    }

    ElementId shortcut(TermKind kind, ElementId c, ElementId d) const {
        const bool is_meet = kind == TermKind::meet;
        const ElementId bottom = is_meet ? zero_ : one_;
        const ElementId top = is_meet ? one_ : zero_;
        if (c == d) return c;
        if (c == bottom || d == bottom) return bottom;
        if (c == top) return d;
        if (d == top) return c;
        if (neg_[c] == d) return bottom;
        // De Morgan through the dual table.
        ElementId nc = neg_[c];
        ElementId nd = neg_[d];
        if (nc < comm_.size() && nd < comm_.size() && comm_[nc].test(nd)) {
            ElementId dual = table_get(is_meet ? join_ : meet_, nc, nd);
            if (dual != kNone && neg_[dual] != kNone) return neg_[dual];
        }
        return kNone;
    }

    // An existing class equal to op(c, d) in every 2-valued model of a
    // clique holding c and d. Such a class is forced equal to op(c, d).
    ElementId known(TermKind kind, ElementId c, ElementId d) const {
        if (c >= member_of_.size() || d >= member_of_.size()) return kNone;
        for (std::uint32_t k : member_of_[c]) {
            const CliqueModels& cm = cliques_[k];
            auto ic = cm.sig.find(c);
            auto id = cm.sig.find(d);
            if (id == cm.sig.end()) continue;
            std::vector<std::uint64_t> want = ic->second;
            for (std::size_t w = 0; w < want.size(); ++w) {
                if (kind == TermKind::meet) want[w] &= id->second[w];
                if (kind == TermKind::join) want[w] |= id->second[w];
                if (kind == TermKind::neg) want[w] = ~want[w] & word_mask(cm.models, w);
            }
            auto hit = cm.by_sig.find(want);
            if (hit != cm.by_sig.end()) return hit->second;
        }
        return kNone;
    }

    static std::uint64_t word_mask(std::size_t models, std::size_t w) {
        std::size_t bits = models - 64 * w;
        return bits >= 64 ? ~0ULL : (1ULL << bits) - 1;
    }

    void expand() {
        const std::size_t n0 = n_;
        for (ElementId c = 0; c < n0 && !limit_hit_; ++c) {
            if (neg_[c] != kNone) continue;
            ElementId k = known(TermKind::neg, c, c);
            if (k == kNone) k = class_for(TermKind::neg, c, 0);
            neg_[c] = k;
            if (neg_[k] == kNone) neg_[k] = c;
        }
        for (ElementId c = 0; c < n0 && !limit_hit_; ++c) {
            for (auto d = comm_[c].find_next(c); d != Bitset::npos && d < n0 && !limit_hit_; d = comm_[c].find_next(d)) {
                auto e = static_cast<ElementId>(d);
                for (TermKind kind : {TermKind::meet, TermKind::join}) {
                    TableMap& table = kind == TermKind::meet ? meet_ : join_;
                    auto key = pair_key(c, e);
                    if (table.count(key)) continue;
                    ElementId v = shortcut(kind, c, e);
                    if (v == kNone) v = known(kind, c, e);
                    if (v == kNone) v = class_for(kind, c, e);
                    table[key] = v;
                }
            }
        }
        for (auto& row : comm_) row.resize(n_);
        comm_.resize(n_, Bitset(n_));
        for (std::size_t c = n0; c < n_; ++c) {
            for (ElementId k : {static_cast<ElementId>(c), zero_, one_}) {
                comm_[c].set(k);
                comm_[k].set(c);
            }
        }
    }

    // Commeasurability rules to fixpoint; true when a pair was added.
    bool comm_closure() {
        bool changed = false;
        auto add_row = [&](ElementId x, const Bitset& bits) {
            Bitset fresh = bits - comm_[x];
            if (fresh.none()) return false;
            comm_[x] |= fresh;
            for_each_bit(fresh, [&](std::size_t v) { comm_[v].set(x); });
            return true;
        };
        while (true) {
            bool pass = false;
            for (ElementId c = 0; c < n_; ++c) {
                if (!comm_[c].test(c) || !comm_[c].test(zero_) || !comm_[c].test(one_)) {
                    for (ElementId k : {c, zero_, one_}) {
                        comm_[c].set(k);
                        comm_[k].set(c);
                    }
                    pass = true;
                }
                if (neg_[c] != kNone) pass |= add_row(neg_[c], Bitset(comm_[c]));
            }
            for (const TableMap* table : {&meet_, &join_}) {
                for (const auto& [key, m] : *table) {
                    auto [c, d] = unpack(key);
                    pass |= add_row(m, comm_[c] & comm_[d]);
                }
            }
            if (spec_.lep_rule) pass |= lep_pass(add_row);
            if (!pass) break;
            changed = true;
        }
        return changed;
    }

    template <class AddRow>
    bool lep_pass(AddRow& add_row) {
        // down[t] = { u : u & t = u }.
        std::vector<Bitset> down(n_, Bitset(n_));
        for (ElementId c = 0; c < n_; ++c) {
            down[c].set(c);
            down[c].set(zero_);
        }
        for (const auto& [key, m] : meet_) {
            auto [c, d] = unpack(key);
            if (m == c) down[d].set(c);
            if (m == d) down[c].set(d);
        }
        bool pass = false;
        for (ElementId t = 0; t < n_; ++t) {
            ElementId s = neg_[t];
            if (s == kNone || s < t) continue;
            for_each_bit(down[t], [&](std::size_t u) {
                if (add_row(static_cast<ElementId>(u), down[s])) {
                    pass = true;
                    if (spec_.trace) log("lep " + show(static_cast<ElementId>(u)) + " ~ " + show(s));
                }
            });
        }
        return pass;
    }

    void boolean_phase() {
        BitGraph graph(n_);
        for (ElementId c = 0; c < n_; ++c) {
            graph.adj[c] = comm_[c];
            graph.adj[c].reset(c);
        }
        std::vector<std::pair<ElementId, ElementId>> merges;
        std::vector<int> local(n_, 0);
        cliques_.clear();
        member_of_.assign(n_, {});
        for_each_maximal_clique(graph, [&](const std::vector<std::size_t>& clique) {
            for (std::size_t i = 0; i < clique.size(); ++i) local[clique[i]] = static_cast<int>(i) + 1;
            CnfProblem cnf;
            cnf.num_vars = clique.size();
            cnf.add({-local[zero_]});
            cnf.add({local[one_]});
            for (auto cv : clique) {
                auto c = static_cast<ElementId>(cv);
                int x = local[c];
                if (neg_[c] != kNone && local[neg_[c]] && neg_[c] > c) {
                    int y = local[neg_[c]];
                    cnf.add({x, y});
                    cnf.add({-x, -y});
                }
                for (auto dv : clique) {
                    auto d = static_cast<ElementId>(dv);
                    if (d <= c) continue;
                    int y = local[d];
                    ElementId m = table_get(meet_, c, d);
                    if (m != kNone && local[m]) {
                        int z = local[m];
                        cnf.add({-z, x});
                        cnf.add({-z, y});
                        cnf.add({z, -x, -y});
                    }
                    ElementId j = table_get(join_, c, d);
                    if (j != kNone && local[j]) {
                        int z = local[j];
                        cnf.add({z, -x});
                        cnf.add({z, -y});
                        cnf.add({-z, x, y});
                    }
                }
            }
            std::vector<std::vector<std::uint64_t>> sig(clique.size());
            std::size_t models = 0;
            dpll_all(cnf, [&](const Assignment& a) {
                if (models % 64 == 0) {
                    for (auto& s : sig) s.push_back(0);
                }
                for (std::size_t i = 0; i < clique.size(); ++i) {
                    if (a[i]) sig[i].back() |= 1ULL << (models % 64);
                }
                ++models;
                return models < spec_.model_limit;
            });
            for (auto cv : clique) local[cv] = 0;
            if (models >= spec_.model_limit) {
                limit_hit_ = true;
                log("model limit reached on a clique of " + std::to_string(clique.size()) + " classes");
                return false;
            }
            if (models == 0) {
                for (auto cv : clique) merges.emplace_back(static_cast<ElementId>(clique[0]), static_cast<ElementId>(cv));
                return true;
            }
            CliqueModels cm;
            cm.models = models;
            for (std::size_t i = 0; i < clique.size(); ++i) {
                auto c = static_cast<ElementId>(clique[i]);
                auto [it, inserted] = cm.by_sig.emplace(sig[i], c);
                if (!inserted) merges.emplace_back(it->second, c);
                member_of_[c].push_back(static_cast<std::uint32_t>(cliques_.size()));
                cm.sig.emplace(c, std::move(sig[i]));
            }
            cliques_.push_back(std::move(cm));
            return true;
        });
        for (const auto& [a, b] : merges) {
            if (uf_.unite(a, b)) {
                pending_ = true;
                if (spec_.trace) log("merge " + show(a) + " == " + show(b));
            }
        }
    }

    void close() {
        while (!limit_hit_) {
            bool grew = comm_closure();
            observe("commeasurability");
            boolean_phase();
            bool merged = rebuild();
            observe("boolean");
            if (!grew && !merged) break;
        }
    }

    // Congruence closure over the pending unions, then renumbering of the
    // classes by canonical representative. True when classes were merged.
    bool rebuild() {
        if (!pending_) return false;
        while (true) {
            bool unions = false;
            std::vector<ElementId> negr(n_, kNone);
            for (ElementId c = 0; c < n_; ++c) {
                if (neg_[c] == kNone) continue;
                auto r = static_cast<ElementId>(uf_.find(c));
                auto v = static_cast<ElementId>(uf_.find(neg_[c]));
                if (negr[r] == kNone) {
                    negr[r] = v;
                } else if (uf_.find(negr[r]) != v) {
                    unions |= uf_.unite(negr[r], v);
                }
            }
            for (TableMap* table : {&meet_, &join_}) {
                TableMap seen;
                for (const auto& [key, m] : *table) {
                    auto [c, d] = unpack(key);
                    auto k2 = pair_key(static_cast<ElementId>(uf_.find(c)), static_cast<ElementId>(uf_.find(d)));
                    auto v = static_cast<ElementId>(uf_.find(m));
                    // Idempotence once both arguments are one class.
                    if (uf_.find(c) == uf_.find(d) && uf_.find(c) != v) unions |= uf_.unite(c, v);
                    auto [it, inserted] = seen.emplace(k2, v);
                    if (!inserted && uf_.find(it->second) != v) unions |= uf_.unite(it->second, v);
                }
            }
            if (!unions) break;
        }

        std::vector<std::uint32_t> best(n_, UINT32_MAX);
        auto better = [&](std::uint32_t s, std::uint32_t t) {
            if (t == UINT32_MAX) return true;
            return std::pair(terms_[s].depth, s) < std::pair(terms_[t].depth, t);
        };
        for (ElementId c = 0; c < n_; ++c) {
            auto r = uf_.find(c);
            if (better(rep_[c], best[r])) best[r] = rep_[c];
        }
        std::vector<ElementId> roots;
        for (ElementId c = 0; c < n_; ++c) {
            if (uf_.find(c) == c) roots.push_back(c);
        }
        std::sort(roots.begin(), roots.end(), [&](ElementId x, ElementId y) { return better(best[x], best[y]); });
        std::vector<ElementId> id_of_root(n_, kNone);
        for (std::size_t i = 0; i < roots.size(); ++i) id_of_root[roots[i]] = static_cast<ElementId>(i);
        std::vector<ElementId> remap(n_);
        for (ElementId c = 0; c < n_; ++c) remap[c] = id_of_root[uf_.find(c)];

        const std::size_t m = roots.size();
        std::vector<std::uint32_t> rep(m);
        std::vector<ElementId> neg(m, kNone);
        std::vector<Bitset> comm(m, Bitset(m));
        for (std::size_t i = 0; i < m; ++i) rep[i] = best[roots[i]];
        for (ElementId c = 0; c < n_; ++c) {
            if (neg_[c] != kNone) neg[remap[c]] = remap[neg_[c]];
            for_each_bit(comm_[c], [&](std::size_t v) { comm[remap[c]].set(remap[v]); });
        }
        for (TableMap* table : {&meet_, &join_}) {
            TableMap next;
            for (const auto& [key, v] : *table) {
                auto [c, d] = unpack(key);
                if (remap[c] == remap[d]) continue;
                next.emplace(pair_key(remap[c], remap[d]), remap[v]);
            }
            *table = std::move(next);
        }
        for (auto& tc : term_class_) {
            if (tc != kNone) tc = remap[tc];
        }
        member_of_.assign(m, {});
        for (std::size_t k = 0; k < cliques_.size(); ++k) {
            CliqueModels& cm = cliques_[k];
            std::unordered_map<ElementId, std::vector<std::uint64_t>> sig;
            for (auto& [c, bits] : cm.sig) {
                if (sig.emplace(remap[c], std::move(bits)).second) member_of_[remap[c]].push_back(static_cast<std::uint32_t>(k));
            }
            cm.sig = std::move(sig);
            for (auto& [bits, c] : cm.by_sig) c = remap[c];
        }
        zero_ = remap[zero_];
        one_ = remap[one_];
        rep_ = std::move(rep);
        neg_ = std::move(neg);
        comm_ = std::move(comm);
        n_ = m;
        uf_ = UnionFind(m);
        pending_ = false;
        return true;
    }

    std::shared_ptr<QuotientAlgebra::Data> finish(bool stabilized, std::size_t levels) {
        auto d = std::make_shared<QuotientAlgebra::Data>();
        d->base = spec_.base;
        d->stabilized = stabilized;
        d->levels = levels;
        d->n = n_;
        d->comm_pairs = count_comm();
        d->zero = zero_;
        d->one = one_;
        d->eta.resize(spec_.base.size());
        for (ElementId a = 0; a < spec_.base.size(); ++a) d->eta[a] = term_class_[a];
        d->neg = neg_;
        d->comm = comm_;
        d->meet = meet_;
        d->join = join_;
        d->terms = terms_;
        d->term_class = term_class_;
        d->rep = rep_;
        std::unordered_set<std::string> used;
        d->labels.resize(n_);
        for (ElementId c = 0; c < n_; ++c) {
            std::string label = show(c);
            if (!used.insert(label).second) {
                label += "#" + std::to_string(c);
                used.insert(label);
            }
            d->labels[c] = std::move(label);
        }
        d->trace = std::move(trace_);
        if (stabilized) {
            PbaTables t;
            t.carrier = n_;
            t.zero = zero_;
            t.one = one_;
            t.neg = neg_;
            t.labels = d->labels;
            for (ElementId c = 0; c < n_; ++c) {
                if (neg_[c] == kNone) throw std::logic_error("saturate: negation missing after stabilization");
                for (auto e = comm_[c].find_first(); e != Bitset::npos; e = comm_[c].find_next(e)) {
                    if (e < c) continue;
                    auto x = static_cast<ElementId>(e);
                    ElementId mv = table_get(meet_, c, x);
                    ElementId jv = table_get(join_, c, x);
                    if (mv == kNone || jv == kNone) throw std::logic_error("saturate: operation missing after stabilization");
                    t.comm.emplace_back(c, x);
                    t.meet.push_back({c, x, mv});
                    t.join.push_back({c, x, jv});
                }
            }
            try {
                d->algebra = FinitePBA::from_tables(t);
            } catch (const InvalidAlgebra& e) {
                throw std::logic_error(std::string("saturate: stabilized quotient is invalid: ") + e.what());
            }
        }
        return d;
    }

    const ExtensionSpec& spec_;
    const SaturationObserver& observer_;

    std::vector<PreTerm> terms_;
    std::unordered_map<std::uint64_t, std::uint32_t> term_index_;
    std::vector<ElementId> term_class_;

    std::size_t n_ = 0;
    std::vector<std::uint32_t> rep_;
    std::vector<ElementId> neg_;
    std::vector<Bitset> comm_;
    TableMap meet_;
    TableMap join_;
    ElementId zero_ = 0;
    ElementId one_ = 0;

    // Models of each maximal clique from the last Boolean phase.
    struct CliqueModels {
        std::size_t models = 0;
        std::unordered_map<ElementId, std::vector<std::uint64_t>> sig;
        std::map<std::vector<std::uint64_t>, ElementId> by_sig;
    };
    std::vector<CliqueModels> cliques_;
    std::vector<std::vector<std::uint32_t>> member_of_;

    UnionFind uf_;
    bool pending_ = false;
    bool limit_hit_ = false;
    std::vector<std::string> trace_;
};

} // namespace

bool QuotientAlgebra::stabilized() const { return d_->stabilized; }
std::size_t QuotientAlgebra::levels() const { return d_->levels; }
std::size_t QuotientAlgebra::size() const { return d_->n; }
std::size_t QuotientAlgebra::comm_pairs() const { return d_->comm_pairs; }
const std::vector<ElementId>& QuotientAlgebra::eta() const { return d_->eta; }
ElementId QuotientAlgebra::zero() const { return d_->zero; }
ElementId QuotientAlgebra::one() const { return d_->one; }
ElementId QuotientAlgebra::neg(ElementId c) const { return d_->neg.at(c); }
bool QuotientAlgebra::comm(ElementId c, ElementId d) const { return d_->comm.at(c).test(d); }
ElementId QuotientAlgebra::meet(ElementId c, ElementId d) const { return comm(c, d) ? table_get(d_->meet, c, d) : kNone; }
ElementId QuotientAlgebra::join(ElementId c, ElementId d) const { return comm(c, d) ? table_get(d_->join, c, d) : kNone; }
const std::string& QuotientAlgebra::label(ElementId c) const { return d_->labels.at(c); }
std::size_t QuotientAlgebra::num_terms() const { return d_->terms.size(); }
const PreTerm& QuotientAlgebra::term(std::uint32_t t) const { return d_->terms.at(t); }
ElementId QuotientAlgebra::term_class(std::uint32_t t) const { return d_->term_class.at(t); }
std::uint32_t QuotientAlgebra::rep_term(ElementId c) const { return d_->rep.at(c); }
std::string QuotientAlgebra::pretty(std::uint32_t t) const { return render(d_->terms, *d_->base, t); }
const std::optional<FinitePBA>& QuotientAlgebra::algebra() const { return d_->algebra; }
const std::vector<std::string>& QuotientAlgebra::trace() const { return d_->trace; }

ElementId QuotientAlgebra::evaluate(const Term& t) const {
    switch (t.kind) {
    case TermKind::generator:
        return t.element < d_->eta.size() ? d_->eta[t.element] : kNone;
    case TermKind::zero:
        return d_->zero;
    case TermKind::one:
        return d_->one;
    case TermKind::neg: {
        ElementId c = evaluate(t.args.at(0));
        return c == kNone ? kNone : d_->neg[c];
    }
    case TermKind::meet:
    case TermKind::join: {
        ElementId c = evaluate(t.args.at(0));
        ElementId e = evaluate(t.args.at(1));
        if (c == kNone || e == kNone) return kNone;
        return t.kind == TermKind::meet ? meet(c, e) : join(c, e);
    }
    }
    return kNone;
}

QuotientAlgebra saturate(const ExtensionSpec& spec, const SaturationObserver& observer) {
    Engine engine(spec, observer);
    return QuotientAlgebra(engine.run());
}

QuotientAlgebra perp_extension(const FinitePBA& A, std::size_t depth) {
    ExtensionSpec spec(A);
    spec.relation = perp_pairs(A);
    spec.depth_limit = depth;
    return saturate(spec);
}

QuotientAlgebra lep_saturate(const FinitePBA& A, std::size_t depth) {
    ExtensionSpec spec(A);
    spec.lep_rule = true;
    spec.depth_limit = depth;
    return saturate(spec);
}

QuotientAlgebra coequaliser(const ElementMap& f, const ElementMap& g, const FinitePBA& target, std::size_t depth) {
    if (f.size() != g.size()) throw PreconditionError("coequaliser: maps have different sources");
    ExtensionSpec spec(target);
    for (std::size_t a = 0; a < f.size(); ++a) {
        if (f[a] != g[a]) spec.force_equal.emplace_back(f[a], g[a]);
    }
    spec.depth_limit = depth;
    return saturate(spec);
}

ElementMap lift_morphism(const ExtensionSpec& spec, const QuotientAlgebra& q, const ElementMap& h, const FinitePBA& B) {
    const FinitePBA& A = spec.base;
    auto pair_text = [&](ElementId a, ElementId b) { return "(" + A.label(a) + ", " + A.label(b) + ")"; };
    MorphismCheck base_check = is_morphism(h, A, B);
    if (!base_check.ok) throw PreconditionError("lift: not a morphism on the base: " + base_check.violation);
    for (const auto& [a, b] : spec.relation) {
        if (!B.comm(h[a], h[b])) throw PreconditionError("lift: related pair " + pair_text(a, b) + " not commeasurable in target");
    }
    for (const auto& [a, b] : spec.force_equal) {
        if (h[a] != h[b]) throw PreconditionError("lift: forced pair " + pair_text(a, b) + " not identified");
    }
    if (spec.lep_rule) {
        auto lep = lep_check(B);
        if (!lep.holds) throw PreconditionError("lift: target violates LEP");
    }

    std::vector<ElementId> gamma(q.num_terms(), kNone);
    for (std::uint32_t t = 0; t < q.num_terms(); ++t) {
        const PreTerm& p = q.term(t);
        switch (p.kind) {
        case TermKind::generator:
            gamma[t] = h[p.a];
            break;
        case TermKind::zero:
            gamma[t] = B.zero();
            break;
        case TermKind::one:
            gamma[t] = B.one();
            break;
        case TermKind::neg:
            gamma[t] = B.neg(gamma[p.a]);
            break;
        case TermKind::meet:
            gamma[t] = B.meet(gamma[p.a], gamma[p.b]);
            break;
        case TermKind::join:
            gamma[t] = B.join(gamma[p.a], gamma[p.b]);
            break;
        }
        if (gamma[t] == kNone) throw std::logic_error("lift: undefined at term " + q.pretty(t));
    }
    ElementMap out(q.size(), kNone);
    for (std::uint32_t t = 0; t < q.num_terms(); ++t) {
        ElementId c = q.term_class(t);
        if (out[c] == kNone) {
            out[c] = gamma[q.rep_term(c)];
        }
        if (out[c] != gamma[t]) throw std::logic_error("lift: not constant on the class of " + q.pretty(t));
    }
    if (q.algebra()) {
        MorphismCheck check = is_morphism(out, *q.algebra(), B);
        if (!check.ok) throw std::logic_error("lift: result is not a morphism: " + check.violation);
    } else {
        for (ElementId c = 0; c < q.size(); ++c) {
            if (q.neg(c) != kNone && B.neg(out[c]) != out[q.neg(c)]) throw std::logic_error("lift: negation not preserved");
            for (ElementId e = c; e < q.size(); ++e) {
                if (!q.comm(c, e)) continue;
                if (!B.comm(out[c], out[e])) throw std::logic_error("lift: commeasurability not preserved");
                ElementId m = q.meet(c, e);
                ElementId j = q.join(c, e);
                if (m != kNone && B.meet(out[c], out[e]) != out[m]) throw std::logic_error("lift: meet not preserved");
                if (j != kNone && B.join(out[c], out[e]) != out[j]) throw std::logic_error("lift: join not preserved");
            }
        }
    }
    return out;
}

} // namespace pba
