#include "pba/sat.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace pba {

namespace {

inline std::size_t var_of(Literal l) { return static_cast<std::size_t>(std::abs(l)); }
inline std::size_t lit_index(Literal l) { return 2 * var_of(l) + (l < 0 ? 1 : 0); }

class Dpll {
  public:
    explicit Dpll(const CnfProblem& p) : n_(p.num_vars), value_(p.num_vars + 1, -1), watches_(2 * (p.num_vars + 1)) {
        for (const Clause& raw : p.clauses) {
            Clause c = raw;
            std::sort(c.begin(), c.end());
            c.erase(std::unique(c.begin(), c.end()), c.end());
            bool tautology = false;
            for (std::size_t i = 0; i + 1 < c.size(); ++i) {
                for (std::size_t j = i + 1; j < c.size(); ++j) {
                    if (c[i] == -c[j]) tautology = true;
                }
            }
            if (tautology) continue;
            if (c.empty()) {
                trivially_unsat_ = true;
                continue;
            }
            if (c.size() == 1) {
                units_.push_back(c[0]);
                continue;
            }
            std::size_t idx = clauses_.size();
            clauses_.push_back(std::move(c));
            watches_[lit_index(clauses_[idx][0])].push_back(idx);
            watches_[lit_index(clauses_[idx][1])].push_back(idx);
        }
    }

    std::size_t run(const std::function<bool(const Assignment&)>& visit) {
        if (trivially_unsat_) return 0;
        for (Literal u : units_) {
            if (!enqueue(u)) return 0;
        }
        std::size_t found = 0;
        bool ok = propagate();
        while (true) {
            if (ok) {
                std::size_t v = next_unassigned();
                if (v == 0) {
                    ++found;
                    if (!visit(current_assignment())) return found;
                    ok = false;
                } else {
                    trail_lim_.push_back(trail_.size());
                    decisions_.push_back({v, false});
                    enqueue(-static_cast<Literal>(v));
                    ok = propagate();
                    continue;
                }
            }
            // Chronological backtracking: flip the deepest unflipped decision.
            bool resumed = false;
            while (!decisions_.empty()) {
                Decision& d = decisions_.back();
                undo_to(trail_lim_.back());
                if (!d.flipped) {
                    d.flipped = true;
                    enqueue(static_cast<Literal>(d.var));
                    ok = propagate();
                    resumed = true;
                    break;
                }
                decisions_.pop_back();
                trail_lim_.pop_back();
            }
            if (!resumed) return found;
        }
    }

  private:
    struct Decision {
        std::size_t var;
        bool flipped;
    };

    int lit_value(Literal l) const {
        int v = value_[var_of(l)];
        if (v < 0) return -1;
        return l > 0 ? v : 1 - v;
    }

    bool enqueue(Literal l) {
        int v = lit_value(l);
        if (v == 1) return true;
        if (v == 0) return false;
        value_[var_of(l)] = l > 0 ? 1 : 0;
        trail_.push_back(l);
        return true;
    }

    bool propagate() {
        while (qhead_ < trail_.size()) {
            Literal falsified = -trail_[qhead_++];
            auto& ws = watches_[lit_index(falsified)];
            std::size_t keep = 0;
            bool conflict = false;
            for (std::size_t i = 0; i < ws.size(); ++i) {
                std::size_t ci = ws[i];
                if (conflict) {
                    ws[keep++] = ci;
                    continue;
                }
                Clause& c = clauses_[ci];
                if (c[0] == falsified) std::swap(c[0], c[1]);
                if (lit_value(c[0]) == 1) {
                    ws[keep++] = ci;
                    continue;
                }
                bool moved = false;
                for (std::size_t k = 2; k < c.size(); ++k) {
                    if (lit_value(c[k]) != 0) {
                        std::swap(c[1], c[k]);
                        watches_[lit_index(c[1])].push_back(ci);
                        moved = true;
                        break;
                    }
                }
                if (moved) continue;
                ws[keep++] = ci;
                if (!enqueue(c[0])) conflict = true;
            }
            ws.resize(keep);
            if (conflict) {
                qhead_ = trail_.size();
                return false;
            }
        }
        return true;
    }

    void undo_to(std::size_t size) {
        while (trail_.size() > size) {
            value_[var_of(trail_.back())] = -1;
            trail_.pop_back();
        }
        qhead_ = std::min(qhead_, trail_.size());
    }

    std::size_t next_unassigned() const {
        for (std::size_t v = 1; v <= n_; ++v) {
            if (value_[v] < 0) return v;
        }
        return 0;
    }

    Assignment current_assignment() const {
        Assignment a(n_);
        for (std::size_t v = 1; v <= n_; ++v) a[v - 1] = value_[v] == 1;
        return a;
    }

    std::size_t n_;
    std::vector<int> value_;
    std::vector<Clause> clauses_;
    std::vector<std::vector<std::size_t>> watches_;
    std::vector<Literal> units_;
    std::vector<Literal> trail_;
    std::vector<std::size_t> trail_lim_;
    std::vector<Decision> decisions_;
    std::size_t qhead_ = 0;
    bool trivially_unsat_ = false;
};

} // namespace

void check_well_formed(const CnfProblem& problem) {
    for (std::size_t i = 0; i < problem.clauses.size(); ++i) {
        for (Literal l : problem.clauses[i]) {
            if (l == 0 || var_of(l) > problem.num_vars) {
                throw std::invalid_argument("clause " + std::to_string(i) + ": literal " + std::to_string(l) +
                                            " out of range");
            }
        }
    }
}

bool satisfies(const CnfProblem& problem, const Assignment& assignment) {
    if (assignment.size() != problem.num_vars) return false;
    return std::all_of(problem.clauses.begin(), problem.clauses.end(), [&](const Clause& c) {
        return std::any_of(c.begin(), c.end(), [&](Literal l) { return assignment[var_of(l) - 1] == (l > 0); });
    });
}

std::optional<Assignment> dpll(const CnfProblem& problem) {
    check_well_formed(problem);
    std::optional<Assignment> model;
    Dpll(problem).run([&](const Assignment& a) {
        model = a;
        return false;
    });
    if (model && !satisfies(problem, *model)) throw std::logic_error("dpll: model failed re-verification");
    return model;
}

std::size_t dpll_all(const CnfProblem& problem, const std::function<bool(const Assignment&)>& visit) {
    check_well_formed(problem);
    return Dpll(problem).run([&](const Assignment& a) {
        if (!satisfies(problem, a)) throw std::logic_error("dpll_all: model failed re-verification");
        return visit(a);
    });
}

} // namespace pba
