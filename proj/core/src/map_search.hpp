#pragma once

#include "pba/algebra.hpp"

#include <deque>
#include <functional>

namespace pba {

// Backtracking search for structure-preserving maps A -> B. Each assignment
// is propagated through negation and through meets and joins with already
// assigned partners. In isomorphism mode the map must also be injective,
// reflect commeasurability and respect the given colourings.
class MapSearch {
  public:
    enum class Mode { morphism, isomorphism };

    MapSearch(const FinitePBA& A, const FinitePBA& B, Mode mode) : A_(A), B_(B), mode_(mode) {}

    void set_colours(std::vector<std::size_t> a, std::vector<std::size_t> b) {
        colour_a_ = std::move(a);
        colour_b_ = std::move(b);
    }
    void set_order(std::vector<ElementId> order) { order_ = std::move(order); }

    void run(const std::function<bool(const ElementMap&)>& visit) {
        if (order_.empty()) {
            for (ElementId a = 0; a < A_.size(); ++a) order_.push_back(a);
        }
        State s{ElementMap(A_.size(), FinitePBA::none), std::vector<bool>(B_.size(), false)};
        if (!assign(s, A_.zero(), B_.zero()) || !assign(s, A_.one(), B_.one())) return;
        search(std::move(s), 0, visit);
    }

  private:
    struct State {
        ElementMap map;
        std::vector<bool> used;
    };

    bool compatible(ElementId a, ElementId b) const {
        if (mode_ == Mode::isomorphism && !colour_a_.empty() && colour_a_[a] != colour_b_[b]) return false;
        return true;
    }

    bool assign(State& s, ElementId a0, ElementId b0) {
        std::deque<std::pair<ElementId, ElementId>> queue{{a0, b0}};
        while (!queue.empty()) {
            auto [a, b] = queue.front();
            queue.pop_front();
            if (b == FinitePBA::none) return false;
            if (s.map[a] != FinitePBA::none) {
                if (s.map[a] != b) return false;
                continue;
            }
            if (!compatible(a, b)) return false;
            if (mode_ == Mode::isomorphism) {
                if (s.used[b]) return false;
                for (ElementId y = 0; y < A_.size(); ++y) {
                    if (s.map[y] == FinitePBA::none) continue;
                    if (A_.comm(a, y) != B_.comm(b, s.map[y])) return false;
                }
            }
            s.map[a] = b;
            s.used[b] = true;
            queue.emplace_back(A_.neg(a), B_.neg(b));
            const auto& row = A_.partners(a);
            for (std::size_t k = 0; k < row.size(); ++k) {
                ElementId y = row[k];
                ElementId fy = s.map[y];
                if (fy == FinitePBA::none) continue;
                if (!B_.comm(b, fy)) return false;
                queue.emplace_back(A_.meet_row(a)[k], B_.meet(b, fy));
                queue.emplace_back(A_.join_row(a)[k], B_.join(b, fy));
            }
        }
        return true;
    }

    bool search(State s, std::size_t pos, const std::function<bool(const ElementMap&)>& visit) {
        while (pos < order_.size() && s.map[order_[pos]] != FinitePBA::none) ++pos;
        if (pos == order_.size()) return visit(s.map);
        ElementId a = order_[pos];
        for (ElementId b = 0; b < B_.size(); ++b) {
            if (!compatible(a, b) || (mode_ == Mode::isomorphism && s.used[b])) continue;
            State next = s;
            if (!assign(next, a, b)) continue;
            if (!search(std::move(next), pos + 1, visit)) return false;
        }
        return true;
    }

    const FinitePBA& A_;
    const FinitePBA& B_;
    Mode mode_;
    std::vector<std::size_t> colour_a_;
    std::vector<std::size_t> colour_b_;
    std::vector<ElementId> order_;
};

} // namespace pba
