#pragma once

#include "pba/algebra.hpp"

namespace pba {

struct FinitePBA::Data {
    std::size_t n = 0;
    ElementId zero = 0;
    ElementId one = 0;
    std::vector<ElementId> neg;
    std::vector<Bitset> comm;
    std::vector<std::vector<ElementId>> partners;
    std::vector<std::vector<ElementId>> meet;
    std::vector<std::vector<ElementId>> join;
    std::vector<std::string> labels;
    std::unordered_map<std::string, ElementId> label_index;
    std::vector<Block> blocks;
};

} // namespace pba
