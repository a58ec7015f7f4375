#pragma once

#include <boost/dynamic_bitset.hpp>

#include <cstdint>
#include <vector>

namespace pba {

using Bitset = boost::dynamic_bitset<std::uint64_t>;

template <class F>
void for_each_bit(const Bitset& bits, F&& f) {
    for (auto i = bits.find_first(); i != Bitset::npos; i = bits.find_next(i)) {
        f(i);
    }
}

inline std::vector<std::size_t> bits_to_vector(const Bitset& bits) {
    std::vector<std::size_t> out;
    out.reserve(bits.count());
    for_each_bit(bits, [&](std::size_t i) { out.push_back(i); });
    return out;
}

} // namespace pba
