#ifndef HOMORBIT_BITS_HPP
#define HOMORBIT_BITS_HPP

#include <cstdint>
#include <vector>

namespace homorbit {

inline std::vector<int> mask_to_vertices(std::uint32_t mask) {
    std::vector<int> out;
    while (mask) {
        int v = __builtin_ctz(mask);
        out.push_back(v);
        mask &= mask - 1;
    }
    return out;
}

inline std::uint16_t vertices_to_mask(const std::vector<int>& vs) {
    std::uint16_t mask = 0;
    for (int v : vs) mask = static_cast<std::uint16_t>(mask | (1u << v));
    return mask;
}

} // namespace homorbit

#endif
