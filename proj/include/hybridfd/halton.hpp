#pragma once

#include <cstdint>

#include "geometry.hpp"

namespace hybridfd {

// Radical inverse of i in the given base: digit-reverse i across the radix
// point. halton(1, 2) = 1/2, halton(1, 3) = 1/3, ...
inline double radical_inverse(std::uint64_t i, std::uint32_t base) {
    double f = 1.0, r = 0.0;
    while (i > 0) {
        f /= static_cast<double>(base);
        r += f * static_cast<double>(i % base);
        i /= base;
    }
    return r;
}

// k-th Halton point in the unit square, bases 2 and 3, indexing from 1
// (index 0 would be the origin, which is degenerate for node layouts).
inline Point halton_point(std::uint64_t k) {
    return {radical_inverse(k, 2), radical_inverse(k, 3)};
}

} // namespace hybridfd
