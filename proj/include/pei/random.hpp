#pragma once

#include <cstdint>
#include <random>

namespace pei::detail {

// Uniform [0, 1) from raw engine output. std::uniform_real_distribution is
// not specified bit-for-bit across standard libraries.
inline double unit_uniform(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace pei::detail
