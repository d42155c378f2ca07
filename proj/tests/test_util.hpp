#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "ssbh/bitstring.hpp"

// Helpers shared by the test suites. The std::mt19937_64 generators here are
// intentionally unrelated to the library's own keyed stream.

namespace testutil {

inline ssbh::BitString random_bits(std::mt19937_64& rng, std::uint64_t nbits) {
    ssbh::BitString out(nbits);
    for (std::uint64_t i = 0; i < nbits; ++i)
        if (rng() & 1) out.set(i, true);
    return out;
}

/// |#ones - n/2| measured in binomial standard deviations.
inline double monobit_sigma(const ssbh::BitString& bits) {
    const double n = static_cast<double>(bits.size());
    const double ones = static_cast<double>(bits.popcount());
    return std::fabs(ones - n / 2.0) / std::sqrt(n / 4.0);
}

} // namespace testutil
