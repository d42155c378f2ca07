#pragma once

#include <cstdint>

#include "ssbh/bitstring.hpp"

namespace ssbh {

/// Seed for an m x n binary Toeplitz matrix T, fixed by the convention
/// T[i][j] = seed[(n-1) + i - j]. The seed must hold exactly m+n-1 bits.
struct ToeplitzSeed {
    BitString seed;
    std::uint64_t m = 0; ///< output length (rows)
    std::uint64_t n = 0; ///< input length (columns)

    ToeplitzSeed(BitString s, std::uint64_t m_, std::uint64_t n_);
    bool matrix_bit(std::uint64_t i, std::uint64_t j) const { return seed.get(n - 1 + i - j); }
};

/// Sub-matrix tile geometry for the iterative (blocked) multiplication.
struct BlockingParams {
    std::uint64_t m_prime = 2000;
    std::uint64_t n_prime = 1;
};

/// K = T * input over GF(2).
BitString toeplitz_hash(const ToeplitzSeed& seed, const BitString& input);

/// Same product, accumulated tile by tile (row-major tile order); bit-for-bit
/// identical to toeplitz_hash for every blocking.
BitString blocked_toeplitz_hash(const ToeplitzSeed& seed, const BitString& input,
                                const BlockingParams& blocking);

/// Pipeline clock-cycle estimate for hashing one block:
/// input + output + (input + m') * ceil(output / m').
std::uint64_t cycle_estimate(std::uint64_t input_len, std::uint64_t output_len,
                             std::uint64_t m_prime);

} // namespace ssbh
