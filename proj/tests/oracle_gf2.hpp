#pragma once

#include "ssbh/toeplitz.hpp"

// Naive dense GF(2) matrix-vector oracle. Deliberately written bit-by-bit and
// kept independent of the packed kernels it cross-checks.

namespace testutil {

inline ssbh::BitString dense_toeplitz_oracle(const ssbh::ToeplitzSeed& seed,
                                             const ssbh::BitString& input) {
    ssbh::BitString out(seed.m);
    for (std::uint64_t i = 0; i < seed.m; ++i) {
        bool acc = false;
        for (std::uint64_t j = 0; j < seed.n; ++j)
            acc ^= seed.seed.get(seed.n - 1 + i - j) && input.get(j);
        out.set(i, acc);
    }
    return out;
}

} // namespace testutil
