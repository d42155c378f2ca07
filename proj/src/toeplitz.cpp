#include "ssbh/toeplitz.hpp"

#include <bit>
#include <stdexcept>
#include <vector>

namespace ssbh {

ToeplitzSeed::ToeplitzSeed(BitString s, std::uint64_t m_, std::uint64_t n_)
    : seed(std::move(s)), m(m_), n(n_) {
    if (m == 0 || n == 0)
        throw std::invalid_argument("toeplitz: m and n must be positive");
    if (seed.size() != m + n - 1)
        throw std::invalid_argument("toeplitz: seed must hold m+n-1 bits");
}

namespace {

void check_input(const ToeplitzSeed& seed, const BitString& input) {
    if (input.size() != seed.n)
        throw std::invalid_argument("toeplitz: input length does not match seed.n");
}

// Seed words with one zero word appended so 128-bit window reads stay in range.
std::vector<std::uint64_t> padded_words(const BitString& s) {
    auto w = s.words();
    std::vector<std::uint64_t> out(w.begin(), w.end());
    out.push_back(0);
    return out;
}

} // namespace

BitString toeplitz_hash(const ToeplitzSeed& seed, const BitString& input) {
    check_input(seed, input);
    BitString out(seed.m);
    const auto sw = padded_words(seed.seed);
    auto ow = out.words();
    const auto iw = input.words();

    // Column j of T is the seed slice starting at bit n-1-j; XOR it into the
    // accumulator for every set input bit.
    for (std::uint64_t w = 0; w < iw.size(); ++w) {
        std::uint64_t word = iw[w];
        while (word) {
            const std::uint64_t j = w * 64 + static_cast<std::uint64_t>(std::countr_zero(word));
            xor_bit_range(ow, 0, sw, seed.n - 1 - j, seed.m);
            word &= word - 1;
        }
    }
    return out;
}

BitString blocked_toeplitz_hash(const ToeplitzSeed& seed, const BitString& input,
                                const BlockingParams& blocking) {
    check_input(seed, input);
    if (blocking.m_prime == 0 || blocking.n_prime == 0)
        throw std::invalid_argument("toeplitz: blocking dimensions must be positive");

    BitString out(seed.m);
    const auto sw = padded_words(seed.seed);
    auto ow = out.words();

    for (std::uint64_t r0 = 0; r0 < seed.m; r0 += blocking.m_prime) {
        const std::uint64_t rows = std::min(blocking.m_prime, seed.m - r0);
        for (std::uint64_t c0 = 0; c0 < seed.n; c0 += blocking.n_prime) {
            const std::uint64_t cols = std::min(blocking.n_prime, seed.n - c0);
            for (std::uint64_t j = c0; j < c0 + cols; ++j) {
                if (!input.get(j)) continue;
                // Tile-local product: rows [r0, r0+rows) of column j.
                xor_bit_range(ow, r0, sw, seed.n - 1 - j + r0, rows);
            }
        }
    }
    return out;
}

std::uint64_t cycle_estimate(std::uint64_t input_len, std::uint64_t output_len,
                             std::uint64_t m_prime) {
    if (m_prime == 0)
        throw std::invalid_argument("cycle_estimate: m_prime must be positive");
    const std::uint64_t passes = (output_len + m_prime - 1) / m_prime;
    const unsigned __int128 total =
        static_cast<unsigned __int128>(input_len) + output_len +
        static_cast<unsigned __int128>(input_len + m_prime) * passes;
    if (total > ~std::uint64_t{0})
        throw std::overflow_error("cycle_estimate: result exceeds 64 bits");
    return static_cast<std::uint64_t>(total);
}

} // namespace ssbh
