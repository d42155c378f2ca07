#include "ssbh/prf.hpp"

#include <bit>
#include <stdexcept>

namespace ssbh {

namespace {

int hex_val(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

} // namespace

MasterSeed MasterSeed::from_hex(std::string_view hex) {
    if (hex.size() != 64)
        throw std::invalid_argument("master seed must be 64 hex digits");
    MasterSeed s;
    for (int w = 0; w < 4; ++w) {
        std::uint64_t v = 0;
        for (int i = 0; i < 16; ++i) {
            const int d = hex_val(hex[w * 16 + i]);
            if (d < 0)
                throw std::invalid_argument("master seed contains a non-hex digit");
            v = (v << 4) | static_cast<std::uint64_t>(d);
        }
        s.words[w] = v;
    }
    return s;
}

std::string MasterSeed::to_hex() const {
    static const char* digits = "0123456789abcdef";
    std::string out(64, '0');
    for (int w = 0; w < 4; ++w)
        for (int i = 0; i < 16; ++i)
            out[w * 16 + i] = digits[(words[w] >> (60 - 4 * i)) & 0xF];
    return out;
}

namespace prf {

std::array<std::uint64_t, 4> block(const std::array<std::uint64_t, 4>& key,
                                   const std::array<std::uint64_t, 4>& ctr) {
    // Threefish-256 rotation schedule, 20 rounds, no tweak.
    constexpr unsigned rot[8][2] = {{14, 16}, {52, 57}, {23, 40}, {5, 37},
                                    {25, 33}, {46, 12}, {58, 22}, {32, 32}};
    constexpr std::uint64_t parity_const = 0x1BD11BDAA9FC1A22ull;

    std::uint64_t k[5] = {key[0], key[1], key[2], key[3],
                          parity_const ^ key[0] ^ key[1] ^ key[2] ^ key[3]};
    std::uint64_t x0 = ctr[0], x1 = ctr[1], x2 = ctr[2], x3 = ctr[3];

    auto inject = [&](std::uint64_t s) {
        x0 += k[s % 5];
        x1 += k[(s + 1) % 5];
        x2 += k[(s + 2) % 5];
        x3 += k[(s + 3) % 5] + s;
    };

    inject(0);
    for (unsigned d = 0; d < 20; ++d) {
        const unsigned r0 = rot[d & 7][0], r1 = rot[d & 7][1];
        x0 += x1;
        x1 = std::rotl(x1, static_cast<int>(r0)) ^ x0;
        x2 += x3;
        x3 = std::rotl(x3, static_cast<int>(r1)) ^ x2;
        std::swap(x1, x3);
        if ((d & 3) == 3) inject(d / 4 + 1);
    }
    return {x0, x1, x2, x3};
}

} // namespace prf

std::uint64_t KeyedStream::word(std::uint64_t index) const {
    return prf::block(key_, {tag_, sub_, index, 0})[0];
}

std::uint64_t KeyedStream::uniform_below(std::uint64_t bound, std::uint64_t index) const {
    if (bound == 0)
        throw std::invalid_argument("uniform_below: bound must be positive");
    if ((bound & (bound - 1)) == 0)
        return prf::block(key_, {tag_, sub_, index, 0})[0] & (bound - 1);
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound + 1) % bound;
    for (std::uint64_t attempt = 0;; ++attempt) {
        const std::uint64_t r = prf::block(key_, {tag_, sub_, index, attempt})[0];
        if (r <= limit) return r % bound;
    }
}

bool KeyedStream::bernoulli(double p, std::uint64_t index) const {
    if (p < 0.0 || p > 1.0)
        throw std::invalid_argument("bernoulli: p outside [0,1]");
    const std::uint64_t r = prf::block(key_, {tag_, sub_, index, 0})[0];
    const double u = static_cast<double>(r >> 11) * 0x1.0p-53;
    return u < p;
}

BitString KeyedStream::bits(std::uint64_t nbits) const {
    BitString out(nbits);
    auto words = out.words();
    const std::uint64_t nwords = words.size();
    for (std::uint64_t w = 0; w < nwords; w += 4) {
        const auto blk = prf::block(key_, {tag_, sub_, w / 4, 1});
        for (unsigned i = 0; i < 4 && w + i < nwords; ++i) words[w + i] = blk[i];
    }
    const unsigned rem = nbits & 63;
    if (rem) words[nwords - 1] &= (std::uint64_t{1} << rem) - 1;
    return out;
}

} // namespace ssbh
