#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

#include "ssbh/bitstring.hpp"

namespace ssbh {

/// 256-bit master seed for every pseudorandom draw a run makes.
struct MasterSeed {
    std::array<std::uint64_t, 4> words{};

    /// Parse 64 hex digits (big-endian digit order).
    static MasterSeed from_hex(std::string_view hex);
    std::string to_hex() const;

    bool operator==(const MasterSeed&) const = default;
};

namespace prf {

/// Threefry4x64-20 keyed counter permutation: 256-bit counter -> 256 bits.
std::array<std::uint64_t, 4> block(const std::array<std::uint64_t, 4>& key,
                                   const std::array<std::uint64_t, 4>& ctr);

constexpr std::uint64_t tag(std::string_view name) {
    // FNV-1a, used only to turn purpose strings into counter words.
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (char c : name) {
        h ^= static_cast<std::uint8_t>(c);
        h *= 0x100000001b3ull;
    }
    return h;
}

} // namespace prf

/// Counter-based stream keyed by (master seed, purpose tag, substream).
///
/// Every draw is addressed by an index, so the value at index i never depends
/// on evaluation order; distinct (tag, sub) pairs are independent streams.
/// A given stream must be used through one access pattern only (word / bits /
/// uniform), as the patterns share counter space.
class KeyedStream {
public:
    KeyedStream(const MasterSeed& seed, std::string_view purpose, std::uint64_t sub = 0)
        : key_(seed.words), tag_(prf::tag(purpose)), sub_(sub) {}

    /// 64 uniform bits at `index`.
    std::uint64_t word(std::uint64_t index) const;

    /// Uniform integer in [0, bound) at `index`; rejection sampled, no bias.
    std::uint64_t uniform_below(std::uint64_t bound, std::uint64_t index) const;

    /// Bernoulli(p) draw at `index`.
    bool bernoulli(double p, std::uint64_t index) const;

    /// nbits uniform random bits (uses all 256 bits of each block).
    BitString bits(std::uint64_t nbits) const;

private:
    std::array<std::uint64_t, 4> key_;
    std::uint64_t tag_;
    std::uint64_t sub_;
};

} // namespace ssbh
