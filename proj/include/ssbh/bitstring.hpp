#pragma once

#include <cstdint>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace ssbh {

/// Packed sequence of bits with an explicit length.
///
/// Bit k of the stream lives in word k/64 at position k%64; on disk the same
/// stream is byte k/8, bit k%8 (LSB first). All storage past size() is kept
/// zero so word-level operations need no per-call masking.
class BitString {
public:
    BitString() = default;
    explicit BitString(std::uint64_t nbits) : words_((nbits + 63) / 64, 0), len_(nbits) {}

    static BitString from_bools(std::span<const int> bits);
    static BitString from_bytes(std::span<const std::uint8_t> bytes, std::uint64_t nbits);

    std::uint64_t size() const { return len_; }
    bool empty() const { return len_ == 0; }

    bool get(std::uint64_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::uint64_t i, bool v) {
        const std::uint64_t mask = std::uint64_t{1} << (i & 63);
        if (v)
            words_[i >> 6] |= mask;
        else
            words_[i >> 6] &= ~mask;
    }

    std::span<const std::uint64_t> words() const { return words_; }
    std::span<std::uint64_t> words() { return words_; }

    std::uint64_t popcount() const;

    /// In-place XOR with another string of identical length.
    void xor_with(const BitString& other);

    /// Append all bits of `tail` after the current last bit.
    void append(const BitString& tail);

    /// Bits [first, first+count) as a new string.
    BitString slice(std::uint64_t first, std::uint64_t count) const;

    std::vector<std::uint8_t> to_bytes() const;

    void write_file(const std::string& path) const;
    static BitString read_file(const std::string& path, std::uint64_t nbits);

    bool operator==(const BitString& other) const = default;

private:
    void mask_tail();

    std::vector<std::uint64_t> words_;
    std::uint64_t len_ = 0;
};

/// dst[dst_off + i] ^= src[src_off + i] for i in [0, nbits).
/// `src` must have at least one addressable word past its last read bit when
/// src_off+nbits is not word aligned; BitString storage guarantees this for
/// slices that stay within size(), and callers pad otherwise.
void xor_bit_range(std::span<std::uint64_t> dst, std::uint64_t dst_off,
                   std::span<const std::uint64_t> src, std::uint64_t src_off,
                   std::uint64_t nbits);

} // namespace ssbh
