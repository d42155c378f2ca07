#include "ssbh/bitstring.hpp"

#include <bit>
#include <cstdio>
#include <memory>

#include "ssbh/errors.hpp"

namespace ssbh {

BitString BitString::from_bools(std::span<const int> bits) {
    BitString out(bits.size());
    for (std::uint64_t i = 0; i < bits.size(); ++i)
        if (bits[i]) out.set(i, true);
    return out;
}

BitString BitString::from_bytes(std::span<const std::uint8_t> bytes, std::uint64_t nbits) {
    if (bytes.size() * 8 < nbits)
        throw std::invalid_argument("from_bytes: byte buffer shorter than bit count");
    BitString out(nbits);
    const std::uint64_t nbytes = (nbits + 7) / 8;
    for (std::uint64_t b = 0; b < nbytes; ++b)
        out.words_[b >> 3] |= std::uint64_t{bytes[b]} << ((b & 7) * 8);
    out.mask_tail();
    return out;
}

std::uint64_t BitString::popcount() const {
    std::uint64_t n = 0;
    for (std::uint64_t w : words_) n += std::popcount(w);
    return n;
}

void BitString::xor_with(const BitString& other) {
    if (other.len_ != len_)
        throw std::invalid_argument("xor_with: length mismatch");
    for (std::size_t i = 0; i < words_.size(); ++i)
        words_[i] ^= other.words_[i];
}

void BitString::append(const BitString& tail) {
    const std::uint64_t off = len_;
    len_ += tail.len_;
    words_.resize((len_ + 63) / 64, 0);
    xor_bit_range(words_, off, tail.words_, 0, tail.len_);
}

BitString BitString::slice(std::uint64_t first, std::uint64_t count) const {
    if (first + count > len_)
        throw std::invalid_argument("slice: range out of bounds");
    BitString out(count);
    xor_bit_range(out.words_, 0, words_, first, count);
    return out;
}

std::vector<std::uint8_t> BitString::to_bytes() const {
    const std::uint64_t nbytes = (len_ + 7) / 8;
    std::vector<std::uint8_t> out(nbytes);
    for (std::uint64_t b = 0; b < nbytes; ++b)
        out[b] = static_cast<std::uint8_t>(words_[b >> 3] >> ((b & 7) * 8));
    return out;
}

void BitString::write_file(const std::string& path) const {
    std::unique_ptr<std::FILE, int (*)(std::FILE*)> f(std::fopen(path.c_str(), "wb"), std::fclose);
    if (!f)
        throw io_error("cannot open for writing: " + path);
    const auto bytes = to_bytes();
    if (!bytes.empty() && std::fwrite(bytes.data(), 1, bytes.size(), f.get()) != bytes.size())
        throw io_error("short write: " + path);
}

BitString BitString::read_file(const std::string& path, std::uint64_t nbits) {
    std::unique_ptr<std::FILE, int (*)(std::FILE*)> f(std::fopen(path.c_str(), "rb"), std::fclose);
    if (!f)
        throw io_error("cannot open for reading: " + path);
    const std::uint64_t nbytes = (nbits + 7) / 8;
    std::vector<std::uint8_t> bytes(nbytes);
    if (!bytes.empty() && std::fread(bytes.data(), 1, bytes.size(), f.get()) != bytes.size())
        throw io_error("file shorter than requested bit count: " + path);
    return from_bytes(bytes, nbits);
}

void BitString::mask_tail() {
    const unsigned rem = len_ & 63;
    if (rem && !words_.empty())
        words_.back() &= (std::uint64_t{1} << rem) - 1;
}

void xor_bit_range(std::span<std::uint64_t> dst, std::uint64_t dst_off,
                   std::span<const std::uint64_t> src, std::uint64_t src_off,
                   std::uint64_t nbits) {
    if (nbits == 0) return;

    auto read = [&](std::uint64_t bit) -> std::uint64_t {
        // 64 source bits starting at `bit`; reads past the last word yield 0.
        const std::uint64_t q = bit >> 6;
        const unsigned r = bit & 63;
        std::uint64_t lo = q < src.size() ? src[q] : 0;
        if (r == 0) return lo;
        std::uint64_t hi = q + 1 < src.size() ? src[q + 1] : 0;
        return (lo >> r) | (hi << (64 - r));
    };

    std::uint64_t done = 0;
    // Head: align destination to a word boundary.
    const unsigned dhead = dst_off & 63;
    if (dhead) {
        const std::uint64_t take = std::min<std::uint64_t>(64 - dhead, nbits);
        const std::uint64_t chunk = read(src_off) & ((take == 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << take) - 1));
        dst[dst_off >> 6] ^= chunk << dhead;
        done = take;
    }
    // Body: whole destination words.
    std::uint64_t dw = (dst_off + done) >> 6;
    while (nbits - done >= 64) {
        dst[dw++] ^= read(src_off + done);
        done += 64;
    }
    // Tail.
    if (done < nbits) {
        const std::uint64_t take = nbits - done;
        const std::uint64_t chunk = read(src_off + done) & ((std::uint64_t{1} << take) - 1);
        dst[dw] ^= chunk;
    }
}

} // namespace ssbh
