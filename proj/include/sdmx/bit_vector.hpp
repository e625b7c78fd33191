#pragma once

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "serialize.hpp"

#if defined(__BMI2__)
#include <immintrin.h>
#endif

namespace sdmx {

namespace detail {

inline constexpr std::array<std::array<uint8_t, 8>, 256> make_select_in_byte() {
    std::array<std::array<uint8_t, 8>, 256> t{};
    for (unsigned v = 0; v < 256; ++v) {
        unsigned r = 0;
        for (unsigned b = 0; b < 8; ++b) {
            if (v & (1u << b)) t[v][r++] = static_cast<uint8_t>(b);
        }
        for (; r < 8; ++r) t[v][r] = 8;
    }
    return t;
}

inline constexpr auto select_in_byte = make_select_in_byte();

// Position of the (r+1)-th set bit of x. Requires r < popcount(x).
inline unsigned select64(uint64_t x, unsigned r) {
#if defined(__BMI2__)
    return static_cast<unsigned>(std::countr_zero(_pdep_u64(uint64_t(1) << r, x)));
#else
    unsigned shift = 0;
    for (;;) {
        auto byte = static_cast<unsigned>(x & 0xFF);
        auto c = static_cast<unsigned>(std::popcount(byte));
        if (r < c) return shift + select_in_byte[byte][r];
        r -= c;
        x >>= 8;
        shift += 8;
    }
#endif
}

inline uint64_t low_mask(unsigned bits) {
    return bits >= 64 ? ~uint64_t(0) : (uint64_t(1) << bits) - 1;
}

}  // namespace detail

/// Mutable bit buffer used to assemble a bit_vector.
class bit_builder {
public:
    bit_builder() = default;
    explicit bit_builder(std::size_t length) : m_words((length + 63) / 64, 0), m_length(length) {}

    void push_back(bool b) {
        if (m_length % 64 == 0) m_words.push_back(0);
        if (b) m_words.back() |= uint64_t(1) << (m_length % 64);
        ++m_length;
    }

    void set(std::size_t i, bool b = true) {
        if (b)
            m_words[i / 64] |= uint64_t(1) << (i % 64);
        else
            m_words[i / 64] &= ~(uint64_t(1) << (i % 64));
    }

    bool get(std::size_t i) const { return (m_words[i / 64] >> (i % 64)) & 1; }
    std::size_t size() const { return m_length; }

    std::vector<uint64_t> release_words() { return std::move(m_words); }

private:
    std::vector<uint64_t> m_words;
    std::size_t m_length = 0;
};

/// Immutable bitvector with constant-time rank and sampled select.
///
/// Rank directory: per 512-bit superblock, the cumulative count plus seven
/// packed 9-bit counts at the word boundaries inside it. Select: the
/// superblock of every 512th one (and zero, when enabled) is sampled, then
/// refined by binary search over the directory and the packed counts.
class bit_vector {
public:
    static constexpr std::size_t superblock_bits = 512;
    static constexpr std::size_t words_per_superblock = superblock_bits / 64;
    static constexpr std::size_t select_sample = 512;

    bit_vector() { build_index(); }

    bit_vector(std::vector<uint64_t> words, std::size_t length, bool with_select0 = false)
        : m_words(std::move(words)), m_length(length), m_with_select0(with_select0) {
        if (m_words.size() != (length + 63) / 64) throw std::invalid_argument("bit_vector: word count does not match length");
        if (length % 64 != 0 && !m_words.empty()) m_words.back() &= detail::low_mask(length % 64);
        build_index();
    }

    bit_vector(bit_builder&& b, bool with_select0 = false)
        : bit_vector(b.release_words(), b.size(), with_select0) {}

    std::size_t size() const { return m_length; }
    std::size_t num_ones() const { return m_ones; }
    std::size_t num_zeros() const { return m_length - m_ones; }
    bool supports_select0() const { return m_with_select0; }

    bool operator[](std::size_t i) const { return (m_words[i / 64] >> (i % 64)) & 1; }

    bool at(std::size_t i) const {
        if (i >= m_length) throw std::out_of_range("bit_vector::at: position out of range");
        return (*this)[i];
    }

    const std::vector<uint64_t>& words() const { return m_words; }

    /// Number of set bits in [0, i).
    std::size_t rank1(std::size_t i) const {
        if (i > m_length) throw std::out_of_range("bit_vector::rank1: position out of range");
        return rank1_unchecked(i);
    }

    std::size_t rank0(std::size_t i) const { return i - rank1(i); }

    std::size_t rank1_unchecked(std::size_t i) const {
        std::size_t sb = i / superblock_bits;
        std::size_t w = i / 64;
        std::size_t r = ones_before_superblock(sb) + ones_before_word(sb, w % words_per_superblock);
        if (i % 64) r += static_cast<std::size_t>(std::popcount(m_words[w] & detail::low_mask(i % 64)));
        return r;
    }

    /// Position of the (k+1)-th set bit.
    std::size_t select1(std::size_t k) const {
        if (k >= m_ones) throw std::out_of_range("bit_vector::select1: rank out of range");
        return select1_unchecked(k);
    }

    std::size_t select1_unchecked(std::size_t k) const {
        std::size_t sample = k / select_sample;
        std::size_t lo = m_select1_hint[sample];
        std::size_t hi = sample + 1 < m_select1_hint.size() ? m_select1_hint[sample + 1] + 1 : num_superblocks();
        // Largest superblock sb in [lo, hi) with ones_before_superblock(sb) <= k.
        std::size_t n = hi - lo;
        while (n > 1) {
            std::size_t half = n / 2;
            lo = ones_before_superblock(lo + half) <= k ? lo + half : lo;
            n -= half;
        }
        std::size_t rem = k - ones_before_superblock(lo);
        std::size_t j = 0;
        for (std::size_t t = 1; t < words_per_superblock; ++t) j += ones_before_word(lo, t) <= rem;
        std::size_t w = lo * words_per_superblock + j;
        rem -= ones_before_word(lo, j);
        return w * 64 + detail::select64(m_words[w], static_cast<unsigned>(rem));
    }

    /// Position of the (k+1)-th zero bit. Requires construction with select0 support.
    std::size_t select0(std::size_t k) const {
        if (!m_with_select0) throw std::logic_error("bit_vector::select0: select0 support not built");
        if (k >= num_zeros()) throw std::out_of_range("bit_vector::select0: rank out of range");
        return select0_unchecked(k);
    }

    std::size_t select0_unchecked(std::size_t k) const {
        std::size_t sample = k / select_sample;
        std::size_t lo = m_select0_hint[sample];
        std::size_t hi = sample + 1 < m_select0_hint.size() ? m_select0_hint[sample + 1] + 1 : num_superblocks();
        std::size_t n = hi - lo;
        while (n > 1) {
            std::size_t half = n / 2;
            lo = zeros_before_superblock(lo + half) <= k ? lo + half : lo;
            n -= half;
        }
        std::size_t rem = k - zeros_before_superblock(lo);
        std::size_t j = 0;
        for (std::size_t t = 1; t < words_per_superblock; ++t) j += 64 * t - ones_before_word(lo, t) <= rem;
        std::size_t w = lo * words_per_superblock + j;
        rem -= 64 * j - ones_before_word(lo, j);
        return w * 64 + detail::select64(~m_words[w], static_cast<unsigned>(rem));
    }

    /// Position of the first zero at or after position i, or size() if none.
    std::size_t next_zero(std::size_t i) const {
        if (i >= m_length) return m_length;
        std::size_t w = i / 64;
        uint64_t inv = ~m_words[w] & ~detail::low_mask(i % 64);
        while (inv == 0) {
            if (++w == m_words.size()) return m_length;
            inv = ~m_words[w];
        }
        std::size_t p = w * 64 + static_cast<std::size_t>(std::countr_zero(inv));
        return p < m_length ? p : m_length;
    }

    std::size_t payload_bits() const { return m_length; }

    std::size_t aux_bits() const {
        return 64 * (m_counts.size() + m_select1_hint.size() + m_select0_hint.size());
    }

    void save(word_writer& out) const {
        out.put(m_length);
        out.put_words(m_words);
    }

    static bit_vector load(word_reader& in, bool with_select0 = false) {
        uint64_t length = in.get();
        auto words = in.get_words();
        if (words.size() != (length + 63) / 64) throw format_error("bit_vector: word count does not match length");
        if (length % 64 != 0 && (words.back() & ~detail::low_mask(length % 64)) != 0)
            throw format_error("bit_vector: padding bits set");
        return bit_vector(std::move(words), length, with_select0);
    }

private:
    std::size_t num_superblocks() const { return m_counts.size() / 2 - 1; }

    std::size_t ones_before_superblock(std::size_t sb) const { return m_counts[2 * sb]; }

    // Ones in words [0, j) of superblock sb, 0 <= j < 8. Word j's count sits
    // at bits 9(j-1); for j = 0 the shift lands on the always-zero top bit.
    std::size_t ones_before_word(std::size_t sb, std::size_t j) const {
        uint64_t t = uint64_t(j) - 1;
        t += (t >> 60) & 8;
        return static_cast<std::size_t>((m_counts[2 * sb + 1] >> (9 * t)) & 0x1FF);
    }

    std::size_t zeros_before_superblock(std::size_t sb) const {
        std::size_t bits = sb * superblock_bits;
        if (bits > m_length) bits = m_length;
        return bits - ones_before_superblock(sb);
    }

    void build_index() {
        std::size_t nsb = (m_length + superblock_bits - 1) / superblock_bits;
        m_counts.assign(2 * (nsb + 1), 0);
        m_select1_hint.clear();
        m_select0_hint.clear();
        std::size_t ones = 0;
        std::size_t zeros = 0;
        for (std::size_t sb = 0; sb < nsb; ++sb) {
            m_counts[2 * sb] = ones;
            std::size_t wb = sb * words_per_superblock;
            std::size_t sb_ones = 0;
            uint64_t packed = 0;
            for (std::size_t j = 0; j < words_per_superblock; ++j) {
                if (j > 0) packed |= uint64_t(sb_ones) << (9 * (j - 1));
                if (wb + j < m_words.size()) sb_ones += static_cast<std::size_t>(std::popcount(m_words[wb + j]));
            }
            m_counts[2 * sb + 1] = packed;
            std::size_t sb_len = std::min(superblock_bits, m_length - sb * superblock_bits);
            std::size_t sb_zeros = sb_len - sb_ones;
            // Record sb for every sampled rank that falls inside it.
            while (m_select1_hint.size() * select_sample < ones + sb_ones) m_select1_hint.push_back(sb);
            if (m_with_select0)
                while (m_select0_hint.size() * select_sample < zeros + sb_zeros) m_select0_hint.push_back(sb);
            ones += sb_ones;
            zeros += sb_zeros;
        }
        m_counts[2 * nsb] = ones;
        m_ones = ones;
    }

    std::vector<uint64_t> m_words;
    std::size_t m_length = 0;
    std::size_t m_ones = 0;
    bool m_with_select0 = false;
    std::vector<uint64_t> m_counts;  // (cumulative ones, packed word counts) per superblock
    std::vector<uint64_t> m_select1_hint;
    std::vector<uint64_t> m_select0_hint;
};

}  // namespace sdmx
