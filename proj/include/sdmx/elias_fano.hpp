#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "bit_vector.hpp"
#include "errors.hpp"
#include "int_vector.hpp"
#include "serialize.hpp"

namespace sdmx {

namespace detail {

// Smallest l with count * 2^l >= bound, clamped to 63. Equals
// ceil(log2(max(bound / count, 1))) for count > 0.
inline unsigned ef_low_width(std::size_t count, uint64_t bound) {
    if (count == 0) return 0;
    unsigned l = 0;
    while (l < 63 && (static_cast<unsigned __int128>(count) << l) < bound) ++l;
    return l;
}

}  // namespace detail

/// Elias-Fano coded non-decreasing sequence.
///
/// Value i is split into `low_width` low bits stored packed and a high part
/// stored in unary: bit (v >> low_width) + i of `high` is set. The high
/// bitvector is always 2n bits long, which fits every value <= n * 2^low_width.
class ef_sequence {
public:
    ef_sequence() = default;

    ef_sequence(std::span<const uint64_t> values, uint64_t bound, bool with_select0) {
        std::size_t n = values.size();
        m_low_width = detail::ef_low_width(n, bound);
        m_low = int_vector(n, m_low_width);
        bit_builder high(2 * n);
        uint64_t prev = 0;
        for (std::size_t i = 0; i < n; ++i) {
            uint64_t v = values[i];
            if (v < prev) throw build_error("ef_sequence: values must be non-decreasing");
            prev = v;
            uint64_t hi = v >> m_low_width;
            if (hi > n) throw build_error("ef_sequence: value exceeds bound");
            m_low.set(i, v);
            high.set(hi + i);
        }
        m_high = bit_vector(std::move(high), with_select0);
    }

    std::size_t size() const { return m_low.size(); }
    unsigned low_width() const { return m_low_width; }
    const int_vector& low() const { return m_low; }
    const bit_vector& high() const { return m_high; }

    uint64_t operator[](std::size_t i) const {
        return ((m_high.select1_unchecked(i) - i) << m_low_width) | m_low[i];
    }

    std::size_t payload_bits() const { return m_low.payload_bits() + m_high.payload_bits(); }
    std::size_t aux_bits() const { return m_high.aux_bits(); }

    void save(word_writer& out) const {
        m_low.save(out);
        m_high.save(out);
    }

    static ef_sequence load(word_reader& in, bool with_select0) {
        ef_sequence s;
        s.m_low = int_vector::load(in);
        s.m_low_width = s.m_low.width();
        s.m_high = bit_vector::load(in, with_select0);
        if (s.m_high.size() != 2 * s.m_low.size() || s.m_high.num_ones() != s.m_low.size())
            throw format_error("ef_sequence: high bits inconsistent with element count");
        return s;
    }

private:
    unsigned m_low_width = 0;
    int_vector m_low;
    bit_vector m_high;
};

/// Compressed array of non-negative integers with constant-time access,
/// stored as the Elias-Fano code of its prefix sums. The core payload is
/// exactly n * (ceil(log2(max(U / n, 1))) + 2) bits where U is the total sum.
class elias_fano_array {
public:
    elias_fano_array() = default;

    explicit elias_fano_array(std::span<const uint64_t> values) {
        if (values.empty()) throw build_error("elias_fano_array: at least one element required");
        std::vector<uint64_t> sums(values.size());
        uint64_t acc = 0;
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (__builtin_add_overflow(acc, values[i], &acc)) throw build_error("elias_fano_array: sum overflows 64 bits");
            sums[i] = acc;
        }
        m_sum = acc;
        m_seq = ef_sequence(sums, acc, false);
    }

    std::size_t size() const { return m_seq.size(); }
    uint64_t sum() const { return m_sum; }
    unsigned low_width() const { return m_seq.low_width(); }

    uint64_t operator[](std::size_t i) const {
        uint64_t hi = m_seq[i];
        return i == 0 ? hi : hi - m_seq[i - 1];
    }

    uint64_t access(std::size_t i) const {
        if (i >= size()) throw std::out_of_range("elias_fano_array::access: index out of range");
        return (*this)[i];
    }

    std::size_t payload_bits() const { return m_seq.payload_bits(); }
    std::size_t aux_bits() const { return m_seq.aux_bits(); }

    void save(word_writer& out) const {
        out.put(m_sum);
        m_seq.save(out);
    }

    static elias_fano_array load(word_reader& in) {
        elias_fano_array a;
        a.m_sum = in.get();
        a.m_seq = ef_sequence::load(in, false);
        if (a.m_seq.size() == 0 || a.m_seq.low_width() != detail::ef_low_width(a.m_seq.size(), a.m_sum) ||
            a.m_seq[a.m_seq.size() - 1] != a.m_sum)
            throw format_error("elias_fano_array: header inconsistent with payload");
        return a;
    }

private:
    uint64_t m_sum = 0;
    ef_sequence m_seq;
};

/// Static set of integer keys from [0, U) with rank (membership) and select.
///
/// Keys are Elias-Fano coded. rank() locates the bucket of keys sharing the
/// queried high part with one select0 and scans its low parts, so it costs
/// O(log bucket) rather than constant time.
class indexable_set {
public:
    indexable_set() = default;

    indexable_set(std::span<const uint64_t> keys, uint64_t universe) : m_universe(universe) {
        for (std::size_t i = 0; i < keys.size(); ++i) {
            if (keys[i] >= universe) throw build_error("indexable_set: key outside universe");
            if (i > 0 && keys[i] <= keys[i - 1]) throw build_error("indexable_set: keys must be strictly increasing");
        }
        m_seq = ef_sequence(keys, universe, true);
    }

    std::size_t size() const { return m_seq.size(); }
    uint64_t universe() const { return m_universe; }
    unsigned low_width() const { return m_seq.low_width(); }
    const ef_sequence& sequence() const { return m_seq; }

    /// Rank of `key` among stored keys, or nullopt when it is not stored.
    std::optional<std::size_t> rank(uint64_t key) const {
        if (key >= m_universe) throw std::out_of_range("indexable_set::rank: key outside universe");
        return rank_unchecked(key);
    }

    std::optional<std::size_t> rank_unchecked(uint64_t key) const {
        if (m_seq.size() == 0) return std::nullopt;
        const unsigned lw = m_seq.low_width();
        const bit_vector& high = m_seq.high();
        uint64_t bucket = key >> lw;
        if (bucket >= high.num_zeros()) return std::nullopt;
        std::size_t begin_pos = bucket == 0 ? 0 : high.select0_unchecked(bucket - 1) + 1;
        std::size_t end_pos = high.next_zero(begin_pos);
        std::size_t lo = begin_pos - bucket;
        std::size_t hi = end_pos - bucket;
        uint64_t target = key & detail::low_mask(lw);
        const int_vector& low = m_seq.low();
        if (hi - lo <= 8) {
            for (; lo < hi; ++lo) {
                uint64_t v = low[lo];
                if (v >= target) return v == target ? std::optional<std::size_t>(lo) : std::nullopt;
            }
            return std::nullopt;
        }
        while (lo < hi) {
            std::size_t mid = lo + (hi - lo) / 2;
            uint64_t v = low[mid];
            if (v == target) return mid;
            if (v < target)
                lo = mid + 1;
            else
                hi = mid;
        }
        return std::nullopt;
    }

    bool contains(uint64_t key) const { return key < m_universe && rank_unchecked(key).has_value(); }

    /// The i-th smallest stored key.
    uint64_t select(std::size_t i) const {
        if (i >= size()) throw std::out_of_range("indexable_set::select: rank out of range");
        return m_seq[i];
    }

    uint64_t select_unchecked(std::size_t i) const { return m_seq[i]; }

    std::size_t payload_bits() const { return m_seq.payload_bits(); }
    std::size_t aux_bits() const { return m_seq.aux_bits(); }

    void save(word_writer& out) const {
        out.put(m_universe);
        m_seq.save(out);
    }

    static indexable_set load(word_reader& in) {
        indexable_set s;
        s.m_universe = in.get();
        s.m_seq = ef_sequence::load(in, true);
        std::size_t n = s.m_seq.size();
        if (s.m_seq.low_width() != detail::ef_low_width(n, s.m_universe))
            throw format_error("indexable_set: low width inconsistent with universe");
        for (std::size_t i = 0; i < n; ++i) {
            uint64_t k = s.m_seq[i];
            if (k >= s.m_universe || (i > 0 && k <= s.m_seq[i - 1]))
                throw format_error("indexable_set: stored keys not strictly increasing within universe");
        }
        return s;
    }

private:
    uint64_t m_universe = 0;
    ef_sequence m_seq;
};

}  // namespace sdmx
