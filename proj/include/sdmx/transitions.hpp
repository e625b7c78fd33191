#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "elias_fano.hpp"
#include "errors.hpp"
#include "serialize.hpp"

namespace sdmx {

enum class backend_kind : uint32_t { flat = 0, compressed = 1 };

/// Source of the next transition entering a state: its label and the state it leaves.
struct transition_source {
    uint16_t symbol;
    std::size_t state;
};

/// Packs (symbol, state) as (symbol << state_bits) + state.
inline uint64_t transition_key(uint64_t symbol, uint64_t state, unsigned state_bits) {
    return (symbol << state_bits) | state;
}

/// Next transitions as one indexable set of packed (symbol, state) keys.
///
/// Keys are stored in increasing order, which is the order of the states they
/// lead to, so the destination of the key of rank r is state r + 1.
class flat_transitions {
public:
    static constexpr backend_kind kind = backend_kind::flat;

    flat_transitions() = default;

    flat_transitions(std::span<const uint64_t> sorted_keys, std::size_t sigma, unsigned state_bits)
        : m_state_bits(state_bits),
          m_state_mask(detail::low_mask(state_bits)),
          m_keys(sorted_keys, uint64_t(sigma) << state_bits) {}

    unsigned state_bits() const { return m_state_bits; }
    std::size_t size() const { return m_keys.size(); }
    const indexable_set& keys() const { return m_keys; }

    std::optional<std::size_t> next(std::size_t state, uint16_t symbol) const {
        auto r = m_keys.rank_unchecked(transition_key(symbol, state, m_state_bits));
        if (!r) return std::nullopt;
        return *r + 1;
    }

    /// One select on the key set. Requires 1 <= state <= size().
    transition_source source(std::size_t state) const {
        uint64_t key = m_keys.select_unchecked(state - 1);
        return {static_cast<uint16_t>(key >> m_state_bits), static_cast<std::size_t>(key & m_state_mask)};
    }

    std::vector<std::size_t> symbol_counts(std::size_t sigma) const {
        std::vector<std::size_t> counts(sigma, 0);
        for (std::size_t i = 0; i < m_keys.size(); ++i) ++counts[m_keys.select_unchecked(i) >> m_state_bits];
        return counts;
    }

    std::size_t payload_bits() const { return m_keys.payload_bits(); }
    std::size_t aux_bits() const { return m_keys.aux_bits(); }

    void save(word_writer& out) const {
        out.put(m_state_bits);
        m_keys.save(out);
    }

    static flat_transitions load(word_reader& in) {
        flat_transitions t;
        uint64_t bits = in.get();
        if (bits > 56) throw format_error("flat_transitions: state width out of range");
        t.m_state_bits = static_cast<unsigned>(bits);
        t.m_state_mask = detail::low_mask(t.m_state_bits);
        t.m_keys = indexable_set::load(in);
        return t;
    }

private:
    unsigned m_state_bits = 0;
    uint64_t m_state_mask = 0;
    indexable_set m_keys;
};

/// Next transitions split by label: one indexable set of source states per
/// symbol plus an offset table, so the destination of (c, s) is
/// offset[c] + rank of s in the set for c.
class compressed_transitions {
public:
    static constexpr backend_kind kind = backend_kind::compressed;

    compressed_transitions() = default;

    compressed_transitions(std::span<const uint64_t> sorted_keys, std::size_t sigma, unsigned state_bits)
        : m_state_bits(state_bits) {
        std::size_t states = sorted_keys.size() + 1;
        std::vector<std::vector<uint64_t>> sources(sigma);
        for (uint64_t key : sorted_keys) {
            uint64_t symbol = key >> state_bits;
            if (symbol >= sigma) throw build_error("compressed_transitions: key symbol outside alphabet");
            sources[symbol].push_back(key & detail::low_mask(state_bits));
        }
        m_offsets = int_vector(sigma, static_cast<unsigned>(std::bit_width(states)));
        // Unused symbols take the offset of the next used one; trailing unused ones get m.
        std::size_t first = 1;
        for (std::size_t c = 0; c < sigma; ++c) {
            m_offsets.set(c, first);
            first += sources[c].size();
        }
        m_sets.reserve(sigma);
        for (std::size_t c = 0; c < sigma; ++c) m_sets.emplace_back(sources[c], states);
        m_size = sorted_keys.size();
    }

    unsigned state_bits() const { return m_state_bits; }
    std::size_t size() const { return m_size; }
    std::size_t sigma() const { return m_sets.size(); }
    const indexable_set& sources_of(std::size_t symbol) const { return m_sets[symbol]; }
    uint64_t offset(std::size_t symbol) const { return m_offsets[symbol]; }

    std::optional<std::size_t> next(std::size_t state, uint16_t symbol) const {
        const indexable_set& set = m_sets[symbol];
        auto r = set.rank_unchecked(state);
        if (!r) return std::nullopt;
        return m_offsets[symbol] + *r;
    }

    /// One select on a per-symbol set. Requires 1 <= state <= size().
    transition_source source(std::size_t state) const {
        // Last symbol whose offset is <= state; empty symbols share their
        // successor's offset and sort before it, so they are skipped.
        std::size_t lo = 0;
        std::size_t hi = m_sets.size();
        while (hi - lo > 1) {
            std::size_t mid = lo + (hi - lo) / 2;
            if (m_offsets[mid] <= state)
                lo = mid;
            else
                hi = mid;
        }
        return {static_cast<uint16_t>(lo), static_cast<std::size_t>(m_sets[lo].select_unchecked(state - m_offsets[lo]))};
    }

    std::vector<std::size_t> symbol_counts(std::size_t /*sigma*/) const {
        std::vector<std::size_t> counts;
        for (const auto& s : m_sets) counts.push_back(s.size());
        return counts;
    }

    std::size_t sets_payload_bits() const {
        std::size_t bits = 0;
        for (const auto& s : m_sets) bits += s.payload_bits();
        return bits;
    }
    std::size_t offsets_payload_bits() const { return m_offsets.payload_bits(); }

    std::size_t payload_bits() const { return sets_payload_bits() + offsets_payload_bits(); }
    std::size_t aux_bits() const {
        std::size_t bits = 0;
        for (const auto& s : m_sets) bits += s.aux_bits();
        return bits;
    }

    void save(word_writer& out) const {
        out.put(m_state_bits);
        out.put(m_sets.size());
        m_offsets.save(out);
        for (const auto& s : m_sets) s.save(out);
    }

    static compressed_transitions load(word_reader& in) {
        compressed_transitions t;
        uint64_t bits = in.get();
        uint64_t sigma = in.get();
        if (bits > 56 || sigma > 256) throw format_error("compressed_transitions: header out of range");
        t.m_state_bits = static_cast<unsigned>(bits);
        t.m_offsets = int_vector::load(in);
        if (t.m_offsets.size() != sigma) throw format_error("compressed_transitions: offset table size mismatch");
        uint64_t expected = 1;
        for (std::size_t c = 0; c < sigma; ++c) {
            t.m_sets.push_back(indexable_set::load(in));
            if (t.m_offsets[c] != expected) throw format_error("compressed_transitions: offsets inconsistent with set sizes");
            expected += t.m_sets.back().size();
        }
        t.m_size = expected - 1;
        for (const auto& s : t.m_sets)
            if (s.universe() != expected) throw format_error("compressed_transitions: set universe mismatch");
        return t;
    }

private:
    unsigned m_state_bits = 0;
    std::size_t m_size = 0;
    int_vector m_offsets;
    std::vector<indexable_set> m_sets;
};

}  // namespace sdmx
