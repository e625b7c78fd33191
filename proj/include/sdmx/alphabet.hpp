#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "serialize.hpp"

namespace sdmx {

/// Dense remapping of the byte values that occur in the dictionary.
/// Codes follow byte order, so comparisons on codes agree with comparisons on bytes.
class alphabet_map {
public:
    static constexpr uint16_t unknown = 0xFFFF;

    alphabet_map() { m_dense.fill(unknown); }

    template <typename Strings>
    static alphabet_map from_strings(const Strings& strings) {
        std::array<bool, 256> used{};
        for (const auto& s : strings)
            for (char ch : s) used[static_cast<unsigned char>(ch)] = true;
        std::vector<uint8_t> bytes;
        for (unsigned b = 0; b < 256; ++b)
            if (used[b]) bytes.push_back(static_cast<uint8_t>(b));
        return alphabet_map(std::move(bytes));
    }

    explicit alphabet_map(std::vector<uint8_t> bytes) : m_bytes(std::move(bytes)) {
        m_dense.fill(unknown);
        for (std::size_t i = 0; i < m_bytes.size(); ++i) {
            if (i > 0 && m_bytes[i] <= m_bytes[i - 1]) throw std::invalid_argument("alphabet_map: bytes must be strictly increasing");
            m_dense[m_bytes[i]] = static_cast<uint16_t>(i);
        }
    }

    std::size_t sigma() const { return m_bytes.size(); }

    uint16_t encode(unsigned char byte) const { return m_dense[byte]; }

    unsigned char decode(std::size_t code) const {
        if (code >= m_bytes.size()) throw std::out_of_range("alphabet_map::decode: code out of range");
        return m_bytes[code];
    }

    std::span<const uint8_t> bytes() const { return m_bytes; }

    std::size_t payload_bits() const { return 8 * m_bytes.size(); }
    std::size_t aux_bits() const { return 16 * m_dense.size(); }

    void save(word_writer& out) const {
        out.put(m_bytes.size());
        std::vector<uint64_t> packed((m_bytes.size() + 7) / 8, 0);
        for (std::size_t i = 0; i < m_bytes.size(); ++i) packed[i / 8] |= uint64_t(m_bytes[i]) << (8 * (i % 8));
        out.put_words(packed);
    }

    static alphabet_map load(word_reader& in) {
        uint64_t sigma = in.get();
        auto packed = in.get_words();
        if (sigma > 256 || packed.size() != (sigma + 7) / 8) throw format_error("alphabet_map: bad size");
        std::vector<uint8_t> bytes(sigma);
        for (std::size_t i = 0; i < sigma; ++i) bytes[i] = static_cast<uint8_t>(packed[i / 8] >> (8 * (i % 8)));
        try {
            return alphabet_map(std::move(bytes));
        } catch (const std::invalid_argument& e) {
            throw format_error(e.what());
        }
    }

private:
    std::array<uint16_t, 256> m_dense{};
    std::vector<uint8_t> m_bytes;
};

}  // namespace sdmx
