#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "bit_vector.hpp"
#include "serialize.hpp"

namespace sdmx {

/// Fixed-width packed integer array; width in [0, 64].
class int_vector {
public:
    int_vector() = default;

    int_vector(std::size_t size, unsigned width)
        : m_words((size * width + 63) / 64, 0), m_size(size), m_width(width) {
        if (width > 64) throw std::invalid_argument("int_vector: width exceeds 64");
    }

    std::size_t size() const { return m_size; }
    unsigned width() const { return m_width; }

    uint64_t operator[](std::size_t i) const {
        if (m_width == 0) return 0;
        std::size_t pos = i * m_width;
        std::size_t w = pos / 64;
        unsigned off = pos % 64;
        uint64_t v = m_words[w] >> off;
        if (off + m_width > 64) v |= m_words[w + 1] << (64 - off);
        return v & detail::low_mask(m_width);
    }

    uint64_t at(std::size_t i) const {
        if (i >= m_size) throw std::out_of_range("int_vector::at: index out of range");
        return (*this)[i];
    }

    void set(std::size_t i, uint64_t v) {
        if (m_width == 0) return;
        v &= detail::low_mask(m_width);
        std::size_t pos = i * m_width;
        std::size_t w = pos / 64;
        unsigned off = pos % 64;
        m_words[w] &= ~(detail::low_mask(m_width) << off);
        m_words[w] |= v << off;
        if (off + m_width > 64) {
            unsigned spill = off + m_width - 64;
            m_words[w + 1] &= ~detail::low_mask(spill);
            m_words[w + 1] |= v >> (64 - off);
        }
    }

    std::size_t payload_bits() const { return m_size * m_width; }

    void save(word_writer& out) const {
        out.put(m_size);
        out.put(m_width);
        out.put_words(m_words);
    }

    static int_vector load(word_reader& in) {
        int_vector v;
        v.m_size = in.get();
        uint64_t width = in.get();
        if (width > 64) throw format_error("int_vector: width exceeds 64");
        v.m_width = static_cast<unsigned>(width);
        v.m_words = in.get_words();
        if (v.m_size > (uint64_t(1) << 58) || v.m_words.size() != (v.m_size * v.m_width + 63) / 64)
            throw format_error("int_vector: word count does not match size");
        return v;
    }

private:
    std::vector<uint64_t> m_words;
    std::size_t m_size = 0;
    unsigned m_width = 0;
};

}  // namespace sdmx
