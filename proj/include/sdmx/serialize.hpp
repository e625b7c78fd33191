#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "errors.hpp"

namespace sdmx {

// Structures serialize into a flat sequence of 64-bit words. Byte order is
// fixed to little-endian only at the file boundary (see index_file.hpp).
class word_writer {
public:
    void put(uint64_t w) { m_words.push_back(w); }

    void put_words(std::span<const uint64_t> words) {
        put(words.size());
        m_words.insert(m_words.end(), words.begin(), words.end());
    }

    std::vector<uint64_t>& words() { return m_words; }
    const std::vector<uint64_t>& words() const { return m_words; }

private:
    std::vector<uint64_t> m_words;
};

class word_reader {
public:
    explicit word_reader(std::span<const uint64_t> words) : m_words(words) {}

    uint64_t get() {
        if (m_pos >= m_words.size()) throw format_error("word stream truncated");
        return m_words[m_pos++];
    }

    std::vector<uint64_t> get_words() {
        uint64_t count = get();
        if (count > m_words.size() - m_pos) throw format_error("word array length exceeds stream");
        std::vector<uint64_t> out(m_words.begin() + static_cast<std::ptrdiff_t>(m_pos),
                                  m_words.begin() + static_cast<std::ptrdiff_t>(m_pos + count));
        m_pos += count;
        return out;
    }

    bool at_end() const { return m_pos == m_words.size(); }
    std::size_t position() const { return m_pos; }

private:
    std::span<const uint64_t> m_words;
    std::size_t m_pos = 0;
};

// FNV-1a. Each byte step is a bijection of the running state, so any single
// changed byte changes the final value.
inline uint64_t fnv1a64(std::span<const unsigned char> bytes, uint64_t seed = 0xcbf29ce484222325ULL) {
    uint64_t h = seed;
    for (unsigned char b : bytes) {
        h ^= b;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace sdmx
