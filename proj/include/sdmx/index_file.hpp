#pragma once

// On-disk index layout, all integers little-endian:
//
//   offset  size  field
//   0       8     magic "SDMX1\0\0\0"
//   8       4     format version (1)
//   12      4     flags; bit 0 set = compressed transitions
//   16      40    m, d, n, sigma, state_bits (u64 each)
//   56      96    section table: 6 x (byte offset u64, byte length u64)
//   152     ...   sections: alphabet, transitions, failure tree, report tree,
//                 terminals, lengths; each is a word count followed by words
//   end-8   8     FNV-1a 64 of every preceding byte

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "builder.hpp"
#include "errors.hpp"
#include "index.hpp"
#include "serialize.hpp"

namespace sdmx {

inline constexpr std::array<unsigned char, 8> index_magic{'S', 'D', 'M', 'X', '1', 0, 0, 0};
inline constexpr uint32_t index_format_version = 1;
inline constexpr std::size_t index_section_count = 6;
inline constexpr std::size_t index_header_bytes = 8 + 4 + 4 + 40 + 16 * index_section_count;

using any_index = std::variant<flat_index, compressed_index>;

namespace detail {

inline void put_le(std::vector<unsigned char>& out, uint64_t v, unsigned bytes) {
    for (unsigned i = 0; i < bytes; ++i) out.push_back(static_cast<unsigned char>(v >> (8 * i)));
}

inline uint64_t get_le(std::span<const unsigned char> in, std::size_t pos, unsigned bytes) {
    uint64_t v = 0;
    for (unsigned i = 0; i < bytes; ++i) v |= uint64_t(in[pos + i]) << (8 * i);
    return v;
}

template <typename T>
std::vector<uint64_t> section_words(const T& component) {
    word_writer w;
    component.save(w);
    return std::move(w.words());
}

template <typename T>
T load_section(std::span<const uint64_t> words) {
    word_reader r(words);
    T value = T::load(r);
    if (!r.at_end()) throw format_error("index file: trailing words in section");
    return value;
}

}  // namespace detail

template <typename Transitions>
std::vector<unsigned char> encode_index(const ac_index<Transitions>& idx) {
    std::array<std::vector<uint64_t>, index_section_count> sections{
        detail::section_words(idx.alphabet()),      detail::section_words(idx.transitions()),
        detail::section_words(idx.failure_tree()),  detail::section_words(idx.report_tree()),
        detail::section_words(idx.terminals()),     detail::section_words(idx.lengths()),
    };
    std::vector<unsigned char> out(index_magic.begin(), index_magic.end());
    detail::put_le(out, index_format_version, 4);
    detail::put_le(out, Transitions::kind == backend_kind::compressed ? 1 : 0, 4);
    const auto& meta = idx.metadata();
    for (uint64_t v : {meta.states, meta.patterns, meta.total_length, meta.sigma, meta.state_bits}) detail::put_le(out, v, 8);
    uint64_t offset = index_header_bytes;
    for (const auto& s : sections) {
        uint64_t len = 8 * (s.size() + 1);
        detail::put_le(out, offset, 8);
        detail::put_le(out, len, 8);
        offset += len;
    }
    for (const auto& s : sections) {
        detail::put_le(out, s.size(), 8);
        for (uint64_t w : s) detail::put_le(out, w, 8);
    }
    detail::put_le(out, fnv1a64(out), 8);
    return out;
}

inline any_index decode_index(std::span<const unsigned char> bytes) {
    if (bytes.size() < index_header_bytes + 8) throw format_error("index file: too short");
    std::size_t body = bytes.size() - 8;
    if (fnv1a64(bytes.first(body)) != detail::get_le(bytes, body, 8)) throw format_error("index file: checksum mismatch");
    if (!std::equal(index_magic.begin(), index_magic.end(), bytes.begin())) throw format_error("index file: bad magic");
    auto version = detail::get_le(bytes, 8, 4);
    if (version != index_format_version) throw format_error("index file: unsupported format version " + std::to_string(version));
    auto flags = detail::get_le(bytes, 12, 4);
    if (flags > 1) throw format_error("index file: unknown flags");

    index_metadata meta;
    meta.states = detail::get_le(bytes, 16, 8);
    meta.patterns = detail::get_le(bytes, 24, 8);
    meta.total_length = detail::get_le(bytes, 32, 8);
    meta.sigma = detail::get_le(bytes, 40, 8);
    meta.state_bits = detail::get_le(bytes, 48, 8);

    std::array<std::vector<uint64_t>, index_section_count> sections;
    uint64_t expected = index_header_bytes;
    for (std::size_t i = 0; i < index_section_count; ++i) {
        uint64_t off = detail::get_le(bytes, 56 + 16 * i, 8);
        uint64_t len = detail::get_le(bytes, 64 + 16 * i, 8);
        if (off != expected || len < 8 || len % 8 != 0 || len > body - off)
            throw format_error("index file: section " + std::to_string(i) + " out of bounds");
        uint64_t count = detail::get_le(bytes, off, 8);
        if (count != len / 8 - 1) throw format_error("index file: section " + std::to_string(i) + " length mismatch");
        sections[i].reserve(count);
        for (uint64_t w = 0; w < count; ++w) sections[i].push_back(detail::get_le(bytes, off + 8 * (w + 1), 8));
        expected = off + len;
    }
    if (expected != body) throw format_error("index file: unexpected bytes after sections");

    auto assemble = [&]<typename Transitions>() {
        return ac_index<Transitions>(meta, detail::load_section<alphabet_map>(sections[0]),
                                     detail::load_section<Transitions>(sections[1]), detail::load_section<bp_tree>(sections[2]),
                                     detail::load_section<bp_tree>(sections[3]), detail::load_section<indexable_set>(sections[4]),
                                     detail::load_section<elias_fano_array>(sections[5]));
    };
    try {
        if (flags == 1) return any_index(assemble.template operator()<compressed_transitions>());
        return any_index(assemble.template operator()<flat_transitions>());
    } catch (const build_error& e) {
        throw format_error(std::string("index file: ") + e.what());
    }
}

template <typename Transitions>
void write_index_file(const std::string& path, const ac_index<Transitions>& idx) {
    auto bytes = encode_index(idx);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error("failed writing " + path);
}

inline any_index read_index_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return decode_index(bytes);
}

}  // namespace sdmx
