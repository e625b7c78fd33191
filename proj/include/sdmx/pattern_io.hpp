#pragma once

#include <cstdint>
#include <istream>
#include <iterator>
#include <string>
#include <vector>

#include "builder.hpp"
#include "errors.hpp"

namespace sdmx {

/// Where each pattern came from, for error messages.
struct pattern_source {
    std::vector<std::string> patterns;
    std::vector<std::size_t> line;  // 1-based line (text) or entry number (binary)
};

/// One pattern per line. A final newline does not start another pattern;
/// a trailing '\r' is kept, since patterns are raw bytes.
inline pattern_source read_patterns_text(std::istream& in) {
    pattern_source out;
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    std::size_t pos = 0;
    std::size_t line = 1;
    while (pos < content.size()) {
        std::size_t nl = content.find('\n', pos);
        if (nl == std::string::npos) nl = content.size();
        out.patterns.push_back(content.substr(pos, nl - pos));
        out.line.push_back(line++);
        pos = nl + 1;
    }
    return out;
}

/// Sequence of (u32 little-endian length, bytes) records.
inline pattern_source read_patterns_binary(std::istream& in) {
    pattern_source out;
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    std::size_t pos = 0;
    while (pos < content.size()) {
        std::size_t entry = out.patterns.size() + 1;
        if (content.size() - pos < 4) throw format_error("entry " + std::to_string(entry) + ": truncated length prefix");
        uint32_t len = 0;
        for (int i = 0; i < 4; ++i) len |= uint32_t(static_cast<unsigned char>(content[pos + i])) << (8 * i);
        pos += 4;
        if (content.size() - pos < len) throw format_error("entry " + std::to_string(entry) + ": truncated pattern");
        out.patterns.push_back(content.substr(pos, len));
        out.line.push_back(entry);
        pos += len;
    }
    return out;
}

}  // namespace sdmx
