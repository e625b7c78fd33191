#pragma once

// Brute-force reference implementations for differential testing. Nothing
// here uses the succinct structures or the builder's algorithms.

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "builder.hpp"
#include "matcher.hpp"

namespace sdmx::oracle {

inline bool reversed_less(std::string_view a, std::string_view b) {
    return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend(), [](char x, char y) {
        return static_cast<unsigned char>(x) < static_cast<unsigned char>(y);
    });
}

/// Every distinct prefix (including ""), reversed, sorted, reversed back.
inline std::vector<std::string> naive_suffix_lex_order(const std::vector<std::string>& patterns) {
    std::set<std::string> prefixes{""};
    for (const auto& p : patterns)
        for (std::size_t len = 1; len <= p.size(); ++len) prefixes.insert(p.substr(0, len));
    std::vector<std::string> reversed;
    for (const auto& p : prefixes) reversed.emplace_back(p.rbegin(), p.rend());
    std::sort(reversed.begin(), reversed.end(), [](const std::string& a, const std::string& b) {
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), [](char x, char y) {
            return static_cast<unsigned char>(x) < static_cast<unsigned char>(y);
        });
    });
    std::vector<std::string> out;
    for (const auto& r : reversed) out.emplace_back(r.rbegin(), r.rend());
    return out;
}

/// Patterns in id order (suffix-lexicographic).
inline std::vector<std::string> patterns_by_id(std::vector<std::string> patterns) {
    std::sort(patterns.begin(), patterns.end(), [](const std::string& a, const std::string& b) { return reversed_less(a, b); });
    return patterns;
}

/// Holds the patterns explicitly and tests each one at every text position.
class naive_matcher {
public:
    explicit naive_matcher(std::vector<std::string> patterns) : m_patterns(patterns_by_id(std::move(patterns))) {}

    const std::vector<std::string>& patterns() const { return m_patterns; }

    std::vector<occurrence> scan(std::string_view text) const {
        std::vector<occurrence> out;
        for (std::size_t start = 0; start < text.size(); ++start)
            for (std::size_t id = 0; id < m_patterns.size(); ++id) {
                const std::string& p = m_patterns[id];
                if (text.substr(start).starts_with(p)) out.push_back({start, start + p.size() - 1, id});
            }
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    std::vector<std::string> m_patterns;
};

inline std::vector<occurrence> naive_scan(const std::vector<std::string>& patterns, std::string_view text) {
    return naive_matcher(patterns).scan(text);
}

/// For each state, the longest proper suffix of its prefix that is also a prefix.
inline std::vector<std::size_t> naive_failure(const prefix_table& pt) {
    std::map<std::string, std::size_t> state_of;
    std::vector<std::string> str(pt.size());
    for (std::size_t s = 0; s < pt.size(); ++s) state_of[str[s] = pt.string_of(s)] = s;
    std::vector<std::size_t> out(pt.size(), no_parent);
    for (std::size_t s = 1; s < pt.size(); ++s)
        for (std::size_t len = str[s].size(); len-- > 0;) {
            auto it = state_of.find(str[s].substr(str[s].size() - len));
            if (it != state_of.end()) {
                out[s] = it->second;
                break;
            }
        }
    return out;
}

/// For each state, the longest proper suffix that is a pattern, or 0.
inline std::vector<std::size_t> naive_report(const prefix_table& pt, const std::vector<std::string>& patterns) {
    std::set<std::string> dict(patterns.begin(), patterns.end());
    std::map<std::string, std::size_t> state_of;
    std::vector<std::string> str(pt.size());
    for (std::size_t s = 0; s < pt.size(); ++s) state_of[str[s] = pt.string_of(s)] = s;
    std::vector<std::size_t> out(pt.size(), no_parent);
    for (std::size_t s = 1; s < pt.size(); ++s) {
        out[s] = 0;
        for (std::size_t len = str[s].size() - 1; len >= 1; --len) {
            std::string suffix = str[s].substr(str[s].size() - len);
            if (dict.count(suffix)) {
                out[s] = state_of.at(suffix);
                break;
            }
        }
    }
    return out;
}

}  // namespace sdmx::oracle
