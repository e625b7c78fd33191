#pragma once

// Seeded generator of random dictionaries and texts. Uses its own 64-bit
// generator so a seed reproduces the same case on every platform.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

namespace sdmx::fuzz {

class splitmix64 {
public:
    explicit splitmix64(uint64_t seed) : m_state(seed) {}

    uint64_t operator()() {
        uint64_t z = (m_state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [lo, hi].
    uint64_t between(uint64_t lo, uint64_t hi) { return lo + (*this)() % (hi - lo + 1); }

private:
    uint64_t m_state;
};

/// Symbols of a test alphabet of the given size: "ab", "ACGT", 'a'..'z', or all bytes.
inline std::string alphabet_symbols(std::size_t sigma) {
    switch (sigma) {
        case 2: return "ab";
        case 4: return "ACGT";
        case 26: return "abcdefghijklmnopqrstuvwxyz";
        default: {
            std::string s;
            for (std::size_t i = 0; i < sigma && i < 256; ++i) s.push_back(static_cast<char>(i));
            return s;
        }
    }
}

struct fuzz_case {
    std::size_t sigma = 0;
    std::vector<std::string> patterns;
    std::string text;
};

struct fuzz_limits {
    std::size_t max_patterns = 20;
    std::size_t max_total_length = 200;
    std::size_t max_text = 1000;
};

inline std::string random_string(splitmix64& rng, const std::string& symbols, std::size_t len) {
    std::string s(len, '\0');
    for (auto& ch : s) ch = symbols[rng() % symbols.size()];
    return s;
}

/// Random distinct patterns (d <= max_patterns, n <= max_total_length) and a
/// text assembled mostly from pattern fragments.
inline fuzz_case make_case(splitmix64& rng, std::size_t sigma, const fuzz_limits& lim = {}) {
    fuzz_case c;
    c.sigma = sigma;
    std::string symbols = alphabet_symbols(sigma);
    std::size_t d = rng.between(1, lim.max_patterns);
    std::size_t budget = lim.max_total_length;
    std::size_t max_len = std::max<std::size_t>(1, 2 * lim.max_total_length / d);
    std::set<std::string> seen;
    for (std::size_t attempt = 0; c.patterns.size() < d && attempt < 20 * d && budget > 0; ++attempt) {
        std::size_t len = rng.between(1, std::min(max_len, budget));
        std::string p;
        // Often extend an earlier pattern so prefixes and suffixes are shared.
        if (!c.patterns.empty() && rng() % 3 == 0) {
            const std::string& base = c.patterns[rng() % c.patterns.size()];
            std::size_t keep = rng.between(0, base.size());
            p = rng() % 2 ? base.substr(0, keep) : base.substr(base.size() - keep);
            if (p.size() < len) p += random_string(rng, symbols, len - p.size());
            else if (p.empty()) p = random_string(rng, symbols, 1);
        } else {
            p = random_string(rng, symbols, len);
        }
        if (p.size() > budget || !seen.insert(p).second) continue;
        budget -= p.size();
        c.patterns.push_back(p);
    }
    if (c.patterns.empty()) c.patterns.push_back(random_string(rng, symbols, 1));

    std::size_t text_len = rng.between(0, lim.max_text);
    while (c.text.size() < text_len) {
        if (rng() % 4 == 0) {
            c.text += random_string(rng, symbols, rng.between(1, 8));
        } else {
            const std::string& p = c.patterns[rng() % c.patterns.size()];
            std::size_t a = rng.between(0, p.size() - 1);
            std::size_t b = rng.between(a + 1, p.size());
            c.text += rng() % 2 ? p : p.substr(a, b - a);
        }
    }
    c.text.resize(text_len);
    return c;
}

}  // namespace sdmx::fuzz
