#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "alphabet.hpp"
#include "bp_tree.hpp"
#include "elias_fano.hpp"
#include "errors.hpp"
#include "index.hpp"
#include "transitions.hpp"

namespace sdmx {

/// A dictionary pattern was rejected; index() is its position in the input list.
class pattern_error : public build_error {
public:
    pattern_error(std::size_t index, const std::string& what) : build_error(what), m_index(index) {}
    std::size_t index() const { return m_index; }

private:
    std::size_t m_index;
};

/// Validated dictionary: at least one pattern, none empty, no duplicates.
class pattern_set {
public:
    explicit pattern_set(std::vector<std::string> patterns) : m_patterns(std::move(patterns)) {
        if (m_patterns.empty()) throw build_error("pattern set is empty");
        std::unordered_map<std::string_view, std::size_t> seen;
        for (std::size_t i = 0; i < m_patterns.size(); ++i) {
            const std::string& p = m_patterns[i];
            if (p.empty()) throw pattern_error(i, "pattern " + std::to_string(i) + " is empty");
            auto [it, inserted] = seen.emplace(p, i);
            if (!inserted)
                throw pattern_error(i, "pattern " + std::to_string(i) + " duplicates pattern " + std::to_string(it->second));
            m_total += p.size();
        }
        m_alphabet = alphabet_map::from_strings(m_patterns);
    }

    std::size_t size() const { return m_patterns.size(); }
    std::size_t total_length() const { return m_total; }
    std::size_t sigma() const { return m_alphabet.sigma(); }
    const std::vector<std::string>& patterns() const { return m_patterns; }
    const std::string& operator[](std::size_t i) const { return m_patterns[i]; }
    const alphabet_map& alphabet() const { return m_alphabet; }

private:
    std::vector<std::string> m_patterns;
    std::size_t m_total = 0;
    alphabet_map m_alphabet;
};

/// All distinct prefixes of a pattern set in suffix-lexicographic order.
/// Entry s describes the prefix of state s; entry 0 is the empty string.
struct prefix_table {
    static constexpr std::size_t not_a_pattern = no_parent;

    std::vector<std::size_t> length;
    std::vector<std::size_t> parent;  // state of the prefix without its last byte
    std::vector<unsigned char> last;  // last byte (unused for state 0)
    std::vector<std::size_t> pattern;  // input index of the pattern equal to this prefix, if any

    std::size_t size() const { return length.size(); }

    std::string string_of(std::size_t state) const {
        std::string r(length[state], '\0');
        for (std::size_t s = state, i = length[state]; i > 0; s = parent[s]) r[--i] = static_cast<char>(last[s]);
        return r;
    }
};

/// Sorts all prefixes right to left by prefix doubling over the trie of the
/// patterns: after round k, ranks order prefixes by their last 2^k bytes.
inline prefix_table suffix_lex_order(const pattern_set& ps) {
    struct node {
        std::size_t parent;
        unsigned char byte;
        std::size_t depth;
    };
    std::vector<node> trie{{0, 0, 0}};
    std::vector<std::size_t> pattern_at{prefix_table::not_a_pattern};
    std::unordered_map<uint64_t, std::size_t> child;
    child.reserve(ps.total_length());
    for (std::size_t i = 0; i < ps.size(); ++i) {
        std::size_t v = 0;
        for (char ch : ps[i]) {
            auto b = static_cast<unsigned char>(ch);
            auto [it, inserted] = child.try_emplace((uint64_t(v) << 8) | b, trie.size());
            if (inserted) {
                trie.push_back({v, b, trie[v].depth + 1});
                pattern_at.push_back(prefix_table::not_a_pattern);
            }
            v = it->second;
        }
        pattern_at[v] = i;
    }

    const std::size_t count = trie.size();
    std::vector<std::size_t> rank(count), anc(count), order(count), next_rank(count);
    for (std::size_t v = 0; v < count; ++v) {
        rank[v] = v == 0 ? 0 : std::size_t(trie[v].byte) + 1;
        anc[v] = trie[v].parent;
    }
    std::iota(order.begin(), order.end(), std::size_t(0));
    for (;;) {
        auto key = [&](std::size_t v) { return std::pair(rank[v], rank[anc[v]]); };
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return key(a) < key(b); });
        std::size_t r = 0;
        for (std::size_t i = 0; i < count; ++i) {
            if (i > 0 && key(order[i]) != key(order[i - 1])) ++r;
            next_rank[order[i]] = r;
        }
        rank.swap(next_rank);
        if (r + 1 == count) break;
        for (std::size_t v = 0; v < count; ++v) next_rank[v] = anc[anc[v]];
        anc.swap(next_rank);
    }

    prefix_table pt;
    pt.length.resize(count);
    pt.parent.resize(count);
    pt.last.resize(count);
    pt.pattern.resize(count);
    for (std::size_t v = 0; v < count; ++v) {
        std::size_t s = rank[v];
        pt.length[s] = trie[v].depth;
        pt.parent[s] = v == 0 ? no_parent : rank[trie[v].parent];
        pt.last[s] = trie[v].byte;
        pt.pattern[s] = pattern_at[v];
    }
    return pt;
}

/// Packed (symbol, source state) keys of all next transitions, ordered by
/// destination state. The order is already sorted; this is checked.
inline std::vector<uint64_t> build_transition_pairs(const prefix_table& pt, const alphabet_map& alphabet) {
    const unsigned bits = state_bits_for(pt.size());
    std::vector<uint64_t> keys;
    keys.reserve(pt.size() - 1);
    for (std::size_t s = 1; s < pt.size(); ++s) {
        uint64_t key = transition_key(alphabet.encode(pt.last[s]), pt.parent[s], bits);
        if (!keys.empty() && key <= keys.back())
            throw std::logic_error("build_transition_pairs: keys not increasing at state " + std::to_string(s));
        keys.push_back(key);
    }
    return keys;
}

/// Failure parent of every state, via breadth-first traversal of the trie.
inline std::vector<std::size_t> build_failure_parents(const prefix_table& pt) {
    const std::size_t m = pt.size();
    std::unordered_map<uint64_t, std::size_t> go;
    go.reserve(m);
    for (std::size_t s = 1; s < m; ++s) go.emplace((uint64_t(pt.parent[s]) << 8) | pt.last[s], s);
    auto step = [&](std::size_t s, unsigned char b) -> std::size_t {
        auto it = go.find((uint64_t(s) << 8) | b);
        return it == go.end() ? no_parent : it->second;
    };

    std::vector<std::size_t> by_length(m);
    std::iota(by_length.begin(), by_length.end(), std::size_t(0));
    std::stable_sort(by_length.begin(), by_length.end(), [&](std::size_t a, std::size_t b) { return pt.length[a] < pt.length[b]; });

    std::vector<std::size_t> fail(m, no_parent);
    for (std::size_t s : by_length) {
        if (s == 0) continue;
        std::size_t up = pt.parent[s];
        if (up == 0) {
            fail[s] = 0;
            continue;
        }
        std::size_t f = fail[up];
        for (;;) {
            std::size_t t = step(f, pt.last[s]);
            if (t != no_parent) {
                fail[s] = t;
                break;
            }
            if (f == 0) {
                fail[s] = 0;
                break;
            }
            f = fail[f];
        }
    }
    for (std::size_t s = 1; s < m; ++s)
        if (fail[s] >= s) throw std::logic_error("build_failure_parents: failure parent does not precede state");
    return fail;
}

/// Report parent of every state: the nearest terminal proper ancestor in the
/// failure tree, or the root when there is none.
inline std::vector<std::size_t> build_report_parents(const prefix_table& pt, const std::vector<std::size_t>& failure) {
    const std::size_t m = pt.size();
    std::vector<std::size_t> report(m, no_parent);
    for (std::size_t s = 1; s < m; ++s) {
        std::size_t f = failure[s];
        report[s] = (f != 0 && pt.pattern[f] != prefix_table::not_a_pattern) ? f : (f == 0 ? 0 : report[f]);
    }
    return report;
}

/// Terminal states in increasing order; position in the result is the pattern id.
inline std::vector<uint64_t> terminal_states(const prefix_table& pt) {
    std::vector<uint64_t> t;
    for (std::size_t s = 0; s < pt.size(); ++s)
        if (pt.pattern[s] != prefix_table::not_a_pattern) t.push_back(s);
    return t;
}

template <typename Transitions = flat_transitions>
ac_index<Transitions> build_index(const pattern_set& ps, const prefix_table& pt) {
    const std::size_t m = pt.size();
    index_metadata meta;
    meta.states = m;
    meta.patterns = ps.size();
    meta.total_length = ps.total_length();
    meta.sigma = ps.sigma();
    meta.state_bits = state_bits_for(m);

    auto keys = build_transition_pairs(pt, ps.alphabet());
    auto failure = build_failure_parents(pt);
    auto report = build_report_parents(pt, failure);
    auto terminals = terminal_states(pt);
    std::vector<uint64_t> lengths;
    lengths.reserve(terminals.size());
    for (uint64_t s : terminals) lengths.push_back(pt.length[s]);

    return ac_index<Transitions>(meta, ps.alphabet(), Transitions(keys, ps.sigma(), static_cast<unsigned>(meta.state_bits)),
                                 bp_tree(failure), bp_tree(report), indexable_set(terminals, m), elias_fano_array(lengths));
}

template <typename Transitions = flat_transitions>
ac_index<Transitions> build_index(const pattern_set& ps) {
    return build_index<Transitions>(ps, suffix_lex_order(ps));
}

}  // namespace sdmx
