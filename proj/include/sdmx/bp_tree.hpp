#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "bit_vector.hpp"
#include "errors.hpp"
#include "serialize.hpp"

namespace sdmx {

inline constexpr std::size_t no_parent = std::numeric_limits<std::size_t>::max();

namespace detail {

struct byte_excess {
    int8_t total;    // opens minus closes over the byte
    int8_t bwd_min;  // min over j of the excess of bits [j, 8), negated
};

// Bit j of a byte is parenthesis j (lowest bit first); 1 is an open.
inline constexpr std::array<byte_excess, 256> make_byte_excess() {
    std::array<byte_excess, 256> t{};
    for (unsigned v = 0; v < 256; ++v) {
        int suffix = 0;
        int best = 0;
        for (int j = 7; j >= 0; --j) {
            suffix += (v >> j) & 1 ? 1 : -1;
            if (-suffix < best) best = -suffix;
        }
        t[v] = {static_cast<int8_t>(suffix), static_cast<int8_t>(best)};
    }
    return t;
}

inline constexpr auto byte_excess_table = make_byte_excess();

}  // namespace detail

/// Ordinal tree in balanced-parentheses form, nodes identified by DFS preorder.
///
/// The only navigation supported is parent-by-preorder: the open parenthesis
/// of node i is the (i+1)-th one, and its parent is the closest preceding
/// position whose excess is one lower. Backward excess search runs bytewise
/// inside a 512-bit block, then over a min-tree of per-block excess minima.
class bp_tree {
public:
    static constexpr std::size_t block_bits = 512;

    bp_tree() = default;

    /// Builds from parents[i] = preorder of node i's parent (parents[0] = no_parent).
    /// Children must appear in increasing preorder, so parents[i] < i.
    explicit bp_tree(std::span<const std::size_t> parents) {
        if (parents.empty()) throw build_error("bp_tree: tree must have at least one node");
        if (parents[0] != no_parent) throw build_error("bp_tree: node 0 must be the root");
        m_nodes = parents.size();
        bit_builder bits;
        std::vector<std::size_t> stack{0};
        bits.push_back(true);
        for (std::size_t i = 1; i < parents.size(); ++i) {
            std::size_t p = parents[i];
            if (p == no_parent) throw build_error("bp_tree: multiple roots (node " + std::to_string(i) + ")");
            if (p >= i) throw build_error("bp_tree: parent of node " + std::to_string(i) + " does not precede it");
            while (!stack.empty() && stack.back() != p) {
                stack.pop_back();
                bits.push_back(false);
            }
            if (stack.empty())
                throw build_error("bp_tree: numbering is not a DFS preorder at node " + std::to_string(i));
            stack.push_back(i);
            bits.push_back(true);
        }
        while (!stack.empty()) {
            stack.pop_back();
            bits.push_back(false);
        }
        m_parens = bit_vector(std::move(bits));
        build_min_tree();
    }

    std::size_t size() const { return m_nodes; }
    const bit_vector& parens() const { return m_parens; }

    /// Preorder of the parent of node i, nullopt for the root.
    std::optional<std::size_t> parent(std::size_t i) const {
        if (i >= m_nodes) throw std::out_of_range("bp_tree::parent: node out of range");
        if (i == 0) return std::nullopt;
        return parent_nonroot(i);
    }

    /// parent() for 0 < i < size(), without the checks.
    std::size_t parent_nonroot(std::size_t i) const {
        std::size_t open = m_parens.select1_unchecked(i);
        auto excess = static_cast<int64_t>(2 * i) - static_cast<int64_t>(open);
        if (excess == 1) return 0;  // child of the root
        std::size_t q = backward_search(open, excess, excess - 1);
        return m_parens.rank1_unchecked(q);
    }

    /// Parenthesis string, '(' for open and ')' for close.
    std::string to_string() const {
        std::string s;
        s.reserve(m_parens.size());
        for (std::size_t i = 0; i < m_parens.size(); ++i) s.push_back(m_parens[i] ? '(' : ')');
        return s;
    }

    /// Entropy of the node-degree distribution, in bits per node.
    double degree_entropy() const {
        std::map<std::size_t, std::size_t> histogram;
        std::vector<std::size_t> children;
        for (std::size_t i = 0; i < m_parens.size(); ++i) {
            if (m_parens[i]) {
                if (!children.empty()) ++children.back();
                children.push_back(0);
            } else {
                ++histogram[children.back()];
                children.pop_back();
            }
        }
        double n = static_cast<double>(m_nodes);
        double h = 0.0;
        for (auto [deg, count] : histogram) {
            double c = static_cast<double>(count);
            h += (c / n) * std::log2(n / c);
        }
        return h;
    }

    std::size_t payload_bits() const { return m_parens.payload_bits(); }
    std::size_t aux_bits() const { return m_parens.aux_bits() + 32 * m_min_tree.size(); }

    void save(word_writer& out) const {
        out.put(m_nodes);
        m_parens.save(out);
    }

    static bp_tree load(word_reader& in) {
        bp_tree t;
        t.m_nodes = in.get();
        t.m_parens = bit_vector::load(in);
        if (t.m_nodes == 0 || t.m_parens.size() != 2 * t.m_nodes || t.m_parens.num_ones() != t.m_nodes)
            throw format_error("bp_tree: parenthesis count does not match node count");
        int64_t e = 0;
        for (std::size_t i = 0; i < t.m_parens.size(); ++i) {
            e += t.m_parens[i] ? 1 : -1;
            if (e < 0 || (e == 0 && i + 1 != t.m_parens.size()))
                throw format_error("bp_tree: parentheses are not a single balanced tree");
        }
        t.build_min_tree();
        return t;
    }

private:
    // Excess (opens minus closes) of the bits strictly before position q,
    // for q at a block boundary.
    int64_t excess_at_boundary(std::size_t q) const {
        return 2 * static_cast<int64_t>(m_parens.rank1_unchecked(q)) - static_cast<int64_t>(q);
    }

    // Scans positions [begin, end) right to left; both multiples of 8.
    // Returns the largest q with excess(q) == target, or no_parent.
    std::size_t scan_bytes(std::size_t end, int64_t excess, std::size_t begin, int64_t target) const {
        const auto& words = m_parens.words();
        std::size_t q = end;
        while (q > begin) {
            std::size_t byte_pos = q - 8;
            auto v = static_cast<unsigned>((words[byte_pos / 64] >> (byte_pos % 64)) & 0xFF);
            const auto& be = detail::byte_excess_table[v];
            if (excess + be.bwd_min <= target) {
                for (int j = 7; j >= 0; --j) {
                    excess -= (v >> j) & 1 ? 1 : -1;
                    if (excess == target) return byte_pos + static_cast<std::size_t>(j);
                }
            }
            excess -= be.total;
            q = byte_pos;
        }
        return no_parent;
    }

    std::size_t backward_search(std::size_t p, int64_t excess, int64_t target) const {
        std::size_t q = p;
        while (q % 8 != 0) {
            --q;
            excess -= m_parens[q] ? 1 : -1;
            if (excess == target) return q;
        }
        std::size_t block_begin = q / block_bits * block_bits;
        std::size_t found = scan_bytes(q, excess, block_begin, target);
        if (found != no_parent) return found;

        std::size_t b = last_block_reaching(block_begin / block_bits, target);
        if (b == no_parent) throw std::logic_error("bp_tree: unbalanced parentheses");
        std::size_t end = (b + 1) * block_bits;
        found = scan_bytes(end, excess_at_boundary(end), b * block_bits, target);
        if (found == no_parent) throw std::logic_error("bp_tree: block minimum inconsistent");
        return found;
    }

    // Largest block index b < limit whose minimum excess is <= target.
    // Climbs from leaf limit-1 until a left sibling qualifies, then descends
    // keeping to the right.
    std::size_t last_block_reaching(std::size_t limit, int64_t target) const {
        if (limit == 0) return no_parent;
        auto reaches = [&](std::size_t v) { return static_cast<int64_t>(m_min_tree[v]) <= target; };
        std::size_t v = m_leaves + limit - 1;
        if (!reaches(v)) {
            for (;;) {
                if (v == 1) return no_parent;
                if ((v & 1) && reaches(v - 1)) {
                    --v;
                    break;
                }
                v >>= 1;
            }
        }
        while (v < m_leaves) v = reaches(2 * v + 1) ? 2 * v + 1 : 2 * v;
        return v - m_leaves;
    }

    void build_min_tree() {
        std::size_t len = m_parens.size();
        std::size_t blocks = (len + block_bits - 1) / block_bits;
        m_leaves = 1;
        while (m_leaves < blocks) m_leaves *= 2;
        m_min_tree.assign(2 * m_leaves, std::numeric_limits<uint32_t>::max());
        int64_t e = 0;
        for (std::size_t b = 0; b < blocks; ++b) {
            int64_t lo = e;
            std::size_t end = std::min(len, (b + 1) * block_bits);
            for (std::size_t q = b * block_bits; q < end; ++q) {
                if (e < lo) lo = e;
                e += m_parens[q] ? 1 : -1;
            }
            m_min_tree[m_leaves + b] = static_cast<uint32_t>(lo);
        }
        for (std::size_t i = m_leaves - 1; i >= 1; --i) m_min_tree[i] = std::min(m_min_tree[2 * i], m_min_tree[2 * i + 1]);
    }

    std::size_t m_nodes = 0;
    bit_vector m_parens;
    std::size_t m_leaves = 0;
    std::vector<uint32_t> m_min_tree;
};

}  // namespace sdmx
