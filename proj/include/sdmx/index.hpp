#pragma once

#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "alphabet.hpp"
#include "bp_tree.hpp"
#include "elias_fano.hpp"
#include "errors.hpp"
#include "transitions.hpp"

namespace sdmx {

/// Header values of an index.
struct index_metadata {
    uint64_t states = 0;    // m, number of distinct prefixes including the empty one
    uint64_t patterns = 0;  // d
    uint64_t total_length = 0;  // n
    uint64_t sigma = 0;
    uint64_t state_bits = 0;  // ceil(log2 m)
};

inline unsigned state_bits_for(std::size_t states) {
    return states <= 1 ? 0 : static_cast<unsigned>(std::bit_width(states - 1));
}

/// Bits used by one stored component.
struct component_space {
    std::string name;
    std::size_t payload_bits = 0;
    std::size_t aux_bits = 0;
    double reference_bits = 0.0;  // asymptotic bound for this component, o() terms dropped

    std::size_t total_bits() const { return payload_bits + aux_bits; }
};

/// Measured space of an index next to the analytical bounds it is compared with.
struct space_report {
    index_metadata meta;
    backend_kind backend = backend_kind::flat;
    std::vector<component_space> components;
    std::size_t metadata_bits = 0;

    double report_tree_degree_entropy = 0.0;  // H*, bits per node
    double transition_entropy = 0.0;          // H0 of the next-transition labels, bits per transition
    double reference_total_bits = 0.0;        // m(log sigma + 3.443) + d * 3 log(n/d)
    double compressed_reference_total_bits = 0.0;  // same with H0 in place of log sigma
    double report_tree_entropy_bits = 0.0;    // m * H*

    std::size_t measured_total_bits() const {
        std::size_t t = metadata_bits;
        for (const auto& c : components) t += c.total_bits();
        return t;
    }

    std::size_t payload_total_bits() const {
        std::size_t t = metadata_bits;
        for (const auto& c : components) t += c.payload_bits;
        return t;
    }

    const component_space& component(const std::string& name) const {
        for (const auto& c : components)
            if (c.name == name) return c;
        throw std::out_of_range("space_report: no component named " + name);
    }

    /// Measured total over n log2 sigma; infinite when sigma == 1.
    double optimality_ratio() const {
        double denom = static_cast<double>(meta.total_length) * std::log2(static_cast<double>(meta.sigma));
        return denom > 0 ? static_cast<double>(measured_total_bits()) / denom : INFINITY;
    }
};

/// Zeroth-order entropy of a count distribution, in bits per counted item.
inline double h0_entropy(const std::vector<std::size_t>& counts) {
    std::size_t total = 0;
    for (auto c : counts) total += c;
    if (total == 0) throw std::invalid_argument("h0_entropy: empty distribution");
    double t = static_cast<double>(total);
    double h = 0.0;
    for (auto c : counts) {
        if (c == 0) continue;
        double x = static_cast<double>(c);
        h += (x / t) * std::log2(t / x);
    }
    return h;
}

/// Succinct Aho-Corasick automaton over a fixed dictionary.
///
/// State s is the rank of its prefix among all dictionary prefixes in
/// suffix-lexicographic order (strings compared right to left). Next
/// transitions live in `Transitions`; failure and report transitions are
/// parent queries on two trees whose preorder is the state numbering; the
/// terminal states and pattern lengths are stored in suffix-lexicographic
/// order of the patterns, which also defines pattern ids.
template <typename Transitions>
class ac_index {
public:
    using transitions_type = Transitions;

    ac_index() = default;

    ac_index(index_metadata meta, alphabet_map alphabet, Transitions transitions, bp_tree failure_tree,
             bp_tree report_tree, indexable_set terminals, elias_fano_array lengths)
        : m_meta(meta),
          m_alphabet(std::move(alphabet)),
          m_transitions(std::move(transitions)),
          m_failure(std::move(failure_tree)),
          m_report(std::move(report_tree)),
          m_terminals(std::move(terminals)),
          m_lengths(std::move(lengths)) {
        validate();
    }

    const index_metadata& metadata() const { return m_meta; }
    std::size_t num_states() const { return m_meta.states; }
    std::size_t num_patterns() const { return m_meta.patterns; }
    std::size_t total_length() const { return m_meta.total_length; }
    std::size_t sigma() const { return m_meta.sigma; }

    const alphabet_map& alphabet() const { return m_alphabet; }
    const Transitions& transitions() const { return m_transitions; }
    const bp_tree& failure_tree() const { return m_failure; }
    const bp_tree& report_tree() const { return m_report; }
    const indexable_set& terminals() const { return m_terminals; }
    const elias_fano_array& lengths() const { return m_lengths; }

    /// Destination of the next transition from `state` on dense symbol `symbol`.
    std::optional<std::size_t> next_state(std::size_t state, uint16_t symbol) const {
        check_state(state);
        if (symbol >= m_meta.sigma) return std::nullopt;
        return m_transitions.next(state, symbol);
    }

    std::optional<std::size_t> next_state_byte(std::size_t state, unsigned char byte) const {
        return next_state(state, m_alphabet.encode(byte));
    }

    /// State of the longest proper suffix of `state`'s prefix that is itself a prefix.
    std::size_t fail_state(std::size_t state) const {
        check_state(state);
        if (state == 0) throw std::invalid_argument("fail_state: the root has no failure transition");
        return m_failure.parent_nonroot(state);
    }

    /// State of the longest proper suffix that is a pattern; 0 when there is none.
    std::size_t report_state(std::size_t state) const {
        check_state(state);
        if (state == 0) throw std::invalid_argument("report_state: the root has no report transition");
        return m_report.parent_nonroot(state);
    }

    /// Pattern id of a terminal state, nullopt for non-terminal states.
    std::optional<std::size_t> terminal_id(std::size_t state) const {
        check_state(state);
        return m_terminals.rank_unchecked(state);
    }

    std::size_t pattern_length(std::size_t id) const {
        if (id >= m_meta.patterns) throw std::out_of_range("pattern_length: pattern id out of range");
        return m_lengths[id];
    }

    /// Rebuilds pattern `id` from the terminal set and the transition keys,
    /// right to left. Adds the number of select calls made to `select_calls`.
    std::string retrieve_pattern(std::size_t id, std::size_t* select_calls = nullptr) const {
        if (id >= m_meta.patterns) throw std::out_of_range("retrieve_pattern: pattern id out of range");
        std::size_t calls = 1;
        std::size_t state = m_terminals.select_unchecked(id);
        std::string reversed;
        while (state != 0) {
            transition_source src = m_transitions.source(state);
            ++calls;
            if (reversed.size() >= m_meta.total_length) throw format_error("retrieve_pattern: transition chain does not reach the root");
            reversed.push_back(static_cast<char>(m_alphabet.decode(src.symbol)));
            state = src.state;
        }
        if (select_calls) *select_calls += calls;
        return {reversed.rbegin(), reversed.rend()};
    }

    space_report space() const {
        space_report r;
        r.meta = m_meta;
        r.backend = Transitions::kind;
        const double m = static_cast<double>(m_meta.states);
        const double d = static_cast<double>(m_meta.patterns);
        const double n = static_cast<double>(m_meta.total_length);
        const double log_sigma = std::log2(static_cast<double>(m_meta.sigma));
        const double log_nd = std::log2(n / d);
        const double log_md = std::log2(m / d);

        r.transition_entropy = m_meta.states > 1 ? h0_entropy(m_transitions.symbol_counts(m_meta.sigma)) : 0.0;
        r.report_tree_degree_entropy = m_report.degree_entropy();
        r.report_tree_entropy_bits = m * r.report_tree_degree_entropy;

        const double transitions_ref =
            Transitions::kind == backend_kind::flat ? m * (log_sigma + 1.443) : m * (r.transition_entropy + 1.443);
        r.components = {
            {"alphabet", m_alphabet.payload_bits(), m_alphabet.aux_bits(), 8.0 * static_cast<double>(m_meta.sigma)},
            {"transitions", m_transitions.payload_bits(), m_transitions.aux_bits(), transitions_ref},
            {"failure_tree", m_failure.payload_bits(), m_failure.aux_bits(), 2.0 * m},
            {"report_tree", m_report.payload_bits(), m_report.aux_bits(), d * log_md},
            {"terminals", m_terminals.payload_bits(), m_terminals.aux_bits(), d * (log_md + 1.443)},
            {"lengths", m_lengths.payload_bits(), m_lengths.aux_bits(), d * (std::ceil(log_nd) + 2.0)},
        };
        r.metadata_bits = 5 * 64;
        r.reference_total_bits = m * (log_sigma + 3.443) + d * 3.0 * log_nd;
        r.compressed_reference_total_bits = m * (r.transition_entropy + 3.443) + d * 3.0 * log_nd;
        return r;
    }

private:
    void check_state(std::size_t state) const {
        if (state >= m_meta.states) throw std::out_of_range("state out of range");
    }

    void validate() const {
        const auto& m = m_meta;
        auto fail = [](const char* what) { throw format_error(std::string("ac_index: ") + what); };
        if (m.states < 2 || m.patterns < 1) fail("index needs at least one pattern");
        if (m.states > m.total_length + 1) fail("more states than prefixes");
        if (m.sigma != m_alphabet.sigma()) fail("alphabet size mismatch");
        if (m.state_bits != state_bits_for(m.states)) fail("state width mismatch");
        if (m_transitions.size() != m.states - 1 || m_transitions.state_bits() != m.state_bits) fail("transition count mismatch");
        if (m_failure.size() != m.states || m_report.size() != m.states) fail("tree size mismatch");
        if (m_terminals.size() != m.patterns || m_terminals.universe() != m.states) fail("terminal set mismatch");
        if (m_terminals.contains(0)) fail("empty string marked terminal");
        if (m_lengths.size() != m.patterns || m_lengths.sum() != m.total_length) fail("length store mismatch");
    }

    index_metadata m_meta;
    alphabet_map m_alphabet;
    Transitions m_transitions;
    bp_tree m_failure;
    bp_tree m_report;
    indexable_set m_terminals;
    elias_fano_array m_lengths;
};

using flat_index = ac_index<flat_transitions>;
using compressed_index = ac_index<compressed_transitions>;

}  // namespace sdmx
