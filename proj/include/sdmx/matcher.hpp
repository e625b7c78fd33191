#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "alphabet.hpp"
#include "index.hpp"

namespace sdmx {

/// One match: text[start..=end] equals pattern `pattern_id`. Positions are byte offsets.
struct occurrence {
    uint64_t start = 0;
    uint64_t end = 0;
    std::size_t pattern_id = 0;

    auto operator<=>(const occurrence&) const = default;
};

/// Work done by a scan, in automaton operations.
struct scan_counters {
    uint64_t next_probes = 0;    // transition dictionary lookups
    uint64_t next_taken = 0;     // lookups that found a transition
    uint64_t failure_steps = 0;  // failure transitions followed
    uint64_t report_steps = 0;   // report tree parent queries

    /// Transitions actually followed, next plus failure.
    uint64_t automaton_steps() const { return next_taken + failure_steps; }
};

/// Matcher position carried across text chunks.
struct scan_state {
    std::size_t state = 0;
    uint64_t step = 0;  // bytes consumed so far
    uint64_t occurrences = 0;
    scan_counters counters;
};

/// Advances `st` over `text`, calling sink(occurrence) for every match.
/// Matches ending at the same position are produced longest first.
template <typename Index, typename Sink>
void feed(const Index& idx, scan_state& st, std::string_view text, Sink&& sink) {
    const alphabet_map& alphabet = idx.alphabet();
    const auto& transitions = idx.transitions();
    const bp_tree& failure = idx.failure_tree();
    const bp_tree& report = idx.report_tree();
    const indexable_set& terminals = idx.terminals();
    const elias_fano_array& lengths = idx.lengths();

    std::size_t state = st.state;
    uint64_t step = st.step;
    scan_counters cnt = st.counters;
    uint64_t occ = st.occurrences;

    auto emit = [&](std::size_t id) {
        uint64_t len = lengths[id];
        sink(occurrence{step - len, step - 1, id});
        ++occ;
    };

    for (char ch : text) {
        uint16_t symbol = alphabet.encode(static_cast<unsigned char>(ch));
        ++step;
        if (symbol == alphabet_map::unknown) {
            // No state has a transition on this byte: drop to the root directly.
            if (state != 0) {
                state = 0;
                ++cnt.failure_steps;
            }
            continue;
        }
        for (;;) {
            ++cnt.next_probes;
            if (auto to = transitions.next(state, symbol)) {
                state = *to;
                ++cnt.next_taken;
                break;
            }
            if (state == 0) break;
            state = failure.parent_nonroot(state);
            ++cnt.failure_steps;
        }
        if (state == 0) continue;

        if (auto id = terminals.rank_unchecked(state)) emit(*id);
        std::size_t up = state;
        for (;;) {
            up = report.parent_nonroot(up);
            ++cnt.report_steps;
            if (up == 0) break;
            emit(*terminals.rank_unchecked(up));
        }
    }

    st.state = state;
    st.step = step;
    st.counters = cnt;
    st.occurrences = occ;
}

/// Scans one text from the start state.
template <typename Index, typename Sink>
scan_state scan(const Index& idx, std::string_view text, Sink&& sink) {
    scan_state st;
    feed(idx, st, text, sink);
    return st;
}

/// Scans the concatenation of `chunks`; positions are global.
template <typename Index, typename Chunks, typename Sink>
scan_state scan_chunked(const Index& idx, const Chunks& chunks, Sink&& sink) {
    scan_state st;
    for (const auto& chunk : chunks) feed(idx, st, std::string_view(chunk), sink);
    return st;
}

template <typename Index>
std::vector<occurrence> find_all(const Index& idx, std::string_view text, scan_state* summary = nullptr) {
    std::vector<occurrence> out;
    auto st = scan(idx, text, [&](const occurrence& o) { out.push_back(o); });
    if (summary) *summary = st;
    return out;
}

}  // namespace sdmx
