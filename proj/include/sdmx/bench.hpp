#pragma once

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "matcher.hpp"

namespace sdmx {

struct bench_result {
    double seconds = 0.0;  // best of the repetitions
    uint64_t bytes = 0;
    scan_state last;

    double megabytes_per_second() const { return seconds > 0 ? static_cast<double>(bytes) / 1e6 / seconds : 0.0; }
    double steps_per_char() const {
        return bytes ? static_cast<double>(last.counters.automaton_steps()) / static_cast<double>(bytes) : 0.0;
    }
    double probes_per_char() const {
        return bytes ? static_cast<double>(last.counters.next_probes) / static_cast<double>(bytes) : 0.0;
    }
};

/// Times a chunked scan, counting occurrences without storing them.
template <typename Index>
bench_result time_scan(const Index& idx, const std::vector<std::string_view>& chunks, std::size_t repetitions) {
    if (repetitions == 0) throw std::invalid_argument("repetitions must be positive");
    bench_result r;
    r.seconds = std::numeric_limits<double>::infinity();
    for (auto c : chunks) r.bytes += c.size();
    for (std::size_t rep = 0; rep < repetitions; ++rep) {
        auto t0 = std::chrono::steady_clock::now();
        auto st = scan_chunked(idx, chunks, [](const occurrence&) {});
        auto t1 = std::chrono::steady_clock::now();
        r.seconds = std::min(r.seconds, std::chrono::duration<double>(t1 - t0).count());
        r.last = st;
    }
    return r;
}

struct scale_result {
    bench_result single;
    bench_result doubled;
    double ratio() const { return single.seconds > 0 ? doubled.seconds / single.seconds : 0.0; }
};

/// Scan of T against a scan of T followed by T.
template <typename Index>
scale_result time_doubling(const Index& idx, std::string_view text, std::size_t repetitions) {
    scale_result r;
    r.single = time_scan(idx, {text}, repetitions);
    r.doubled = time_scan(idx, {text, text}, repetitions);
    return r;
}

}  // namespace sdmx
