// Builds an index over a small dictionary, scans a text, and looks at the
// index from a few angles. Run: basic_usage [patterns-file]

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "sdmx/sdmx.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> words{"he", "she", "his", "hers"};
    if (argc > 1) {
        std::ifstream in(argv[1], std::ios::binary);
        if (!in) {
            std::cerr << "cannot open " << argv[1] << "\n";
            return 1;
        }
        words = sdmx::read_patterns_text(in).patterns;
    }

    sdmx::pattern_set dictionary(words);
    auto index = sdmx::build_index<sdmx::compressed_transitions>(dictionary);

    // Pattern ids follow the right-to-left sorted order of the dictionary.
    for (std::size_t id = 0; id < index.num_patterns(); ++id)
        std::printf("id %zu = \"%s\"\n", id, index.retrieve_pattern(id).c_str());

    const std::string text = "ushers and his sheep";
    std::printf("\nscanning \"%s\"\n", text.c_str());
    sdmx::scan(index, text, [&](const sdmx::occurrence& o) {
        std::printf("  [%llu, %llu] %s\n", static_cast<unsigned long long>(o.start), static_cast<unsigned long long>(o.end),
                    index.retrieve_pattern(o.pattern_id).c_str());
    });

    // Streaming: state carries over between chunks.
    sdmx::scan_state st;
    std::size_t hits = 0;
    for (std::string_view chunk : {"ush", "ers and h", "is sheep"}) sdmx::feed(index, st, chunk, [&](auto&&) { ++hits; });
    std::printf("chunked scan found %zu occurrences in %llu bytes\n", hits, static_cast<unsigned long long>(st.step));

    auto space = index.space();
    std::printf("\n%zu states, %zu bits total (%zu payload)\n", index.num_states(), space.measured_total_bits(),
                space.payload_total_bits());
    for (const auto& c : space.components) std::printf("  %-13s %6zu payload bits\n", c.name.c_str(), c.payload_bits);

    // Round trip through the on-disk format.
    auto bytes = sdmx::encode_index(index);
    auto loaded = sdmx::decode_index(bytes);
    std::printf("\nserialized to %zu bytes; reloaded as %s backend\n", bytes.size(),
                std::holds_alternative<sdmx::compressed_index>(loaded) ? "compressed" : "flat");
    return 0;
}
