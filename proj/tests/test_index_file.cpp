#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "sdmx/builder.hpp"
#include "sdmx/fuzz.hpp"
#include "sdmx/index_file.hpp"
#include "sdmx/matcher.hpp"

using namespace sdmx;

namespace {

const std::vector<std::string> example_set{"ABC", "B", "BC", "CA"};

template <typename Index>
void expect_same_behaviour(const Index& a, const any_index& loaded, const std::string& text) {
    std::visit(
        [&](const auto& b) {
            ASSERT_EQ(a.num_states(), b.num_states());
            ASSERT_EQ(a.num_patterns(), b.num_patterns());
            for (std::size_t i = 0; i < a.num_patterns(); ++i) ASSERT_EQ(a.retrieve_pattern(i), b.retrieve_pattern(i));
            ASSERT_EQ(find_all(a, text), find_all(b, text));
            ASSERT_EQ(a.space().measured_total_bits(), b.space().measured_total_bits());
        },
        loaded);
}

}  // namespace

TEST(IndexFile, RoundTripBothBackends) {
    pattern_set ps(example_set);
    auto flat = build_index<flat_transitions>(ps);
    auto comp = build_index<compressed_transitions>(ps);
    auto f = decode_index(encode_index(flat));
    auto c = decode_index(encode_index(comp));
    EXPECT_TRUE(std::holds_alternative<flat_index>(f));
    EXPECT_TRUE(std::holds_alternative<compressed_index>(c));
    expect_same_behaviour(flat, f, "ABCABCBCAxxCA");
    expect_same_behaviour(comp, c, "ABCABCBCAxxCA");
}

TEST(IndexFile, RandomRoundTrips) {
    fuzz::splitmix64 rng(3);
    for (int rep = 0; rep < 50; ++rep) {
        auto c = fuzz::make_case(rng, std::vector<std::size_t>{2, 4, 26, 256}[rep % 4]);
        pattern_set ps(c.patterns);
        auto flat = build_index<flat_transitions>(ps);
        auto comp = build_index<compressed_transitions>(ps);
        expect_same_behaviour(flat, decode_index(encode_index(flat)), c.text);
        expect_same_behaviour(comp, decode_index(encode_index(comp)), c.text);
    }
}

TEST(IndexFile, Deterministic) {
    pattern_set ps(example_set);
    EXPECT_EQ(encode_index(build_index(ps)), encode_index(build_index(ps)));
}

TEST(IndexFile, HeaderFields) {
    auto bytes = encode_index(build_index<compressed_transitions>(pattern_set(example_set)));
    EXPECT_EQ(std::string(bytes.begin(), bytes.begin() + 5), "SDMX1");
    EXPECT_EQ(bytes[8], 1);   // version
    EXPECT_EQ(bytes[12], 1);  // compressed flag
    EXPECT_EQ(bytes[16], 8);  // m
    EXPECT_EQ(bytes[24], 4);  // d
    EXPECT_EQ(bytes[32], 8);  // n
    EXPECT_EQ(bytes[40], 3);  // sigma
    EXPECT_EQ(bytes.size() % 8, 0u);
}

// Every single-bit flip anywhere in the file must be rejected.
TEST(IndexFile, DetectsEverySingleBitFlip) {
    for (bool compressed : {false, true}) {
        pattern_set ps(example_set);
        auto bytes = compressed ? encode_index(build_index<compressed_transitions>(ps)) : encode_index(build_index(ps));
        for (std::size_t i = 0; i < bytes.size(); ++i)
            for (int b = 0; b < 8; ++b) {
                auto bad = bytes;
                bad[i] ^= static_cast<unsigned char>(1u << b);
                EXPECT_THROW(decode_index(bad), format_error) << "byte " << i << " bit " << b;
            }
    }
}

TEST(IndexFile, TruncationAndTrailingBytes) {
    auto bytes = encode_index(build_index(pattern_set(example_set)));
    for (std::size_t len : {std::size_t(0), std::size_t(7), std::size_t(100), bytes.size() - 1}) {
        std::vector<unsigned char> cut(bytes.begin(), bytes.begin() + len);
        EXPECT_THROW(decode_index(cut), format_error) << len;
    }
    auto longer = bytes;
    longer.push_back(0);
    EXPECT_THROW(decode_index(longer), format_error);
}

namespace {

// Rewrites the checksum so only the structural checks can catch a change.
void reseal(std::vector<unsigned char>& bytes) {
    std::size_t body = bytes.size() - 8;
    uint64_t h = fnv1a64(std::span<const unsigned char>(bytes).first(body));
    for (int i = 0; i < 8; ++i) bytes[body + i] = static_cast<unsigned char>(h >> (8 * i));
}

}  // namespace

TEST(IndexFile, StructuralChecksBehindChecksum) {
    auto bytes = encode_index(build_index(pattern_set(example_set)));

    auto version = bytes;
    version[8] = 2;
    reseal(version);
    EXPECT_THROW(decode_index(version), format_error);

    auto magic = bytes;
    magic[0] = 'X';
    reseal(magic);
    EXPECT_THROW(decode_index(magic), format_error);

    auto flags = bytes;
    flags[12] = 4;
    reseal(flags);
    EXPECT_THROW(decode_index(flags), format_error);

    auto states = bytes;
    states[16] = 9;
    reseal(states);
    EXPECT_THROW(decode_index(states), format_error);

    auto section = bytes;
    section[56] = 0;
    reseal(section);
    EXPECT_THROW(decode_index(section), format_error);
}

TEST(IndexFile, FileIo) {
    auto path = (std::filesystem::temp_directory_path() / "sdmx_test_index.bin").string();
    auto idx = build_index(pattern_set(example_set));
    write_index_file(path, idx);
    expect_same_behaviour(idx, read_index_file(path), "ABCA");
    std::remove(path.c_str());
    EXPECT_THROW(read_index_file(path), std::runtime_error);
}
