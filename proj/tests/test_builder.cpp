#include <gtest/gtest.h>

#include <random>
#include <string>
#include <vector>

#include "sdmx/builder.hpp"
#include "sdmx/fuzz.hpp"
#include "sdmx/oracle.hpp"

using namespace sdmx;

namespace {

const std::vector<std::string> example_set{"ABC", "B", "BC", "CA"};

std::vector<std::string> states_as_strings(const prefix_table& pt) {
    std::vector<std::string> out;
    for (std::size_t s = 0; s < pt.size(); ++s) out.push_back(pt.string_of(s));
    return out;
}

std::string key_to_pair(uint64_t key, unsigned bits, const alphabet_map& a) {
    return std::string("(") + static_cast<char>(a.decode(key >> bits)) + "," + std::to_string(key & ((1u << bits) - 1)) + ")";
}

}  // namespace

TEST(PatternSet, Validation) {
    EXPECT_THROW(pattern_set({}), build_error);
    try {
        pattern_set ps({"a", "b", "", "c"});
        FAIL();
    } catch (const pattern_error& e) {
        EXPECT_EQ(e.index(), 2u);
    }
    try {
        pattern_set ps({"a", "b", "a"});
        FAIL();
    } catch (const pattern_error& e) {
        EXPECT_EQ(e.index(), 2u);
    }
    pattern_set ps(example_set);
    EXPECT_EQ(ps.total_length(), 8u);
    EXPECT_EQ(ps.sigma(), 3u);
}

TEST(SuffixLexOrder, ExampleSet) {
    auto pt = suffix_lex_order(pattern_set(example_set));
    std::vector<std::string> expected{"", "A", "CA", "B", "AB", "C", "BC", "ABC"};
    EXPECT_EQ(states_as_strings(pt), expected);
}

TEST(SuffixLexOrder, SinglePattern) {
    auto pt = suffix_lex_order(pattern_set({"X"}));
    EXPECT_EQ(states_as_strings(pt), (std::vector<std::string>{"", "X"}));
}

TEST(SuffixLexOrder, MatchesReverseSortOracle) {
    fuzz::splitmix64 rng(17);
    for (int rep = 0; rep < 300; ++rep) {
        std::size_t sigma = std::vector<std::size_t>{2, 4, 26, 256}[rep % 4];
        auto c = fuzz::make_case(rng, sigma, {30, 400, 0});
        auto pt = suffix_lex_order(pattern_set(c.patterns));
        ASSERT_EQ(states_as_strings(pt), oracle::naive_suffix_lex_order(c.patterns));
    }
    // Long repetitive patterns need many doubling rounds.
    std::vector<std::string> reps{std::string(300, 'a'), std::string(299, 'a') + "b", "b" + std::string(200, 'a')};
    auto pt = suffix_lex_order(pattern_set(reps));
    EXPECT_EQ(states_as_strings(pt), oracle::naive_suffix_lex_order(reps));
}

TEST(TransitionPairs, ExampleSet) {
    pattern_set ps(example_set);
    auto pt = suffix_lex_order(ps);
    auto keys = build_transition_pairs(pt, ps.alphabet());
    std::vector<std::string> pairs;
    for (auto k : keys) pairs.push_back(key_to_pair(k, 3, ps.alphabet()));
    std::vector<std::string> expected{"(A,0)", "(A,5)", "(B,0)", "(B,1)", "(C,0)", "(C,3)", "(C,4)"};
    EXPECT_EQ(pairs, expected);
}

TEST(TransitionPairs, SinglePattern) {
    pattern_set ps({"X"});
    auto keys = build_transition_pairs(suffix_lex_order(ps), ps.alphabet());
    ASSERT_EQ(keys.size(), 1u);
    EXPECT_EQ(keys[0], 0u);  // symbol 0, state 0, one state bit
}

// Key at position k leads to state k + 1: its symbol and source state are
// exactly the last byte and parent prefix of state k + 1.
TEST(TransitionPairs, PositionIsDestinationMinusOne) {
    fuzz::splitmix64 rng(3);
    for (int rep = 0; rep < 200; ++rep) {
        auto c = fuzz::make_case(rng, std::vector<std::size_t>{2, 4, 26, 256}[rep % 4], {20, 200, 0});
        pattern_set ps(c.patterns);
        auto pt = suffix_lex_order(ps);
        auto keys = build_transition_pairs(pt, ps.alphabet());
        unsigned bits = state_bits_for(pt.size());
        ASSERT_EQ(keys.size(), pt.size() - 1);
        for (std::size_t k = 0; k < keys.size(); ++k) {
            ASSERT_EQ(ps.alphabet().decode(keys[k] >> bits), pt.last[k + 1]);
            ASSERT_EQ(keys[k] & ((uint64_t(1) << bits) - 1), pt.parent[k + 1]);
            if (k > 0) ASSERT_LT(keys[k - 1], keys[k]);
        }
    }
}

TEST(FailureParents, ExampleSet) {
    auto pt = suffix_lex_order(pattern_set(example_set));
    std::vector<std::size_t> expected{no_parent, 0, 1, 0, 3, 0, 5, 6};
    EXPECT_EQ(build_failure_parents(pt), expected);
    EXPECT_EQ(oracle::naive_failure(pt), expected);
}

TEST(FailureParents, SinglePattern) {
    auto pt = suffix_lex_order(pattern_set({"X"}));
    EXPECT_EQ(build_failure_parents(pt), (std::vector<std::size_t>{no_parent, 0}));
}

TEST(ReportParents, ExampleSet) {
    auto pt = suffix_lex_order(pattern_set(example_set));
    auto fail = build_failure_parents(pt);
    std::vector<std::size_t> expected{no_parent, 0, 0, 0, 3, 0, 0, 6};
    EXPECT_EQ(build_report_parents(pt, fail), expected);
    EXPECT_EQ(oracle::naive_report(pt, example_set), expected);
}

TEST(ReportParents, FlatWhenNoPatternIsASuffixOfAnother) {
    std::vector<std::string> set{"abc", "abd", "xyz", "qq"};
    auto pt = suffix_lex_order(pattern_set(set));
    auto rep = build_report_parents(pt, build_failure_parents(pt));
    for (std::size_t s = 1; s < rep.size(); ++s) EXPECT_EQ(rep[s], 0u);
}

TEST(ParentArrays, MatchBruteForceAndPrecedeChildren) {
    fuzz::splitmix64 rng(21);
    for (int rep = 0; rep < 300; ++rep) {
        auto c = fuzz::make_case(rng, std::vector<std::size_t>{2, 4, 26, 256}[rep % 4], {20, 200, 0});
        auto pt = suffix_lex_order(pattern_set(c.patterns));
        auto fail = build_failure_parents(pt);
        auto report = build_report_parents(pt, fail);
        ASSERT_EQ(fail, oracle::naive_failure(pt));
        ASSERT_EQ(report, oracle::naive_report(pt, c.patterns));
        for (std::size_t s = 1; s < pt.size(); ++s) {
            ASSERT_LT(fail[s], s);
            ASSERT_LT(report[s], s);
        }
        // Both arrays are DFS preorders of their trees, so bp_tree accepts them.
        EXPECT_NO_THROW(bp_tree{fail});
        EXPECT_NO_THROW(bp_tree{report});
    }
}

TEST(BuildIndex, ExampleSet) {
    pattern_set ps(example_set);
    auto idx = build_index(ps);
    EXPECT_EQ(idx.num_states(), 8u);
    EXPECT_EQ(idx.num_patterns(), 4u);
    std::vector<uint64_t> terminals;
    for (std::size_t i = 0; i < idx.terminals().size(); ++i) terminals.push_back(idx.terminals().select(i));
    EXPECT_EQ(terminals, (std::vector<uint64_t>{2, 3, 6, 7}));
    std::vector<uint64_t> lengths;
    for (std::size_t i = 0; i < idx.num_patterns(); ++i) lengths.push_back(idx.pattern_length(i));
    EXPECT_EQ(lengths, (std::vector<uint64_t>{2, 1, 2, 3}));
}

TEST(BuildIndex, SinglePattern) {
    auto idx = build_index(pattern_set({"A"}));
    EXPECT_EQ(idx.num_states(), 2u);
    EXPECT_EQ(idx.num_patterns(), 1u);
    EXPECT_EQ(idx.terminals().select(0), 1u);
}

TEST(BuildIndex, Deterministic) {
    fuzz::splitmix64 rng(8);
    auto c = fuzz::make_case(rng, 26);
    auto a = build_index(pattern_set(c.patterns));
    auto b = build_index(pattern_set(c.patterns));
    EXPECT_EQ(a.transitions().keys().payload_bits(), b.transitions().keys().payload_bits());
    EXPECT_EQ(a.failure_tree().to_string(), b.failure_tree().to_string());
    EXPECT_EQ(a.report_tree().to_string(), b.report_tree().to_string());
}
