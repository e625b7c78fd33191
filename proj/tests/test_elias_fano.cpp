#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "sdmx/elias_fano.hpp"

using sdmx::elias_fano_array;
using sdmx::indexable_set;

namespace {

// ceil(log2(max(U / n, 1))) computed in floating point, independent of the
// integer search used by the implementation.
std::size_t lemma_payload(std::size_t n, uint64_t sum) {
    double ratio = std::max(1.0, static_cast<double>(sum) / static_cast<double>(n));
    auto width = static_cast<std::size_t>(std::ceil(std::log2(ratio) - 1e-12));
    return n * (width + 2);
}

}  // namespace

TEST(EliasFanoArray, LengthStoreExample) {
    std::vector<uint64_t> lengths{2, 1, 2, 3};
    elias_fano_array ef(lengths);
    for (std::size_t i = 0; i < lengths.size(); ++i) EXPECT_EQ(ef.access(i), lengths[i]);
    EXPECT_EQ(ef.access(2), 2u);
    EXPECT_EQ(ef.sum(), 8u);
    // d = 4, n = 8: 4 * (ceil(log2 2) + 2) = 12 bits.
    EXPECT_EQ(ef.payload_bits(), 12u);
}

TEST(EliasFanoArray, ZerosAndSingletons) {
    std::vector<uint64_t> zeros{0, 0, 0};
    elias_fano_array z(zeros);
    for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(z.access(i), 0u);
    EXPECT_EQ(z.low_width(), 0u);
    EXPECT_EQ(z.payload_bits(), 6u);

    std::vector<uint64_t> seven{7};
    elias_fano_array s(seven);
    EXPECT_EQ(s.access(0), 7u);
    EXPECT_THROW(s.access(1), std::out_of_range);
}

TEST(EliasFanoArray, BuildErrors) {
    std::vector<uint64_t> none;
    EXPECT_THROW(elias_fano_array{none}, sdmx::build_error);
    std::vector<uint64_t> overflow{~uint64_t(0), 1};
    EXPECT_THROW(elias_fano_array{overflow}, sdmx::build_error);
}

TEST(EliasFanoArray, RandomRoundTripAndPayload) {
    std::mt19937_64 rng(42);
    std::size_t cases = 0;
    for (std::size_t n : {1u, 2u, 10u, 10000u}) {
        for (uint64_t max_value : {1ull, 255ull, 1000000ull}) {
            std::size_t reps = 100;
            for (std::size_t rep = 0; rep < reps; ++rep, ++cases) {
                std::uniform_int_distribution<uint64_t> dist(0, max_value);
                std::vector<uint64_t> values(n);
                for (auto& v : values) v = dist(rng);
                elias_fano_array ef(values);
                uint64_t sum = 0;
                for (std::size_t i = 0; i < n; ++i) {
                    ASSERT_EQ(ef[i], values[i]);
                    sum += values[i];
                }
                ASSERT_EQ(ef.sum(), sum);
                ASSERT_EQ(ef.payload_bits(), lemma_payload(n, sum));
            }
        }
    }
    EXPECT_GE(cases, 1000u);
}

TEST(IndexableSet, StateDictionaryExample) {
    std::vector<uint64_t> keys{2, 3, 6, 7};
    indexable_set s(keys, 8);
    EXPECT_EQ(s.select(0), 2u);
    EXPECT_EQ(s.select(2), 6u);
    EXPECT_EQ(s.select(3), 7u);
    EXPECT_EQ(s.rank(6), std::optional<std::size_t>(2));
    EXPECT_EQ(s.rank(2), std::optional<std::size_t>(0));
    EXPECT_EQ(s.rank(5), std::nullopt);
    EXPECT_THROW(s.rank(8), std::out_of_range);
    EXPECT_THROW(s.select(4), std::out_of_range);
}

TEST(IndexableSet, EdgeCases) {
    std::vector<uint64_t> zero{0};
    indexable_set one(zero, 1);
    EXPECT_EQ(one.select(0), 0u);
    EXPECT_EQ(one.rank(0), std::optional<std::size_t>(0));

    std::vector<uint64_t> none;
    indexable_set empty(none, 10);
    EXPECT_EQ(empty.size(), 0u);
    for (uint64_t k = 0; k < 10; ++k) EXPECT_EQ(empty.rank(k), std::nullopt);
    EXPECT_THROW(empty.select(0), std::out_of_range);

    std::vector<uint64_t> unsorted{3, 2};
    EXPECT_THROW(indexable_set(unsorted, 10), sdmx::build_error);
    std::vector<uint64_t> dup{2, 2};
    EXPECT_THROW(indexable_set(dup, 10), sdmx::build_error);
    std::vector<uint64_t> outside{2, 10};
    EXPECT_THROW(indexable_set(outside, 10), sdmx::build_error);
}

TEST(IndexableSet, MatchesSortedArrayOracle) {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<uint64_t> dist(0, 999999);
    std::set<uint64_t> chosen;
    while (chosen.size() < 10000) chosen.insert(dist(rng));
    std::vector<uint64_t> keys(chosen.begin(), chosen.end());
    indexable_set s(keys, 1000000);
    for (std::size_t i = 0; i < keys.size(); ++i) {
        ASSERT_EQ(s.select(i), keys[i]);
        ASSERT_EQ(s.rank(keys[i]), std::optional<std::size_t>(i));
    }
    for (int probe = 0; probe < 100000; ++probe) {
        uint64_t k = dist(rng);
        auto it = std::lower_bound(keys.begin(), keys.end(), k);
        bool present = it != keys.end() && *it == k;
        auto r = s.rank(k);
        ASSERT_EQ(r.has_value(), present);
        if (present) ASSERT_EQ(*r, static_cast<std::size_t>(it - keys.begin()));
    }
}

// select(rank(k)) == k on members, absent elsewhere, for exhaustive sweeps
// of small universes at several densities.
TEST(IndexableSet, ExhaustiveSmallUniverses) {
    std::mt19937_64 rng(9);
    for (uint64_t universe : {1ull, 2ull, 17ull, 1000ull, 65536ull}) {
        for (double density : {0.0, 0.01, 0.3, 0.9, 1.0}) {
            std::bernoulli_distribution coin(density);
            std::vector<uint64_t> keys;
            for (uint64_t k = 0; k < universe; ++k)
                if (coin(rng)) keys.push_back(k);
            indexable_set s(keys, universe);
            std::size_t next = 0;
            for (uint64_t k = 0; k < universe; ++k) {
                auto r = s.rank(k);
                if (next < keys.size() && keys[next] == k) {
                    ASSERT_TRUE(r.has_value()) << universe << " " << k;
                    ASSERT_EQ(s.select(*r), k);
                    ++next;
                } else {
                    ASSERT_FALSE(r.has_value()) << universe << " " << k;
                }
            }
        }
    }
}

TEST(IndexableSet, SaveLoad) {
    std::vector<uint64_t> keys{1, 5, 9, 200, 201, 4000};
    indexable_set s(keys, 5000);
    sdmx::word_writer w;
    s.save(w);
    sdmx::word_reader r(w.words());
    auto back = indexable_set::load(r);
    EXPECT_TRUE(r.at_end());
    for (std::size_t i = 0; i < keys.size(); ++i) EXPECT_EQ(back.select(i), keys[i]);
    EXPECT_EQ(back.rank(200), std::optional<std::size_t>(3));
    EXPECT_EQ(back.rank(202), std::nullopt);
}
