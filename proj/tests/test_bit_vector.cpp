#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "sdmx/bit_vector.hpp"
#include "sdmx/int_vector.hpp"

using sdmx::bit_builder;
using sdmx::bit_vector;

namespace {

bit_vector from_string(const std::string& bits, bool select0 = false) {
    bit_builder b;
    for (char c : bits) b.push_back(c == '1');
    return bit_vector(std::move(b), select0);
}

std::vector<bool> random_bits(std::mt19937_64& rng, std::size_t n, double density) {
    std::bernoulli_distribution coin(density);
    std::vector<bool> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = coin(rng);
    return v;
}

bit_vector from_bools(const std::vector<bool>& v) {
    bit_builder b;
    for (bool x : v) b.push_back(x);
    return bit_vector(std::move(b), true);
}

}  // namespace

TEST(BitVector, SmallExamples) {
    auto bv = from_string("1011");
    EXPECT_EQ(bv.rank1(0), 0u);
    EXPECT_EQ(bv.rank1(4), 3u);
    EXPECT_EQ(bv.select1(0), 0u);
    EXPECT_EQ(bv.select1(2), 3u);
}

TEST(BitVector, OutOfRange) {
    auto bv = from_string("1011");
    EXPECT_THROW(bv.rank1(5), std::out_of_range);
    EXPECT_THROW(bv.select1(3), std::out_of_range);
    EXPECT_THROW(bv.select0(0), std::logic_error);
    auto bv0 = from_string("1011", true);
    EXPECT_EQ(bv0.select0(0), 1u);
    EXPECT_THROW(bv0.select0(1), std::out_of_range);
}

TEST(BitVector, EmptyVector) {
    bit_vector bv;
    EXPECT_EQ(bv.size(), 0u);
    EXPECT_EQ(bv.rank1(0), 0u);
    EXPECT_THROW(bv.select1(0), std::out_of_range);
}

// Exhaustive comparison against a linear scan, across densities that stress
// sparse superblocks and the sampled select hints.
TEST(BitVector, MatchesLinearScan) {
    std::mt19937_64 rng(7);
    for (double density : {0.001, 0.05, 0.5, 0.97}) {
        for (std::size_t n : {1u, 63u, 64u, 65u, 511u, 512u, 513u, 10000u}) {
            auto bits = random_bits(rng, n, density);
            auto bv = from_bools(bits);
            std::size_t ones = 0;
            std::vector<std::size_t> one_pos, zero_pos;
            for (std::size_t i = 0; i < n; ++i) {
                ASSERT_EQ(bv.rank1(i), ones) << "n=" << n << " i=" << i;
                ASSERT_EQ(bv[i], bits[i]);
                if (bits[i]) {
                    one_pos.push_back(i);
                    ++ones;
                } else {
                    zero_pos.push_back(i);
                }
            }
            ASSERT_EQ(bv.rank1(n), ones);
            ASSERT_EQ(bv.num_ones(), ones);
            for (std::size_t k = 0; k < one_pos.size(); ++k) {
                ASSERT_EQ(bv.select1(k), one_pos[k]);
                ASSERT_EQ(bv.rank1(bv.select1(k)), k);
            }
            for (std::size_t k = 0; k < zero_pos.size(); ++k) ASSERT_EQ(bv.select0(k), zero_pos[k]);
            for (std::size_t i = 0; i <= n; ++i) {
                std::size_t expect = n;
                for (std::size_t j = i; j < n; ++j)
                    if (!bits[j]) {
                        expect = j;
                        break;
                    }
                ASSERT_EQ(bv.next_zero(i), expect);
            }
        }
    }
}

TEST(BitVector, SaveLoad) {
    std::mt19937_64 rng(3);
    auto bits = random_bits(rng, 3000, 0.3);
    auto bv = from_bools(bits);
    sdmx::word_writer w;
    bv.save(w);
    sdmx::word_reader r(w.words());
    auto back = bit_vector::load(r, true);
    ASSERT_EQ(back.size(), bv.size());
    for (std::size_t k = 0; k < bv.num_ones(); k += 17) EXPECT_EQ(back.select1(k), bv.select1(k));
}

TEST(IntVector, RoundTripAllWidths) {
    std::mt19937_64 rng(11);
    for (unsigned w = 0; w <= 64; ++w) {
        sdmx::int_vector v(300, w);
        std::vector<uint64_t> ref(300);
        for (std::size_t i = 0; i < ref.size(); ++i) {
            ref[i] = rng() & sdmx::detail::low_mask(w);
            v.set(i, ref[i]);
        }
        for (std::size_t i = 0; i < ref.size(); ++i) ASSERT_EQ(v[i], ref[i]) << "width " << w;
        EXPECT_EQ(v.payload_bits(), 300u * w);
    }
}
