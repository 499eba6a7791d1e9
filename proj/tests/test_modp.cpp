// Copyright 2026 The darkcount Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "darkcount/modp.hpp"
#include "darkcount/sector.hpp"

namespace dc = darkcount;
namespace mp = darkcount::modp;

namespace {

std::uint64_t law(int n, int s) {
    if (s == 0) return 0;
    return 2 * s <= n ? dc::binomial_u64(n, s - 1) : dc::binomial_u64(n, s);
}

}  // namespace

TEST(Modp, FieldArithmetic) {
    using F = mp::PrimaryField;
    EXPECT_EQ(F::p, (std::uint64_t{1} << 62) - 57);
    EXPECT_EQ(mp::SecondaryField::p, (std::uint64_t{1} << 61) - 1);
    for (const std::uint64_t a : std::vector<std::uint64_t>{1, 2, 12345678901234ULL, F::p - 1}) {
        EXPECT_EQ(F::mul(a, F::inv(a)), 1U);
        // Fermat's little theorem.
        EXPECT_EQ(F::pow(a, F::p - 1), 1U);
    }
    EXPECT_EQ(F::add(F::p - 1, 1), 0U);
    EXPECT_EQ(F::sub(0, 1), F::p - 1);
    EXPECT_THROW(F::inv(0), dc::NumericError);
}

TEST(Modp, SmallSectors) {
    for (std::uint64_t seed : {1ULL, 2ULL, 77ULL}) {
        EXPECT_EQ(mp::rank_exact_modp(4, 2, seed).rank, 4U);
        EXPECT_EQ(mp::rank_exact_modp(4, 3, seed).rank, 4U);
        EXPECT_EQ(mp::rank_exact_modp(4, 2, seed).nullity, 2U);
    }
    const auto r0 = mp::rank_exact_modp(5, 0, 1);
    EXPECT_EQ(r0.rank, 0U);
    EXPECT_EQ(r0.nullity, 1U);
}

TEST(Modp, RecursionMatchesDirectElimination) {
    // A tiny dense cap forces every recursion branch.
    mp::ExactRankOptions opts;
    opts.dense_entry_cap = 16;
    opts.dense_square_cap = 4;
    for (auto prime : {mp::Prime::Primary, mp::Prime::Secondary})
        for (int n = 1; n <= 12; ++n)
            for (int s = 0; s <= n; ++s) {
                const auto rec = mp::rank_exact_modp(n, s, 5, prime, opts);
                const auto direct = mp::rank_direct_modp(n, s, 5, prime);
                ASSERT_EQ(rec.rank, direct) << "N=" << n << " s=" << s;
                ASSERT_EQ(rec.rank, law(n, s)) << "N=" << n << " s=" << s;
                EXPECT_EQ(rec.prime, mp::prime_value(prime));
            }
}

TEST(Modp, BothPrimesAgreeOnMidSizeSectors) {
    for (int n = 13; n <= 15; ++n)
        for (int s : {n / 2, (n + 1) / 2, (n + 3) / 2}) {
            const auto a = mp::rank_exact_modp(n, s, 3, mp::Prime::Primary);
            const auto b = mp::rank_exact_modp(n, s, 3, mp::Prime::Secondary);
            EXPECT_EQ(a.rank, b.rank);
            EXPECT_EQ(a.rank, law(n, s)) << "N=" << n << " s=" << s;
            EXPECT_EQ(a.certificate, mp::Certificate::Deterministic);
        }
}

TEST(Modp, SquareHardCase) {
    // (2k-1, k) sectors are square and go through the Krylov path.
    const auto r = mp::rank_exact_modp(15, 8, 9);
    EXPECT_EQ(r.rank, dc::binomial_u64(15, 8));
    EXPECT_EQ(r.nullity, 0U);
}

TEST(Modp, DenseRankAndBerlekampMassey) {
    using F = mp::PrimaryField;
    std::vector<std::uint64_t> m = {1, 2, 3, 2, 4, 6, 1, 1, 1};
    EXPECT_EQ(mp::dense_rank<F>(m, 3, 3), 2U);
    // Fibonacci: minimal polynomial of degree 2.
    std::vector<std::uint64_t> fib = {1, 1};
    for (int i = 0; i < 20; ++i) fib.push_back(F::add(fib[fib.size() - 1], fib[fib.size() - 2]));
    EXPECT_EQ(mp::berlekamp_massey<F>(fib).size(), 3U);
}

TEST(Modp, Errors) {
    EXPECT_THROW(mp::rank_exact_modp(4, 5, 1), dc::ArgumentError);
    EXPECT_THROW(mp::rank_exact_modp(0, 0, 1), dc::ArgumentError);
    EXPECT_THROW(mp::rank_exact_modp(30, 15, 1), dc::ResourceError);
    EXPECT_THROW(mp::rank_direct_modp(16, 8, 1), dc::ResourceError);
}
