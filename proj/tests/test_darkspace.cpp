// Copyright 2026 The darkcount Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "darkcount/counting.hpp"
#include "darkcount/darkspace.hpp"
#include "oracles/complex_elimination.hpp"
#include "oracles/rational_rank.hpp"

namespace dc = darkcount;
using dc::cplx;

namespace {

long expected_rank(int n, int s) {
    if (s == 0) return 0;
    return static_cast<long>(2 * s <= n ? dc::binomial_u64(n, s - 1) : dc::binomial_u64(n, s));
}

std::vector<std::vector<oracle::cld>> to_long_double(const Eigen::MatrixXcd& m) {
    std::vector<std::vector<oracle::cld>> out(static_cast<std::size_t>(m.rows()));
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            out[static_cast<std::size_t>(r)].emplace_back(m(r, c).real(), m(r, c).imag());
    return out;
}

}  // namespace

TEST(Darkspace, SingleExcitationNullity) {
    for (int n = 1; n <= 12; ++n) {
        const auto p = dc::sample_profile(n, dc::DisorderSpec::log3(), static_cast<std::uint64_t>(n));
        EXPECT_EQ(dc::nullity_numeric(dc::build_lowering_block(n, 1, p)), n - 1);
    }
}

TEST(Darkspace, SmallSectorNullities) {
    const auto p = dc::sample_profile(4, dc::DisorderSpec::log3(), 21);
    EXPECT_EQ(dc::nullity_numeric(dc::build_lowering_block(4, 3, p)), 0);
    EXPECT_EQ(dc::nullity_numeric(dc::build_lowering_block(4, 2, p)), 2);
    EXPECT_EQ(dc::sector_nullity(4, 0, p), 1);
    EXPECT_EQ(dc::sector_nullity(4, 4, p), 0);
}

TEST(Darkspace, NullBasisTwoQubits) {
    {
        const auto sub = dc::dark_subspace(2, 1, dc::uniform_profile(2, 1.0));
        ASSERT_EQ(sub.nullity, 1);
        const Eigen::Vector2cd singlet(-1 / std::sqrt(2.0), 1 / std::sqrt(2.0));
        EXPECT_NEAR(std::abs(singlet.dot(sub.basis.col(0))), 1.0, 1e-14);
    }
    {
        const auto sub = dc::dark_subspace(2, 1, dc::CouplingProfile({1.0, 2.0}));
        ASSERT_EQ(sub.nullity, 1);
        const Eigen::Vector2cd d(-2 / std::sqrt(5.0), 1 / std::sqrt(5.0));
        EXPECT_NEAR(std::abs(d.dot(sub.basis.col(0))), 1.0, 1e-14);
    }
}

TEST(Darkspace, NullBasisIsOrthonormalAndAnnihilated) {
    const auto p = dc::sample_profile(4, dc::DisorderSpec::log3(), 5);
    const auto op = dc::build_lowering_block(4, 2, p);
    const auto sub = dc::null_basis(op);
    ASSERT_EQ(sub.nullity, 2);
    EXPECT_LT((sub.basis.adjoint() * sub.basis - Eigen::MatrixXcd::Identity(2, 2)).norm(), 1e-13);
    EXPECT_LT((op.dense() * sub.basis).norm(), 1e-13 * op.scale());
    const dc::TotalSz sz(4);
    for (const auto& st : sub.states()) EXPECT_TRUE(dc::verify_dark(st, op, sz).dark);
}

TEST(Darkspace, Projectors) {
    const auto empty = dc::projector(dc::dark_subspace(4, 3, dc::uniform_profile(4, 1.0)));
    EXPECT_EQ(empty.rank, 0);
    EXPECT_EQ(empty.trace(), 0.0);
    EXPECT_EQ(empty.matrix.norm(), 0.0);

    const auto singlet = dc::projector(dc::dark_subspace(2, 1, dc::uniform_profile(2, 1.0)));
    EXPECT_NEAR(singlet.matrix(0, 0).real(), 0.5, 1e-14);
    EXPECT_NEAR(singlet.matrix(1, 1).real(), 0.5, 1e-14);
    EXPECT_LT((singlet.matrix * singlet.matrix - singlet.matrix).norm(), 1e-14);

    for (int n = 2; n <= 8; ++n)
        for (int s = 0; s <= n; ++s) {
            const auto p = dc::sample_profile(n, dc::DisorderSpec::log3(), static_cast<std::uint64_t>(10 * n + s));
            const auto proj = dc::projector(dc::dark_subspace(n, s, p));
            EXPECT_NEAR(proj.trace(), static_cast<double>(proj.rank), 1e-9);
        }
}

TEST(Darkspace, VerifyDarkReports) {
    const auto p = dc::uniform_profile(2, 1.0);
    const auto op = dc::build_lowering_block(2, 1, p);
    const dc::TotalSz sz(2);
    const dc::PureState singlet({{{0b01, 0}, -1.0}, {{0b10, 0}, 1.0}});
    EXPECT_TRUE(dc::verify_dark(singlet, op, sz).dark);
    const auto bright = dc::verify_dark(dc::PureState::product(0b01), op, sz);
    EXPECT_FALSE(bright.dark);
    EXPECT_GT(bright.residual_norm, 0.5);
    EXPECT_THROW(dc::verify_dark(dc::PureState::product(0b11), op, sz), dc::ArgumentError);
    EXPECT_THROW(dc::verify_dark(singlet, op, dc::TotalSz(3)), dc::ArgumentError);

    const auto p6 = dc::sample_profile(6, dc::DisorderSpec::log3(), 17);
    const auto op6 = dc::build_lowering_block(6, 1, p6);
    for (const auto& d : dc::single_excitation_dark_states(p6))
        EXPECT_TRUE(dc::verify_dark(d, op6, dc::TotalSz(6)).dark);
}

TEST(Darkspace, AbsoluteThresholdOverride) {
    dc::TolerancePolicy pol;
    pol.absolute_threshold = 1e6;
    const auto op = dc::build_lowering_block(4, 2, dc::uniform_profile(4, 1.0));
    EXPECT_EQ(dc::nullity_numeric(op, pol), 6);
    EXPECT_EQ(dc::rank_report(op).rank, 4);
}

// Exact rational elimination with integer couplings, compared against the
// numeric rank of the same integer profile.
TEST(DarkspaceOracle, RationalRankAgreesWithNumericRank) {
    for (int n = 1; n <= 8; ++n)
        for (int s = 1; s <= n; ++s) {
            std::vector<long> g;
            std::vector<cplx> gc;
            for (int j = 0; j < n; ++j) {
                const long v = (j % 2 ? -1 : 1) * (3 + 7 * j + j * j);
                g.push_back(v);
                gc.emplace_back(static_cast<double>(v), 0.0);
            }
            const auto exact = oracle::rational_rank(oracle::lowering_matrix(n, s, g));
            const auto numeric = dc::rank_report(dc::build_lowering_block(n, s, dc::CouplingProfile(gc))).rank;
            EXPECT_EQ(static_cast<long>(exact), numeric) << "N=" << n << " s=" << s;
            EXPECT_EQ(static_cast<long>(exact), expected_rank(n, s)) << "N=" << n << " s=" << s;
        }
}

TEST(DarkspaceOracle, CompletePivotRankAgreesWithSvdRank) {
    for (int n = 2; n <= 9; ++n)
        for (int s = 1; s <= n; ++s) {
            const auto p = dc::sample_profile(n, dc::DisorderSpec::log3(), static_cast<std::uint64_t>(100 + n * 13 + s));
            const auto op = dc::build_lowering_block(n, s, p);
            const auto ld = oracle::complete_pivot_rank(to_long_double(op.dense()), 1e-14L);
            EXPECT_EQ(static_cast<long>(ld), dc::rank_report(op).rank) << "N=" << n << " s=" << s;
        }
}

TEST(DarkspaceOracle, RankIndependentOfCouplingValues) {
    // Wildly different magnitudes and phases give the same rank pattern.
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        dc::DisorderSpec spec;
        spec.magnitude_low = 1e-2;
        const auto p = dc::sample_profile(7, spec, seed);
        for (int s = 1; s <= 7; ++s)
            EXPECT_EQ(dc::rank_report(dc::build_lowering_block(7, s, p)).rank, expected_rank(7, s));
    }
}
