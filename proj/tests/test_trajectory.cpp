// Copyright 2026 The darkcount Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>

#include <gtest/gtest.h>

#include "darkcount/darkspace.hpp"
#include "darkcount/protocol.hpp"
#include "darkcount/trajectory.hpp"
#include "oracles/master_equation.hpp"

namespace dc = darkcount;
using dc::cplx;

namespace {

double oracle_no_click(const dc::TrajectoryConfig& c) {
    oracle::MasterEquationModel m;
    m.g = c.model.profile.values();
    m.omega = c.model.omega;
    m.kappa = c.kappa;
    m.n_photon_max = c.model.n_photon_max;
    return oracle::no_click_probability(m, c.initial, c.t_max, std::min(5e-3, 1.0 / c.kappa));
}

}  // namespace

TEST(Trajectory, GroundStateNeverClicks) {
    auto c = dc::TrajectoryConfig::lossy_limit(dc::uniform_profile(3, 1.0), 0, 100.0, 50.0, 2000, 4);
    c.model.n_photon_max = 1;
    const auto st = dc::run_trajectories(c);
    EXPECT_EQ(st.n_no_click, 2000U);
    EXPECT_EQ(st.n_click, 0U);
    EXPECT_EQ(st.p_no_click, 1.0);
    EXPECT_EQ(st.survival_probability, 1.0);
}

TEST(Trajectory, SingleExcitationPairMatchesMasterEquation) {
    const auto c = dc::TrajectoryConfig::lossy_limit(dc::uniform_profile(2, 1.0), 0b01, 100.0, 50.0, 10000, 1);
    const auto st = dc::run_trajectories(c);
    EXPECT_EQ(st.n_click + st.n_no_click, st.n_trajectories);
    EXPECT_NEAR(st.p_no_click, 0.5, 0.05);
    const double me = oracle_no_click(c);
    EXPECT_LE(std::abs(st.p_no_click - me), 4 * st.standard_error);
    EXPECT_NEAR(st.survival_probability, me, 1e-4);
}

TEST(Trajectory, DoublyExcitedPairMatchesMasterEquation) {
    const auto c = dc::TrajectoryConfig::lossy_limit(dc::uniform_profile(2, 1.0), 0b11, 100.0, 50.0, 10000, 2);
    const auto st = dc::run_trajectories(c);
    const double me = oracle_no_click(c);
    EXPECT_NEAR(st.survival_probability, me, 1e-4);
    EXPECT_LE(std::abs(st.p_no_click - me), std::max(4 * st.standard_error, 1e-3));
    // No dark state exists here; the residual is the slow bright-mode tail.
    EXPECT_LT(st.p_no_click, 0.03);
}

TEST(Trajectory, DisorderedPairMatchesMasterEquation) {
    const dc::CouplingProfile p({cplx(0.6, 0.2), cplx(-0.3, 0.9)});
    const auto c = dc::TrajectoryConfig::lossy_limit(p, 0b10, 100.0, 50.0, 10000, 8);
    const auto st = dc::run_trajectories(c);
    EXPECT_NEAR(st.survival_probability, oracle_no_click(c), 1e-4);
}

TEST(Trajectory, KappaSweepTracksMasterEquation) {
    auto base = dc::TrajectoryConfig::lossy_limit(dc::uniform_profile(2, 1.0), 0b01, 10.0, 50.0, 10000, 1);
    const auto sweep = dc::no_click_vs_kappa(base, {10.0, 100.0, 1000.0});
    ASSERT_EQ(sweep.size(), 3U);
    double prev_gap = -1.0;
    for (const auto& pt : sweep) {
        auto c = base;
        c.kappa = pt.kappa;
        EXPECT_NEAR(pt.stats.survival_probability, oracle_no_click(c), 1e-4) << "kappa " << pt.kappa;
        EXPECT_LE(std::abs(pt.stats.p_no_click - pt.stats.survival_probability), 4 * pt.stats.standard_error + 1e-12);
        // At a fixed waiting time the bright tail decays at ~4 g^2 / kappa, so
        // the distance to the dark overlap grows with kappa.
        const double gap = pt.stats.survival_probability - 0.5;
        EXPECT_GE(gap, -1e-9);
        EXPECT_GT(gap, prev_gap);
        prev_gap = gap;
    }
}

TEST(Trajectory, DarkSuperpositionNeverClicks) {
    const auto p = dc::sample_profile(3, dc::DisorderSpec::log3(), 6);
    const auto d = dc::single_excitation_dark_states(p).front();
    auto base = dc::TrajectoryConfig::lossy_limit(p, 0b001, 10.0, 50.0, 500, 3);
    base.initial_state = d;
    for (const auto& pt : dc::no_click_vs_kappa(base, {10.0 * p.max_abs(), 100.0 * p.max_abs()})) {
        EXPECT_EQ(pt.stats.n_no_click, 500U);
        EXPECT_NEAR(pt.stats.survival_probability, 1.0, 1e-7);
    }
}

TEST(Trajectory, LossyLimitApproachesProjectorForLongWaits) {
    // With a waiting time long against kappa / g^2 the no-click probability
    // reaches the dark-space overlap for every arrangement.
    const auto p = dc::uniform_profile(3, 1.0);
    for (dc::Pattern init : {0b001ULL, 0b011ULL}) {
        const int s = std::popcount(init);
        const auto proj = dc::projector(dc::dark_subspace(3, s, p));
        const auto c = dc::TrajectoryConfig::lossy_limit(p, init, 100.0, 500.0, 10000, 12);
        const auto st = dc::run_trajectories(c);
        EXPECT_LE(std::abs(st.p_no_click - dc::null_emission_probability(init, proj)),
                  std::max(0.03, 4 * st.standard_error));
    }
}

TEST(Trajectory, FirstClickSummary) {
    const auto c = dc::TrajectoryConfig::lossy_limit(dc::uniform_profile(2, 1.0), 0b11, 100.0, 50.0, 4000, 3);
    const auto st = dc::run_trajectories(c);
    EXPECT_EQ(st.first_click_times.count, st.n_click);
    EXPECT_GE(st.first_click_times.min, 0.0);
    EXPECT_LE(st.first_click_times.max, c.t_max);
    EXPECT_LE(st.first_click_times.min, st.first_click_times.median);
    EXPECT_LE(st.first_click_times.median, st.first_click_times.max);
    std::uint64_t total = 0;
    for (auto h : st.first_click_histogram) total += h;
    EXPECT_EQ(total, st.n_click);
}

TEST(Trajectory, DeterministicAndWorkerIndependent) {
    auto c = dc::TrajectoryConfig::lossy_limit(dc::uniform_profile(2, 1.0), 0b01, 100.0, 50.0, 3000, 17);
    const auto a = dc::run_trajectories(c);
    c.workers = 3;
    const auto b = dc::run_trajectories(c);
    EXPECT_EQ(a.n_no_click, b.n_no_click);
    EXPECT_EQ(a.first_click_times.mean, b.first_click_times.mean);
    EXPECT_EQ(a.first_click_histogram, b.first_click_histogram);
}

TEST(Trajectory, Errors) {
    auto c = dc::TrajectoryConfig::lossy_limit(dc::uniform_profile(2, 1.0), 0b11, 100.0, 50.0, 100, 1);
    auto coarse = c;
    coarse.dt *= 10;
    EXPECT_THROW(dc::run_trajectories(coarse), dc::ArgumentError);
    auto strict = c;
    strict.norm_error_bound = 1e-30;
    EXPECT_THROW(dc::run_trajectories(strict), dc::NumericError);
    auto truncated = c;
    truncated.model.n_photon_max = 1;
    EXPECT_THROW(dc::run_trajectories(truncated), dc::ArgumentError);
    auto short_wait = c;
    short_wait.t_max = 10.0;
    EXPECT_THROW(dc::run_trajectories(short_wait), dc::ArgumentError);
    auto outside = c;
    outside.initial = 0b100;
    EXPECT_THROW(dc::run_trajectories(outside), dc::ArgumentError);
    auto mixed = c;
    mixed.initial_state = dc::PureState({{{0b01, 0}, 1.0}, {{0b11, 0}, 1.0}});
    EXPECT_THROW(dc::run_trajectories(mixed), dc::ArgumentError);
}
