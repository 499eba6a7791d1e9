// Copyright 2026 The darkcount Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "darkcount/couplings.hpp"
#include "darkcount/errors.hpp"
#include "darkcount/operators.hpp"
#include "darkcount/parallel.hpp"
#include "darkcount/rng.hpp"
#include "darkcount/state.hpp"

namespace darkcount {

struct TrajectoryConfig {
    HamiltonianModel model;
    double kappa = 1.0;
    double t_max = 1.0;
    double dt = 1e-3;
    std::uint64_t n_trajectories = 10'000;
    std::uint64_t seed = 0;
    /// Product initial state with zero photons.
    Pattern initial = 0;
    /// Overrides `initial` with a superposition inside one excitation block.
    std::optional<PureState> initial_state = std::nullopt;
    /// Required min|g| * t_max: the waiting time before a run counts as no-click.
    double waiting_threshold = 50.0;
    double norm_error_bound = 1e-8;
    int histogram_bins = 20;
    unsigned workers = 1;

    /// Largest step allowed for the given rates: 0.01 / max(kappa, max|g|).
    double max_dt() const { return 0.01 / std::max(kappa, model.profile.max_abs()); }

    int excitation_count() const {
        if (!initial_state) return std::popcount(initial);
        const auto& comps = initial_state->components();
        if (comps.empty()) throw ArgumentError("trajectory: empty initial state");
        return comps.front().first.photons + std::popcount(comps.front().first.qubits);
    }

    void validate() const {
        model.validate();
        detail::require(kappa > 0.0 && std::isfinite(kappa), "trajectory: kappa must be > 0");
        detail::require(t_max > 0.0 && std::isfinite(t_max), "trajectory: t_max must be > 0");
        detail::require(dt > 0.0, "trajectory: dt must be > 0");
        detail::require(dt <= max_dt() * (1.0 + 1e-12),
                        "trajectory: dt exceeds 0.01 / max(kappa, max|g|) = " + std::to_string(max_dt()));
        detail::require(n_trajectories >= 1, "trajectory: need at least one trajectory");
        detail::require(histogram_bins >= 1, "trajectory: histogram needs at least one bin");
        detail::require(model.profile.min_abs() * t_max >= waiting_threshold * (1.0 - 1e-12),
                        "trajectory: min|g| * t_max is below the waiting threshold " +
                            std::to_string(waiting_threshold));
        if (initial_state) {
            const int exc = excitation_count();
            for (const auto& [label, amp] : initial_state->components()) {
                detail::require((label.qubits & ~low_mask(model.n_qubits)) == 0,
                                "trajectory: initial state addresses qubits beyond N");
                detail::require(label.photons + std::popcount(label.qubits) == exc,
                                "trajectory: initial superposition mixes excitation numbers");
                detail::require(label.photons <= model.n_photon_max, "trajectory: initial photons exceed truncation");
            }
        } else {
            detail::require((initial & ~low_mask(model.n_qubits)) == 0,
                            "trajectory: initial pattern addresses qubits beyond N");
        }
        if (model.n_photon_max < excitation_count())
            throw ArgumentError("trajectory: photon truncation " + std::to_string(model.n_photon_max) +
                                " is below the initial excitation count " + std::to_string(excitation_count()));
    }

    /**
     * Lossy-cavity defaults: kappa = kappa_ratio * max|g|, t_max =
     * waiting_threshold / min|g|, dt at its bound and photon truncation
     * equal to the excitation count.
     */
    static TrajectoryConfig lossy_limit(const CouplingProfile& profile, Pattern initial, double kappa_ratio = 100.0,
                                        double waiting_threshold = 50.0, std::uint64_t n_trajectories = 10'000,
                                        std::uint64_t seed = 0) {
        detail::require(kappa_ratio > 0.0, "trajectory: kappa ratio must be > 0");
        TrajectoryConfig c{.model = HamiltonianModel{profile.size(), profile, 1.0, std::popcount(initial)}};
        c.kappa = kappa_ratio * profile.max_abs();
        c.t_max = waiting_threshold / profile.min_abs();
        c.waiting_threshold = waiting_threshold;
        c.dt = c.max_dt();
        c.n_trajectories = n_trajectories;
        c.seed = seed;
        c.initial = initial;
        return c;
    }
};

/**
 * Pre-jump evolution of one initial state under H - (i/2) kappa a^dag a,
 * restricted to its excitation block. Every jump is a detector click that
 * ends the trajectory, so all trajectories share this evolution up to
 * their first jump and differ only in the threshold drawn for it.
 */
class NoJumpEvolution {
public:
    explicit NoJumpEvolution(const TrajectoryConfig& config) {
        config.validate();
        const HamiltonianModel& model = config.model;
        const int exc = config.excitation_count();
        for (Eigen::Index i = 0; i < model.dimension(); ++i) {
            const BasisLabel l = model.label(i);
            if (l.photons + std::popcount(l.qubits) == exc) block_.push_back(i);
        }
        const auto dim = static_cast<Eigen::Index>(block_.size());
        const Eigen::MatrixXcd h_full = Eigen::MatrixXcd(build_hamiltonian(model));
        Eigen::MatrixXcd h_eff(dim, dim);
        photons_.resize(dim);
        for (Eigen::Index a = 0; a < dim; ++a) {
            photons_[a] = model.label(block_[static_cast<std::size_t>(a)]).photons;
            for (Eigen::Index b = 0; b < dim; ++b)
                h_eff(a, b) = h_full(block_[static_cast<std::size_t>(a)], block_[static_cast<std::size_t>(b)]);
            // omega (n + S^z) is constant on the block; dropping it only removes a global phase.
            h_eff(a, a) -= cplx(model.omega * (exc - 0.5 * model.n_qubits), 0.5 * config.kappa * photons_[a]);
        }

        psi0_ = Eigen::VectorXcd::Zero(dim);
        const PureState init = config.initial_state ? config.initial_state->normalized()
                                                    : PureState::product(config.initial, 0);
        for (const auto& [label, amp] : init.components()) {
            const auto it = std::find(block_.begin(), block_.end(), model.index(label.qubits, label.photons));
            psi0_[it - block_.begin()] = amp;
        }

        steps_ = static_cast<std::size_t>(std::ceil(config.t_max / config.dt - 1e-9));
        dt_ = config.t_max / static_cast<double>(steps_);
        // Classical RK4 on a constant linear system is one multiplication by
        // the degree-4 Taylor polynomial of the exact step propagator.
        const Eigen::MatrixXcd a = cplx(0.0, -dt_) * h_eff;
        const Eigen::MatrixXcd a2 = a * a;
        const Eigen::MatrixXcd a3 = a2 * a;
        step_ = Eigen::MatrixXcd::Identity(dim, dim) + a + a2 / 2.0 + a3 / 6.0 + a3 * a / 24.0;

        norm2_.resize(steps_ + 1);
        Eigen::VectorXcd psi = psi0_;
        norm2_[0] = psi.squaredNorm();
        double photons_prev = photon_weight(psi);
        for (std::size_t k = 1; k <= steps_; ++k) {
            psi = step_ * psi;
            norm2_[k] = psi.squaredNorm();
            const double photons_now = photon_weight(psi);
            // d|psi|^2/dt = -kappa <a^dag a>; trapezoid estimate of the step's loss.
            const double expected = -config.kappa * dt_ * 0.5 * (photons_prev + photons_now);
            const double err = std::abs((norm2_[k] - norm2_[k - 1]) - expected);
            max_norm_error_ = std::max(max_norm_error_, err);
            if (norm2_[k] > norm2_[k - 1] + 1e-14) monotone_ = false;
            photons_prev = photons_now;
        }
        if (max_norm_error_ > config.norm_error_bound)
            throw NumericError("trajectory: per-step norm error " + std::to_string(max_norm_error_) +
                               " exceeds bound " + std::to_string(config.norm_error_bound) + "; reduce dt");
        final_state_ = psi;
    }

    std::size_t steps() const { return steps_; }
    double dt() const { return dt_; }
    const std::vector<double>& norm2() const { return norm2_; }
    double survival() const { return norm2_.back(); }
    double max_norm_error() const { return max_norm_error_; }
    bool monotone() const { return monotone_; }
    /// Unnormalized pre-jump state at t_max over the excitation block.
    const Eigen::VectorXcd& final_state() const { return final_state_; }
    const std::vector<Eigen::Index>& block() const { return block_; }

    /// First time the squared norm reaches `threshold`; nullopt if it never does.
    std::optional<double> first_crossing(double threshold) const {
        if (norm2_.back() > threshold) return std::nullopt;
        const auto it = std::partition_point(norm2_.begin(), norm2_.end(), [&](double v) { return v > threshold; });
        const auto k = static_cast<std::size_t>(it - norm2_.begin());
        if (k == 0) return 0.0;
        const double hi = norm2_[k - 1];
        const double lo = norm2_[k];
        const double frac = hi > lo ? (hi - threshold) / (hi - lo) : 1.0;
        return dt_ * (static_cast<double>(k - 1) + frac);
    }

private:
    double photon_weight(const Eigen::VectorXcd& psi) const {
        double acc = 0.0;
        for (Eigen::Index i = 0; i < psi.size(); ++i) acc += photons_[i] * std::norm(psi[i]);
        return acc;
    }

    std::vector<Eigen::Index> block_;
    Eigen::VectorXd photons_;
    Eigen::VectorXcd psi0_;
    Eigen::MatrixXcd step_;
    Eigen::VectorXcd final_state_;
    std::vector<double> norm2_;
    std::size_t steps_ = 0;
    double dt_ = 0.0;
    double max_norm_error_ = 0.0;
    bool monotone_ = true;
};

struct ClickTimeSummary {
    std::uint64_t count = 0;
    double mean = 0.0;
    double min = 0.0;
    double max = 0.0;
    double median = 0.0;
};

struct ClickStatistics {
    std::uint64_t n_trajectories = 0;
    std::uint64_t n_no_click = 0;
    std::uint64_t n_click = 0;
    double p_no_click = 0.0;
    /// Binomial standard error sqrt(p (1 - p) / n).
    double standard_error = 0.0;
    /// Squared norm of the pre-jump state at t_max: the exact no-click probability of the model.
    double survival_probability = 0.0;
    double max_norm_error = 0.0;
    ClickTimeSummary first_click_times;
    double histogram_bin_width = 0.0;
    std::vector<std::uint64_t> first_click_histogram;
};

/// Quantum-jump sampling by the norm-threshold method; trajectory i uses stream derive_seed(seed, i).
inline ClickStatistics run_trajectories(const TrajectoryConfig& config) {
    const NoJumpEvolution evo(config);
    const std::size_t n = config.n_trajectories;
    std::vector<double> click_time(n, -1.0);
    parallel_for(n, config.workers, [&](std::size_t i) {
        Rng rng(derive_seed(config.seed, i));
        const double r = rng.uniform01();
        if (auto t = evo.first_crossing(r)) click_time[i] = *t;
    });

    ClickStatistics st;
    st.n_trajectories = n;
    st.survival_probability = evo.survival();
    st.max_norm_error = evo.max_norm_error();
    st.first_click_histogram.assign(static_cast<std::size_t>(config.histogram_bins), 0);
    st.histogram_bin_width = config.t_max / config.histogram_bins;
    std::vector<double> times;
    for (double t : click_time) {
        if (t < 0.0) {
            ++st.n_no_click;
            continue;
        }
        times.push_back(t);
        const auto bin = std::min<std::size_t>(static_cast<std::size_t>(t / st.histogram_bin_width),
                                               st.first_click_histogram.size() - 1);
        ++st.first_click_histogram[bin];
    }
    st.n_click = times.size();
    st.p_no_click = static_cast<double>(st.n_no_click) / static_cast<double>(n);
    st.standard_error = std::sqrt(st.p_no_click * (1.0 - st.p_no_click) / static_cast<double>(n));
    if (!times.empty()) {
        std::sort(times.begin(), times.end());
        double sum = 0.0;
        for (double t : times) sum += t;
        st.first_click_times = {times.size(), sum / static_cast<double>(times.size()), times.front(), times.back(),
                                times[times.size() / 2]};
    }
    return st;
}

struct KappaPoint {
    double kappa;
    ClickStatistics stats;
};

/// Same seed at every kappa; dt shrinks to stay within its bound.
inline std::vector<KappaPoint> no_click_vs_kappa(const TrajectoryConfig& base, const std::vector<double>& kappa_list) {
    std::vector<KappaPoint> out;
    for (double kappa : kappa_list) {
        TrajectoryConfig c = base;
        c.kappa = kappa;
        c.dt = std::min(base.dt, c.max_dt());
        out.push_back({kappa, run_trajectories(c)});
    }
    return out;
}

}  // namespace darkcount
