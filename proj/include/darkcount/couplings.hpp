// Copyright 2026 The darkcount Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "darkcount/errors.hpp"
#include "darkcount/rng.hpp"

namespace darkcount {

using cplx = std::complex<double>;

/**
 * Qubit-photon couplings g_j, one per qubit.
 *
 * Every coupling is finite and strictly nonzero; construction rejects
 * anything else. Values are stored as complex numbers even when all phases
 * vanish, because the raising term of the Hamiltonian uses g_j*.
 */
class CouplingProfile {
public:
    explicit CouplingProfile(std::vector<cplx> values, std::string label = {})
        : values_(std::move(values)), label_(std::move(label)) {
        detail::require(!values_.empty(), "couplings: profile must contain at least one qubit");
        for (std::size_t j = 0; j < values_.size(); ++j) {
            const cplx g = values_[j];
            detail::require(std::isfinite(g.real()) && std::isfinite(g.imag()),
                            "couplings: g_" + std::to_string(j + 1) + " is not finite");
            detail::require(std::abs(g) > 0.0, "couplings: g_" + std::to_string(j + 1) + " is zero");
        }
    }

    int size() const { return static_cast<int>(values_.size()); }
    cplx operator[](std::size_t j) const { return values_[j]; }
    const std::vector<cplx>& values() const { return values_; }
    const std::string& label() const { return label_; }

    double max_abs() const {
        double m = 0.0;
        for (const cplx& g : values_) m = std::max(m, std::abs(g));
        return m;
    }
    double min_abs() const {
        double m = std::abs(values_.front());
        for (const cplx& g : values_) m = std::min(m, std::abs(g));
        return m;
    }

    /// Profile of the first n qubits.
    CouplingProfile prefix(int n) const {
        detail::require(n >= 1 && n <= size(), "couplings: prefix length out of range");
        return CouplingProfile({values_.begin(), values_.begin() + n}, label_);
    }

private:
    std::vector<cplx> values_;
    std::string label_;
};

enum class MagnitudeDistribution { LogUniform, Uniform };

inline const char* to_string(MagnitudeDistribution d) {
    return d == MagnitudeDistribution::LogUniform ? "log-uniform" : "uniform";
}

struct DisorderSpec {
    double magnitude_low = 1e-3;
    double magnitude_high = 1.0;
    bool phase_random = true;
    MagnitudeDistribution distribution = MagnitudeDistribution::LogUniform;

    void validate() const {
        detail::require(std::isfinite(magnitude_low) && std::isfinite(magnitude_high),
                        "disorder: magnitude bounds must be finite");
        detail::require(magnitude_low > 0.0, "disorder: magnitude_low must be > 0");
        detail::require(magnitude_low <= magnitude_high, "disorder: magnitude_low must be <= magnitude_high");
    }

    /// Log-uniform magnitudes over three decades [1e-3, 1] with random phases.
    static DisorderSpec log3() { return {}; }
};

inline CouplingProfile uniform_profile(int n_qubits, double g) {
    detail::require(n_qubits >= 1, "couplings: n_qubits must be >= 1");
    detail::require(std::isfinite(g) && g > 0.0, "couplings: uniform coupling must be > 0");
    return CouplingProfile(std::vector<cplx>(static_cast<std::size_t>(n_qubits), cplx(g, 0.0)), "uniform");
}

/**
 * Draws a disordered profile. For each qubit in order, one draw sets the
 * magnitude and, when phases are random, a second draw sets the phase on
 * [0, 2pi). Deterministic for a fixed (spec, seed).
 */
inline CouplingProfile sample_profile(int n_qubits, const DisorderSpec& spec, std::uint64_t seed) {
    detail::require(n_qubits >= 1, "couplings: n_qubits must be >= 1");
    spec.validate();
    Rng rng(seed);
    std::vector<cplx> values;
    values.reserve(static_cast<std::size_t>(n_qubits));
    const double lo = spec.magnitude_low;
    const double hi = spec.magnitude_high;
    for (int j = 0; j < n_qubits; ++j) {
        const double u = rng.uniform01();
        double mag = spec.distribution == MagnitudeDistribution::LogUniform ? lo * std::pow(hi / lo, u)
                                                                            : lo + (hi - lo) * u;
        mag = std::clamp(mag, lo, hi);
        if (spec.phase_random) {
            const double phase = 2.0 * std::numbers::pi * rng.uniform01();
            values.push_back(std::polar(mag, phase));
        } else {
            values.emplace_back(mag, 0.0);
        }
    }
    return CouplingProfile(std::move(values), std::string(to_string(spec.distribution)) + " seed=" +
                                                  std::to_string(seed));
}

}  // namespace darkcount
