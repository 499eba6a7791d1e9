// Copyright 2026 The darkcount Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "darkcount/counting.hpp"
#include "darkcount/couplings.hpp"
#include "darkcount/darkspace.hpp"
#include "darkcount/errors.hpp"
#include "darkcount/parallel.hpp"
#include "darkcount/rng.hpp"
#include "darkcount/sector.hpp"
#include "darkcount/state.hpp"

namespace darkcount {

/// <psi_k| P_dark |psi_k> for the product state `init`: a diagonal entry of the projector.
inline double null_emission_probability(Pattern init, const Projector& proj) {
    if (!proj.sector.contains(init))
        throw ArgumentError("protocol: initial pattern is not in the projector's (" +
                            std::to_string(proj.sector.n_qubits()) + ", " +
                            std::to_string(proj.sector.n_excited()) + ") sector");
    const auto i = static_cast<Eigen::Index>(proj.sector.index_of(init));
    return std::clamp(proj.matrix(i, i).real(), 0.0, 1.0);
}

/// <psi| P_dark |psi> / <psi|psi> for a photon-free superposition in the projector's sector.
inline double null_emission_probability(const PureState& init, const Projector& proj) {
    const Eigen::VectorXcd v = init.sector_vector(proj.sector);
    const double n2 = v.squaredNorm();
    if (!(n2 > 0.0)) throw ArgumentError("protocol: zero initial state");
    return std::clamp((v.adjoint() * proj.matrix * v)(0, 0).real() / n2, 0.0, 1.0);
}

struct ArrangementProbability {
    Pattern arrangement;
    double null_probability;
};

struct ProtocolResult {
    int n_qubits = 0;
    int n_excited = 0;
    std::vector<ArrangementProbability> per_arrangement;
    double d_of_s = 0.0;
    BigInt n_dark_expected;
    Eigen::Index nullity = 0;
    double tolerance = 0.0;
    std::string profile_label;
};

struct ProtocolOptions {
    TolerancePolicy tolerance{};
    /// Largest sector handled by the dense projector.
    std::size_t max_sector = 1716;
};

namespace detail {

inline Projector protocol_projector(int n_qubits, int n_excited, const CouplingProfile& profile,
                                    const ProtocolOptions& opts, double* tol_out = nullptr) {
    require(profile.size() == n_qubits, "protocol: profile length does not match n_qubits");
    require(n_excited >= 0 && n_excited <= n_qubits, "protocol: need 0 <= s <= N");
    if (binomial_u64(n_qubits, n_excited) > opts.max_sector)
        throw ResourceError("protocol: sector of binomial(" + std::to_string(n_qubits) + ", " +
                            std::to_string(n_excited) + ") states exceeds the dense cap");
    const DarkSubspace sub = dark_subspace(n_qubits, n_excited, profile, opts.tolerance);
    if (tol_out) *tol_out = sub.tolerance_used;
    return projector(sub);
}

}  // namespace detail

/**
 * Sums the null-emission probability over every rearrangement of s
 * excitations. The arrangements span the sector, so the sum is the trace
 * of the dark projector.
 */
inline ProtocolResult measure_d(int n_qubits, int n_excited, const CouplingProfile& profile,
                                const ProtocolOptions& opts = {}) {
    ProtocolResult res;
    res.n_qubits = n_qubits;
    res.n_excited = n_excited;
    res.profile_label = profile.label();
    const Projector proj = detail::protocol_projector(n_qubits, n_excited, profile, opts, &res.tolerance);
    res.nullity = proj.rank;
    res.per_arrangement.reserve(proj.sector.size());
    for (Pattern a : proj.sector.states()) {
        const double p = null_emission_probability(a, proj);
        res.per_arrangement.push_back({a, p});
        res.d_of_s += p;
    }
    res.n_dark_expected = ndark_formula(n_qubits, n_excited);
    return res;
}

struct ArrangementTally {
    Pattern arrangement;
    double null_probability;
    std::uint64_t null_events;
};

struct MonteCarloResult {
    int n_qubits = 0;
    int n_excited = 0;
    std::uint64_t trials_per_arrangement = 0;
    double estimated_d = 0.0;
    /// sqrt(sum_k phat_k (1 - phat_k) / T)
    double standard_error = 0.0;
    double exact_d = 0.0;
    std::uint64_t seed = 0;
    std::vector<ArrangementTally> per_arrangement;
};

/**
 * Emulates the detector record: arrangement k gets `trials` Bernoulli draws
 * with success probability <psi_k|P_dark|psi_k>, from its own stream
 * derive_seed(seed, k).
 */
inline MonteCarloResult monte_carlo_protocol(int n_qubits, int n_excited, const CouplingProfile& profile,
                                             std::uint64_t trials, std::uint64_t seed, unsigned workers = 1,
                                             const ProtocolOptions& opts = {}) {
    detail::require(trials >= 1, "protocol: trials must be >= 1");
    const Projector proj = detail::protocol_projector(n_qubits, n_excited, profile, opts);
    MonteCarloResult res;
    res.n_qubits = n_qubits;
    res.n_excited = n_excited;
    res.trials_per_arrangement = trials;
    res.seed = seed;
    res.per_arrangement.resize(proj.sector.size());
    parallel_for(proj.sector.size(), workers, [&](std::size_t k) {
        const Pattern a = proj.sector[k];
        const double p = null_emission_probability(a, proj);
        Rng rng(derive_seed(seed, k));
        std::uint64_t hits = 0;
        for (std::uint64_t t = 0; t < trials; ++t)
            if (rng.uniform01() < p) ++hits;
        res.per_arrangement[k] = {a, p, hits};
    });
    double var = 0.0;
    for (const auto& t : res.per_arrangement) {
        const double phat = static_cast<double>(t.null_events) / static_cast<double>(trials);
        res.estimated_d += phat;
        res.exact_d += t.null_probability;
        var += phat * (1.0 - phat);
    }
    res.standard_error = std::sqrt(var / static_cast<double>(trials));
    return res;
}

}  // namespace darkcount
