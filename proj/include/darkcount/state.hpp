// Copyright 2026 The darkcount Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <complex>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "darkcount/couplings.hpp"
#include "darkcount/errors.hpp"
#include "darkcount/sector.hpp"

namespace darkcount {

/// Product basis label |qubits> (x) |n_ph = photons>.
struct BasisLabel {
    Pattern qubits = 0;
    int photons = 0;

    friend auto operator<=>(const BasisLabel&, const BasisLabel&) = default;
};

/**
 * Sparse pure state over the (qubit configuration) x (photon number) basis.
 *
 * Components are kept sorted by label with no duplicates, so states with
 * few nonzero amplitudes stay cheap for any N up to 64.
 */
class PureState {
public:
    using Component = std::pair<BasisLabel, cplx>;

    PureState() = default;

    explicit PureState(std::vector<Component> components) : components_(std::move(components)) {
        std::sort(components_.begin(), components_.end(),
                  [](const Component& a, const Component& b) { return a.first < b.first; });
        std::vector<Component> merged;
        for (const Component& c : components_) {
            if (!merged.empty() && merged.back().first == c.first)
                merged.back().second += c.second;
            else
                merged.push_back(c);
        }
        components_ = std::move(merged);
    }

    static PureState product(Pattern qubits, int photons = 0) { return PureState({{{qubits, photons}, 1.0}}); }

    /// Embeds a sector amplitude vector with zero photons.
    static PureState from_sector(const SectorBasis& basis, const Eigen::VectorXcd& amplitudes) {
        detail::require(static_cast<std::size_t>(amplitudes.size()) == basis.size(),
                        "state: amplitude vector length does not match the sector size");
        std::vector<Component> comps;
        for (std::size_t i = 0; i < basis.size(); ++i)
            if (amplitudes[static_cast<Eigen::Index>(i)] != cplx(0.0))
                comps.push_back({{basis[i], 0}, amplitudes[static_cast<Eigen::Index>(i)]});
        return PureState(std::move(comps));
    }

    const std::vector<Component>& components() const { return components_; }

    cplx amplitude(const BasisLabel& label) const {
        auto it = std::lower_bound(components_.begin(), components_.end(), label,
                                   [](const Component& c, const BasisLabel& l) { return c.first < l; });
        return (it != components_.end() && it->first == label) ? it->second : cplx(0.0);
    }

    double norm() const {
        double acc = 0.0;
        for (const auto& c : components_) acc += std::norm(c.second);
        return std::sqrt(acc);
    }

    PureState normalized() const {
        const double n = norm();
        if (!(n > 0.0)) throw NumericError("state: cannot normalize a zero state");
        PureState out = *this;
        for (auto& c : out.components_) c.second /= n;
        return out;
    }

    bool photon_free() const {
        return std::all_of(components_.begin(), components_.end(),
                           [](const Component& c) { return c.first.photons == 0; });
    }

    /// Dense amplitudes over a sector; throws if any weight lies outside it.
    Eigen::VectorXcd sector_vector(const SectorBasis& basis) const {
        Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis.size()));
        for (const auto& [label, amp] : components_) {
            if (amp == cplx(0.0)) continue;
            if (label.photons != 0 || !basis.contains(label.qubits))
                throw ArgumentError("state: component outside the photon-free (" +
                                    std::to_string(basis.n_qubits()) + ", " +
                                    std::to_string(basis.n_excited()) + ") sector");
            v[static_cast<Eigen::Index>(basis.index_of(label.qubits))] = amp;
        }
        return v;
    }

private:
    std::vector<Component> components_;
};

inline cplx inner(const PureState& bra, const PureState& ket) {
    cplx acc = 0.0;
    for (const auto& [label, amp] : ket.components()) acc += std::conj(bra.amplitude(label)) * amp;
    return acc;
}

}  // namespace darkcount
