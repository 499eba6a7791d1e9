// Copyright 2026 The darkcount Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <bit>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "darkcount/couplings.hpp"
#include "darkcount/errors.hpp"
#include "darkcount/sector.hpp"
#include "darkcount/state.hpp"

namespace darkcount {

using SparseMatrixC = Eigen::SparseMatrix<cplx, Eigen::ColMajor>;

/**
 * Matrix of sum_i g_i S_i^- from the s-sector (columns) to the (s-1)-sector
 * (rows), both in canonical order. Column-major sparse: column j holds one
 * entry per excited qubit of source state j.
 */
struct SectorOperator {
    SectorBasis source;
    SectorBasis target;
    SparseMatrixC entries;

    int n_qubits() const { return source.n_qubits(); }
    int n_excited() const { return source.n_excited(); }
    Eigen::Index rows() const { return entries.rows(); }
    Eigen::Index cols() const { return entries.cols(); }

    /// Largest entry magnitude; the natural scale for residual checks.
    double scale() const {
        double m = 0.0;
        for (int k = 0; k < entries.outerSize(); ++k)
            for (SparseMatrixC::InnerIterator it(entries, k); it; ++it) m = std::max(m, std::abs(it.value()));
        return m;
    }

    Eigen::VectorXcd apply(const Eigen::VectorXcd& v) const {
        detail::require(v.size() == cols(), "operators: vector length does not match the source sector");
        return entries * v;
    }

    Eigen::MatrixXcd dense() const { return Eigen::MatrixXcd(entries); }
};

inline SectorOperator build_lowering_block(int n_qubits, int n_excited, const CouplingProfile& profile,
                                           const SectorLimits& limits = {}) {
    detail::require(n_excited >= 1, "operators: lowering block needs n_excited >= 1 (nothing to lower at s = 0)");
    detail::require(n_excited <= n_qubits, "operators: n_excited exceeds n_qubits");
    detail::require(profile.size() == n_qubits, "operators: profile has " + std::to_string(profile.size()) +
                                                    " couplings but the system has " +
                                                    std::to_string(n_qubits) + " qubits");
    SectorBasis source(n_qubits, n_excited, limits);
    SectorBasis target(n_qubits, n_excited - 1, limits);
    SparseMatrixC m(static_cast<Eigen::Index>(target.size()), static_cast<Eigen::Index>(source.size()));
    m.reserve(Eigen::VectorXi::Constant(static_cast<Eigen::Index>(source.size()), n_excited));
    for (std::size_t j = 0; j < source.size(); ++j) {
        Pattern bits = source[j];
        while (bits) {
            const int i = std::countr_zero(bits);
            bits &= bits - 1;
            const Pattern lowered = source[j] ^ (Pattern{1} << i);
            m.insert(static_cast<Eigen::Index>(SectorBasis::rank_unchecked(lowered)), static_cast<Eigen::Index>(j)) =
                profile[static_cast<std::size_t>(i)];
        }
    }
    m.makeCompressed();
    return {std::move(source), std::move(target), std::move(m)};
}

/// sum_i g_i* S_i^+ from the (s-1)-sector to the s-sector; the adjoint of the lowering block.
inline SparseMatrixC build_raising_block(int n_qubits, int n_excited, const CouplingProfile& profile,
                                         const SectorLimits& limits = {}) {
    detail::require(n_excited >= 1 && n_excited <= n_qubits, "operators: raising block needs 1 <= s <= N");
    detail::require(profile.size() == n_qubits, "operators: profile length does not match n_qubits");
    const SectorBasis from(n_qubits, n_excited - 1, limits);
    const SectorBasis to(n_qubits, n_excited, limits);
    std::vector<Eigen::Triplet<cplx>> trips;
    trips.reserve(from.size() * static_cast<std::size_t>(n_qubits - n_excited + 1));
    for (std::size_t k = 0; k < from.size(); ++k) {
        Pattern holes = ~from[k] & low_mask(n_qubits);
        while (holes) {
            const int i = std::countr_zero(holes);
            holes &= holes - 1;
            const Pattern raised = from[k] | (Pattern{1} << i);
            trips.emplace_back(static_cast<int>(SectorBasis::rank_unchecked(raised)), static_cast<int>(k),
                               std::conj(profile[static_cast<std::size_t>(i)]));
        }
    }
    SparseMatrixC m(static_cast<Eigen::Index>(to.size()), static_cast<Eigen::Index>(from.size()));
    m.setFromTriplets(trips.begin(), trips.end());
    return m;
}

/// Applies sum_i g_i S_i^- to a sparse state without building any sector.
inline PureState apply_lowering(const CouplingProfile& profile, const PureState& state) {
    std::vector<PureState::Component> out;
    const Pattern valid = low_mask(profile.size());
    for (const auto& [label, amp] : state.components()) {
        if (label.qubits & ~valid) throw ArgumentError("operators: state addresses qubits beyond the profile");
        Pattern bits = label.qubits;
        while (bits) {
            const int i = std::countr_zero(bits);
            bits &= bits - 1;
            out.push_back({{label.qubits ^ (Pattern{1} << i), label.photons}, profile[static_cast<std::size_t>(i)] * amp});
        }
    }
    return PureState(std::move(out));
}

/**
 * Closed-form dark states of the single-excitation sector. State j pairs
 * qubit j with the last qubit N:
 *
 *   |d_j> = |g_j| / sqrt(|g_j|^2 + |g_N|^2) * ( -(g_N / g_j) |e_j> + |e_N> ) (x) |0 photons>
 *
 * for j = 1..N-1. They are normalized and independent, not orthogonal.
 */
inline std::vector<PureState> single_excitation_dark_states(const CouplingProfile& profile) {
    const int n = profile.size();
    detail::require(n >= 2, "operators: single-excitation dark states need N >= 2");
    const cplx g_last = profile[static_cast<std::size_t>(n - 1)];
    std::vector<PureState> out;
    out.reserve(static_cast<std::size_t>(n - 1));
    for (int j = 0; j < n - 1; ++j) {
        const cplx gj = profile[static_cast<std::size_t>(j)];
        const double pref = std::abs(gj) / std::sqrt(std::norm(gj) + std::norm(g_last));
        out.emplace_back(std::vector<PureState::Component>{
            {{Pattern{1} << j, 0}, -pref * (g_last / gj)},
            {{Pattern{1} << (n - 1), 0}, cplx(pref)},
        });
    }
    return out;
}

/// Total S^z as a diagonal operator over qubit configurations.
class TotalSz {
public:
    explicit TotalSz(int n_qubits) : n_qubits_(n_qubits) {
        detail::require(n_qubits >= 1 && n_qubits <= kMaxQubitsHard, "operators: total_sz needs 1 <= N <= 64");
    }
    int n_qubits() const { return n_qubits_; }
    double eigenvalue(Pattern q) const { return std::popcount(q) - 0.5 * n_qubits_; }

    /// Diagonal over all 2^N configurations.
    Eigen::VectorXd diagonal(int max_qubits = 24) const {
        if (n_qubits_ > max_qubits) throw ResourceError("operators: dense S^z over 2^N states exceeds the cap");
        Eigen::VectorXd d(Eigen::Index{1} << n_qubits_);
        for (Eigen::Index q = 0; q < d.size(); ++q) d[q] = eigenvalue(static_cast<Pattern>(q));
        return d;
    }

private:
    int n_qubits_;
};

inline TotalSz total_sz(int n_qubits) { return TotalSz(n_qubits); }

/**
 * S_tot . S_tot = (S^z)^2 + (S^+ S^- + S^- S^+) / 2 over all 2^N product
 * states. Dense; intended for small N.
 */
inline Eigen::MatrixXd total_s_squared(int n_qubits, int cap = 10) {
    detail::require(n_qubits >= 1, "operators: total_s_squared needs N >= 1");
    if (n_qubits > cap)
        throw ResourceError("operators: total_s_squared cap is N <= " + std::to_string(cap) + ", got " +
                            std::to_string(n_qubits));
    const Eigen::Index dim = Eigen::Index{1} << n_qubits;
    Eigen::MatrixXd s2 = Eigen::MatrixXd::Zero(dim, dim);
    for (Eigen::Index col = 0; col < dim; ++col) {
        const Pattern q = static_cast<Pattern>(col);
        const double sz = std::popcount(q) - 0.5 * n_qubits;
        s2(col, col) += sz * sz;
        for (int i = 0; i < n_qubits; ++i) {
            for (int j = 0; j < n_qubits; ++j) {
                const Pattern bi = Pattern{1} << i;
                const Pattern bj = Pattern{1} << j;
                // S_i^+ S_j^-
                if ((q & bj) && !((q ^ bj) & bi)) s2(static_cast<Eigen::Index>((q ^ bj) | bi), col) += 0.5;
                // S_i^- S_j^+
                if (!(q & bj) && ((q | bj) & bi)) s2(static_cast<Eigen::Index>((q | bj) ^ bi), col) += 0.5;
            }
        }
    }
    return s2;
}

/// Block of a full-space qubit operator on one sector.
inline Eigen::MatrixXd restrict_to_sector(const Eigen::MatrixXd& full, const SectorBasis& basis) {
    detail::require(full.rows() == (Eigen::Index{1} << basis.n_qubits()) && full.cols() == full.rows(),
                    "operators: operator dimension does not match 2^N");
    const auto n = static_cast<Eigen::Index>(basis.size());
    Eigen::MatrixXd out(n, n);
    for (Eigen::Index a = 0; a < n; ++a)
        for (Eigen::Index b = 0; b < n; ++b)
            out(a, b) = full(static_cast<Eigen::Index>(basis[static_cast<std::size_t>(a)]),
                             static_cast<Eigen::Index>(basis[static_cast<std::size_t>(b)]));
    return out;
}

/// Resonant disordered Tavis-Cummings model on a truncated photon space.
struct HamiltonianModel {
    int n_qubits;
    CouplingProfile profile;
    double omega = 1.0;
    int n_photon_max = 1;

    void validate() const {
        detail::require(n_qubits >= 1 && n_qubits <= 16, "hamiltonian: n_qubits must be in [1, 16]");
        detail::require(profile.size() == n_qubits, "hamiltonian: profile length does not match n_qubits");
        detail::require(std::isfinite(omega), "hamiltonian: omega must be finite");
        detail::require(n_photon_max >= 0, "hamiltonian: n_photon_max must be >= 0");
    }

    Eigen::Index dimension() const { return (Eigen::Index{1} << n_qubits) * (n_photon_max + 1); }
    /// Basis index of |q> (x) |n>: photon-major.
    Eigen::Index index(Pattern q, int photons) const {
        return static_cast<Eigen::Index>(photons) * (Eigen::Index{1} << n_qubits) + static_cast<Eigen::Index>(q);
    }
    BasisLabel label(Eigen::Index idx) const {
        const Eigen::Index dq = Eigen::Index{1} << n_qubits;
        return {static_cast<Pattern>(idx % dq), static_cast<int>(idx / dq)};
    }
};

/**
 * H = omega (a^dag a + S^z_tot) + sum_j ( g_j* S_j^+ a + g_j S_j^- a^dag )
 * over (qubit configuration) x (0..n_photon_max photons).
 */
inline SparseMatrixC build_hamiltonian(const HamiltonianModel& model) {
    model.validate();
    const int n = model.n_qubits;
    const Pattern dq = Pattern{1} << n;
    std::vector<Eigen::Triplet<cplx>> trips;
    for (int ph = 0; ph <= model.n_photon_max; ++ph) {
        for (Pattern q = 0; q < dq; ++q) {
            const auto col = model.index(q, ph);
            const double diag = model.omega * (ph + std::popcount(q) - 0.5 * n);
            if (diag != 0.0) trips.emplace_back(static_cast<int>(col), static_cast<int>(col), cplx(diag));
            if (ph + 1 > model.n_photon_max) continue;
            const double amp = std::sqrt(static_cast<double>(ph + 1));
            Pattern bits = q;
            while (bits) {
                const int j = std::countr_zero(bits);
                bits &= bits - 1;
                const auto row = model.index(q ^ (Pattern{1} << j), ph + 1);
                const cplx g = model.profile[static_cast<std::size_t>(j)];
                trips.emplace_back(static_cast<int>(row), static_cast<int>(col), g * amp);
                trips.emplace_back(static_cast<int>(col), static_cast<int>(row), std::conj(g) * amp);
            }
        }
    }
    SparseMatrixC h(model.dimension(), model.dimension());
    h.setFromTriplets(trips.begin(), trips.end());
    return h;
}

/// a^dag a + S^z_tot + N/2: the conserved excitation count.
inline SparseMatrixC excitation_number_operator(const HamiltonianModel& model) {
    model.validate();
    SparseMatrixC m(model.dimension(), model.dimension());
    m.reserve(Eigen::VectorXi::Constant(model.dimension(), 1));
    for (Eigen::Index i = 0; i < model.dimension(); ++i) {
        const BasisLabel l = model.label(i);
        m.insert(i, i) = cplx(l.photons + std::popcount(l.qubits));
    }
    return m;
}

inline SparseMatrixC photon_number_operator(const HamiltonianModel& model) {
    model.validate();
    SparseMatrixC m(model.dimension(), model.dimension());
    m.reserve(Eigen::VectorXi::Constant(model.dimension(), 1));
    for (Eigen::Index i = 0; i < model.dimension(); ++i) m.insert(i, i) = cplx(model.label(i).photons);
    return m;
}

/// Photon annihilation operator a on the truncated space.
inline SparseMatrixC annihilation_operator(const HamiltonianModel& model) {
    model.validate();
    std::vector<Eigen::Triplet<cplx>> trips;
    for (Eigen::Index i = 0; i < model.dimension(); ++i) {
        const BasisLabel l = model.label(i);
        if (l.photons == 0) continue;
        trips.emplace_back(static_cast<int>(model.index(l.qubits, l.photons - 1)), static_cast<int>(i),
                           cplx(std::sqrt(static_cast<double>(l.photons))));
    }
    SparseMatrixC m(model.dimension(), model.dimension());
    m.setFromTriplets(trips.begin(), trips.end());
    return m;
}

/// Coordinate-format dump: a "# rows cols nnz" header, then "row col re im" per entry.
inline void export_coo(const SparseMatrixC& m, std::ostream& os) {
    os << "# " << m.rows() << ' ' << m.cols() << ' ' << m.nonZeros() << '\n';
    char buf[96];
    for (int k = 0; k < m.outerSize(); ++k) {
        for (SparseMatrixC::InnerIterator it(m, k); it; ++it) {
            std::snprintf(buf, sizeof buf, "%lld %lld %.17g %.17g\n", static_cast<long long>(it.row()),
                          static_cast<long long>(it.col()), it.value().real(), it.value().imag());
            os << buf;
        }
    }
}

}  // namespace darkcount
