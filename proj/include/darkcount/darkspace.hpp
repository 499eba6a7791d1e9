// Copyright 2026 The darkcount Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "darkcount/couplings.hpp"
#include "darkcount/errors.hpp"
#include "darkcount/operators.hpp"
#include "darkcount/sector.hpp"
#include "darkcount/state.hpp"

namespace darkcount {

/**
 * Singular values at or below
 *
 *   sigma_max * max(rows, cols) * u * safety_factor      (u = 2^-53)
 *
 * count as zero, unless `absolute_threshold` overrides the whole expression.
 */
struct TolerancePolicy {
    double safety_factor = 100.0;
    std::optional<double> absolute_threshold;

    static constexpr double unit_roundoff = std::numeric_limits<double>::epsilon() / 2.0;

    double threshold(double sigma_max, Eigen::Index rows, Eigen::Index cols) const {
        if (absolute_threshold) return *absolute_threshold;
        return sigma_max * static_cast<double>(std::max(rows, cols)) * unit_roundoff * safety_factor;
    }
};

struct RankReport {
    Eigen::Index rank = 0;
    Eigen::Index nullity = 0;
    double threshold = 0.0;
    double sigma_max = 0.0;
    std::vector<double> singular_values;
};

namespace detail {

inline void check_svd(const Eigen::BDCSVD<Eigen::MatrixXcd>& svd, const Eigen::MatrixXcd& m) {
    if (svd.info() != Eigen::Success) {
        std::ostringstream os;
        os << "darkspace: singular value decomposition failed for a " << m.rows() << "x" << m.cols()
           << " matrix (Frobenius norm " << m.norm() << ", finite=" << m.allFinite() << ")";
        throw NumericError(os.str());
    }
}

inline RankReport rank_from_singular_values(const Eigen::VectorXd& sv, Eigen::Index rows, Eigen::Index cols,
                                            const TolerancePolicy& policy) {
    RankReport r;
    r.sigma_max = sv.size() > 0 ? sv[0] : 0.0;
    r.threshold = policy.threshold(r.sigma_max, rows, cols);
    r.singular_values.assign(sv.data(), sv.data() + sv.size());
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv[i] > r.threshold) ++r.rank;
    r.nullity = cols - r.rank;
    return r;
}

}  // namespace detail

inline RankReport rank_report(const SectorOperator& op, const TolerancePolicy& policy = {}) {
    const Eigen::MatrixXcd m = op.dense();
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(m);
    detail::check_svd(svd, m);
    return detail::rank_from_singular_values(svd.singularValues(), m.rows(), m.cols(), policy);
}

inline Eigen::Index nullity_numeric(const SectorOperator& op, const TolerancePolicy& policy = {}) {
    return rank_report(op, policy).nullity;
}

/// Orthonormal basis of the numerical null space of the lowering block, photon sector empty.
struct DarkSubspace {
    SectorBasis sector;
    /// Columns are orthonormal amplitude vectors over `sector`.
    Eigen::MatrixXcd basis;
    Eigen::Index nullity = 0;
    double tolerance_used = 0.0;

    std::vector<PureState> states() const {
        std::vector<PureState> out;
        for (Eigen::Index c = 0; c < basis.cols(); ++c) out.push_back(PureState::from_sector(sector, basis.col(c)));
        return out;
    }
};

/// Null space from the right-singular vectors, which are already orthonormal.
inline DarkSubspace null_basis(const SectorOperator& op, const TolerancePolicy& policy = {}) {
    const Eigen::MatrixXcd m = op.dense();
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeFullV);
    detail::check_svd(svd, m);
    const RankReport r = detail::rank_from_singular_values(svd.singularValues(), m.rows(), m.cols(), policy);
    DarkSubspace sub{op.source, svd.matrixV().rightCols(r.nullity), r.nullity, r.threshold};
    return sub;
}

/**
 * Dark subspace of the (N, s) sector. s = 0 has no lowering block; the
 * all-ground state is its single dark state.
 */
inline DarkSubspace dark_subspace(int n_qubits, int n_excited, const CouplingProfile& profile,
                                  const TolerancePolicy& policy = {}, const SectorLimits& limits = {}) {
    if (n_excited == 0) {
        detail::require(profile.size() == n_qubits, "darkspace: profile length does not match n_qubits");
        SectorBasis ground(n_qubits, 0, limits);
        return {ground, Eigen::MatrixXcd::Identity(1, 1), 1, 0.0};
    }
    return null_basis(build_lowering_block(n_qubits, n_excited, profile, limits), policy);
}

/// Numeric nullity including the s = 0 convention (nullity 1).
inline Eigen::Index sector_nullity(int n_qubits, int n_excited, const CouplingProfile& profile,
                                   const TolerancePolicy& policy = {}, const SectorLimits& limits = {}) {
    if (n_excited == 0) {
        detail::require(profile.size() == n_qubits, "darkspace: profile length does not match n_qubits");
        return 1;
    }
    return nullity_numeric(build_lowering_block(n_qubits, n_excited, profile, limits), policy);
}

/// Projector onto the dark subspace, as a dense matrix over the s-sector.
struct Projector {
    SectorBasis sector;
    Eigen::MatrixXcd matrix;
    Eigen::Index rank = 0;

    double trace() const { return matrix.trace().real(); }
};

inline Projector projector(const DarkSubspace& sub) {
    const auto dim = static_cast<Eigen::Index>(sub.sector.size());
    if (sub.nullity == 0) return {sub.sector, Eigen::MatrixXcd::Zero(dim, dim), 0};
    Eigen::MatrixXcd p = sub.basis * sub.basis.adjoint();
    return {sub.sector, std::move(p), sub.nullity};
}

struct DarkReport {
    bool dark = false;
    bool photon_free = false;
    double residual_norm = 0.0;
    double residual_bound = 0.0;
    double sz_mean = 0.0;
    double sz_variance = 0.0;

    std::string summary() const {
        std::ostringstream os;
        os << (dark ? "dark" : "not dark") << ": |O psi| = " << residual_norm << " (bound " << residual_bound
           << "), <Sz> = " << sz_mean << ", var(Sz) = " << sz_variance;
        return os.str();
    }
};

/**
 * Checks that a state is photon-free, annihilated by the lowering block and
 * an S^z eigenvector. The residual bound is `rel_tol * op.scale()`.
 */
inline DarkReport verify_dark(const PureState& state, const SectorOperator& op, const TotalSz& sz,
                              double rel_tol = 1e-12) {
    detail::require(sz.n_qubits() == op.n_qubits(), "darkspace: S^z operator acts on a different qubit count");
    DarkReport rep;
    rep.photon_free = state.photon_free();
    // Throws when any component lies outside the photon-free source sector.
    const Eigen::VectorXcd v = state.sector_vector(op.source);
    const double n2 = v.squaredNorm();
    if (!(n2 > 0.0)) throw ArgumentError("darkspace: zero state");
    rep.residual_norm = op.apply(v).norm() / std::sqrt(n2);
    rep.residual_bound = rel_tol * op.scale();
    double m1 = 0.0;
    double m2 = 0.0;
    for (const auto& [label, amp] : state.components()) {
        const double w = std::norm(amp) / n2;
        const double e = sz.eigenvalue(label.qubits);
        m1 += w * e;
        m2 += w * e * e;
    }
    rep.sz_mean = m1;
    rep.sz_variance = std::max(0.0, m2 - m1 * m1);
    rep.dark = rep.photon_free && rep.residual_norm <= rep.residual_bound && rep.sz_variance <= rel_tol;
    return rep;
}

}  // namespace darkcount
