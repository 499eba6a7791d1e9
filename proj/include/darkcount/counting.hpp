// Copyright 2026 The darkcount Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <Eigen/Eigenvalues>

#include "darkcount/errors.hpp"
#include "darkcount/operators.hpp"
#include "darkcount/sector.hpp"

namespace darkcount {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// binomial(n, k) with binomial(n, -1) = 0 and binomial(n, k > n) = 0.
inline BigInt binomial(int n, int k) {
    if (n < 0) throw ArgumentError("counting: binomial needs n >= 0");
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    BigInt r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

namespace detail {

inline void require_sector_args(int n_qubits, int n_excited) {
    require(n_qubits >= 0 && n_excited >= 0, "counting: arguments must be non-negative");
    require(n_excited <= n_qubits, "counting: n_excited exceeds n_qubits");
}

}  // namespace detail

/// Number of independent dark states with s of N qubits excited.
inline BigInt ndark_formula(int n_qubits, int n_excited) {
    detail::require_sector_args(n_qubits, n_excited);
    if (2 * n_excited > n_qubits) return 0;
    return binomial(n_qubits, n_excited) - binomial(n_qubits, n_excited - 1);
}

/// Fraction of dark states in the sector, (N - 2s + 1) / (N - s + 1) for s <= N/2.
inline Rational order_parameter(int n_qubits, int n_excited) {
    detail::require_sector_args(n_qubits, n_excited);
    if (2 * n_excited > n_qubits) return 0;
    return Rational(BigInt(n_qubits - 2 * n_excited + 1), BigInt(n_qubits - n_excited + 1));
}

/// N -> infinity limit at fixed alpha = s/N.
inline double thermodynamic_order(double alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw ArgumentError("counting: alpha must lie in [0, 1], got " + std::to_string(alpha));
    return alpha <= 0.5 ? (1.0 - 2.0 * alpha) / (1.0 - alpha) : 0.0;
}

/**
 * Counts states of the s-sector with total spin S = N/2 - s, i.e. m = -S,
 * by diagonalizing S_tot^2 on the sector. Independent of the closed form.
 */
inline int count_dark_uniform_oracle(int n_qubits, int n_excited, int cap = 10) {
    detail::require_sector_args(n_qubits, n_excited);
    detail::require(n_qubits >= 1, "counting: oracle needs N >= 1");
    if (n_qubits > cap)
        throw ResourceError("counting: angular-momentum oracle is capped at N <= " + std::to_string(cap));
    const SectorBasis basis(n_qubits, n_excited);
    const Eigen::MatrixXd s2 = restrict_to_sector(total_s_squared(n_qubits, cap), basis);
    const double spin = 0.5 * n_qubits - n_excited;
    if (spin < 0.0) return 0;
    const double target = spin * (spin + 1.0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s2, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw NumericError("counting: S^2 diagonalization failed");
    int count = 0;
    // Distinct S(S+1) values in one sector are at least 2 apart.
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
        if (std::abs(es.eigenvalues()[i] - target) < 0.5) ++count;
    return count;
}

struct SweepRecord {
    int n_qubits = 0;
    int n_excited = 0;
    Rational alpha;
    Rational order_param;
    BigInt n_dark;
    BigInt sector_size;
};

inline SweepRecord sweep_point(int n_qubits, int n_excited) {
    SweepRecord r;
    r.n_qubits = n_qubits;
    r.n_excited = n_excited;
    r.alpha = Rational(BigInt(n_excited), BigInt(n_qubits));
    r.n_dark = ndark_formula(n_qubits, n_excited);
    r.sector_size = binomial(n_qubits, n_excited);
    r.order_param = Rational(r.n_dark, r.sector_size);
    return r;
}

/// One record per (N, s), s = 0..N, in the order given.
inline std::vector<SweepRecord> sweep(const std::vector<int>& n_list) {
    std::vector<SweepRecord> out;
    for (int n : n_list) {
        detail::require(n >= 1, "counting: sweep needs every N >= 1");
        for (int s = 0; s <= n; ++s) out.push_back(sweep_point(n, s));
    }
    return out;
}

struct CurvePoint {
    double alpha;
    double order_param;
};

/// Thermodynamic curve on `points` evenly spaced alphas covering [0, 1].
inline std::vector<CurvePoint> thermodynamic_curve(int points = 200) {
    detail::require(points >= 2, "counting: curve needs at least two points");
    std::vector<CurvePoint> out;
    out.reserve(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) {
        const double a = static_cast<double>(i) / (points - 1);
        out.push_back({a, thermodynamic_order(a)});
    }
    return out;
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace darkcount
