// Copyright 2026 The darkcount Authors
// SPDX-License-Identifier: Apache-2.0

// Dense Lindblad integration of the cavity-decay model with a click flag.
//
// The system (photon (x) qubits) is tensored with a two-level record
// {no-click, clicked}. Jump operators sqrt(kappa) a (x) |c><n| and
// sqrt(kappa) a (x) |c><c| move all emitted population into the clicked
// record, so the no-click probability is the weight left on |n><n|.

#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

struct MasterEquationModel {
    std::vector<std::complex<double>> g;
    double omega = 1.0;
    double kappa = 1.0;
    int n_photon_max = 1;
};

inline Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

/// Probability of no click before t_max for the product state |initial> (x) |0 photons>.
inline double no_click_probability(const MasterEquationModel& m, std::uint64_t initial, double t_max, double dt) {
    using M = Eigen::MatrixXcd;
    const int n = static_cast<int>(m.g.size());
    const Eigen::Index nph = m.n_photon_max + 1;
    const Eigen::Index dq = Eigen::Index{1} << n;

    M a = M::Zero(nph, nph);
    for (Eigen::Index k = 1; k < nph; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
    M lower(2, 2);
    lower << 0, 1, 0, 0;  // |g><e| with |g> = index 0
    // Factor ordering photon (x) qubit_{n-1} (x) ... (x) qubit_0.
    auto qubit_op = [&](int j, const M& op) {
        M out = M::Identity(1, 1);
        for (int k = n - 1; k >= 0; --k) out = kron(out, k == j ? op : M::Identity(2, 2));
        return kron(M::Identity(nph, nph), out);
    };
    const M a_full = kron(a, M::Identity(dq, dq));
    M h = m.omega * a_full.adjoint() * a_full;
    for (int j = 0; j < n; ++j) {
        const M sm = qubit_op(j, lower);
        const M sp = sm.adjoint();
        h += m.omega * (sp * sm - 0.5 * M::Identity(h.rows(), h.cols()));
        h += std::conj(m.g[static_cast<std::size_t>(j)]) * sp * a_full +
             m.g[static_cast<std::size_t>(j)] * sm * a_full.adjoint();
    }

    const Eigen::Index d = h.rows();
    M flag_nn = M::Zero(2, 2), to_c_from_n = M::Zero(2, 2), to_c_from_c = M::Zero(2, 2);
    flag_nn(0, 0) = 1;
    to_c_from_n(1, 0) = 1;
    to_c_from_c(1, 1) = 1;
    const M htot = kron(M::Identity(2, 2), h);
    const std::vector<M> jumps = {std::sqrt(m.kappa) * kron(to_c_from_n, a_full),
                                  std::sqrt(m.kappa) * kron(to_c_from_c, a_full)};
    M jj = M::Zero(2 * d, 2 * d);
    for (const M& j : jumps) jj += j.adjoint() * j;
    const std::complex<double> I(0.0, 1.0);
    auto rhs = [&](const M& rho) {
        M out = -I * (htot * rho - rho * htot) - 0.5 * (jj * rho + rho * jj);
        for (const M& j : jumps) out += j * rho * j.adjoint();
        return out;
    };

    M rho = M::Zero(2 * d, 2 * d);
    const Eigen::Index i0 = static_cast<Eigen::Index>(initial);  // photon 0, flag no-click
    rho(i0, i0) = 1.0;
    const auto steps = static_cast<long>(std::ceil(t_max / dt));
    const double h_step = t_max / static_cast<double>(steps);
    for (long k = 0; k < steps; ++k) {
        const M k1 = rhs(rho);
        const M k2 = rhs(rho + 0.5 * h_step * k1);
        const M k3 = rhs(rho + 0.5 * h_step * k2);
        const M k4 = rhs(rho + h_step * k3);
        rho += (h_step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return (kron(flag_nn, M::Identity(d, d)) * rho).trace().real();
}

}  // namespace oracle
