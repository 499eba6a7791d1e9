// Copyright 2026 The darkcount Authors
// SPDX-License-Identifier: Apache-2.0

// Exact rank over the rationals of the lowering block with integer couplings.
// The matrix is built by scanning all 2^N configurations, with no shared code
// from the library's sector enumeration.

#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace oracle {

using Q = boost::multiprecision::cpp_rational;

inline std::size_t rational_rank(std::vector<std::vector<Q>> m) {
    const std::size_t rows = m.size();
    const std::size_t cols = rows ? m[0].size() : 0;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t piv = rank;
        while (piv < rows && m[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[piv], m[rank]);
        for (std::size_t r = rank + 1; r < rows; ++r) {
            if (m[r][c] == 0) continue;
            const Q f = m[r][c] / m[rank][c];
            for (std::size_t k = c; k < cols; ++k) m[r][k] -= f * m[rank][k];
        }
        ++rank;
    }
    return rank;
}

/// Rows: configurations with s-1 excitations; columns: with s excitations.
inline std::vector<std::vector<Q>> lowering_matrix(int n, int s, const std::vector<long>& g) {
    std::map<std::uint64_t, std::size_t> row_of, col_of;
    for (std::uint64_t q = 0; q < (std::uint64_t{1} << n); ++q) {
        const int w = std::popcount(q);
        if (w == s - 1) row_of.emplace(q, row_of.size());
        if (w == s) col_of.emplace(q, col_of.size());
    }
    std::vector<std::vector<Q>> m(row_of.size(), std::vector<Q>(col_of.size(), Q(0)));
    for (const auto& [q, c] : col_of)
        for (int j = 0; j < n; ++j)
            if ((q >> j) & 1U) m[row_of.at(q & ~(std::uint64_t{1} << j))][c] += Q(g[static_cast<std::size_t>(j)]);
    return m;
}

}  // namespace oracle
