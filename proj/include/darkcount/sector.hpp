// Copyright 2026 The darkcount Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "darkcount/errors.hpp"

namespace darkcount {

/// Occupation pattern of N qubits: bit j set <=> qubit j (0-based) excited.
using Pattern = std::uint64_t;

inline constexpr int kMaxQubitsHard = 64;

namespace detail {

inline constexpr auto kPascal = [] {
    std::array<std::array<std::uint64_t, 65>, 65> t{};
    for (int n = 0; n <= 64; ++n) {
        t[n][0] = 1;
        for (int k = 1; k <= n; ++k) t[n][k] = t[n - 1][k - 1] + (k <= n - 1 ? t[n - 1][k] : 0);
    }
    return t;
}();

}  // namespace detail

/// binomial(n, k) for 0 <= n <= 64; zero when k < 0 or k > n.
constexpr std::uint64_t binomial_u64(int n, int k) {
    if (n < 0 || n > 64 || k < 0 || k > n) return 0;
    return detail::kPascal[n][k];
}

/// Mask with the low n bits set.
constexpr Pattern low_mask(int n) { return n >= 64 ? ~Pattern{0} : ((Pattern{1} << n) - 1); }

struct SectorLimits {
    int max_qubits = 24;
    /// Upper bound on the number of stored states of one sector.
    std::uint64_t max_states = std::uint64_t{1} << 28;
};

/**
 * Canonically ordered basis of the N-qubit sector with exactly s excitations.
 *
 * States are sorted as unsigned integers, which is colexicographic order in
 * the set-bit positions. Ranks follow the combinatorial number system, so
 * `index_of` needs no lookup table.
 */
class SectorBasis {
public:
    SectorBasis(int n_qubits, int n_excited, const SectorLimits& limits = {})
        : n_qubits_(n_qubits), n_excited_(n_excited) {
        detail::require(n_qubits >= 1, "sector: n_qubits must be >= 1, got " + std::to_string(n_qubits));
        detail::require(n_qubits <= limits.max_qubits && n_qubits <= kMaxQubitsHard,
                        "sector: n_qubits " + std::to_string(n_qubits) + " exceeds configured maximum " +
                            std::to_string(limits.max_qubits));
        detail::require(n_excited >= 0 && n_excited <= n_qubits,
                        "sector: n_excited " + std::to_string(n_excited) + " outside [0, " +
                            std::to_string(n_qubits) + "]");
        const std::uint64_t count = binomial_u64(n_qubits, n_excited);
        if (count > limits.max_states)
            throw ResourceError("sector: binomial(" + std::to_string(n_qubits) + ", " +
                                std::to_string(n_excited) + ") states exceed the storage cap");
        states_.reserve(count);
        Pattern v = low_mask(n_excited);
        for (std::uint64_t i = 0; i < count; ++i) {
            states_.push_back(v);
            if (i + 1 == count) break;
            // Gosper's hack: next larger integer with the same popcount.
            const Pattern c = v & (~v + 1);
            const Pattern r = v + c;
            v = (((r ^ v) >> 2) / c) | r;
        }
    }

    int n_qubits() const { return n_qubits_; }
    int n_excited() const { return n_excited_; }
    std::size_t size() const { return states_.size(); }
    const std::vector<Pattern>& states() const { return states_; }
    Pattern operator[](std::size_t i) const { return states_[i]; }

    bool contains(Pattern state) const {
        return (state & ~low_mask(n_qubits_)) == 0 && std::popcount(state) == n_excited_;
    }

    /// Position of `state` in `states()`. O(N).
    std::size_t index_of(Pattern state) const {
        if (!contains(state))
            throw ArgumentError("sector: pattern is not in the (" + std::to_string(n_qubits_) + ", " +
                                std::to_string(n_excited_) + ") sector");
        return rank_unchecked(state);
    }

    /// Colex rank without validation; `state` must have popcount s within N bits.
    static std::size_t rank_unchecked(Pattern state) {
        std::uint64_t idx = 0;
        int k = 1;
        while (state) {
            const int pos = std::countr_zero(state);
            idx += binomial_u64(pos, k);
            ++k;
            state &= state - 1;
        }
        return static_cast<std::size_t>(idx);
    }

private:
    int n_qubits_;
    int n_excited_;
    std::vector<Pattern> states_;
};

inline SectorBasis enumerate_sector(int n_qubits, int n_excited, const SectorLimits& limits = {}) {
    return SectorBasis(n_qubits, n_excited, limits);
}

inline std::size_t state_index(const SectorBasis& basis, Pattern state) { return basis.index_of(state); }

/// All rearrangements of s excitations among N qubits. They coincide with the
/// product-state basis of the sector, in canonical order.
inline std::vector<Pattern> arrangements(int n_qubits, int n_excited, const SectorLimits& limits = {}) {
    return SectorBasis(n_qubits, n_excited, limits).states();
}

/// 1-based qubit labels of the excited qubits, e.g. 0b101 -> "1,3".
inline std::string excited_labels(Pattern state) {
    std::string out;
    while (state) {
        if (!out.empty()) out += ',';
        out += std::to_string(std::countr_zero(state) + 1);
        state &= state - 1;
    }
    return out;
}

/// Binary rendering of the pattern as an integer: qubit N leftmost, qubit 1
/// rightmost. N=2: qubit 1 excited -> "01", qubit 2 excited -> "10".
inline std::string pattern_string(Pattern state, int n_qubits) {
    std::string out(static_cast<std::size_t>(n_qubits), '0');
    for (int j = 0; j < n_qubits; ++j)
        if ((state >> j) & 1U) out[static_cast<std::size_t>(n_qubits - 1 - j)] = '1';
    return out;
}

}  // namespace darkcount
