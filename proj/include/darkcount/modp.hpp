// Copyright 2026 The darkcount Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "darkcount/errors.hpp"
#include "darkcount/rng.hpp"
#include "darkcount/sector.hpp"

namespace darkcount::modp {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

/// Prime field F_p with p = 2^Shift - C, using fold-based reduction.
template <unsigned Shift, u64 C>
struct Field {
    static constexpr u64 p = (u64{1} << Shift) - C;
    static constexpr u64 mask = (u64{1} << Shift) - 1;

    static u64 reduce(u128 x) {
        while (x >> Shift) x = (x >> Shift) * C + (x & mask);
        u64 r = static_cast<u64>(x);
        while (r >= p) r -= p;
        return r;
    }
    /// One fold: maps a product of two residues below 2^(Shift+12), so many can be summed in 128 bits.
    static u128 fold(u128 x) { return (x >> Shift) * C + (x & mask); }
    /// How many raw products of residues fit in an unsigned 128-bit sum.
    static constexpr std::size_t raw_sum_terms = (std::size_t{1} << (128 - 2 * Shift)) - 1;

    static u64 add(u64 a, u64 b) {
        u64 r = a + b;
        return r >= p ? r - p : r;
    }
    static u64 sub(u64 a, u64 b) { return a >= b ? a - b : a + p - b; }
    static u64 mul(u64 a, u64 b) { return reduce(static_cast<u128>(a) * b); }
    static u64 pow(u64 a, u64 e) {
        u64 r = 1;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    static u64 inv(u64 a) {
        if (a == 0) throw NumericError("modp: inverse of zero");
        return pow(a, p - 2);
    }
};

/// 2^62 - 57, the largest prime below 2^62.
using PrimaryField = Field<62, 57>;
/// 2^61 - 1, a Mersenne prime; independent cross-check modulus.
using SecondaryField = Field<61, 1>;

enum class Prime { Primary, Secondary };

inline u64 prime_value(Prime which) { return which == Prime::Primary ? PrimaryField::p : SecondaryField::p; }

/// Random couplings in [1, p-1], one per qubit, from the given seed.
template <class F>
std::vector<u64> random_couplings(int n_qubits, u64 seed) {
    Rng rng(seed);
    std::vector<u64> g(static_cast<std::size_t>(n_qubits));
    for (auto& x : g) x = 1 + rng.uniform_below(F::p - 1);
    return g;
}

/// Rank of a dense row-major matrix by Gaussian elimination; the matrix is consumed.
template <class F>
std::size_t dense_rank(std::vector<u64>& a, std::size_t rows, std::size_t cols) {
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t piv = rank;
        while (piv < rows && a[piv * cols + c] == 0) ++piv;
        if (piv == rows) continue;
        if (piv != rank)
            for (std::size_t k = c; k < cols; ++k) std::swap(a[piv * cols + k], a[rank * cols + k]);
        const u64 inv = F::inv(a[rank * cols + c]);
        for (std::size_t r = rank + 1; r < rows; ++r) {
            const u64 f = a[r * cols + c];
            if (f == 0) continue;
            const u64 m = F::mul(f, inv);
            for (std::size_t k = c; k < cols; ++k)
                a[r * cols + k] = F::sub(a[r * cols + k], F::mul(m, a[rank * cols + k]));
        }
        ++rank;
    }
    return rank;
}

/**
 * Lowering block from the k-sector to the (k-1)-sector of the first n
 * qubits, stored by rows: row T lists, for each qubit i not in T, the
 * source column of T | {i} and the qubit i. Every row has n - k + 1 entries.
 */
struct LoweringRows {
    int n = 0;
    int k = 0;
    std::size_t rows = 0;
    std::size_t cols = 0;
    int width = 0;
    std::vector<std::uint32_t> col;
    std::vector<std::uint8_t> qubit;

    LoweringRows(int n_qubits, int n_excited) : n(n_qubits), k(n_excited) {
        rows = binomial_u64(n, k - 1);
        cols = binomial_u64(n, k);
        width = n - k + 1;
        col.reserve(rows * static_cast<std::size_t>(width));
        qubit.reserve(rows * static_cast<std::size_t>(width));
        const SectorBasis target(n, k - 1, {.max_qubits = 64, .max_states = std::uint64_t{1} << 32});
        for (Pattern t : target.states()) {
            Pattern holes = ~t & low_mask(n);
            while (holes) {
                const int i = std::countr_zero(holes);
                holes &= holes - 1;
                col.push_back(static_cast<std::uint32_t>(SectorBasis::rank_unchecked(t | (Pattern{1} << i))));
                qubit.push_back(static_cast<std::uint8_t>(i));
            }
        }
    }

    template <class F>
    void apply(const std::vector<u64>& g, const std::vector<u64>& x, std::vector<u64>& y) const {
        y.resize(rows);
        const std::size_t w = static_cast<std::size_t>(width);
        if (w <= F::raw_sum_terms) {
            for (std::size_t r = 0; r < rows; ++r) {
                u128 acc = 0;
                const std::size_t base = r * w;
                for (std::size_t e = 0; e < w; ++e) acc += static_cast<u128>(g[qubit[base + e]]) * x[col[base + e]];
                y[r] = F::reduce(acc);
            }
            return;
        }
        for (std::size_t r = 0; r < rows; ++r) {
            u128 acc = 0;
            const std::size_t base = r * w;
            for (std::size_t e = 0; e < w; ++e)
                acc += F::fold(static_cast<u128>(g[qubit[base + e]]) * x[col[base + e]]);
            y[r] = F::reduce(acc);
        }
    }
};

template <class F>
std::vector<u64> dense_lowering(int n, int k, const std::vector<u64>& g) {
    const LoweringRows op(n, k);
    std::vector<u64> a(op.rows * op.cols, 0);
    const auto w = static_cast<std::size_t>(op.width);
    for (std::size_t r = 0; r < op.rows; ++r)
        for (std::size_t e = 0; e < w; ++e) a[r * op.cols + op.col[r * w + e]] = g[op.qubit[r * w + e]];
    return a;
}

/// Minimal connection polynomial c (c[0] = 1) of a sequence over F.
template <class F>
std::vector<u64> berlekamp_massey(const std::vector<u64>& s) {
    std::vector<u64> c{1};
    std::vector<u64> b{1};
    std::size_t len = 0;
    std::size_t m = 1;
    u64 bd = 1;
    for (std::size_t i = 0; i < s.size(); ++i) {
        u128 acc = 0;
        for (std::size_t j = 0; j <= len && j < c.size(); ++j) acc += F::fold(static_cast<u128>(c[j]) * s[i - j]);
        const u64 d = F::reduce(acc);
        if (d == 0) {
            ++m;
            continue;
        }
        const u64 coef = F::mul(d, F::inv(bd));
        if (2 * len <= i) {
            std::vector<u64> t = c;
            if (c.size() < b.size() + m) c.resize(b.size() + m, 0);
            for (std::size_t j = 0; j < b.size(); ++j) c[j + m] = F::sub(c[j + m], F::mul(coef, b[j]));
            len = i + 1 - len;
            b = std::move(t);
            bd = d;
            m = 1;
        } else {
            if (c.size() < b.size() + m) c.resize(b.size() + m, 0);
            for (std::size_t j = 0; j < b.size(); ++j) c[j + m] = F::sub(c[j + m], F::mul(coef, b[j]));
            ++m;
        }
    }
    c.resize(len + 1, 0);
    return c;
}

enum class Certificate {
    /// Exact elimination, or a Krylov sequence whose generator has full degree.
    Deterministic,
    /// Relies on random projections; wrong with probability at most ~ dim / p.
    MonteCarlo,
};

inline const char* to_string(Certificate c) { return c == Certificate::Deterministic ? "deterministic" : "monte-carlo"; }

struct ExactRankResult {
    int n_qubits = 0;
    int n_excited = 0;
    std::uint64_t rank = 0;
    std::uint64_t nullity = 0;
    std::uint64_t prime = 0;
    std::uint64_t seed = 0;
    Certificate certificate = Certificate::Deterministic;
};

struct ExactRankOptions {
    /// Sub-blocks with at most this many entries are eliminated densely.
    std::size_t dense_entry_cap = 200'000;
    /// Two-step products up to this dimension are formed and eliminated densely.
    std::size_t dense_square_cap = 600;
    int max_qubits = 22;
};

namespace detail {

inline void require_range(int n_qubits, int n_excited, int cap) {
    if (n_qubits < 1 || n_excited < 0 || n_excited > n_qubits)
        throw ArgumentError("modp: need 0 <= s <= N and N >= 1, got N=" + std::to_string(n_qubits) +
                            ", s=" + std::to_string(n_excited));
    if (n_qubits > cap)
        throw ResourceError("modp: N=" + std::to_string(n_qubits) + " exceeds the exact-rank cap " +
                            std::to_string(cap));
}

template <class F>
class RankSolver {
public:
    RankSolver(std::vector<u64> g, u64 seed, const ExactRankOptions& opts)
        : g_(std::move(g)), seed_(seed), opts_(opts) {}

    Certificate certificate() const { return certificate_; }

    /**
     * Rank of the lowering block of the first n qubits from sector k.
     *
     * Splitting on qubit n-1 gives the block form [[A, g I], [0, B]] with
     * A = O(n-1, k) and B = O(n-1, k-1). Eliminating the g I pivots leaves
     * rank = binomial(n-1, k-1) + rank(B A). When A is onto, rank(B A) =
     * rank(B). Complementing every pattern maps O(n, k) to the transpose of
     * O(n, n-k+1) with the same couplings, which folds k > n/2 onto the lower
     * half. The self-dual case n = 2k - 1 reduces to the square product B A,
     * tested for nonsingularity through its Krylov sequence.
     */
    std::uint64_t rank(int n, int k) {
        if (k <= 0 || k > n) return 0;
        if (auto it = memo_.find({n, k}); it != memo_.end()) return it->second;
        const std::uint64_t rows = binomial_u64(n, k - 1);
        const std::uint64_t cols = binomial_u64(n, k);
        std::uint64_t r;
        if (rows * cols <= opts_.dense_entry_cap || n <= 2) {
            r = dense(n, k);
        } else if (2 * k > n + 1) {
            r = rank(n, n - k + 1);
        } else if (2 * k == n + 1) {
            r = binomial_u64(n - 1, k - 1) + square_product_rank(n - 1, k);
        } else if (rank(n - 1, k) == binomial_u64(n - 1, k - 1)) {
            r = binomial_u64(n - 1, k - 1) + rank(n - 1, k - 1);
        } else {
            r = fallback(n, k);
        }
        memo_[{n, k}] = r;
        return r;
    }

private:
    std::uint64_t dense(int n, int k) {
        std::vector<u64> a = dense_lowering<F>(n, k, g_);
        return dense_rank<F>(a, binomial_u64(n, k - 1), binomial_u64(n, k));
    }

    std::uint64_t fallback(int n, int k) {
        const std::uint64_t entries = binomial_u64(n, k - 1) * binomial_u64(n, k);
        if (entries > 64 * opts_.dense_entry_cap)
            throw NumericError("modp: block recursion hit a rank-deficient sub-block at (" + std::to_string(n) + ", " +
                               std::to_string(k) + ") that is too large for direct elimination");
        return dense(n, k);
    }

    /// Rank of O(m, k-1) * O(m, k), a square matrix on the (k-2)-sector when m = 2k - 2.
    std::uint64_t square_product_rank(int m, int k) {
        const LoweringRows inner(m, k);
        const LoweringRows outer(m, k - 1);
        const std::size_t dim = outer.rows;
        if (dim == 0) return 0;
        if (dim <= opts_.dense_square_cap) {
            std::vector<u64> prod(dim * dim, 0);
            std::vector<u64> e(inner.cols, 0);
            std::vector<u64> t;
            std::vector<u64> y;
            for (std::size_t c = 0; c < inner.cols; ++c) {
                e[c] = 1;
                inner.apply<F>(g_, e, t);
                outer.apply<F>(g_, t, y);
                for (std::size_t r = 0; r < dim; ++r) prod[r * dim + c] = y[r];
                e[c] = 0;
            }
            return dense_rank<F>(prod, dim, dim);
        }
        for (int attempt = 0; attempt < 2; ++attempt) {
            Rng rng(derive_seed(seed_, 0x4b52594cULL + static_cast<u64>(m) * 131 + static_cast<u64>(k) * 7 +
                                            static_cast<u64>(attempt) * 1000003));
            std::vector<u64> u(dim);
            std::vector<u64> v(dim);
            for (auto& x : u) x = rng.uniform_below(F::p);
            for (auto& x : v) x = rng.uniform_below(F::p);
            std::vector<u64> seq(2 * dim);
            std::vector<u64> t;
            std::vector<u64> next;
            for (std::size_t i = 0; i < 2 * dim; ++i) {
                u128 acc = 0;
                for (std::size_t j = 0; j < dim; ++j) acc += F::fold(static_cast<u128>(u[j]) * v[j]);
                seq[i] = F::reduce(acc);
                if (i + 1 == 2 * dim) break;
                inner.apply<F>(g_, v, t);
                outer.apply<F>(g_, t, next);
                v.swap(next);
            }
            const std::vector<u64> c = berlekamp_massey<F>(seq);
            const std::size_t degree = c.size() - 1;
            if (c.back() != 0) {
                if (degree < dim) certificate_ = Certificate::MonteCarlo;
                return dim;
            }
        }
        return fallback_square(m, k, dim);
    }

    std::uint64_t fallback_square(int m, int k, std::size_t dim) {
        if (dim * dim > 64 * opts_.dense_entry_cap)
            throw NumericError("modp: two-step product on " + std::to_string(m) + " qubits, sector " +
                               std::to_string(k) + ", looks singular and is too large for direct elimination");
        const std::size_t saved = opts_.dense_square_cap;
        opts_.dense_square_cap = dim;
        const std::uint64_t r = square_product_rank(m, k);
        opts_.dense_square_cap = saved;
        return r;
    }

    std::vector<u64> g_;
    u64 seed_;
    ExactRankOptions opts_;
    Certificate certificate_ = Certificate::Deterministic;
    std::map<std::pair<int, int>, std::uint64_t> memo_;
};

template <class F>
ExactRankResult rank_exact_impl(int n_qubits, int n_excited, u64 seed, const ExactRankOptions& opts) {
    ExactRankResult res;
    res.n_qubits = n_qubits;
    res.n_excited = n_excited;
    res.prime = F::p;
    res.seed = seed;
    const std::vector<u64> g = random_couplings<F>(n_qubits, seed);
    RankSolver<F> solver(g, seed, opts);
    res.rank = solver.rank(n_qubits, n_excited);
    res.nullity = binomial_u64(n_qubits, n_excited) - res.rank;
    res.certificate = solver.certificate();
    return res;
}

template <class F>
std::uint64_t rank_direct_impl(int n_qubits, int n_excited, u64 seed) {
    if (n_excited == 0) return 0;
    const std::vector<u64> g = random_couplings<F>(n_qubits, seed);
    std::vector<u64> a = dense_lowering<F>(n_qubits, n_excited, g);
    return dense_rank<F>(a, binomial_u64(n_qubits, n_excited - 1), binomial_u64(n_qubits, n_excited));
}

}  // namespace detail

/**
 * Exact rank over F_p of the lowering block with random couplings drawn
 * from [1, p-1]. For generic couplings this is the rank over the complex
 * numbers with overwhelming probability.
 */
inline ExactRankResult rank_exact_modp(int n_qubits, int n_excited, u64 seed, Prime prime = Prime::Primary,
                                       const ExactRankOptions& opts = {}) {
    detail::require_range(n_qubits, n_excited, opts.max_qubits);
    return prime == Prime::Primary ? detail::rank_exact_impl<PrimaryField>(n_qubits, n_excited, seed, opts)
                                   : detail::rank_exact_impl<SecondaryField>(n_qubits, n_excited, seed, opts);
}

/// Same couplings as `rank_exact_modp`, eliminated as one dense matrix. Small sectors only.
inline std::uint64_t rank_direct_modp(int n_qubits, int n_excited, u64 seed, Prime prime = Prime::Primary) {
    detail::require_range(n_qubits, n_excited, 14);
    return prime == Prime::Primary ? detail::rank_direct_impl<PrimaryField>(n_qubits, n_excited, seed)
                                   : detail::rank_direct_impl<SecondaryField>(n_qubits, n_excited, seed);
}

}  // namespace darkcount::modp
