#pragma once

#include <vector>

#include "mop/matrix.hpp"
#include "mop/measures.hpp"
#include "mop/polynomial.hpp"

namespace mop {

/// The two dual families produced by the Gauss-Borel factorization of the
/// square moment matrix M_N = L^{-1} U^{-1}:
///
///   B^[N] = L X^[N]_[q]   (N x q; row n holds B^(1)_n .. B^(q)_n),
///   A^[N] = (X^[N]_[p])^T U   (p x N; column n holds A^(1)_n .. A^(p)_n).
///
/// With L unitriangular, the component s_n = n mod q of row n of B is monic of
/// degree floor(n/q) (step-line structure).
struct PolyFamily {
    int N = 0, q = 1, p = 1;
    GaussBorel gb;  // factors of M_N
    RMatrix moments;

    std::vector<std::vector<Poly>> B;  // [n][s], s in 0..q-1  <-> B^(s+1)_n
    std::vector<std::vector<Poly>> A;  // [a][n], a in 0..p-1  <-> A^(a+1)_n

    /// Values B^[N](x) as an N x q matrix.
    RMatrix eval_B(const Rational& x, int rows = -1) const {
        int nr = rows < 0 ? N : rows;
        RMatrix v(nr, q);
        for (int n = 0; n < nr; ++n)
            for (int s = 0; s < q; ++s) v(n, s) = B[static_cast<std::size_t>(n)][static_cast<std::size_t>(s)](x);
        return v;
    }

    /// Values A^[N](x) as a p x N matrix.
    RMatrix eval_A(const Rational& x, int cols = -1) const {
        int nc = cols < 0 ? N : cols;
        RMatrix v(p, nc);
        for (int a = 0; a < p; ++a)
            for (int n = 0; n < nc; ++n) v(a, n) = A[static_cast<std::size_t>(a)][static_cast<std::size_t>(n)](x);
        return v;
    }
};

/// Builds both polynomial families from the size-N moment matrix of mu.
/// Throws singular_leading_minor(k) when orthogonality breaks at index k.
inline PolyFamily build_families(const DiscreteMeasureMatrix& mu, int N) {
    PolyFamily fam;
    fam.N = N;
    fam.q = mu.q;
    fam.p = mu.p;
    fam.moments = moment_matrix(mu, N, N);
    fam.gb = gauss_borel(fam.moments);

    fam.B.assign(static_cast<std::size_t>(N), std::vector<Poly>(static_cast<std::size_t>(mu.q)));
    for (int n = 0; n < N; ++n)
        for (int k = 0; k <= n; ++k) {
            const Rational& c = fam.gb.L(n, k);
            if (c != 0) fam.B[static_cast<std::size_t>(n)][static_cast<std::size_t>(k % mu.q)].add_term(k / mu.q, c);
        }

    fam.A.assign(static_cast<std::size_t>(mu.p), std::vector<Poly>(static_cast<std::size_t>(N)));
    for (int n = 0; n < N; ++n)
        for (int k = 0; k <= n; ++k) {
            const Rational& c = fam.gb.U(k, n);
            if (c != 0) fam.A[static_cast<std::size_t>(k % mu.p)][static_cast<std::size_t>(n)].add_term(k / mu.p, c);
        }
    return fam;
}

/// Direct biorthogonality: sum_k B^[N](x_k) W_k A^[N](x_k) must reproduce
/// L M U = I_N exactly.
inline bool orthogonality_check(const PolyFamily& fam, const DiscreteMeasureMatrix& mu) {
    RMatrix s = pair_integral(
        mu, [&](const Rational& x) { return fam.eval_B(x); },
        [&](const Rational& x) { return fam.eval_A(x); });
    return s == RMatrix::identity(fam.N);
}

/// Bordered blocks of the rectangular moment matrices:
///   L_border = L^[N+q,N] (q x N), the block appended below L^{-1} in
///              M^[N+q,N] = [L^{-1}; L^[N+q,N]] U^{-1};
///   U_border = U^[N,N+p] (N x p), the block appended right of U^{-1} in
///              M^[N,N+p] = L^{-1} [U^{-1} | U^[N,N+p]].
/// Both are computed as finite sums over the support and cross-checked against
/// the blocks read off the rectangular moment matrices.
struct BorderBlocks {
    RMatrix L_border;  // q x N
    RMatrix U_border;  // N x p
};

inline BorderBlocks border_blocks(const DiscreteMeasureMatrix& mu, const PolyFamily& fam) {
    const int N = fam.N, q = mu.q, p = mu.p;
    const int Nq = N / q, sq = N % q;
    const int Np = N / p, sp = N % p;

    BorderBlocks bb;
    bb.L_border = pair_integral(
        mu,
        [&](const Rational& x) {
            RMatrix f = xblock(q, sq, x);
            return pow(x, static_cast<unsigned>(Nq)) * f;
        },
        [&](const Rational& x) { return fam.eval_A(x); });
    bb.U_border = pair_integral(
        mu, [&](const Rational& x) { return fam.eval_B(x); },
        [&](const Rational& x) {
            RMatrix g = xblock(p, sp, x).transpose();
            return pow(x, static_cast<unsigned>(Np)) * g;
        });

    // cross-check against the moment-matrix route
    RMatrix fromM_L = (moment_matrix(mu, N + q, N) * fam.gb.U).block(N, 0, q, N);
    RMatrix fromM_U = (fam.gb.L * moment_matrix(mu, N, N + p)).block(0, N, N, p);
    if (fromM_L != bb.L_border || fromM_U != bb.U_border)
        throw std::logic_error("border_blocks: integral and moment-matrix routes disagree");
    return bb;
}

}  // namespace mop
