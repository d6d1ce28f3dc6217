#pragma once

#include "mop/banded.hpp"
#include "mop/families.hpp"

namespace mop {

/// The banded recursion matrix T_N (p subdiagonals, q superdiagonals, unit
/// q-th superdiagonal under the unitriangular-L normalization) together with
/// its rectangular companions and corner blocks:
///
///   T_N        = L_N Lambda^[N,N+q]_[q] M^[N+q,N] U_N
///              = L_N M^[N,N+p] (Lambda^[N,N+p]_[p])^T U_N,
///   rect_B     = T^[N-q,N]  = L_{N-q} Lambda^[N-q,N]_[q] L_N^{-1},
///   rect_A     = T^[N,N-p]  = U_N^{-1} (Lambda^[N-p,N]_[p])^T U_{N-p},
///   corner_B   = q x q lower-triangular factor corner (needs N >= 2q),
///   corner_A   = p x p upper-triangular factor corner (needs N >= 2p).
struct RecursionSet {
    int N = 0, q = 1, p = 1;
    RMatrix T_dense;
    Banded T{0, 0, 0};
    RMatrix rect_B;    // (N-q) x N
    RMatrix rect_A;    // N x (N-p)
    RMatrix corner_B;  // q x q, empty when N < 2q
    RMatrix corner_A;  // p x p, empty when N < 2p
};

/// Builds the recursion matrices from the Gauss-Borel data of mu at size N,
/// validating the banded structure and the block relations between the three
/// matrices.  The square matrix is computed along both factorization routes
/// and the corner blocks both from triangular-factor corners and from the
/// finite-sum pairing; disagreement means an internal bug.
inline RecursionSet recursion_matrices(const DiscreteMeasureMatrix& mu, int N) {
    const int q = mu.q, p = mu.p;
    if (N < 1) throw std::invalid_argument("recursion_matrices: N must be positive");
    PolyFamily fam = build_families(mu, N);

    RecursionSet rs;
    rs.N = N;
    rs.q = q;
    rs.p = p;

    RMatrix t_left = fam.gb.L * (shift_block(q, N) * (moment_matrix(mu, N + q, N) * fam.gb.U));
    RMatrix t_right = (fam.gb.L * moment_matrix(mu, N, N + p)) * shift_block(p, N).transpose() * fam.gb.U;
    if (t_left != t_right)
        throw std::logic_error("recursion_matrices: L-side and U-side expressions disagree");
    rs.T_dense = t_left;
    rs.T = band_extract(rs.T_dense, p, q);
    for (const Rational& v : rs.T.diagonal(q))
        if (v != 1) throw std::logic_error("recursion_matrices: q-th superdiagonal not identically 1");

    if (N < std::max(p, q)) return rs;  // rectangular companions need N - q, N - p >= 0

    rs.rect_B = fam.gb.L.leading(N - q) * shift_block(q, N - q) * fam.gb.inv_L;
    rs.rect_A = fam.gb.inv_U * shift_block(p, N - p).transpose() * fam.gb.U.leading(N - p);

    // block relations: rect_B = [T_{N-q} | (0 ; corner_B)],
    //                  rect_A = [T_{N-p} ; (0 | corner_A)]
    if (rs.rect_B.block(0, 0, N - q, N - q) != rs.T_dense.leading(N - q))
        throw std::logic_error("recursion_matrices: rect_B does not embed T_{N-q}");
    if (rs.rect_A.block(0, 0, N - p, N - p) != rs.T_dense.leading(N - p))
        throw std::logic_error("recursion_matrices: rect_A does not embed T_{N-p}");

    if (N >= 2 * q) {
        RMatrix bl = fam.gb.L.block(N - 2 * q, N - 2 * q, q, q);
        RMatrix br = fam.gb.L.block(N - q, N - q, q, q);
        rs.corner_B = bl * tri_invert(br, Triangle::lower);
        // finite-sum route; the pairing needs the extra weight x, without
        // which it collapses to zero by triangularity (see DISCREPANCIES.md)
        RMatrix integral = pair_integral(
            mu, [&](const Rational& x) { return x * fam.eval_B(x).block(N - 2 * q, 0, q, q); },
            [&](const Rational& x) { return fam.eval_A(x).block(0, N - q, p, q); });
        if (integral != rs.corner_B)
            throw std::logic_error("recursion_matrices: corner_B routes disagree");
        for (int i = 0; i < N - 2 * q; ++i)
            for (int j = 0; j < q; ++j)
                if (rs.rect_B(i, N - q + j) != 0)
                    throw std::logic_error("recursion_matrices: rect_B border not zero above corner");
        if (rs.rect_B.block(N - 2 * q, N - q, q, q) != rs.corner_B)
            throw std::logic_error("recursion_matrices: rect_B corner mismatch");
    }
    if (N >= 2 * p) {
        RMatrix ur = fam.gb.U.block(N - p, N - p, p, p);
        RMatrix ul = fam.gb.U.block(N - 2 * p, N - 2 * p, p, p);
        rs.corner_A = tri_invert(ur, Triangle::upper) * ul;
        RMatrix integral = pair_integral(
            mu, [&](const Rational& x) { return x * fam.eval_B(x).block(N - p, 0, p, q); },
            [&](const Rational& x) { return fam.eval_A(x).block(0, N - 2 * p, p, p); });
        if (integral != rs.corner_A)
            throw std::logic_error("recursion_matrices: corner_A routes disagree");
        for (int i = 0; i < p; ++i)
            for (int j = 0; j < N - 2 * p; ++j)
                if (rs.rect_A(N - p + i, j) != 0)
                    throw std::logic_error("recursion_matrices: rect_A border not zero left of corner");
        if (rs.rect_A.block(N - p, N - 2 * p, p, p) != rs.corner_A)
            throw std::logic_error("recursion_matrices: rect_A corner mismatch");
    }
    return rs;
}

/// Verifies at the given x:
///   T^[N-q,N] B^[N](x) = x B^[N-q](x) and A^[N](x) T^[N,N-p] = x A^[N-p](x),
/// plus the corner-corrected forms
///   T_{N-q} B^[N-q](x) + [0 ; corner_B B^[N,q](x)] = x B^[N-q](x)
///   A^[N-p](x) T_{N-p} + [0 | A^[N,p](x) corner_A] = x A^[N-p](x).
inline bool recursion_relation_check(const PolyFamily& fam, const RecursionSet& rec, const Rational& x) {
    const int N = fam.N, q = fam.q, p = fam.p;
    RMatrix bx = fam.eval_B(x);
    RMatrix ax = fam.eval_A(x);
    RMatrix b_head = bx.block(0, 0, N - q, q);
    RMatrix a_head = ax.block(0, 0, p, N - p);

    if (rec.rect_B * bx != x * b_head) return false;
    if (ax * rec.rect_A != x * a_head) return false;

    if (N >= 2 * q && rec.corner_B.rows() == q) {
        RMatrix lhs = rec.T_dense.leading(N - q) * b_head;
        RMatrix tail = rec.corner_B * bx.block(N - q, 0, q, q);
        for (int i = 0; i < q; ++i)
            for (int j = 0; j < q; ++j) lhs(N - 2 * q + i, j) += tail(i, j);
        if (lhs != x * b_head) return false;
    }
    if (N >= 2 * p && rec.corner_A.rows() == p) {
        RMatrix lhs = a_head * rec.T_dense.leading(N - p);
        RMatrix tail = ax.block(0, N - p, p, p) * rec.corner_A;
        for (int i = 0; i < p; ++i)
            for (int j = 0; j < p; ++j) lhs(i, N - 2 * p + j) += tail(i, j);
        if (lhs != x * a_head) return false;
    }
    return true;
}

}  // namespace mop
