#pragma once

#include <optional>
#include <vector>

#include "mop/recursion.hpp"

namespace mop {

/// Ordered bidiagonal factors of T_N = L_1 ... L_p U_q ... U_1 with
///   L_a unit lower bidiagonal, entry L_{a,n} at (n, n-1), n in 1..N-1,
///   U_b upper bidiagonal, entry U_{b,n} at (n, n), unit superdiagonal.
struct BidiagonalChain {
    int N = 0, p = 1, q = 1;
    std::vector<std::vector<Rational>> L;  // [a-1][n-1] = L_{a,n}
    std::vector<std::vector<Rational>> U;  // [b-1][n]   = U_{b,n}

    static BidiagonalChain empty(int N, int p, int q) {
        BidiagonalChain c;
        c.N = N;
        c.p = p;
        c.q = q;
        c.L.assign(static_cast<std::size_t>(p), std::vector<Rational>(static_cast<std::size_t>(N - 1)));
        c.U.assign(static_cast<std::size_t>(q), std::vector<Rational>(static_cast<std::size_t>(N)));
        return c;
    }

    Rational& L_at(int a, int n) { return L[static_cast<std::size_t>(a - 1)][static_cast<std::size_t>(n - 1)]; }
    const Rational& L_at(int a, int n) const { return L[static_cast<std::size_t>(a - 1)][static_cast<std::size_t>(n - 1)]; }
    Rational& U_at(int b, int n) { return U[static_cast<std::size_t>(b - 1)][static_cast<std::size_t>(n)]; }
    const Rational& U_at(int b, int n) const { return U[static_cast<std::size_t>(b - 1)][static_cast<std::size_t>(n)]; }

    RMatrix L_factor(int a) const {
        RMatrix m = RMatrix::identity(N);
        for (int n = 1; n < N; ++n) m(n, n - 1) = L_at(a, n);
        return m;
    }
    RMatrix U_factor(int b) const {
        RMatrix m(N, N);
        for (int n = 0; n < N; ++n) {
            m(n, n) = U_at(b, n);
            if (n + 1 < N) m(n, n + 1) = 1;
        }
        return m;
    }

    /// L_1 ... L_p U_q ... U_1.
    RMatrix product() const {
        RMatrix acc = RMatrix::identity(N);
        for (int a = 1; a <= p; ++a) acc = acc * L_factor(a);
        for (int b = q; b >= 1; --b) acc = acc * U_factor(b);
        return acc;
    }
};

/// A chain whose entries may be individually unavailable (outside the validity
/// range of the producing formula).
struct PartialChain {
    int N = 0, p = 1, q = 1;
    std::vector<std::vector<std::optional<Rational>>> L;  // [a-1][n-1]
    std::vector<std::vector<std::optional<Rational>>> U;  // [b-1][n]

    static PartialChain empty(int N, int p, int q) {
        PartialChain c;
        c.N = N;
        c.p = p;
        c.q = q;
        c.L.assign(static_cast<std::size_t>(p),
                   std::vector<std::optional<Rational>>(static_cast<std::size_t>(N - 1)));
        c.U.assign(static_cast<std::size_t>(q),
                   std::vector<std::optional<Rational>>(static_cast<std::size_t>(N)));
        return c;
    }

    std::optional<Rational>& L_at(int a, int n) { return L[static_cast<std::size_t>(a - 1)][static_cast<std::size_t>(n - 1)]; }
    const std::optional<Rational>& L_at(int a, int n) const { return L[static_cast<std::size_t>(a - 1)][static_cast<std::size_t>(n - 1)]; }
    std::optional<Rational>& U_at(int b, int n) { return U[static_cast<std::size_t>(b - 1)][static_cast<std::size_t>(n)]; }
    const std::optional<Rational>& U_at(int b, int n) const { return U[static_cast<std::size_t>(b - 1)][static_cast<std::size_t>(n)]; }

    /// True when every defined entry equals the corresponding full-chain entry.
    bool consistent_with(const BidiagonalChain& c) const {
        for (int a = 1; a <= p; ++a)
            for (int n = 1; n < N; ++n)
                if (L_at(a, n) && *L_at(a, n) != c.L_at(a, n)) return false;
        for (int b = 1; b <= q; ++b)
            for (int n = 0; n < N; ++n)
                if (U_at(b, n) && *U_at(b, n) != c.U_at(b, n)) return false;
        return true;
    }
};

namespace detail {

/// Factorizes the (n,m)-perturbed moment matrix at size N, translating a
/// singular minor into the existence diagnosis for the perturbation step.
inline GaussBorel perturbed_gauss_borel(const DiscreteMeasureMatrix& mu, int N, int n, int m) {
    try {
        return gauss_borel(moment_matrix(christoffel_perturb(mu, n, m), N, N));
    } catch (const singular_leading_minor& e) {
        if (n > 0) throw perturbed_singular('B', n, e.order);
        throw perturbed_singular('A', m, e.order);
    }
}

inline bool is_unit_lower_bidiagonal(const RMatrix& m) {
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) {
            if (i == j) {
                if (m(i, j) != 1) return false;
            } else if (j != i - 1 && m(i, j) != 0) {
                return false;
            }
        }
    return true;
}

inline bool is_unit_super_upper_bidiagonal(const RMatrix& m) {
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) {
            if (j == i + 1) {
                if (m(i, j) != 1) return false;
            } else if (j != i && m(i, j) != 0) {
                return false;
            }
        }
    return true;
}

}  // namespace detail

/// Authoritative producer of the bidiagonal factorization, by quotients of
/// Gauss-Borel factors of the Christoffel-perturbed moment matrices:
///   U_b = U_{N,(b,0)}^{-1} U_{N,(b-1,0)},  L_a = L_{N,(0,a-1)} L_{N,(0,a)}^{-1}.
/// Each factor's declared bidiagonal shape and the full product
/// L_1...L_p U_q...U_1 = T_N are asserted before returning.
inline BidiagonalChain christoffel_chain(const DiscreteMeasureMatrix& mu, int N) {
    const int q = mu.q, p = mu.p;
    BidiagonalChain chain = BidiagonalChain::empty(N, p, q);

    GaussBorel base = gauss_borel(moment_matrix(mu, N, N));

    GaussBorel prevB = base;
    for (int b = 1; b <= q; ++b) {
        GaussBorel cur = detail::perturbed_gauss_borel(mu, N, b, 0);
        RMatrix Ub = cur.inv_U * prevB.U;  // U_{N,(b,0)}^{-1} U_{N,(b-1,0)}
        if (!detail::is_unit_super_upper_bidiagonal(Ub))
            throw std::logic_error("christoffel_chain: U factor not unit-superdiagonal bidiagonal");
        for (int n = 0; n < N; ++n) chain.U_at(b, n) = Ub(n, n);
        prevB = std::move(cur);
    }

    GaussBorel prevA = base;
    for (int a = 1; a <= p; ++a) {
        GaussBorel cur = detail::perturbed_gauss_borel(mu, N, 0, a);
        RMatrix La = prevA.L * cur.inv_L;  // L_{N,(0,a-1)} L_{N,(0,a)}^{-1}
        if (!detail::is_unit_lower_bidiagonal(La))
            throw std::logic_error("christoffel_chain: L factor not unit lower bidiagonal");
        for (int n = 1; n < N; ++n) chain.L_at(a, n) = La(n, n - 1);
        prevA = std::move(cur);
    }

    RMatrix t = base.L * (shift_block(q, N) * (moment_matrix(mu, N + q, N) * base.U));
    if (chain.product() != t)
        throw std::logic_error("christoffel_chain: factor product does not reconstruct T_N");
    return chain;
}

/// Tau-determinant tables.  tauB[b][n] is the b x b determinant of
/// B^(1..b) values at 0 with row offsets n..n+b-1 (defined for n <= N-b);
/// tauA[a][n] uses A component rows 1..a and reversed column order
/// n+a-1 down to n (defined for n <= N-a).  tauB[0][n] = tauA[0][n] = 1.
/// The transformed orthogonality exists up to N-b-1 exactly when the
/// corresponding table has no zero in n <= N-b-1.
struct TauTable {
    int N = 0, p = 1, q = 1;
    std::vector<std::vector<Rational>> tauB;  // [b][n], b in 0..q, n in 0..N-b
    std::vector<std::vector<Rational>> tauA;  // [a][n], a in 0..p, n in 0..N-a
};

inline TauTable tau_tables(const PolyFamily& fam) {
    const int N = fam.N, q = fam.q, p = fam.p;
    TauTable t;
    t.N = N;
    t.p = p;
    t.q = q;
    RMatrix b0 = fam.eval_B(Rational(0));
    RMatrix a0 = fam.eval_A(Rational(0));

    t.tauB.resize(static_cast<std::size_t>(q) + 1);
    t.tauB[0].assign(static_cast<std::size_t>(N) + 1, Rational(1));
    for (int b = 1; b <= q; ++b) {
        t.tauB[static_cast<std::size_t>(b)].resize(static_cast<std::size_t>(N - b) + 1);
        for (int n = 0; n <= N - b; ++n) {
            RMatrix w(b, b);
            for (int i = 0; i < b; ++i)
                for (int j = 0; j < b; ++j) w(i, j) = b0(n + i, j);
            t.tauB[static_cast<std::size_t>(b)][static_cast<std::size_t>(n)] = determinant(w);
        }
    }

    t.tauA.resize(static_cast<std::size_t>(p) + 1);
    t.tauA[0].assign(static_cast<std::size_t>(N) + 1, Rational(1));
    for (int a = 1; a <= p; ++a) {
        t.tauA[static_cast<std::size_t>(a)].resize(static_cast<std::size_t>(N - a) + 1);
        for (int n = 0; n <= N - a; ++n) {
            RMatrix w(a, a);
            for (int i = 0; i < a; ++i)
                for (int j = 0; j < a; ++j) w(i, j) = a0(i, n + a - 1 - j);
            t.tauA[static_cast<std::size_t>(a)][static_cast<std::size_t>(n)] = determinant(w);
        }
    }
    return t;
}

/// Christoffel formulas for the bidiagonal entries as cross-ratios of
/// tau-determinants:
///   U_{b,n}   = -tauB_{b-1,n} tauB_{b,n+1} / (tauB_{b-1,n+1} tauB_{b,n}),
///               n <= N-b-1,
///   L_{a,n+1} = -tauA_{a-1,n+2} tauA_{a,n} / (tauA_{a-1,n+1} tauA_{a,n+1}),
///               n <= N-a-1.
/// Entries outside these ranges (notably U_{1,N-1}) stay unavailable.
/// Throws tau_zero when a needed denominator vanishes.
inline PartialChain bidiag_from_tau(const TauTable& tau) {
    const int N = tau.N;
    PartialChain c = PartialChain::empty(N, tau.p, tau.q);
    auto tb = [&](int b, int n) -> const Rational& { return tau.tauB[static_cast<std::size_t>(b)][static_cast<std::size_t>(n)]; };
    auto ta = [&](int a, int n) -> const Rational& { return tau.tauA[static_cast<std::size_t>(a)][static_cast<std::size_t>(n)]; };

    for (int b = 1; b <= tau.q; ++b)
        for (int n = 0; n <= N - b - 1; ++n) {
            if (tb(b - 1, n + 1) == 0) throw tau_zero("tauB_" + std::to_string(b - 1), n + 1);
            if (tb(b, n) == 0) throw tau_zero("tauB_" + std::to_string(b), n);
            c.U_at(b, n) = -(tb(b - 1, n) * tb(b, n + 1)) / (tb(b - 1, n + 1) * tb(b, n));
        }
    for (int a = 1; a <= tau.p; ++a)
        for (int n = 0; n <= N - a - 1; ++n) {
            if (ta(a - 1, n + 1) == 0) throw tau_zero("tauA_" + std::to_string(a - 1), n + 1);
            if (ta(a, n + 1) == 0) throw tau_zero("tauA_" + std::to_string(a), n + 1);
            c.L_at(a, n + 1) = -(ta(a - 1, n + 2) * ta(a, n)) / (ta(a - 1, n + 1) * ta(a, n + 1));
        }
    return c;
}

/// Redundant recomputation of the chain entries from the triangular factors of
/// the perturbed factorizations, along two distinct entry formulas each:
///
///   ul2: L_{a,n} = (L_{N,(0,a-1)})_{n,n-1} - (L_{N,(0,a)})_{n,n-1}
///        U_{b,n} = (U_{N,(b-1,0)})_{n,n} / (U_{N,(b,0)})_{n,n}
///   ul3: L_{a,n} = (U_{N,(0,a)})_{n-1,n-1} / (U_{N,(0,a-1)})_{n,n}
///        U_{b,n} = (1-delta_{n,0}) (L_{N,(b,0)})_{n,n-1} - (L_{N,(b-1,0)})_{n+1,n}
///
/// The ul3 U-form needs the (n+1, n) entry and is therefore unavailable at
/// n = N-1 in size-N data.  coeff_alpha recomputes the quotient forms through
/// the perturbed polynomial families (leading coefficients of A components),
/// which exercises a genuinely different code path.
struct TriangularForms {
    PartialChain ul2, ul3, coeff_alpha;
};

inline TriangularForms bidiag_from_triangular(const DiscreteMeasureMatrix& mu, int N) {
    const int q = mu.q, p = mu.p;
    TriangularForms out;
    out.ul2 = PartialChain::empty(N, p, q);
    out.ul3 = PartialChain::empty(N, p, q);
    out.coeff_alpha = PartialChain::empty(N, p, q);

    std::vector<GaussBorel> left;  // (b,0) for b = 0..q
    for (int b = 0; b <= q; ++b) left.push_back(detail::perturbed_gauss_borel(mu, N, b, 0));
    std::vector<GaussBorel> right;  // (0,a) for a = 0..p
    for (int a = 0; a <= p; ++a) right.push_back(detail::perturbed_gauss_borel(mu, N, 0, a));

    for (int b = 1; b <= q; ++b) {
        const RMatrix& Uprev = left[static_cast<std::size_t>(b - 1)].U;
        const RMatrix& Ucur = left[static_cast<std::size_t>(b)].U;
        const RMatrix& Lprev = left[static_cast<std::size_t>(b - 1)].L;
        const RMatrix& Lcur = left[static_cast<std::size_t>(b)].L;
        for (int n = 0; n < N; ++n) {
            out.ul2.U_at(b, n) = Uprev(n, n) / Ucur(n, n);
            if (n + 1 < N) {
                Rational v = -Lprev(n + 1, n);
                if (n > 0) v += Lcur(n, n - 1);
                out.ul3.U_at(b, n) = v;
            }
        }
    }
    for (int a = 1; a <= p; ++a) {
        const RMatrix& Lprev = right[static_cast<std::size_t>(a - 1)].L;
        const RMatrix& Lcur = right[static_cast<std::size_t>(a)].L;
        const RMatrix& Uprev = right[static_cast<std::size_t>(a - 1)].U;
        const RMatrix& Ucur = right[static_cast<std::size_t>(a)].U;
        for (int n = 1; n < N; ++n) {
            out.ul2.L_at(a, n) = Lprev(n, n - 1) - Lcur(n, n - 1);
            out.ul3.L_at(a, n) = Ucur(n - 1, n - 1) / Uprev(n, n);
        }
    }

    // quotient forms through the perturbed families' leading coefficients:
    // the leading coefficient of A^(s_n+1)_n is the (n,n) entry of the U factor.
    {
        std::vector<PolyFamily> famL(static_cast<std::size_t>(q) + 1), famR(static_cast<std::size_t>(p) + 1);
        for (int b = 0; b <= q; ++b) famL[static_cast<std::size_t>(b)] = build_families(christoffel_perturb(mu, b, 0), N);
        for (int a = 0; a <= p; ++a) famR[static_cast<std::size_t>(a)] = build_families(christoffel_perturb(mu, 0, a), N);
        auto lead_A = [&](const PolyFamily& f, int n) {
            return f.A[static_cast<std::size_t>(n % f.p)][static_cast<std::size_t>(n)].leading();
        };
        for (int b = 1; b <= q; ++b)
            for (int n = 0; n < N; ++n)
                out.coeff_alpha.U_at(b, n) =
                    lead_A(famL[static_cast<std::size_t>(b - 1)], n) / lead_A(famL[static_cast<std::size_t>(b)], n);
        for (int a = 1; a <= p; ++a)
            for (int n = 1; n < N; ++n)
                out.coeff_alpha.L_at(a, n) =
                    lead_A(famR[static_cast<std::size_t>(a)], n - 1) / lead_A(famR[static_cast<std::size_t>(a - 1)], n);
    }
    return out;
}

/// Evaluates the integral formula for the one entry the tau formulas miss:
///   U_{1,N-1} = (1 / B^(1)_{N-1}(0)) e_1^T (int x^{N_q} X_[q,s_q] dmu A^[N])
///               (B^(1)_0(0), ..., B^(1)_{N-1}(0))^T.
inline Rational u1_last(const DiscreteMeasureMatrix& mu, const PolyFamily& fam) {
    const int N = fam.N, q = fam.q;
    RMatrix b0 = fam.eval_B(Rational(0));
    if (b0(N - 1, 0) == 0) throw zero_denominator("B^(1)_{N-1}(0) vanishes");
    const int Nq = N / q, sq = N % q;
    RMatrix border = pair_integral(
        mu,
        [&](const Rational& x) { return pow(x, static_cast<unsigned>(Nq)) * xblock(q, sq, x); },
        [&](const Rational& x) { return fam.eval_A(x); });
    Rational acc(0);
    for (int n = 0; n < N; ++n) acc += border(0, n) * b0(n, 0);
    return acc / b0(N - 1, 0);
}

/// Determinantal bridge between the two families:
///   (-1)^{(p-1)(n+1)} T_{p,0} T_{p+1,1} ... T_{n+p-1,n-1} tauA_{p,n}
///     = C (-1)^{(q-1) n} tauB_{q,n},   C = (-1)^{p-1} tauA_{p,0},
/// for n in 0..min(N-p, N-q), plus the quotient form (exact as displayed,
/// normalization-free)
///   (-1)^{p-1} (1/T_{n+p,n}) tauA_{p,n}/tauA_{p,n+1}
///     = (-1)^{q-1} tauB_{q,n}/tauB_{q,n+1}.
/// The n-independent constant C compensates for the unitriangular-L
/// normalization, under which tauB_{q,0} = 1 but tauA_{p,0} is a product of
/// U-diagonal entries; see DISCREPANCIES.md.
inline bool det_identity_check(const RecursionSet& rec, const TauTable& tau) {
    const int N = rec.N, p = rec.p, q = rec.q;
    if (N < p || N < q) return true;  // no overlap of the two tau windows
    auto ta = [&](int n) { return tau.tauA[static_cast<std::size_t>(p)][static_cast<std::size_t>(n)]; };
    auto tb = [&](int n) { return tau.tauB[static_cast<std::size_t>(q)][static_cast<std::size_t>(n)]; };

    const Rational C = (p - 1) % 2 ? -ta(0) : ta(0);
    Rational prod(1);
    const int top = std::min(N - p, N - q);
    for (int n = 0; n <= top; ++n) {
        if (n > 0) prod *= rec.T_dense(n + p - 1, n - 1);
        int sl = ((p - 1) * (n + 1)) % 2 ? -1 : 1;
        int sr = ((q - 1) * n) % 2 ? -1 : 1;
        if (sl * prod * ta(n) != C * sr * tb(n)) return false;
    }
    for (int n = 0; n + 1 <= top; ++n) {
        if (ta(n + 1) == 0 || tb(n + 1) == 0 || rec.T_dense(n + p, n) == 0) continue;
        int sl = (p - 1) % 2 ? -1 : 1;
        int sr = (q - 1) % 2 ? -1 : 1;
        if (sl * ta(n) / (rec.T_dense(n + p, n) * ta(n + 1)) != sr * tb(n) / tb(n + 1)) return false;
    }
    return true;
}

/// Conjugation identities between Christoffel-transformed recursion matrices:
///   U_b T^[N,N-p]_{(b-1,0)} (U_b^[N-p])^{-1} = T^[N,N-p]_{(b,0)},
///   (L_a^[N-q])^{-1} T^[N-q,N]_{(0,a-1)} L_a = T^[N-q,N]_{(0,a)},
/// plus the truncation identity for T_{N-p,(1,0)} with its rank-one corner
/// correction carried through (U_1^[N-p])^{-1}.
inline bool transformed_recursion_check(const DiscreteMeasureMatrix& mu, int N) {
    const int q = mu.q, p = mu.p;
    BidiagonalChain chain = christoffel_chain(mu, N);

    for (int b = 1; b <= q; ++b) {
        RecursionSet prev = recursion_matrices(christoffel_perturb(mu, b - 1, 0), N);
        RecursionSet cur = recursion_matrices(christoffel_perturb(mu, b, 0), N);
        RMatrix Ub = chain.U_factor(b);
        RMatrix Ub_trunc = Ub.leading(N - p);
        RMatrix lhs = Ub * prev.rect_A * tri_invert(Ub_trunc, Triangle::upper);
        if (lhs != cur.rect_A) return false;
    }
    for (int a = 1; a <= p; ++a) {
        RecursionSet prev = recursion_matrices(christoffel_perturb(mu, 0, a - 1), N);
        RecursionSet cur = recursion_matrices(christoffel_perturb(mu, 0, a), N);
        RMatrix La = chain.L_factor(a);
        RMatrix La_trunc = La.leading(N - q);
        RMatrix lhs = tri_invert(La_trunc, Triangle::lower) * prev.rect_B * La;
        if (lhs != cur.rect_B) return false;
    }

    // truncation identity: T_{M,(1,0)} = U_1^[M] L_1^[M] ... L_p^[M] U_q^[M] ... U_2^[M]
    //                      + e_M (e_1^T T^[N,N-p]) (U_1^[M])^{-1}-corrected corner
    {
        const int M = N - p;
        if (M > std::max(p, q)) {
            RecursionSet base = recursion_matrices(mu, N);
            RecursionSet pert = recursion_matrices(christoffel_perturb(mu, 1, 0), M);
            auto trunc = [&](const RMatrix& f) { return f.leading(M); };
            RMatrix prod = trunc(chain.U_factor(1));
            for (int a = 1; a <= p; ++a) prod = prod * trunc(chain.L_factor(a));
            for (int b = q; b >= 2; --b) prod = prod * trunc(chain.U_factor(b));
            // corner correction: last row picks up e_1^T corner_A, then the
            // whole corrected row passes through (U_1^[M])^{-1}
            RMatrix corr(M, M);
            if (base.corner_A.rows() == p)
                for (int j = 0; j < p; ++j) corr(M - 1, M - p + j) = base.corner_A(0, j);
            RMatrix rhs = prod + corr * tri_invert(trunc(chain.U_factor(1)), Triangle::upper);
            if (rhs != pert.T_dense) return false;
        }
    }
    return true;
}

}  // namespace mop
