#pragma once

#include <functional>
#include <set>
#include <vector>

#include "mop/matrix.hpp"

namespace mop {

/// A q x p matrix of discrete measures: finitely many distinct rational nodes,
/// each carrying a q x p rational weight matrix.  Signed weights are allowed;
/// only Gauss-Borel factorizability is ever required downstream.
struct DiscreteMeasureMatrix {
    struct Atom {
        Rational node;
        RMatrix weight;  // q x p
    };

    int q = 1, p = 1;
    std::vector<Atom> support;

    void validate() const {
        std::set<Rational> seen;
        for (const auto& a : support) {
            if (a.weight.rows() != q || a.weight.cols() != p)
                throw std::invalid_argument("measure weight has wrong shape");
            if (!seen.insert(a.node).second)
                throw std::invalid_argument("measure support nodes not pairwise distinct");
        }
    }
};

/// Truncated matrix of monomials X^[N]_[r](x), N x r.  Row n has the single
/// nonzero x^(n/r) in column n mod r.
inline RMatrix monomial_matrix(int r, int N, const Rational& x) {
    RMatrix m(N, r);
    for (int n = 0; n < N; ++n) m(n, n % r) = pow(x, static_cast<unsigned>(n / r));
    return m;
}

/// Single-step truncated shift: N x (N+1) with ones at (i, i+1).
inline RMatrix shift_single(int N) {
    RMatrix m(N, N + 1);
    for (int i = 0; i < N; ++i) m(i, i + 1) = 1;
    return m;
}

/// Bordered block shift Lambda^[N,N+r]_[r]: first N rows of the infinite
/// r-block shift, i.e. ones at (i, i+r).  Satisfies
/// shift_block(r,N) * X^[N+r](x) = x * X^[N](x) for all x.
inline RMatrix shift_block(int r, int N) {
    RMatrix m(N, N + r);
    for (int i = 0; i < N; ++i) m(i, i + r) = 1;
    return m;
}

/// First-degree matrix polynomial evaluated at x, raised to power s via its
/// block form: r x r, identity block of size r-s over x-block of size s.
/// xblock(r, r, x) = x*I_r and xblock(r, s, x) = xblock(r, 1, x)^s.
inline RMatrix xblock(int r, int s, const Rational& x) {
    // allow s > r through the semigroup property X_[r,s] X_[r,s'] = X_[r,s+s']
    RMatrix m(r, r);
    int whole = s / r, rem = s % r;
    Rational xw = pow(x, static_cast<unsigned>(whole));
    for (int i = 0; i < r - rem; ++i) m(i, rem + i) = xw;
    for (int i = 0; i < rem; ++i) m(r - rem + i, i) = xw * x;
    return m;
}

/// Moment matrix M^[N,M] = sum_k X^[N]_[q](x_k) W_k (X^[M]_[p](x_k))^T.
/// Accumulated entrywise: entry (q*m + j, p*m' + i) receives
/// x_k^(m+m') * (W_k)_{j,i} from each node.
inline RMatrix moment_matrix(const DiscreteMeasureMatrix& mu, int N, int M) {
    const int q = mu.q, p = mu.p;
    RMatrix out(N, M);
    const int maxpow = (N - 1) / q + (M - 1) / p;
    for (const auto& atom : mu.support) {
        std::vector<Rational> xp(static_cast<std::size_t>(maxpow) + 1);
        xp[0] = 1;
        for (int t = 1; t <= maxpow; ++t) xp[static_cast<std::size_t>(t)] = xp[static_cast<std::size_t>(t - 1)] * atom.node;
        for (int n = 0; n < N; ++n) {
            const int m = n / q, j = n % q;
            for (int c = 0; c < M; ++c) {
                const int mp = c / p, i = c % p;
                const Rational& w = atom.weight(j, i);
                if (w != 0) out(n, c) += xp[static_cast<std::size_t>(m + mp)] * w;
            }
        }
    }
    return out;
}

/// Weighted-sum pairing over the support: sum_k F(x_k) W_k G(x_k).
/// Every block formula written as an integral routes through here.
inline RMatrix pair_integral(const DiscreteMeasureMatrix& mu,
                             const std::function<RMatrix(const Rational&)>& F,
                             const std::function<RMatrix(const Rational&)>& G) {
    RMatrix acc;
    bool first = true;
    for (const auto& atom : mu.support) {
        RMatrix term = F(atom.node) * atom.weight * G(atom.node);
        if (first) {
            acc = term;
            first = false;
        } else {
            acc = acc + term;
        }
    }
    if (first) throw std::invalid_argument("pair_integral: empty support");
    return acc;
}

/// Block Hankel symmetry:
/// Lambda^[N,N+q]_[q] M^[N+q,M] = M^[N,M+p] (Lambda^[M,M+p]_[p])^T.
inline bool hankel_check(const DiscreteMeasureMatrix& mu, int N, int M) {
    RMatrix lhs = shift_block(mu.q, N) * moment_matrix(mu, N + mu.q, M);
    RMatrix rhs = moment_matrix(mu, N, M + mu.p) * shift_block(mu.p, M).transpose();
    return lhs == rhs;
}

/// Christoffel perturbation d mu_(n,m): weight W_k becomes
/// X_[q,1](x_k)^n W_k (X_[p,1](x_k)^m)^T.
inline DiscreteMeasureMatrix christoffel_perturb(const DiscreteMeasureMatrix& mu, int n, int m) {
    DiscreteMeasureMatrix out = mu;
    for (auto& atom : out.support) {
        RMatrix w = atom.weight;
        if (n > 0) w = xblock(mu.q, n, atom.node) * w;
        if (m > 0) w = w * xblock(mu.p, m, atom.node).transpose();
        atom.weight = w;
    }
    return out;
}

}  // namespace mop
