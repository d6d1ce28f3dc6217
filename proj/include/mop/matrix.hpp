#pragma once

#include <initializer_list>
#include <vector>

#include "mop/errors.hpp"
#include "mop/rational.hpp"

namespace mop {

/// Dense matrix of exact rationals, row-major.  Sizes in this library stay at
/// desk scale (a few hundred at most), so no sparse or blocked storage.
class RMatrix {
public:
    RMatrix() = default;
    RMatrix(int rows, int cols) : rows_(rows), cols_(cols), e_(static_cast<std::size_t>(rows) * cols) {}

    RMatrix(std::initializer_list<std::initializer_list<Rational>> init) {
        rows_ = static_cast<int>(init.size());
        cols_ = rows_ ? static_cast<int>(init.begin()->size()) : 0;
        e_.reserve(static_cast<std::size_t>(rows_) * cols_);
        for (const auto& row : init) {
            if (static_cast<int>(row.size()) != cols_)
                throw std::invalid_argument("ragged initializer for RMatrix");
            for (const auto& v : row) e_.push_back(v);
        }
    }

    static RMatrix identity(int n) {
        RMatrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Rational& operator()(int i, int j) { return e_[static_cast<std::size_t>(i) * cols_ + j]; }
    const Rational& operator()(int i, int j) const { return e_[static_cast<std::size_t>(i) * cols_ + j]; }

    bool operator==(const RMatrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_; }
    bool operator!=(const RMatrix& o) const { return !(*this == o); }

    RMatrix transpose() const {
        RMatrix t(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    /// Copy of the block with rows [r0, r0+nr) and columns [c0, c0+nc).
    RMatrix block(int r0, int c0, int nr, int nc) const {
        RMatrix b(nr, nc);
        for (int i = 0; i < nr; ++i)
            for (int j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
        return b;
    }

    RMatrix leading(int n) const { return block(0, 0, n, n); }

    bool is_square() const { return rows_ == cols_; }

    friend RMatrix operator*(const RMatrix& a, const RMatrix& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("RMatrix product shape mismatch");
        RMatrix c(a.rows_, b.cols_);
        for (int i = 0; i < a.rows_; ++i)
            for (int k = 0; k < a.cols_; ++k) {
                const Rational& aik = a(i, k);
                if (aik == 0) continue;
                for (int j = 0; j < b.cols_; ++j) {
                    const Rational& bkj = b(k, j);
                    if (bkj != 0) c(i, j) += aik * bkj;
                }
            }
        return c;
    }

    friend RMatrix operator+(const RMatrix& a, const RMatrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw std::invalid_argument("RMatrix sum shape mismatch");
        RMatrix c(a.rows_, a.cols_);
        for (std::size_t i = 0; i < a.e_.size(); ++i) c.e_[i] = a.e_[i] + b.e_[i];
        return c;
    }

    friend RMatrix operator-(const RMatrix& a, const RMatrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw std::invalid_argument("RMatrix difference shape mismatch");
        RMatrix c(a.rows_, a.cols_);
        for (std::size_t i = 0; i < a.e_.size(); ++i) c.e_[i] = a.e_[i] - b.e_[i];
        return c;
    }

    friend RMatrix operator*(const Rational& s, const RMatrix& a) {
        RMatrix c(a.rows_, a.cols_);
        for (std::size_t i = 0; i < a.e_.size(); ++i) c.e_[i] = s * a.e_[i];
        return c;
    }

private:
    int rows_ = 0, cols_ = 0;
    std::vector<Rational> e_;
};

enum class Triangle { lower, upper };

/// Exact inverse of a triangular matrix of the declared kind; throws
/// zero_diagonal(k) (1-based) on a zero pivot.  Unitriangular input yields
/// unitriangular output.
inline RMatrix tri_invert(const RMatrix& t, Triangle kind) {
    if (!t.is_square()) throw std::invalid_argument("tri_invert: matrix not square");
    const int n = t.rows();
    for (int k = 0; k < n; ++k)
        if (t(k, k) == 0) throw zero_diagonal(k + 1);
    RMatrix inv(n, n);
    if (kind == Triangle::lower) {
        // forward substitution, column by column
        for (int j = 0; j < n; ++j) {
            inv(j, j) = Rational(1) / t(j, j);
            for (int i = j + 1; i < n; ++i) {
                Rational s;
                for (int k = j; k < i; ++k) s += t(i, k) * inv(k, j);
                inv(i, j) = -s / t(i, i);
            }
        }
    } else {
        for (int j = n - 1; j >= 0; --j) {
            inv(j, j) = Rational(1) / t(j, j);
            for (int i = j - 1; i >= 0; --i) {
                Rational s;
                for (int k = i + 1; k <= j; ++k) s += t(i, k) * inv(k, j);
                inv(i, j) = -s / t(i, i);
            }
        }
    }
    return inv;
}

/// Determinant by fraction-free Bareiss elimination with row swaps (sign
/// tracked).  Exact for rational entries; detects singularity exactly.
inline Rational determinant(const RMatrix& m) {
    if (!m.is_square()) throw std::invalid_argument("determinant: matrix not square");
    const int n = m.rows();
    if (n == 0) return Rational(1);
    RMatrix a = m;
    int sign = 1;
    Rational prev(1);
    for (int k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            int piv = -1;
            for (int i = k + 1; i < n; ++i)
                if (a(i, k) != 0) { piv = i; break; }
            if (piv < 0) return Rational(0);
            for (int j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j)
                a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
            a(i, k) = 0;
        }
        prev = a(k, k);
    }
    return sign > 0 ? a(n - 1, n - 1) : -a(n - 1, n - 1);
}

/// All n leading principal minors of a square matrix, in order 1..n.
inline std::vector<Rational> leading_minors(const RMatrix& m) {
    if (!m.is_square()) throw std::invalid_argument("leading_minors: matrix not square");
    std::vector<Rational> out;
    out.reserve(m.rows());
    for (int k = 1; k <= m.rows(); ++k) out.push_back(determinant(m.leading(k)));
    return out;
}

/// Gauss-Borel factorization data for a moment matrix M: M = L^{-1} U^{-1}
/// with L lower unitriangular and U upper triangular; this normalization is
/// fixed globally across the library.  inv_L and inv_U are the classic
/// Doolittle factors, M = inv_L * inv_U.
struct GaussBorel {
    RMatrix L, U;          // M = L^{-1} U^{-1}
    RMatrix inv_L, inv_U;  // M = inv_L * inv_U, inv_L unit lower
};

/// Pivot-free elimination: a zero pivot is a singular leading minor of the
/// input, reported as such rather than repaired.
inline GaussBorel gauss_borel(const RMatrix& m) {
    if (!m.is_square()) throw std::invalid_argument("gauss_borel: matrix not square");
    const int n = m.rows();
    RMatrix lt = RMatrix::identity(n);  // unit lower
    RMatrix ut = m;                     // becomes upper
    for (int k = 0; k < n; ++k) {
        if (ut(k, k) == 0) throw singular_leading_minor(k + 1);
        for (int i = k + 1; i < n; ++i) {
            if (ut(i, k) == 0) continue;
            Rational f = ut(i, k) / ut(k, k);
            lt(i, k) = f;
            for (int j = k; j < n; ++j) ut(i, j) -= f * ut(k, j);
            ut(i, k) = 0;
        }
    }
    GaussBorel gb;
    gb.inv_L = lt;
    gb.inv_U = ut;
    gb.L = tri_invert(lt, Triangle::lower);
    gb.U = tri_invert(ut, Triangle::upper);
    return gb;
}

}  // namespace mop
