#pragma once

#include <algorithm>
#include <cstdlib>
#include <vector>

#include "mop/matrix.hpp"

namespace mop {

/// Validated banded view of a square matrix: `sub` subdiagonals and `super`
/// superdiagonals.  Storage is one array per diagonal, keyed by offset
/// o in [-sub, super]; diagonal o has length dim - |o|.  This is a view type,
/// not an arithmetic engine: convert back to RMatrix for products.
class Banded {
public:
    Banded(int dim, int sub, int super)
        : dim_(dim), sub_(sub), super_(super), diags_(static_cast<std::size_t>(sub + super + 1)) {
        for (int o = -sub_; o <= super_; ++o)
            diags_[static_cast<std::size_t>(o + sub_)].assign(
                static_cast<std::size_t>(std::max(0, dim_ - std::abs(o))), Rational(0));
    }

    int dim() const { return dim_; }
    int sub() const { return sub_; }
    int super() const { return super_; }

    /// Diagonal with offset o (o > 0 above the main diagonal).
    std::vector<Rational>& diagonal(int o) { return diags_[static_cast<std::size_t>(o + sub_)]; }
    const std::vector<Rational>& diagonal(int o) const { return diags_[static_cast<std::size_t>(o + sub_)]; }

    /// Entry (i, j); zero outside the band.
    Rational entry(int i, int j) const {
        int o = j - i;
        if (o > super_ || -o > sub_) return Rational(0);
        return diags_[static_cast<std::size_t>(o + sub_)][static_cast<std::size_t>(o >= 0 ? i : j)];
    }

    RMatrix to_dense() const {
        RMatrix m(dim_, dim_);
        for (int i = 0; i < dim_; ++i)
            for (int j = std::max(0, i - sub_); j <= std::min(dim_ - 1, i + super_); ++j)
                m(i, j) = entry(i, j);
        return m;
    }

private:
    int dim_, sub_, super_;
    std::vector<std::vector<Rational>> diags_;
};

/// Extracts the banded view with p subdiagonals and q superdiagonals; throws
/// band_violation on the first nonzero entry outside the declared band.
inline Banded band_extract(const RMatrix& m, int p, int q) {
    if (!m.is_square()) throw std::invalid_argument("band_extract: matrix not square");
    const int n = m.rows();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            int o = j - i;
            if ((o > q || -o > p) && m(i, j) != 0) throw band_violation(i, j, to_string(m(i, j)));
        }
    Banded b(n, p, q);
    for (int i = 0; i < n; ++i)
        for (int j = std::max(0, i - p); j <= std::min(n - 1, i + q); ++j) {
            int o = j - i;
            b.diagonal(o)[static_cast<std::size_t>(o >= 0 ? i : j)] = m(i, j);
        }
    return b;
}

}  // namespace mop
