#pragma once

#include <stdexcept>
#include <string>

namespace mop {

/// Base class for all mathematically meaningful failure conditions.
/// These are reportable outcomes (a zero pivot is a statement about the
/// input measure, not a bug), distinct from std::logic_error which we
/// reserve for internal consistency violations.
class math_error : public std::runtime_error {
public:
    explicit math_error(const std::string& what) : std::runtime_error(what) {}
};

/// k-th leading principal minor (1-based order) of a moment matrix vanishes,
/// so the Gauss-Borel factorization does not exist.
class singular_leading_minor : public math_error {
public:
    int order;
    explicit singular_leading_minor(int k)
        : math_error("singular leading principal minor of order " + std::to_string(k)), order(k) {}
};

/// Triangular matrix has a zero diagonal entry (1-based index k).
class zero_diagonal : public math_error {
public:
    int index;
    explicit zero_diagonal(int k)
        : math_error("zero diagonal entry at index " + std::to_string(k)), index(k) {}
};

/// A matrix claimed to be banded has a nonzero entry outside the band.
class band_violation : public math_error {
public:
    int row, col;
    std::string value;
    band_violation(int i, int j, std::string v)
        : math_error("nonzero entry outside declared band at (" + std::to_string(i) + "," +
                     std::to_string(j) + ") = " + v),
          row(i), col(j), value(std::move(v)) {}
};

/// A Christoffel-perturbed moment matrix fails to factorize.  side is "B" for
/// left perturbations (b,0) and "A" for right perturbations (0,a); step is the
/// perturbation index b or a, minor_order the vanishing leading minor.
class perturbed_singular : public math_error {
public:
    char side;  // 'B' or 'A'
    int step;
    int minor_order;
    perturbed_singular(char s, int st, int k)
        : math_error(std::string("perturbed moment matrix singular: side ") + s + ", step " +
                     std::to_string(st) + ", minor order " + std::to_string(k)),
          side(s), step(st), minor_order(k) {}
};

/// A tau-determinant required as a denominator vanishes.
class tau_zero : public math_error {
public:
    std::string which;
    int index;
    tau_zero(std::string w, int n)
        : math_error("vanishing tau-determinant " + w + " at n = " + std::to_string(n)),
          which(std::move(w)), index(n) {}
};

/// Hypergeometric series with no nonpositive-integer top parameter.
class non_terminating : public math_error {
public:
    non_terminating() : math_error("hypergeometric series does not terminate") {}
};

/// A bottom-parameter Pochhammer factor used by the truncated sum is zero.
class bottom_pole : public math_error {
public:
    bottom_pole() : math_error("zero factor in a used bottom Pochhammer") {}
};

class zero_denominator : public math_error {
public:
    zero_denominator() : math_error("zero denominator") {}
    explicit zero_denominator(const std::string& ctx) : math_error("zero denominator: " + ctx) {}
};

/// A type-I Hahn evaluation was requested for a component with n_a = 0.
class index_out_of_family : public math_error {
public:
    index_out_of_family() : math_error("type-I component index outside family (n_a = 0)") {}
};

/// A 2x2 hypergeometric determinant required as a denominator vanishes.
class determinant_zero : public math_error {
public:
    determinant_zero() : math_error("vanishing hypergeometric determinant") {}
};

}  // namespace mop
