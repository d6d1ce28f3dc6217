#pragma once

#include <vector>

#include "mop/rational.hpp"

namespace mop {

/// Dense univariate polynomial over the rationals, monomial basis.
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

    static Poly constant(const Rational& v) { return Poly(std::vector<Rational>{v}); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for the zero polynomial
    bool is_zero() const { return c_.empty(); }

    const Rational& coeff(int k) const {
        static const Rational zero(0);
        return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[static_cast<std::size_t>(k)] : zero;
    }

    Rational leading() const { return c_.empty() ? Rational(0) : c_.back(); }

    Rational operator()(const Rational& x) const {
        Rational acc(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    Poly& add_term(int k, const Rational& v) {
        if (k >= static_cast<int>(c_.size())) c_.resize(static_cast<std::size_t>(k) + 1);
        c_[static_cast<std::size_t>(k)] += v;
        trim();
        return *this;
    }

    bool operator==(const Poly& o) const { return c_ == o.c_; }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<Rational> c_;
};

}  // namespace mop
