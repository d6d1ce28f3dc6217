#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <string>

#include "mop/errors.hpp"

namespace mop {

/// Exact arbitrary-precision rational scalar.  Canonical form (gcd-reduced,
/// positive denominator, zero as 0/1) is maintained by the backing type after
/// every operation.
using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

inline Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0) throw zero_denominator();
    return Rational(num) / Rational(den);
}

inline Rational make_rational(long long num, long long den) {
    return make_rational(Integer(num), Integer(den));
}

/// Serializes as "num/den", or "num" when den = 1.
inline std::string to_string(const Rational& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

/// Parses the decimal string format "num/den" or "num" (optional leading '-').
inline Rational parse_rational(const std::string& s) {
    auto is_int = [](const std::string& t) {
        if (t.empty()) return false;
        std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (i == t.size()) return false;
        for (; i < t.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
        return true;
    };
    auto slash = s.find('/');
    if (slash == std::string::npos) {
        if (!is_int(s)) throw std::invalid_argument("bad rational literal: '" + s + "'");
        return Rational(Integer(s));
    }
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!is_int(num) || !is_int(den)) throw std::invalid_argument("bad rational literal: '" + s + "'");
    return make_rational(Integer(num), Integer(den));
}

inline Rational pow(const Rational& x, unsigned n) {
    Rational acc(1), base = x;
    while (n) {
        if (n & 1) acc *= base;
        base *= base;
        n >>= 1;
    }
    return acc;
}

}  // namespace mop
