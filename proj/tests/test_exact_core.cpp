#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "mop/banded.hpp"
#include "mop/matrix.hpp"

using namespace mop;

namespace {

Rational q(long long n, long long d = 1) { return make_rational(n, d); }

// Independent determinant oracle: cofactor expansion along the first row.
Rational det_cofactor(const RMatrix& m) {
    const int n = m.rows();
    if (n == 0) return Rational(1);
    if (n == 1) return m(0, 0);
    Rational acc(0);
    for (int j = 0; j < n; ++j) {
        if (m(0, j) == 0) continue;
        RMatrix minor(n - 1, n - 1);
        for (int i = 1; i < n; ++i)
            for (int k = 0, c = 0; k < n; ++k) {
                if (k == j) continue;
                minor(i - 1, c++) = m(i, k);
            }
        Rational term = m(0, j) * det_cofactor(minor);
        acc += (j % 2 ? -term : term);
    }
    return acc;
}

RMatrix random_matrix(std::mt19937_64& rng, int n) {
    RMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            m(i, j) = q(static_cast<long long>(rng() % 19) - 9, static_cast<long long>(rng() % 6) + 1);
    return m;
}

}  // namespace

TEST_CASE("rational parsing and printing") {
    CHECK(to_string(parse_rational("2/4")) == "1/2");
    CHECK(to_string(parse_rational("-3/2")) == "-3/2");
    CHECK(to_string(parse_rational("0")) == "0");
    CHECK(to_string(parse_rational("7")) == "7");
    CHECK(denominator(parse_rational("0/5")) == 1);
    CHECK_THROWS_AS(make_rational(1, 0), zero_denominator);
    CHECK_THROWS_AS(parse_rational("1.5"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("a/b"), std::invalid_argument);
}

TEST_CASE("gauss_borel identity") {
    auto gb = gauss_borel(RMatrix::identity(3));
    CHECK(gb.L == RMatrix::identity(3));
    CHECK(gb.U == RMatrix::identity(3));
}

TEST_CASE("gauss_borel worked 2x2") {
    RMatrix m{{q(2), q(3)}, {q(3), q(5)}};
    auto gb = gauss_borel(m);
    // hand LU: inv_L = [[1,0],[3/2,1]], inv_U = [[2,3],[0,1/2]]; then invert
    CHECK(gb.inv_L == RMatrix{{q(1), q(0)}, {q(3, 2), q(1)}});
    CHECK(gb.inv_U == RMatrix{{q(2), q(3)}, {q(0), q(1, 2)}});
    CHECK(gb.L == RMatrix{{q(1), q(0)}, {q(-3, 2), q(1)}});
    CHECK(gb.U == RMatrix{{q(1, 2), q(-3)}, {q(0), q(2)}});
}

TEST_CASE("gauss_borel singular minor") {
    RMatrix m{{q(0), q(1)}, {q(1), q(0)}};
    CHECK_THROWS_MATCHES(gauss_borel(m), singular_leading_minor,
                         Catch::Matchers::Predicate<singular_leading_minor>(
                             [](const singular_leading_minor& e) { return e.order == 1; }));
}

TEST_CASE("leading_minors examples") {
    CHECK(leading_minors(RMatrix::identity(2)) == std::vector<Rational>{q(1), q(1)});
    RMatrix m{{q(2), q(3)}, {q(3), q(5)}};
    CHECK(leading_minors(m) == std::vector<Rational>{q(2), q(1)});
    RMatrix z(2, 2);
    CHECK(leading_minors(z) == std::vector<Rational>{q(0), q(0)});
}

TEST_CASE("determinant matches cofactor oracle on random matrices") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        int n = 1 + static_cast<int>(rng() % 5);
        RMatrix m = random_matrix(rng, n);
        CHECK(determinant(m) == det_cofactor(m));
    }
}

TEST_CASE("tri_invert examples") {
    CHECK(tri_invert(RMatrix::identity(4), Triangle::upper) == RMatrix::identity(4));
    RMatrix u{{q(2), q(3)}, {q(0), q(1, 2)}};
    CHECK(tri_invert(u, Triangle::upper) == RMatrix{{q(1, 2), q(-3)}, {q(0), q(2)}});
    RMatrix bad{{q(1), q(0)}, {q(5), q(0)}};
    CHECK_THROWS_MATCHES(tri_invert(bad, Triangle::lower), zero_diagonal,
                         Catch::Matchers::Predicate<zero_diagonal>(
                             [](const zero_diagonal& e) { return e.index == 2; }));
}

TEST_CASE("tri_invert involution and unitriangular preservation") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        int n = 1 + static_cast<int>(rng() % 6);
        RMatrix t(n, n);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < i; ++j) t(i, j) = q(static_cast<long long>(rng() % 9) - 4, 1 + static_cast<long long>(rng() % 4));
            t(i, i) = 1;
        }
        RMatrix inv = tri_invert(t, Triangle::lower);
        for (int i = 0; i < n; ++i) CHECK(inv(i, i) == 1);
        CHECK(tri_invert(inv, Triangle::lower) == t);
        CHECK(t * inv == RMatrix::identity(n));
    }
}

TEST_CASE("factorization reconstructs the matrix and succeeds iff minors nonzero") {
    std::mt19937_64 rng(23);
    int successes = 0, failures = 0;
    for (int trial = 0; trial < 60; ++trial) {
        int n = 1 + static_cast<int>(rng() % 5);
        RMatrix m = random_matrix(rng, n);
        if (rng() % 4 == 0) {
            // plant an early singular minor
            m(0, 0) = 0;
        }
        auto minors = leading_minors(m);
        bool all_nonzero = true;
        int first_zero = 0;
        for (int k = 0; k < n; ++k)
            if (minors[static_cast<std::size_t>(k)] == 0) {
                all_nonzero = false;
                first_zero = k + 1;
                break;
            }
        if (all_nonzero) {
            auto gb = gauss_borel(m);
            CHECK(tri_invert(gb.L, Triangle::lower) * tri_invert(gb.U, Triangle::upper) == m);
            CHECK(gb.inv_L * gb.inv_U == m);
            ++successes;
        } else {
            CHECK_THROWS_MATCHES(gauss_borel(m), singular_leading_minor,
                                 Catch::Matchers::Predicate<singular_leading_minor>(
                                     [&](const singular_leading_minor& e) { return e.order == first_zero; }));
            ++failures;
        }
    }
    CHECK(successes > 0);
    CHECK(failures > 0);
}

TEST_CASE("band_extract") {
    RMatrix d(3, 3);
    d(0, 0) = 1;
    d(1, 1) = 2;
    d(2, 2) = 3;
    Banded b = band_extract(d, 0, 0);
    CHECK(b.diagonal(0) == std::vector<Rational>{q(1), q(2), q(3)});
    CHECK(b.to_dense() == d);

    RMatrix full{{q(1), q(1)}, {q(1), q(1)}};
    Banded b2 = band_extract(full, 1, 1);
    CHECK(b2.diagonal(-1) == std::vector<Rational>{q(1)});
    CHECK(b2.diagonal(1) == std::vector<Rational>{q(1)});
    CHECK(b2.to_dense() == full);

    RMatrix viol{{q(1), q(2)}, {q(0), q(1)}};
    CHECK_THROWS_MATCHES(band_extract(viol, 0, 0), band_violation,
                         Catch::Matchers::Predicate<band_violation>([](const band_violation& e) {
                             return e.row == 0 && e.col == 1 && e.value == "2";
                         }));
}
