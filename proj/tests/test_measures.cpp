#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "mop/measures.hpp"

using namespace mop;

namespace {

Rational q(long long n, long long d = 1) { return make_rational(n, d); }

DiscreteMeasureMatrix scalar_measure(std::initializer_list<std::pair<long long, long long>> pts) {
    DiscreteMeasureMatrix mu;
    mu.q = mu.p = 1;
    for (auto [node, w] : pts) {
        RMatrix wm(1, 1);
        wm(0, 0) = q(w);
        mu.support.push_back({q(node), wm});
    }
    mu.validate();
    return mu;
}

DiscreteMeasureMatrix random_measure(std::mt19937_64& rng, int qq, int pp, int nodes) {
    DiscreteMeasureMatrix mu;
    mu.q = qq;
    mu.p = pp;
    std::set<Rational> used;
    for (int k = 0; k < nodes; ++k) {
        Rational node;
        do {
            node = q(static_cast<long long>(rng() % 25) - 12, 1 + static_cast<long long>(rng() % 4));
        } while (!used.insert(node).second);
        RMatrix w(qq, pp);
        for (int i = 0; i < qq; ++i)
            for (int j = 0; j < pp; ++j)
                w(i, j) = q(static_cast<long long>(rng() % 17) - 8, 1 + static_cast<long long>(rng() % 5));
        mu.support.push_back({node, w});
    }
    mu.validate();
    return mu;
}

// Oracle for the moment matrix: materialize X^[N](x_k) per node.
RMatrix moment_oracle(const DiscreteMeasureMatrix& mu, int N, int M) {
    RMatrix acc(N, M);
    for (const auto& atom : mu.support) {
        RMatrix xn = monomial_matrix(mu.q, N, atom.node);
        RMatrix xm = monomial_matrix(mu.p, M, atom.node);
        acc = acc + xn * atom.weight * xm.transpose();
    }
    return acc;
}

}  // namespace

TEST_CASE("monomial_matrix block form") {
    // r=2, N=3, x=5: N_r=1, s_r=1: rows I_2 then 5*I_{1,2}
    CHECK(monomial_matrix(2, 3, q(5)) == RMatrix{{q(1), q(0)}, {q(0), q(1)}, {q(5), q(0)}});
    CHECK(monomial_matrix(1, 3, q(2)) == RMatrix{{q(1)}, {q(2)}, {q(4)}});
    CHECK(monomial_matrix(3, 3, q(7)) == RMatrix::identity(3));
}

TEST_CASE("shift_block examples") {
    CHECK(shift_block(1, 2) == RMatrix{{q(0), q(1), q(0)}, {q(0), q(0), q(1)}});
    CHECK(shift_block(2, 2) == RMatrix{{q(0), q(0), q(1), q(0)}, {q(0), q(0), q(0), q(1)}});
    // factorization into single-step shifts
    CHECK(shift_single(2) * shift_single(3) == shift_block(2, 2));
    RMatrix acc = shift_single(5);
    for (int i = 1; i < 3; ++i) acc = acc * shift_single(5 + i);
    CHECK(acc == shift_block(3, 5));
}

TEST_CASE("spectral relation Lambda X = x X") {
    std::mt19937_64 rng(5);
    for (int r = 1; r <= 4; ++r)
        for (int N = 1; N <= 12; N += 3)
            for (int t = 0; t < 20; ++t) {
                Rational x = q(static_cast<long long>(rng() % 31) - 15, 1 + static_cast<long long>(rng() % 7));
                CHECK(shift_block(r, N) * monomial_matrix(r, N + r, x) == x * monomial_matrix(r, N, x));
            }
}

TEST_CASE("xblock structure and semigroup") {
    Rational x = q(3, 2);
    CHECK(xblock(3, 3, x) == x * RMatrix::identity(3));
    CHECK(xblock(3, 0, x) == RMatrix::identity(3));
    // X_[r,s] = X_[r,1]^s
    RMatrix x1 = xblock(3, 1, x), acc = RMatrix::identity(3);
    for (int s = 0; s <= 5; ++s) {
        CHECK(xblock(3, s, x) == acc);
        acc = acc * x1;
    }
    // commuting semigroup
    CHECK(xblock(3, 2, x) * xblock(3, 2, x) == xblock(3, 4, x));
}

TEST_CASE("moment_matrix examples") {
    auto mu0 = scalar_measure({{0, 3}});
    CHECK(moment_matrix(mu0, 2, 2) == RMatrix{{q(3), q(0)}, {q(0), q(0)}});

    auto mu = scalar_measure({{1, 1}, {2, 1}});
    CHECK(moment_matrix(mu, 2, 2) == RMatrix{{q(2), q(3)}, {q(3), q(5)}});

    DiscreteMeasureMatrix wide;
    wide.q = 1;
    wide.p = 2;
    wide.support.push_back({q(1), RMatrix{{q(1), q(1)}}});
    CHECK(moment_matrix(wide, 2, 2) == RMatrix{{q(1), q(1)}, {q(1), q(1)}});
}

TEST_CASE("moment_matrix equals materialized oracle") {
    std::mt19937_64 rng(17);
    for (int t = 0; t < 25; ++t) {
        int qq = 1 + static_cast<int>(rng() % 3), pp = 1 + static_cast<int>(rng() % 3);
        auto mu = random_measure(rng, qq, pp, 1 + static_cast<int>(rng() % 5));
        int N = 1 + static_cast<int>(rng() % 9), M = 1 + static_cast<int>(rng() % 9);
        CHECK(moment_matrix(mu, N, M) == moment_oracle(mu, N, M));
    }
}

TEST_CASE("hankel symmetry") {
    auto mu = scalar_measure({{1, 1}, {2, 1}});
    CHECK(hankel_check(mu, 3, 3));
    CHECK(hankel_check(mu, 2, 2));

    std::mt19937_64 rng(29);
    for (int t = 0; t < 15; ++t) {
        auto m = random_measure(rng, 1 + static_cast<int>(rng() % 3), 1 + static_cast<int>(rng() % 3),
                                1 + static_cast<int>(rng() % 6));
        for (int N = 1; N <= 12; N += 4)
            for (int M = 1; M <= 12; M += 5) CHECK(hankel_check(m, N, M));
    }

    // falsification control: corrupt a moment entry that enters the identity
    RMatrix lhs = shift_block(1, 2) * moment_matrix(mu, 3, 2);
    RMatrix bad = moment_matrix(mu, 2, 3);
    bad(0, 1) += 1;
    CHECK(lhs != bad * shift_block(1, 2).transpose());
}

TEST_CASE("christoffel_perturb") {
    auto mu = scalar_measure({{1, 1}, {2, 1}});
    SECTION("(0,0) is the identity") {
        auto same = christoffel_perturb(mu, 0, 0);
        REQUIRE(same.support.size() == 2);
        CHECK(same.support[0].weight == mu.support[0].weight);
        CHECK(same.support[1].weight == mu.support[1].weight);
    }
    SECTION("scalar left perturbation is x d mu") {
        auto pert = christoffel_perturb(mu, 1, 0);
        CHECK(pert.support[0].weight(0, 0) == 1);
        CHECK(pert.support[1].weight(0, 0) == 2);
    }
    SECTION("q=2 single-node left perturbation") {
        DiscreteMeasureMatrix m2;
        m2.q = 2;
        m2.p = 1;
        Rational c = q(5, 3);
        RMatrix w{{q(2)}, {q(7)}};
        m2.support.push_back({c, w});
        auto pert = christoffel_perturb(m2, 1, 0);
        // weight becomes [[0,1],[c,0]] * W
        CHECK(pert.support[0].weight == RMatrix{{q(7)}, {c * q(2)}});
    }
}

TEST_CASE("perturbation composition and scalar-multiple identity") {
    std::mt19937_64 rng(31);
    for (int t = 0; t < 10; ++t) {
        int qq = 1 + static_cast<int>(rng() % 3), pp = 1 + static_cast<int>(rng() % 3);
        auto mu = random_measure(rng, qq, pp, 1 + static_cast<int>(rng() % 4));
        auto two_step = christoffel_perturb(christoffel_perturb(mu, 2, 0), 1, 0);
        auto one_step = christoffel_perturb(mu, 3, 0);
        for (std::size_t k = 0; k < mu.support.size(); ++k)
            CHECK(two_step.support[k].weight == one_step.support[k].weight);
        auto right2 = christoffel_perturb(christoffel_perturb(mu, 0, 1), 0, 1);
        auto right1 = christoffel_perturb(mu, 0, 2);
        for (std::size_t k = 0; k < mu.support.size(); ++k)
            CHECK(right2.support[k].weight == right1.support[k].weight);

        // full cycles on either side both equal x * d mu
        auto left_full = christoffel_perturb(mu, qq, 0);
        auto right_full = christoffel_perturb(mu, 0, pp);
        for (std::size_t k = 0; k < mu.support.size(); ++k) {
            RMatrix scaled = mu.support[k].node * mu.support[k].weight;
            CHECK(left_full.support[k].weight == scaled);
            CHECK(right_full.support[k].weight == scaled);
        }
    }
}
