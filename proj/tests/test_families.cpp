#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "mop/families.hpp"

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

}  // namespace

TEST_CASE("worked scalar example: B and A") {
    auto mu = scalar_measure({{1, 1}, {2, 1}});
    auto fam = build_families(mu, 2);
    // B_0 = 1, B_1 = x - 3/2 ; A_0 = 1/2, A_1 = 2x - 3
    CHECK(fam.B[0][0] == Poly({q(1)}));
    CHECK(fam.B[1][0] == Poly({q(-3, 2), q(1)}));
    CHECK(fam.A[0][0] == Poly({q(1, 2)}));
    CHECK(fam.A[0][1] == Poly({q(-3), q(2)}));
}

TEST_CASE("N=1 families") {
    auto mu = scalar_measure({{3, 4}});
    auto fam = build_families(mu, 1);
    CHECK(fam.B[0][0] == Poly({q(1)}));
    CHECK(fam.A[0][0] == Poly({fam.gb.U(0, 0)}));
    CHECK(fam.gb.U(0, 0) == q(1, 4));  // 1 / total mass
    CHECK(orthogonality_check(fam, mu));
}

TEST_CASE("step-line degree structure") {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 8; ++t) {
        int qq = 1 + static_cast<int>(rng() % 3), pp = 1 + static_cast<int>(rng() % 3);
        int nodes = 4 + static_cast<int>(rng() % 4);
        int N = std::min(8, nodes * std::min(qq, pp));
        auto mu = random_measure(rng, qq, pp, nodes);
        PolyFamily fam;
        try {
            fam = build_families(mu, N);
        } catch (const singular_leading_minor&) {
            continue;
        }
        for (int n = 0; n < N; ++n) {
            const Poly& head = fam.B[static_cast<std::size_t>(n)][static_cast<std::size_t>(n % qq)];
            CHECK(head.degree() == n / qq);
            CHECK(head.leading() == 1);  // monic under unitriangular L
        }
    }
}

TEST_CASE("duplicated identical columns violate factorizability") {
    // q=1, p=2, both columns the uniform weight on {0,1,2}
    DiscreteMeasureMatrix mu;
    mu.q = 1;
    mu.p = 2;
    for (long long x : {0, 1, 2}) mu.support.push_back({q(x), RMatrix{{q(1), q(1)}}});
    bool threw = false;
    try {
        build_families(mu, 4);
    } catch (const singular_leading_minor& e) {
        threw = true;
        // brute-force check: e.order is the first vanishing leading minor
        auto minors = leading_minors(moment_matrix(mu, 4, 4));
        for (int k = 0; k < e.order - 1; ++k) CHECK(minors[static_cast<std::size_t>(k)] != 0);
        CHECK(minors[static_cast<std::size_t>(e.order - 1)] == 0);
        CHECK(e.order == 2);
    }
    CHECK(threw);
}

TEST_CASE("orthogonality_check over random factorizable instances") {
    std::mt19937_64 rng(41);
    int done = 0;
    while (done < 12) {
        int qq = 1 + static_cast<int>(rng() % 3), pp = 1 + static_cast<int>(rng() % 3);
        int nodes = 3 + static_cast<int>(rng() % 5);
        int N = 1 + static_cast<int>(rng() % std::min(9, nodes * std::min(qq, pp)));
        auto mu = random_measure(rng, qq, pp, nodes);
        try {
            auto fam = build_families(mu, N);
            CHECK(orthogonality_check(fam, mu));
            ++done;
        } catch (const singular_leading_minor&) {
        }
    }
}

TEST_CASE("orthogonality falsification control") {
    auto mu = scalar_measure({{1, 1}, {2, 1}});
    auto fam = build_families(mu, 2);
    REQUIRE(orthogonality_check(fam, mu));
    fam.A[0][0] = Poly({q(7, 3)});  // corrupt A_0
    CHECK_FALSE(orthogonality_check(fam, mu));
}

TEST_CASE("border blocks: worked example and degenerate cases") {
    SECTION("two-node example, both routes agree (checked internally)") {
        auto mu = scalar_measure({{1, 1}, {2, 1}});
        auto fam = build_families(mu, 2);
        auto bb = border_blocks(mu, fam);
        // L_border = sum_k x_k^2 A^[2](x_k) w_k : [1*(1/2) + 4*(1/2), 1*(-1) + 4*(1)]
        CHECK(bb.L_border == RMatrix{{q(5, 2), q(3)}});
        // U_border = sum_k B^[2](x_k) w_k x_k^2 : [1 + 4 ; (-1/2)*1 + (1/2)*4]
        CHECK(bb.U_border == RMatrix{{q(5)}, {q(3, 2)}});
    }
    SECTION("single node at zero kills the border") {
        auto mu = scalar_measure({{0, 5}});
        auto fam = build_families(mu, 1);
        auto bb = border_blocks(mu, fam);
        CHECK(bb.L_border == RMatrix{{q(0)}});
        CHECK(bb.U_border == RMatrix{{q(0)}});
    }
    SECTION("U border at N=1 is the B_0-weighted first moment") {
        auto mu = scalar_measure({{2, 3}, {5, 1}});
        auto fam = build_families(mu, 1);
        auto bb = border_blocks(mu, fam);
        CHECK(bb.U_border == RMatrix{{q(2 * 3 + 5 * 1)}});
    }
    SECTION("random instances: internal two-route cross-check does not throw") {
        std::mt19937_64 rng(47);
        int done = 0;
        while (done < 10) {
            int qq = 1 + static_cast<int>(rng() % 3), pp = 1 + static_cast<int>(rng() % 3);
            int nodes = 3 + static_cast<int>(rng() % 4);
            int N = 1 + static_cast<int>(rng() % std::min(8, nodes * std::min(qq, pp)));
            auto mu = random_measure(rng, qq, pp, nodes);
            try {
                auto fam = build_families(mu, N);
                CHECK_NOTHROW(border_blocks(mu, fam));
                ++done;
            } catch (const singular_leading_minor&) {
            }
        }
    }
}
