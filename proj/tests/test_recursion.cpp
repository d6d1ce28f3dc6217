#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "mop/recursion.hpp"

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

TEST_CASE("worked scalar example: T_2") {
    auto mu = scalar_measure({{1, 1}, {2, 1}});
    auto rec = recursion_matrices(mu, 2);
    CHECK(rec.T_dense == RMatrix{{q(3, 2), q(1)}, {q(1, 4), q(3, 2)}});
    CHECK(rec.T.diagonal(1) == std::vector<Rational>{q(1)});
}

TEST_CASE("recursion relations at rational points and support nodes") {
    auto mu = scalar_measure({{1, 1}, {2, 1}, {3, 2}});
    auto fam = build_families(mu, 3);
    auto rec = recursion_matrices(mu, 3);
    CHECK(recursion_relation_check(fam, rec, q(7)));
    CHECK(recursion_relation_check(fam, rec, q(1)));   // support node
    CHECK(recursion_relation_check(fam, rec, q(0)));
    CHECK(recursion_relation_check(fam, rec, q(-5, 3)));

    SECTION("falsification: corrupt a T entry") {
        rec.rect_B(0, 0) += 1;
        CHECK_FALSE(recursion_relation_check(fam, rec, q(7)));
    }
}

TEST_CASE("random instances: structure, truncation consistency, polynomial identity") {
    std::mt19937_64 rng(59);
    int done = 0;
    while (done < 10) {
        int qq = 1 + static_cast<int>(rng() % 3), pp = 1 + static_cast<int>(rng() % 3);
        int nodes = 4 + static_cast<int>(rng() % 5);
        int lo = 2 * std::max(qq, pp);
        int hi = std::min(12, nodes * std::min(qq, pp));
        if (hi < lo) continue;
        int N = lo + static_cast<int>(rng() % (hi - lo + 1));
        auto mu = random_measure(rng, qq, pp, nodes);
        RecursionSet rec;
        PolyFamily fam;
        try {
            fam = build_families(mu, N);
            rec = recursion_matrices(mu, N);
        } catch (const singular_leading_minor&) {
            continue;
        }
        ++done;

        // banded with unit q-th superdiagonal (validated in construction; spot check)
        for (const Rational& v : rec.T.diagonal(qq)) CHECK(v == 1);

        // truncation consistency: leading block of T_N equals T_{N-q} built at N-q
        if (N - qq > std::max(qq, pp)) {
            auto recq = recursion_matrices(mu, N - qq);
            CHECK(rec.T_dense.leading(N - qq) == recq.T_dense);
        }

        // recursion relations hold as polynomial identities: check at deg+1 points
        int deg = N / std::min(qq, pp) + 1;
        bool all = true;
        for (int k = 0; k <= deg; ++k) all = all && recursion_relation_check(fam, rec, q(k - deg / 2, 2));
        CHECK(all);
    }
}

TEST_CASE("single node at c gives T_1 = [c]") {
    auto mu = scalar_measure({{4, 7}});
    auto rec = recursion_matrices(mu, 1);
    CHECK(rec.T_dense == RMatrix{{q(4)}});

    // two nodes: the (0,0) entry of T_2 is the mean of the measure
    auto mu2 = scalar_measure({{4, 7}, {6, 1}});
    auto rec2 = recursion_matrices(mu2, 2);
    CHECK(rec2.T_dense(0, 0) == q(4 * 7 + 6, 8));
}
