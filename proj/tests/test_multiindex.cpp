#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cclab/multiindex.hpp"

using namespace cclab;

TEST_CASE("componentwise addition") {
    CHECK(add(MultiIndex{1, 0}, MultiIndex{0, 1}) == MultiIndex{1, 1});
    CHECK(add(MultiIndex{2, 0}, MultiIndex{0, 0}) == MultiIndex{2, 0});
    CHECK(add(MultiIndex{1, 1, 0}, MultiIndex{0, 1, 2}) == MultiIndex{1, 2, 2});
    CHECK(add(MultiIndex{1, 0}, MultiIndex{0, 1}).order() == 2);
    CHECK_THROWS_AS(add(MultiIndex{1, 0}, MultiIndex{1, 0, 0}), DimensionMismatch);
}

TEST_CASE("partial orders") {
    CHECK(leq(MultiIndex{1, 0}, MultiIndex{1, 1}));
    CHECK_FALSE(strict_lt(MultiIndex{1, 1}, MultiIndex{1, 1}));
    CHECK(strict_lt(MultiIndex{1, 0}, MultiIndex{1, 1}));
    CHECK_FALSE(leq(MultiIndex{2, 0}, MultiIndex{1, 1}));

    MultiIndexTuple g({MultiIndex{1, 0}, MultiIndex{0, 1}});
    MultiIndexTuple t({MultiIndex{1, 0}, MultiIndex{0, 2}});
    CHECK(tuple_prec(g, t));
    CHECK_FALSE(tuple_prec(g, g));
}

TEST_CASE("binomials") {
    CHECK(binomial(MultiIndex{2, 0}, MultiIndex{1, 0}) == 2);
    CHECK(binomial(MultiIndex{2, 2}, MultiIndex{2, 2}) == 1);
    CHECK(binomial(MultiIndex{1, 0}, MultiIndex{0, 1}) == 0);
}

TEST_CASE("binomial is nonzero exactly on the partial order") {
    for (const auto& b : enumerate(3, 4, EnumMode::upto))
        for (const auto& a : enumerate(3, 4, EnumMode::upto))
            CHECK((binomial(b, a) != 0) == leq(a, b));
}

TEST_CASE("enumeration order and counts") {
    auto e1 = enumerate(2, 1, EnumMode::exact);
    REQUIRE(e1.size() == 2);
    CHECK(e1[0] == MultiIndex{1, 0});
    CHECK(e1[1] == MultiIndex{0, 1});

    auto e2 = enumerate(2, 2, EnumMode::exact);
    REQUIRE(e2.size() == 3);  // C(3,2)
    CHECK(e2[0] == MultiIndex{2, 0});
    CHECK(e2[1] == MultiIndex{1, 1});
    CHECK(e2[2] == MultiIndex{0, 2});

    auto e3 = enumerate(3, 0, EnumMode::upto);
    REQUIRE(e3.size() == 1);
    CHECK(e3[0] == MultiIndex{0, 0, 0});

    for (int n = 1; n <= 4; ++n) {
        for (int k = 0; k <= 5; ++k) {
            auto all = enumerate(n, k, EnumMode::exact);
            CHECK(static_cast<std::int64_t>(all.size()) == exact_count(n, k));
            for (const auto& a : all) CHECK(a.order() == k);
            for (size_t i = 0; i + 1 < all.size(); ++i) CHECK_FALSE(all[i] == all[i + 1]);
        }
    }
}

TEST_CASE("addition is commutative and associative on random triples") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> d(0, 1);  // triple sums stay under the order cap
    for (int t = 0; t < 200; ++t) {
        MultiIndex a(3), b(3), c(3);
        for (int i = 0; i < 3; ++i) {
            a.set(i, d(rng));
            b.set(i, d(rng));
            c.set(i, d(rng));
        }
        CHECK(add(a, b) == add(b, a));
        CHECK(add(add(a, b), c) == add(a, add(b, c)));
    }
}

TEST_CASE("Vandermonde identity on random small instances") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> d(0, 3);
    for (int t = 0; t < 100; ++t) {
        MultiIndex a(2), b(2), c(2);
        for (int i = 0; i < 2; ++i) {
            a.set(i, d(rng));
            b.set(i, d(rng));
            c.set(i, d(rng));
        }
        std::int64_t sum = 0;
        for (const auto& g : enumerate(2, c.order(), EnumMode::upto)) {
            if (!leq(g, c)) continue;
            sum += binomial(a, g) * binomial(b, sub(c, g));
        }
        CHECK(sum == binomial(add(a, b), c));
    }
}

TEST_CASE("textual form") {
    CHECK(MultiIndex{1, 0, 2}.str() == "[1,0,2]");
    CHECK(MultiIndexTuple({MultiIndex{1, 0}, MultiIndex{0, 2}}).str() == "([1,0],[0,2])");
}
