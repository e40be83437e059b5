#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "test_main.hpp"

#include "babel/rational.hpp"

using namespace babel;
using babel::testing::asset;
using babel::testing::randomBundle;

TEST_CASE("bundle addition, inverses, disjoint support") {
    AssetId t1 = asset("T1"), t2 = asset("T2"), a = asset("A"), b = asset("B");

    CHECK(qAdd(Quantities::single(t1, -5), Quantities::single(t1, 5)) == Quantities{});

    Quantities liab(Quantities::Map{{t1, -5}, {t2, 10}});
    CHECK(qAdd(liab, Quantities::single(t1, 5)) == Quantities::single(t2, 10));

    Quantities mixed = qAdd(Quantities::single(a, 3), Quantities::single(b, 4));
    CHECK(mixed(a) == 3);
    CHECK(mixed(b) == 4);
    CHECK(mixed.supportSize() == 2);
}

TEST_CASE("negation and pointwise comparisons") {
    AssetId t = asset("T"), t1 = asset("T1"), t2 = asset("T2");
    CHECK(qNeg(Quantities::single(t, 7)) == Quantities::single(t, -7));
    CHECK(qLeq(Quantities::single(t, -1), Quantities{}));
    CHECK_FALSE(qGeqZero(Quantities(Quantities::Map{{t1, 5}, {t2, -1}})));
    CHECK(qGeqZero(Quantities{}));
}

TEST_CASE("positive/negative part decomposition") {
    AssetId t1 = asset("T1"), t2 = asset("T2"), t = asset("T");
    Quantities v(Quantities::Map{{t1, -5}, {t2, 10}});
    CHECK(v.positivePart() == Quantities::single(t2, 10));
    CHECK(v.negativePart() == Quantities::single(t1, -5));

    CHECK(Quantities{}.positivePart() == Quantities{});
    CHECK(Quantities{}.negativePart() == Quantities{});
    CHECK(Quantities::single(t, -3).positivePart() == Quantities{});
    CHECK(Quantities::single(t, -3).negativePart() == Quantities::single(t, -3));
}

TEST_CASE("abelian group laws and support minimality over random bundles") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 500; ++i) {
        Quantities a = randomBundle(rng), b = randomBundle(rng), c = randomBundle(rng);
        CHECK(qAdd(a, b) == qAdd(b, a));
        CHECK(qAdd(qAdd(a, b), c) == qAdd(a, qAdd(b, c)));
        CHECK(qAdd(a, Quantities{}) == a);
        CHECK(qAdd(a, qNeg(a)) == Quantities{});
        CHECK(qAdd(a.positivePart(), a.negativePart()) == a);
        Quantities sum = qAdd(a, b);
        for (const auto& [asset_, q] : sum.entries()) {
            (void)asset_;
            CHECK(q != 0);
        }
    }
}

TEST_CASE("rational arithmetic and rounding") {
    CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
    CHECK(Rational(3, 2) * Rational(10) == Rational(15));
    CHECK(Rational(-7, 2).floor() == -4);
    CHECK(Rational(-7, 2).ceil() == -3);
    CHECK(Rational(7, 2).ceil() == 4);
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(5) < Rational::infinity());
    CHECK_FALSE(Rational::infinity() < Rational(5));
    CHECK(Rational(1, 3).reciprocal() == Rational(3));
}
