#include <doctest.h>

#include <set>

#include "dform/fq.hpp"

using namespace dform;

TEST_CASE("prime field basics") {
    auto f7 = FqField::make(7);
    CHECK(f7->q() == 7);
    CHECK(f7->generator() == 3); // least primitive root of F_7
    CHECK(f7->add(5, 4) == 2);
    CHECK(f7->mul(3, 5) == 1);
    CHECK(f7->inv(3) == 5);
    CHECK(f7->pow(3, 6) == 1);
    CHECK(f7->neg(2) == 5);
}

TEST_CASE("dth power classes match the enumerated cube table of F_7") {
    auto f7 = FqField::make(7);
    // oracle: enumerate cubes
    std::set<long> cubes;
    for (long x = 1; x < 7; ++x) cubes.insert(f7->pow(x, 3));
    CHECK(cubes == std::set<long>({1, 6}));
    CHECK(f7->dstar(3) == 3);
    CHECK(f7->dth_class(1, 3) == 0);
    CHECK(f7->dth_class(6, 3) == 0); // 6 = 3^3
    CHECK(f7->dth_class(2, 3) == 2); // 2 = 3^2
    CHECK(f7->dth_class(3, 3) == 1);
    // class is constant on cosets: x and x*c^3 agree for all cubes c
    for (long x = 1; x < 7; ++x)
        for (long c = 1; c < 7; ++c)
            CHECK(f7->dth_class(x, 3) == f7->dth_class(f7->mul(x, f7->pow(c, 3)), 3));
}

TEST_CASE("class count is gcd(d, q-1) for q <= 121") {
    for (long d : {2L, 3L, 4L, 5L}) {
        for (long q : {5L, 7L, 11L, 13L, 19L, 23L, 25L, 49L, 121L}) {
            long p = q;
            int e = 1;
            if (q == 25) { p = 5; e = 2; }
            if (q == 49) { p = 7; e = 2; }
            if (q == 121) { p = 11; e = 2; }
            if (p <= d) continue;
            auto f = FqField::make(p, e);
            std::set<long> classes;
            for (long x = 1; x < f->q(); ++x) classes.insert(f->dth_class(x, d));
            CHECK(static_cast<long>(classes.size()) == f->dstar(d));
        }
    }
}

TEST_CASE("dth roots") {
    auto f7 = FqField::make(7);
    auto r = f7->dth_root(6, 3);
    REQUIRE(r.has_value());
    CHECK(f7->pow(*r, 3) == 6);
    CHECK(*r == 3); // canonical: g^1 with g = 3
    CHECK_FALSE(f7->dth_root(2, 3).has_value());
    CHECK(f7->dth_root(0, 3) == 0);
}

TEST_CASE("extension field F_49") {
    auto f49 = FqField::make(7, 2);
    CHECK(f49->q() == 49);
    CHECK(f49->descriptor().modulus == fppoly::from_coeffs({1, 0, 1}, 7)); // x^2 + 1
    // arithmetic closure and inverses
    for (long a = 1; a < 49; ++a) {
        CHECK(f49->mul(a, f49->inv(a)) == f49->one());
    }
    // the generator has full order
    std::set<long> powers;
    long cur = f49->one();
    for (int i = 0; i < 48; ++i) {
        powers.insert(cur);
        cur = f49->mul(cur, f49->generator());
    }
    CHECK(powers.size() == 48);
    CHECK(cur == f49->one());
}

TEST_CASE("explicit modulus descriptor") {
    FqDescriptor d;
    d.p = 7;
    d.e = 2;
    d.modulus = fppoly::from_coeffs({3, 0, 1}, 7); // x^2 + 3 irreducible? -3 = 4 = 2^2 is a QR -> reducible
    CHECK_THROWS_AS(FqField::make(d), Error);
    d.modulus = fppoly::from_coeffs({1, 1, 1}, 7); // x^2 + x + 1: roots cube roots of 1; 7 = 1 mod 3 -> reducible
    CHECK_THROWS_AS(FqField::make(d), Error);
    d.modulus = fppoly::from_coeffs({2, 1, 1}, 7); // discriminant 1 - 8 = -7 = 0 mod 7 -> double root
    CHECK_THROWS_AS(FqField::make(d), Error);
    d.modulus = fppoly::from_coeffs({3, 1, 1}, 7); // discriminant 1 - 12 = -11 = 3, QR? 3 is not a QR mod 7
    auto f = FqField::make(d);
    CHECK(f->q() == 49);
}

TEST_CASE("min class representative") {
    auto f7 = FqField::make(7);
    CHECK(f7->min_class_representative(0, 3) == 1);
    CHECK(f7->min_class_representative(1, 3) == 3);
    CHECK(f7->min_class_representative(2, 3) == 2);
}
