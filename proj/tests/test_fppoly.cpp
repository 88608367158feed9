#include <doctest.h>

#include "dform/fppoly.hpp"

using namespace dform;
using namespace dform::fppoly;

TEST_CASE("basic arithmetic over F_7") {
    const long p = 7;
    FpPoly a = from_coeffs({1, 2, 3}, p); // 3x^2 + 2x + 1
    FpPoly b = from_coeffs({5, 1}, p);    // x + 5
    FpPoly s = add(a, b, p);
    CHECK(s.c == std::vector<long>({6, 3, 3}));
    FpPoly m = mul(a, b, p);
    // (3x^2+2x+1)(x+5) = 3x^3 + 17x^2 + 11x + 5 = 3x^3 + 3x^2 + 4x + 5 mod 7
    CHECK(m.c == std::vector<long>({5, 4, 3, 3}));
    auto [q, r] = divmod(m, b, p);
    CHECK(q == a);
    CHECK(r.is_zero());
}

TEST_CASE("gcd and xgcd") {
    const long p = 5;
    FpPoly a = mul(from_coeffs({1, 1}, p), from_coeffs({2, 1}, p), p);
    FpPoly b = mul(from_coeffs({1, 1}, p), from_coeffs({3, 1}, p), p);
    FpPoly g = gcd(a, b, p);
    CHECK(g == from_coeffs({1, 1}, p));
    auto x = xgcd(a, b, p);
    CHECK(x.g == g);
    CHECK(add(mul(x.u, a, p), mul(x.v, b, p), p) == g);
}

TEST_CASE("irreducibility") {
    CHECK(is_irreducible(from_coeffs({1, 0, 1}, 7), 7));        // x^2 + 1 over F_7
    CHECK_FALSE(is_irreducible(from_coeffs({6, 0, 1}, 7), 7));  // x^2 - 1 = (x-1)(x+1)
    CHECK(is_irreducible(from_coeffs({3, 1}, 7), 7));           // linear
    // x^2 + x + 1 over F_5: roots would satisfy x^3 = 1; F_5^x has order 4, no cube roots != 1
    CHECK(is_irreducible(from_coeffs({1, 1, 1}, 5), 5));
}

TEST_CASE("canonical irreducible is least by encode") {
    // over F_7: degree-2 monic irreducibles start at x^2 + 1 (encode 50)
    FpPoly m = canonical_irreducible(7, 2);
    CHECK(m == from_coeffs({1, 0, 1}, 7));
    // brute: nothing smaller is irreducible
    for (long code = 49; code < encode(m, 7); ++code) {
        FpPoly f = decode(code, 7);
        if (f.degree() == 2 && f.is_monic()) CHECK_FALSE(is_irreducible(f, 7));
    }
    // over F_5 degree 2: x^2 + 2 (x^2+1 has root 2)
    CHECK(canonical_irreducible(5, 2) == from_coeffs({2, 0, 1}, 5));
}

TEST_CASE("squarefree detection") {
    const long p = 7;
    FpPoly sq = mul(from_coeffs({1, 1}, p), from_coeffs({1, 1}, p), p);
    CHECK_FALSE(is_squarefree(sq, p));
    CHECK(is_squarefree(from_coeffs({6, 0, 1}, p), p));
}

TEST_CASE("shift composition") {
    const long p = 7;
    FpPoly f = from_coeffs({0, 0, 1}, p); // x^2
    FpPoly g = compose_shift(f, 3, p);    // (x+3)^2 = x^2 + 6x + 2
    CHECK(g == from_coeffs({2, 6, 1}, p));
    CHECK(eval(g, 4, p) == eval(f, 0, p));
}
