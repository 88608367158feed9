#pragma once

#include <string>
#include <vector>

#include "dform/numbers.hpp"

namespace dform {

/// Dense polynomial over Z/pZ. Coefficients in [0, p), lowest degree first,
/// no trailing zeros (zero polynomial = empty vector).
struct FpPoly {
    std::vector<long> c;

    bool is_zero() const { return c.empty(); }
    long degree() const { return static_cast<long>(c.size()) - 1; }
    long lc() const { return c.back(); }
    bool is_monic() const { return !c.empty() && c.back() == 1; }
    bool operator==(const FpPoly& o) const { return c == o.c; }
};

namespace fppoly {

FpPoly normalize(std::vector<long> c, long p);
FpPoly from_coeffs(std::initializer_list<long> coeffs, long p);
FpPoly constant(long a, long p);
FpPoly monomial(long coeff, long deg, long p);

FpPoly add(const FpPoly& a, const FpPoly& b, long p);
FpPoly sub(const FpPoly& a, const FpPoly& b, long p);
FpPoly neg(const FpPoly& a, long p);
FpPoly mul(const FpPoly& a, const FpPoly& b, long p);
FpPoly scalar_mul(long s, const FpPoly& a, long p);
FpPoly pow(const FpPoly& a, long e, long p);

/// Quotient and remainder; b != 0.
std::pair<FpPoly, FpPoly> divmod(const FpPoly& a, const FpPoly& b, long p);
FpPoly mod(const FpPoly& a, const FpPoly& b, long p);

FpPoly derivative(const FpPoly& a, long p);
FpPoly monic_scale(const FpPoly& a, long p);
FpPoly gcd(FpPoly a, FpPoly b, long p); // monic
/// g = gcd(a,b) monic together with u,v such that u*a + v*b = g.
struct Xgcd { FpPoly g, u, v; };
Xgcd xgcd(const FpPoly& a, const FpPoly& b, long p);

long eval(const FpPoly& a, long x, long p);
FpPoly compose_shift(const FpPoly& a, long alpha, long p); // a(x + alpha)
FpPoly reverse(const FpPoly& a);                           // x^deg * a(1/x)

FpPoly pow_mod(const FpPoly& base, const BigInt& e, const FpPoly& m, long p);
bool is_irreducible(const FpPoly& a, long p);
bool is_squarefree(const FpPoly& a, long p);

/// Integer encode sum c_i p^i; total order used for canonical choices.
long encode(const FpPoly& a, long p);
FpPoly decode(long code, long p);

/// Lexicographically least monic irreducible of degree e (least integer encode).
FpPoly canonical_irreducible(long p, int e);

std::string to_string(const FpPoly& a, const std::string& var);

} // namespace fppoly
} // namespace dform
