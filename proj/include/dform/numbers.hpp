#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <limits>
#include <string>

#include "dform/errors.hpp"

namespace dform {

using BigInt   = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Valuation sentinel for zero; chosen so min() stays total on valuations.
inline constexpr long kValInf = std::numeric_limits<long>::max() / 4;

inline long val_add(long a, long b) {
    if (a >= kValInf || b >= kValInf) return kValInf;
    return a + b;
}

inline BigInt big_pow(const BigInt& base, long exp) {
    BigInt r = 1, b = base;
    for (long e = exp; e > 0; e >>= 1) {
        if (e & 1) r *= b;
        if (e > 1) b *= b;
    }
    return r;
}

/// p-adic valuation of a nonzero integer.
inline long padic_val(BigInt n, long p) {
    if (n == 0) return kValInf;
    long v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

inline long padic_val(const Rational& r, long p) {
    if (r == 0) return kValInf;
    return padic_val(boost::multiprecision::numerator(r), p) -
           padic_val(boost::multiprecision::denominator(r), p);
}

inline BigInt mod_floor(const BigInt& a, const BigInt& m) {
    BigInt r = a % m;
    if (r < 0) r += m;
    return r;
}

/// Inverse of a modulo m (gcd(a, m) = 1), via extended Euclid.
inline BigInt mod_inverse(const BigInt& a, const BigInt& m) {
    BigInt r0 = m, r1 = mod_floor(a, m), s0 = 0, s1 = 1;
    while (r1 != 0) {
        BigInt q = r0 / r1;
        BigInt r2 = r0 - q * r1;
        BigInt s2 = s0 - q * s1;
        r0 = r1; r1 = r2;
        s0 = s1; s1 = s2;
    }
    if (r0 != 1) throw Error("mod_inverse: arguments not coprime");
    return mod_floor(s0, m);
}

inline long mod_inverse_long(long a, long m) {
    return static_cast<long>(mod_inverse(BigInt(a), BigInt(m)));
}

/// Image of an exact rational in Z/m, m coprime to the denominator.
inline BigInt rational_mod(const Rational& r, const BigInt& m) {
    const BigInt num = mod_floor(boost::multiprecision::numerator(r), m);
    const BigInt den = mod_floor(boost::multiprecision::denominator(r), m);
    return mod_floor(num * mod_inverse(den, m), m);
}

inline bool is_prime(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline std::string to_string(const Rational& r) { return r.str(); }

inline Rational rational_from_string(const std::string& s) {
    try {
        return Rational(s);
    } catch (const std::exception&) {
        throw ParseError("not a rational number: '" + s + "'");
    }
}

} // namespace dform
