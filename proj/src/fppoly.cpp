#include "dform/fppoly.hpp"

#include <algorithm>

namespace dform {
namespace fppoly {

namespace {
long norm_coeff(long a, long p) {
    long r = a % p;
    return r < 0 ? r + p : r;
}
} // namespace

FpPoly normalize(std::vector<long> c, long p) {
    for (auto& x : c) x = norm_coeff(x, p);
    while (!c.empty() && c.back() == 0) c.pop_back();
    return FpPoly{std::move(c)};
}

FpPoly from_coeffs(std::initializer_list<long> coeffs, long p) {
    return normalize(std::vector<long>(coeffs), p);
}

FpPoly constant(long a, long p) { return normalize({a}, p); }

FpPoly monomial(long coeff, long deg, long p) {
    std::vector<long> c(deg + 1, 0);
    c[deg] = coeff;
    return normalize(std::move(c), p);
}

FpPoly add(const FpPoly& a, const FpPoly& b, long p) {
    std::vector<long> c(std::max(a.c.size(), b.c.size()), 0);
    for (std::size_t i = 0; i < a.c.size(); ++i) c[i] += a.c[i];
    for (std::size_t i = 0; i < b.c.size(); ++i) c[i] += b.c[i];
    return normalize(std::move(c), p);
}

FpPoly sub(const FpPoly& a, const FpPoly& b, long p) {
    std::vector<long> c(std::max(a.c.size(), b.c.size()), 0);
    for (std::size_t i = 0; i < a.c.size(); ++i) c[i] += a.c[i];
    for (std::size_t i = 0; i < b.c.size(); ++i) c[i] -= b.c[i];
    return normalize(std::move(c), p);
}

FpPoly neg(const FpPoly& a, long p) {
    std::vector<long> c = a.c;
    for (auto& x : c) x = -x;
    return normalize(std::move(c), p);
}

FpPoly mul(const FpPoly& a, const FpPoly& b, long p) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<long> c(a.c.size() + b.c.size() - 1, 0);
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == 0) continue;
        for (std::size_t j = 0; j < b.c.size(); ++j) {
            c[i + j] = (c[i + j] + a.c[i] * b.c[j]) % p;
        }
    }
    return normalize(std::move(c), p);
}

FpPoly scalar_mul(long s, const FpPoly& a, long p) {
    std::vector<long> c = a.c;
    s = norm_coeff(s, p);
    for (auto& x : c) x = (x * s) % p;
    return normalize(std::move(c), p);
}

FpPoly pow(const FpPoly& a, long e, long p) {
    FpPoly r = constant(1, p), b = a;
    for (; e > 0; e >>= 1) {
        if (e & 1) r = mul(r, b, p);
        if (e > 1) b = mul(b, b, p);
    }
    return r;
}

std::pair<FpPoly, FpPoly> divmod(const FpPoly& a, const FpPoly& b, long p) {
    if (b.is_zero()) throw Error("FpPoly division by zero");
    if (a.degree() < b.degree()) return {{}, a};
    const long inv_lc = mod_inverse_long(b.lc(), p);
    std::vector<long> rem = a.c;
    std::vector<long> quo(a.degree() - b.degree() + 1, 0);
    for (long k = a.degree() - b.degree(); k >= 0; --k) {
        long coef = (rem[k + b.degree()] * inv_lc) % p;
        quo[k] = coef;
        if (coef == 0) continue;
        for (long i = 0; i <= b.degree(); ++i) {
            rem[k + i] = norm_coeff(rem[k + i] - coef * b.c[i], p);
        }
    }
    return {normalize(std::move(quo), p), normalize(std::move(rem), p)};
}

FpPoly mod(const FpPoly& a, const FpPoly& b, long p) { return divmod(a, b, p).second; }

FpPoly derivative(const FpPoly& a, long p) {
    if (a.degree() < 1) return {};
    std::vector<long> c(a.degree(), 0);
    for (long i = 1; i <= a.degree(); ++i) c[i - 1] = (a.c[i] * (i % p)) % p;
    return normalize(std::move(c), p);
}

FpPoly monic_scale(const FpPoly& a, long p) {
    if (a.is_zero()) return a;
    return scalar_mul(mod_inverse_long(a.lc(), p), a, p);
}

FpPoly gcd(FpPoly a, FpPoly b, long p) {
    while (!b.is_zero()) {
        FpPoly r = mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return monic_scale(a, p);
}

Xgcd xgcd(const FpPoly& a, const FpPoly& b, long p) {
    FpPoly r0 = a, r1 = b;
    FpPoly s0 = constant(1, p), s1 = {};
    FpPoly t0 = {}, t1 = constant(1, p);
    while (!r1.is_zero()) {
        auto [q, r2] = divmod(r0, r1, p);
        FpPoly s2 = sub(s0, mul(q, s1, p), p);
        FpPoly t2 = sub(t0, mul(q, t1, p), p);
        r0 = std::move(r1); r1 = std::move(r2);
        s0 = std::move(s1); s1 = std::move(s2);
        t0 = std::move(t1); t1 = std::move(t2);
    }
    if (!r0.is_zero() && r0.lc() != 1) {
        const long inv = mod_inverse_long(r0.lc(), p);
        r0 = scalar_mul(inv, r0, p);
        s0 = scalar_mul(inv, s0, p);
        t0 = scalar_mul(inv, t0, p);
    }
    return {r0, s0, t0};
}

long eval(const FpPoly& a, long x, long p) {
    long r = 0;
    x = norm_coeff(x, p);
    for (auto it = a.c.rbegin(); it != a.c.rend(); ++it) r = (r * x + *it) % p;
    return r;
}

FpPoly compose_shift(const FpPoly& a, long alpha, long p) {
    // Horner in (x + alpha).
    FpPoly shift = from_coeffs({alpha, 1}, p);
    FpPoly r = {};
    for (auto it = a.c.rbegin(); it != a.c.rend(); ++it) {
        r = add(mul(r, shift, p), constant(*it, p), p);
    }
    return r;
}

FpPoly reverse(const FpPoly& a) {
    std::vector<long> c(a.c.rbegin(), a.c.rend());
    while (!c.empty() && c.back() == 0) c.pop_back();
    return FpPoly{std::move(c)};
}

FpPoly pow_mod(const FpPoly& base, const BigInt& e, const FpPoly& m, long p) {
    FpPoly r = constant(1, p), b = mod(base, m, p);
    BigInt k = e;
    while (k > 0) {
        if ((k & 1) != 0) r = mod(mul(r, b, p), m, p);
        k >>= 1;
        if (k > 0) b = mod(mul(b, b, p), m, p);
    }
    return r;
}

bool is_irreducible(const FpPoly& a, long p) {
    // Rabin's test: x^(p^n) == x mod a, and gcd(x^(p^(n/l)) - x, a) = 1 for prime l | n.
    const long n = a.degree();
    if (n < 1) return false;
    if (n == 1) return true;
    const FpPoly x = monomial(1, 1, p);
    FpPoly xq = pow_mod(x, big_pow(BigInt(p), n), a, p);
    if (!(sub(xq, x, p).is_zero())) return false;
    for (long l = 2, m = n; l <= m; ++l) {
        if (m % l != 0) continue;
        while (m % l == 0) m /= l;
        FpPoly xe = pow_mod(x, big_pow(BigInt(p), n / l), a, p);
        if (gcd(sub(xe, x, p), a, p).degree() != 0) return false;
    }
    return true;
}

bool is_squarefree(const FpPoly& a, long p) {
    if (a.is_zero()) return false;
    return gcd(a, derivative(a, p), p).degree() == 0;
}

long encode(const FpPoly& a, long p) {
    long code = 0;
    for (auto it = a.c.rbegin(); it != a.c.rend(); ++it) code = code * p + *it;
    return code;
}

FpPoly decode(long code, long p) {
    std::vector<long> c;
    for (long v = code; v > 0; v /= p) c.push_back(v % p);
    return FpPoly{std::move(c)};
}

FpPoly canonical_irreducible(long p, int e) {
    if (e == 1) return monomial(1, 1, p); // F_p itself: modulus x
    long lead = 1;
    for (int i = 0; i < e; ++i) lead *= p;
    const long low_max = lead; // p^e lower-coefficient combinations
    for (long low = 0; low < low_max; ++low) {
        FpPoly cand = decode(lead + low, p);
        if (is_irreducible(cand, p)) return cand;
    }
    throw Error("no irreducible polynomial found (unreachable)");
}

std::string to_string(const FpPoly& a, const std::string& var) {
    if (a.is_zero()) return "0";
    std::string s;
    for (long i = a.degree(); i >= 0; --i) {
        if (a.c[i] == 0) continue;
        if (!s.empty()) s += " + ";
        if (i == 0 || a.c[i] != 1) s += std::to_string(a.c[i]);
        if (i > 0) {
            if (a.c[i] != 1) s += "*";
            s += var;
            if (i > 1) s += "^" + std::to_string(i);
        }
    }
    return s;
}

} // namespace fppoly
} // namespace dform
