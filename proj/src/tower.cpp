#include "dform/tower.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace dform {

// ---------------------------------------------------------------------------
// TowerField

TowerPtr TowerField::make_fq(FqPtr base, std::vector<std::string> vars, int prec) {
    auto t = TowerPtr(new TowerField());
    auto* m = const_cast<TowerField*>(t.get());
    m->residue_ = std::move(base);
    m->vars_ = std::move(vars);
    m->prec_ = prec;
    return t;
}

TowerPtr TowerField::make_padic(long p, std::vector<std::string> vars, int prec) {
    return make_padic_ext(p, fppoly::monomial(1, 1, p), std::move(vars), prec);
}

TowerPtr TowerField::make_padic_ext(long p, const FpPoly& residue_modulus,
                                    std::vector<std::string> vars, int prec) {
    auto t = TowerPtr(new TowerField());
    auto* m = const_cast<TowerField*>(t.get());
    PadicBase base;
    base.p = p;
    base.e = static_cast<int>(residue_modulus.degree());
    base.residue_modulus = residue_modulus;
    base.modulus_lift.assign(base.e + 1, 0);
    for (int i = 0; i <= base.e; ++i) base.modulus_lift[i] = residue_modulus.c[i];
    m->padic_ = std::move(base);
    FqDescriptor rd;
    rd.p = p;
    rd.e = m->padic_->e;
    rd.modulus = residue_modulus;
    m->residue_ = FqField::make(rd);
    m->vars_ = std::move(vars);
    m->prec_ = prec;
    return t;
}

TowerField::Kind TowerField::kind(int level) const {
    if (level == 0) return Kind::Finite;
    if (padic_based() && level == 1) return Kind::Padic;
    return Kind::Laurent;
}

const std::string& TowerField::var_name(int level) const {
    const int idx = level - 1 - (padic_based() ? 1 : 0);
    return vars_.at(idx);
}

std::string TowerField::uniformizer_name(int level) const {
    if (kind(level) == Kind::Padic) return std::to_string(p());
    return var_name(level);
}

std::string TowerField::level_name(int level) const {
    std::string s;
    switch (kind(level)) {
        case Kind::Finite: return residue_field()->name();
        case Kind::Padic:
            s = "Q_" + std::to_string(p());
            if (padic_->e > 1) s += "[" + std::to_string(padic_->e) + "]"; // unramified extension
            return s;
        case Kind::Laurent:
            return level_name(level - 1) + "((" + var_name(level) + "))";
    }
    return s;
}

// ---------------------------------------------------------------------------
// Galois ring GR(p^N, e) = (Z/p^N)[w]/(G) helpers for truncated p-adic units

namespace {

struct GrCtx {
    long p;
    int e;
    const std::vector<BigInt>* lift; // monic, size e+1
    BigInt pn;                       // p^rel
    int rel;
};

GrCtx gr_ctx(const PadicBase& base, int rel_prec) {
    return GrCtx{base.p, base.e, &base.modulus_lift, big_pow(BigInt(base.p), rel_prec), rel_prec};
}

std::vector<BigInt> gr_reduce(std::vector<BigInt> c, const GrCtx& g) {
    // reduce degree by the monic modulus, then coefficients mod p^N
    const auto& m = *g.lift;
    for (long i = static_cast<long>(c.size()) - 1; i >= g.e; --i) {
        BigInt top = c[i];
        if (top == 0) continue;
        for (int j = 0; j < g.e; ++j) c[i - g.e + j] -= top * m[j];
        c[i] = 0;
    }
    c.resize(g.e, 0);
    for (auto& x : c) x = mod_floor(x, g.pn);
    return c;
}

std::vector<BigInt> gr_add(const std::vector<BigInt>& a, const std::vector<BigInt>& b,
                           const GrCtx& g) {
    std::vector<BigInt> c(g.e, 0);
    for (int i = 0; i < g.e; ++i) c[i] = mod_floor(a[i] + b[i], g.pn);
    return c;
}

std::vector<BigInt> gr_mul(const std::vector<BigInt>& a, const std::vector<BigInt>& b,
                           const GrCtx& g) {
    std::vector<BigInt> c(2 * g.e - 1, 0);
    for (int i = 0; i < g.e; ++i) {
        if (a[i] == 0) continue;
        for (int j = 0; j < g.e; ++j) c[i + j] += a[i] * b[j];
    }
    return gr_reduce(std::move(c), g);
}

bool gr_is_zero(const std::vector<BigInt>& a) {
    return std::all_of(a.begin(), a.end(), [](const BigInt& x) { return x == 0; });
}

long gr_residue_enc(const std::vector<BigInt>& a, const FqField& fq) {
    std::vector<long> coords(fq.e(), 0);
    for (int i = 0; i < fq.e() && i < static_cast<int>(a.size()); ++i)
        coords[i] = static_cast<long>(mod_floor(a[i], fq.p()));
    return fq.from_coords(coords);
}

std::vector<BigInt> gr_from_fq(long enc, const FqField& fq) {
    auto coords = fq.coords(enc);
    std::vector<BigInt> c(fq.e(), 0);
    for (int i = 0; i < fq.e(); ++i) c[i] = coords[i];
    return c;
}

std::vector<BigInt> gr_inv(const std::vector<BigInt>& a, const GrCtx& g, const FqField& fq) {
    // Lift the residue inverse by Newton: i <- i(2 - a i); each step doubles
    // the p-adic accuracy.
    const long r = gr_residue_enc(a, fq);
    if (r == 0) throw NonUnit("inverse of a non-unit in GR");
    std::vector<BigInt> inv = gr_from_fq(fq.inv(r), fq);
    int steps = 0;
    while ((1L << steps) < g.rel) ++steps;
    for (int k = 0; k < steps; ++k) {
        std::vector<BigInt> t = gr_mul(a, inv, g);
        for (int i = 0; i < g.e; ++i) t[i] = mod_floor((i == 0 ? 2 : 0) - t[i], g.pn);
        inv = gr_mul(inv, t, g);
    }
    return inv;
}

// ---------------------------------------------------------------------------
// Rational polynomial helpers for the exact p-adic level Q[w]/(G)

using RatPoly = std::vector<Rational>;

RatPoly ratp_reduce(RatPoly c, const std::vector<BigInt>& lift, int e) {
    for (long i = static_cast<long>(c.size()) - 1; i >= e; --i) {
        Rational top = c[i];
        if (top == 0) continue;
        for (int j = 0; j < e; ++j) c[i - e + j] -= top * Rational(lift[j]);
        c[i] = 0;
    }
    c.resize(e, Rational(0));
    return c;
}

RatPoly ratp_mul(const RatPoly& a, const RatPoly& b, const std::vector<BigInt>& lift, int e) {
    RatPoly c(2 * e - 1, Rational(0));
    for (int i = 0; i < e; ++i) {
        if (a[i] == 0) continue;
        for (int j = 0; j < e; ++j) c[i + j] += a[i] * b[j];
    }
    return ratp_reduce(std::move(c), lift, e);
}

// inverse in Q[w]/(G) via extended Euclid over Q[x]; G irreducible over Q
RatPoly ratp_inverse(const RatPoly& a, const std::vector<BigInt>& lift, int e) {
    auto deg = [](const RatPoly& f) {
        for (long i = static_cast<long>(f.size()) - 1; i >= 0; --i)
            if (f[i] != 0) return i;
        return -1L;
    };
    RatPoly r0(lift.size());
    for (std::size_t i = 0; i < lift.size(); ++i) r0[i] = Rational(lift[i]);
    RatPoly r1 = a;
    r1.resize(lift.size(), Rational(0));
    RatPoly s0(lift.size(), Rational(0)), s1(lift.size(), Rational(0));
    s1[0] = 1;
    while (deg(r1) > 0) {
        // divmod r0 by r1
        RatPoly q(lift.size(), Rational(0)), rem = r0;
        const long d1 = deg(r1);
        const Rational lc1 = r1[d1];
        for (long k = deg(rem) - d1; k >= 0; --k) {
            Rational coef = rem[k + d1] / lc1;
            q[k] = coef;
            if (coef == 0) continue;
            for (long i = 0; i <= d1; ++i) rem[k + i] -= coef * r1[i];
        }
        RatPoly s2 = s0;
        for (std::size_t i = 0; i < s2.size(); ++i) {
            Rational acc(0);
            for (std::size_t j = 0; j <= i && j < q.size(); ++j)
                if (q[j] != 0 && i - j < s1.size()) acc += q[j] * s1[i - j];
            s2[i] = s0[i] - acc;
        }
        r0 = r1; r1 = rem;
        s0 = s1; s1 = s2;
    }
    const long d = deg(r1);
    if (d != 0) throw NonUnit("inverse of zero in Q[w]/(G)");
    const Rational c = r1[0];
    RatPoly inv(e, Rational(0));
    for (int i = 0; i < e; ++i) inv[i] = (i < static_cast<int>(s1.size()) ? s1[i] / c : Rational(0));
    return inv;
}

} // namespace

// ---------------------------------------------------------------------------
// PowerClass

bool PowerClass::is_identity() const {
    return std::all_of(comps.begin(), comps.end(), [](long c) { return c == 0; });
}

PowerClass PowerClass::plus(const PowerClass& o) const {
    if (moduli != o.moduli) throw FieldMismatch("power classes from different fields");
    PowerClass r = *this;
    for (std::size_t i = 0; i < comps.size(); ++i)
        r.comps[i] = (comps[i] + o.comps[i]) % moduli[i];
    return r;
}

PowerClass PowerClass::minus(const PowerClass& o) const {
    if (moduli != o.moduli) throw FieldMismatch("power classes from different fields");
    PowerClass r = *this;
    for (std::size_t i = 0; i < comps.size(); ++i)
        r.comps[i] = ((comps[i] - o.comps[i]) % moduli[i] + moduli[i]) % moduli[i];
    return r;
}

std::string PowerClass::to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < comps.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(comps[i]);
    }
    return s + ")";
}

// ---------------------------------------------------------------------------
// Value: normalization and constructors

namespace {

void check_same(const Value& a, const Value& b) {
    if (!a.owner.same_field(b.owner)) throw FieldMismatch("elements of different fields");
}

Value normalize_pad_trunc(const FieldRef& K, long val, std::vector<BigInt> unit, int rel_prec) {
    const auto& base = K.tower->padic_base();
    unit.resize(base.e, 0);
    if (rel_prec <= 0) return Value{K, Value::PadTrunc{val, {}, 0}};
    const BigInt pn = big_pow(BigInt(base.p), rel_prec);
    for (auto& c : unit) c = mod_floor(c, pn);
    // strip p from the unit part so its residue is nonzero
    int k = 0;
    while (k < rel_prec) {
        bool divisible = std::all_of(unit.begin(), unit.end(),
                                     [&](const BigInt& c) { return c % base.p == 0; });
        if (!divisible) break;
        for (auto& c : unit) c /= base.p;
        ++k;
    }
    if (k >= rel_prec) return Value{K, Value::PadTrunc{val + rel_prec, {}, 0}};
    if (k > 0) {
        val += k;
        rel_prec -= k;
        const BigInt pr = big_pow(BigInt(base.p), rel_prec);
        for (auto& c : unit) c = mod_floor(c, pr);
        // the stripped unit may again be congruent to 0 at lower precision
        return normalize_pad_trunc(K, val, std::move(unit), rel_prec);
    }
    return Value{K, Value::PadTrunc{val, std::move(unit), rel_prec}};
}

bool rep_is_exact_zero(const Value& x);

Value normalize_laurent(const FieldRef& K, std::vector<std::pair<long, Value>> coeffs, long prec) {
    std::sort(coeffs.begin(), coeffs.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::pair<long, Value>> out;
    for (auto& [e, c] : coeffs) {
        if (e >= prec) continue;
        if (rep_is_exact_zero(c)) continue;
        if (!out.empty() && out.back().first == e) {
            Value s = v_add(out.back().second, c);
            if (rep_is_exact_zero(s)) out.pop_back();
            else out.back().second = std::move(s);
        } else {
            out.emplace_back(e, std::move(c));
        }
    }
    return Value{K, Value::Laurent{std::move(out), prec}};
}

bool rep_is_exact_zero(const Value& x) {
    if (const auto* f = std::get_if<Value::Fin>(&x.rep)) return f->enc == 0;
    if (const auto* pe = std::get_if<Value::PadExact>(&x.rep))
        return std::all_of(pe->coords.begin(), pe->coords.end(),
                           [](const Rational& c) { return c == 0; });
    if (const auto* pt = std::get_if<Value::PadTrunc>(&x.rep)) {
        (void)pt;
        return false; // truncated values are never exactly zero
    }
    const auto& l = std::get<Value::Laurent>(x.rep);
    return l.coeffs.empty() && l.prec >= kValInf;
}

} // namespace

Value v_zero(const FieldRef& K) {
    switch (K.kind()) {
        case TowerField::Kind::Finite: return Value{K, Value::Fin{0}};
        case TowerField::Kind::Padic: {
            std::vector<Rational> c(K.tower->padic_base().e, Rational(0));
            return Value{K, Value::PadExact{std::move(c)}};
        }
        case TowerField::Kind::Laurent: return Value{K, Value::Laurent{{}, kValInf}};
    }
    throw Error("unreachable");
}

Value v_one(const FieldRef& K) { return v_int(K, 1); }

Value v_int(const FieldRef& K, long n) {
    switch (K.kind()) {
        case TowerField::Kind::Finite:
            return Value{K, Value::Fin{K.tower->residue_field()->from_int(n)}};
        case TowerField::Kind::Padic: {
            std::vector<Rational> c(K.tower->padic_base().e, Rational(0));
            c[0] = n;
            return Value{K, Value::PadExact{std::move(c)}};
        }
        case TowerField::Kind::Laurent: {
            Value inner = v_int(K.residue_ref(), n);
            if (rep_is_exact_zero(inner)) return v_zero(K);
            return Value{K, Value::Laurent{{{0, std::move(inner)}}, kValInf}};
        }
    }
    throw Error("unreachable");
}

Value v_rational(const FieldRef& K, const Rational& r) {
    switch (K.kind()) {
        case TowerField::Kind::Finite: {
            const long p = K.tower->p();
            if (padic_val(r, p) < 0) throw Error("rational has a pole at p in a residue field");
            const long enc = static_cast<long>(rational_mod(r, BigInt(p)));
            return Value{K, Value::Fin{K.tower->residue_field()->from_int(enc)}};
        }
        case TowerField::Kind::Padic: {
            std::vector<Rational> c(K.tower->padic_base().e, Rational(0));
            c[0] = r;
            return Value{K, Value::PadExact{std::move(c)}};
        }
        case TowerField::Kind::Laurent: {
            Value inner = v_rational(K.residue_ref(), r);
            if (rep_is_exact_zero(inner)) return v_zero(K);
            return Value{K, Value::Laurent{{{0, std::move(inner)}}, kValInf}};
        }
    }
    throw Error("unreachable");
}

Value v_fq(const FieldRef& K, long enc) {
    if (K.kind() != TowerField::Kind::Finite) throw Error("v_fq: not a finite level");
    return Value{K, Value::Fin{enc}};
}

Value v_uniformizer(const FieldRef& K) {
    switch (K.kind()) {
        case TowerField::Kind::Finite: throw Error("finite fields have no uniformizer");
        case TowerField::Kind::Padic: return v_rational(K, Rational(K.tower->p()));
        case TowerField::Kind::Laurent:
            return Value{K, Value::Laurent{{{1, v_one(K.residue_ref())}}, kValInf}};
    }
    throw Error("unreachable");
}

Value v_laurent(const FieldRef& K, std::vector<std::pair<long, Value>> coeffs, long prec) {
    if (K.kind() != TowerField::Kind::Laurent) throw Error("v_laurent: not a Laurent level");
    for (auto& [e, c] : coeffs) {
        (void)e;
        if (!c.owner.same_field(K.residue_ref()))
            throw FieldMismatch("laurent coefficient from the wrong level");
    }
    return normalize_laurent(K, std::move(coeffs), prec);
}

Value v_pad_trunc(const FieldRef& K, long val, std::vector<BigInt> unit, int rel_prec) {
    if (K.kind() != TowerField::Kind::Padic) throw Error("v_pad_trunc: not the p-adic level");
    return normalize_pad_trunc(K, val, std::move(unit), rel_prec);
}

// ---------------------------------------------------------------------------
// queries

bool v_is_exact(const Value& x) {
    if (std::holds_alternative<Value::Fin>(x.rep)) return true;
    if (std::holds_alternative<Value::PadExact>(x.rep)) return true;
    if (std::holds_alternative<Value::PadTrunc>(x.rep)) return false;
    const auto& l = std::get<Value::Laurent>(x.rep);
    if (l.prec < kValInf) return false;
    return std::all_of(l.coeffs.begin(), l.coeffs.end(),
                       [](const auto& c) { return v_is_exact(c.second); });
}

bool v_known_nonzero(const Value& x) {
    if (const auto* f = std::get_if<Value::Fin>(&x.rep)) return f->enc != 0;
    if (const auto* pe = std::get_if<Value::PadExact>(&x.rep))
        return !std::all_of(pe->coords.begin(), pe->coords.end(),
                            [](const Rational& c) { return c == 0; });
    if (const auto* pt = std::get_if<Value::PadTrunc>(&x.rep)) return pt->rel_prec > 0;
    const auto& l = std::get<Value::Laurent>(x.rep);
    return std::any_of(l.coeffs.begin(), l.coeffs.end(),
                       [](const auto& c) { return v_known_nonzero(c.second); });
}

long v_val_lower(const Value& x) {
    if (const auto* f = std::get_if<Value::Fin>(&x.rep)) return f->enc != 0 ? 0 : kValInf;
    if (const auto* pe = std::get_if<Value::PadExact>(&x.rep)) {
        long v = kValInf;
        const long p = x.owner.tower->p();
        for (const auto& c : pe->coords)
            if (c != 0) v = std::min(v, padic_val(c, p));
        return v;
    }
    if (const auto* pt = std::get_if<Value::PadTrunc>(&x.rep)) return pt->val;
    const auto& l = std::get<Value::Laurent>(x.rep);
    if (l.coeffs.empty()) return l.prec;
    return l.coeffs.front().first;
}

std::optional<long> v_val_exact(const Value& x) {
    if (const auto* f = std::get_if<Value::Fin>(&x.rep))
        return f->enc != 0 ? 0 : kValInf;
    if (std::holds_alternative<Value::PadExact>(x.rep)) return v_val_lower(x);
    if (const auto* pt = std::get_if<Value::PadTrunc>(&x.rep)) {
        if (pt->rel_prec > 0) return pt->val;
        return std::nullopt;
    }
    const auto& l = std::get<Value::Laurent>(x.rep);
    if (l.coeffs.empty()) return l.prec >= kValInf ? std::optional<long>(kValInf) : std::nullopt;
    if (v_known_nonzero(l.coeffs.front().second)) return l.coeffs.front().first;
    return std::nullopt;
}

bool v_verified_small(const Value& x, long t) {
    if (t <= 0) return true;
    if (const auto* f = std::get_if<Value::Fin>(&x.rep)) return f->enc == 0;
    if (std::holds_alternative<Value::PadExact>(x.rep)) return v_val_lower(x) >= t;
    if (const auto* pt = std::get_if<Value::PadTrunc>(&x.rep)) return pt->val >= t;
    const auto& l = std::get<Value::Laurent>(x.rep);
    if (l.prec < t) return false;
    for (const auto& [e, c] : l.coeffs) {
        if (e >= t) break;
        if (!v_verified_small(c, t)) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// arithmetic

namespace {

// exact p-adic coords promoted into the truncated representation
Value promote_pad(const Value& x, int rel_prec) {
    const auto& pe = std::get<Value::PadExact>(x.rep);
    const long v = v_val_lower(x);
    if (v >= kValInf) return Value{x.owner, Value::PadTrunc{kValInf / 2, {}, 0}};
    const auto& base = x.owner.tower->padic_base();
    const BigInt pn = big_pow(BigInt(base.p), rel_prec);
    const Rational shift = v >= 0 ? Rational(1) / Rational(big_pow(BigInt(base.p), v))
                                  : Rational(big_pow(BigInt(base.p), -v));
    std::vector<BigInt> unit(base.e, 0);
    for (int i = 0; i < base.e; ++i) unit[i] = rational_mod(pe.coords[i] * shift, pn);
    return normalize_pad_trunc(x.owner, v, std::move(unit), rel_prec);
}

long abs_prec_pad(const Value::PadTrunc& t) {
    return t.rel_prec > 0 ? t.val + t.rel_prec : t.val;
}

Value add_pad_trunc(const FieldRef& K, Value::PadTrunc a, Value::PadTrunc b) {
    const auto& base = K.tower->padic_base();
    const long abs = std::min(abs_prec_pad(a), abs_prec_pad(b));
    const long m = std::min(a.val, b.val);
    if (m >= abs) return Value{K, Value::PadTrunc{abs, {}, 0}};
    const int rel = static_cast<int>(abs - m);
    const BigInt pn = big_pow(BigInt(base.p), rel);
    std::vector<BigInt> sum(base.e, 0);
    auto acc = [&](const Value::PadTrunc& t) {
        if (t.rel_prec <= 0) return;
        const BigInt scale = big_pow(BigInt(base.p), t.val - m);
        for (int i = 0; i < base.e; ++i) sum[i] = mod_floor(sum[i] + t.unit[i] * scale, pn);
    };
    acc(a);
    acc(b);
    return normalize_pad_trunc(K, m, std::move(sum), rel);
}

Value mul_pad_trunc(const FieldRef& K, const Value::PadTrunc& a, const Value::PadTrunc& b) {
    const auto& base = K.tower->padic_base();
    if (a.rel_prec <= 0 || b.rel_prec <= 0)
        return Value{K, Value::PadTrunc{a.val + b.val, {}, 0}};
    const int rel = std::min(a.rel_prec, b.rel_prec);
    auto g = gr_ctx(base, rel);
    std::vector<BigInt> ua = a.unit, ub = b.unit;
    for (auto& c : ua) c = mod_floor(c, g.pn);
    for (auto& c : ub) c = mod_floor(c, g.pn);
    return normalize_pad_trunc(K, a.val + b.val, gr_mul(ua, ub, g), rel);
}

} // namespace

Value v_add(const Value& a, const Value& b) {
    check_same(a, b);
    if (rep_is_exact_zero(a)) return b;
    if (rep_is_exact_zero(b)) return a;
    switch (a.owner.kind()) {
        case TowerField::Kind::Finite: {
            const auto& fq = *a.owner.tower->residue_field();
            return Value{a.owner, Value::Fin{fq.add(std::get<Value::Fin>(a.rep).enc,
                                                    std::get<Value::Fin>(b.rep).enc)}};
        }
        case TowerField::Kind::Padic: {
            const auto* ea = std::get_if<Value::PadExact>(&a.rep);
            const auto* eb = std::get_if<Value::PadExact>(&b.rep);
            if (ea && eb) {
                std::vector<Rational> c(ea->coords.size());
                for (std::size_t i = 0; i < c.size(); ++i) c[i] = ea->coords[i] + eb->coords[i];
                return Value{a.owner, Value::PadExact{std::move(c)}};
            }
            if (!ea && !eb)
                return add_pad_trunc(a.owner, std::get<Value::PadTrunc>(a.rep),
                                     std::get<Value::PadTrunc>(b.rep));
            // mixed: promote the exact side to cover the truncated window
            const Value& ex = ea ? a : b;
            const Value& tr = ea ? b : a;
            const auto& trt = std::get<Value::PadTrunc>(tr.rep);
            const long abs_t = abs_prec_pad(trt);
            const long vex = v_val_lower(ex);
            if (vex >= abs_t) return tr; // the exact side is invisible at this precision
            Value prom = promote_pad(ex, static_cast<int>(abs_t - vex));
            return add_pad_trunc(a.owner, std::get<Value::PadTrunc>(prom.rep), trt);
        }
        case TowerField::Kind::Laurent: {
            const auto& la = std::get<Value::Laurent>(a.rep);
            const auto& lb = std::get<Value::Laurent>(b.rep);
            std::vector<std::pair<long, Value>> coeffs = la.coeffs;
            coeffs.insert(coeffs.end(), lb.coeffs.begin(), lb.coeffs.end());
            return normalize_laurent(a.owner, std::move(coeffs), std::min(la.prec, lb.prec));
        }
    }
    throw Error("unreachable");
}

Value v_neg(const Value& a) {
    switch (a.owner.kind()) {
        case TowerField::Kind::Finite: {
            const auto& fq = *a.owner.tower->residue_field();
            return Value{a.owner, Value::Fin{fq.neg(std::get<Value::Fin>(a.rep).enc)}};
        }
        case TowerField::Kind::Padic: {
            if (const auto* pe = std::get_if<Value::PadExact>(&a.rep)) {
                std::vector<Rational> c(pe->coords.size());
                for (std::size_t i = 0; i < c.size(); ++i) c[i] = -pe->coords[i];
                return Value{a.owner, Value::PadExact{std::move(c)}};
            }
            const auto& pt = std::get<Value::PadTrunc>(a.rep);
            if (pt.rel_prec <= 0) return a;
            const BigInt pn = big_pow(BigInt(a.owner.tower->p()), pt.rel_prec);
            std::vector<BigInt> u(pt.unit.size());
            for (std::size_t i = 0; i < u.size(); ++i) u[i] = mod_floor(-pt.unit[i], pn);
            return Value{a.owner, Value::PadTrunc{pt.val, std::move(u), pt.rel_prec}};
        }
        case TowerField::Kind::Laurent: {
            auto l = std::get<Value::Laurent>(a.rep);
            for (auto& [e, c] : l.coeffs) {
                (void)e;
                c = v_neg(c);
            }
            return Value{a.owner, std::move(l)};
        }
    }
    throw Error("unreachable");
}

Value v_sub(const Value& a, const Value& b) { return v_add(a, v_neg(b)); }

Value v_mul(const Value& a, const Value& b) {
    check_same(a, b);
    if (rep_is_exact_zero(a)) return a;
    if (rep_is_exact_zero(b)) return b;
    switch (a.owner.kind()) {
        case TowerField::Kind::Finite: {
            const auto& fq = *a.owner.tower->residue_field();
            return Value{a.owner, Value::Fin{fq.mul(std::get<Value::Fin>(a.rep).enc,
                                                    std::get<Value::Fin>(b.rep).enc)}};
        }
        case TowerField::Kind::Padic: {
            const auto* ea = std::get_if<Value::PadExact>(&a.rep);
            const auto* eb = std::get_if<Value::PadExact>(&b.rep);
            if (ea && eb) {
                const auto& base = a.owner.tower->padic_base();
                return Value{a.owner, Value::PadExact{ratp_mul(ea->coords, eb->coords,
                                                               base.modulus_lift, base.e)}};
            }
            const int rel = ea ? std::get<Value::PadTrunc>(b.rep).rel_prec
                               : (eb ? std::get<Value::PadTrunc>(a.rep).rel_prec
                                     : std::min(std::get<Value::PadTrunc>(a.rep).rel_prec,
                                                std::get<Value::PadTrunc>(b.rep).rel_prec));
            Value ta = ea ? promote_pad(a, std::max(rel, 1)) : a;
            Value tb = eb ? promote_pad(b, std::max(rel, 1)) : b;
            return mul_pad_trunc(a.owner, std::get<Value::PadTrunc>(ta.rep),
                                 std::get<Value::PadTrunc>(tb.rep));
        }
        case TowerField::Kind::Laurent: {
            const auto& la = std::get<Value::Laurent>(a.rep);
            const auto& lb = std::get<Value::Laurent>(b.rep);
            const long prec = std::min(val_add(la.prec, v_val_lower(b)),
                                       val_add(lb.prec, v_val_lower(a)));
            std::map<long, Value> acc;
            for (const auto& [ea2, ca] : la.coeffs) {
                for (const auto& [eb2, cb] : lb.coeffs) {
                    const long e = ea2 + eb2;
                    if (e >= prec) continue;
                    Value prod = v_mul(ca, cb);
                    auto it = acc.find(e);
                    if (it == acc.end()) acc.emplace(e, std::move(prod));
                    else it->second = v_add(it->second, prod);
                }
            }
            std::vector<std::pair<long, Value>> coeffs(acc.begin(), acc.end());
            return normalize_laurent(a.owner, std::move(coeffs), prec);
        }
    }
    throw Error("unreachable");
}

Value v_pow(const Value& a, long e) {
    if (e < 0) throw Error("v_pow: negative exponent");
    Value r = v_one(a.owner);
    Value b = a;
    for (; e > 0; e >>= 1) {
        if (e & 1) r = v_mul(r, b);
        if (e > 1) b = v_mul(b, b);
    }
    return r;
}

Value v_shift(const Value& a, long k) {
    if (k == 0) return a;
    switch (a.owner.kind()) {
        case TowerField::Kind::Finite: throw Error("v_shift: not a valued level");
        case TowerField::Kind::Padic: {
            const long p = a.owner.tower->p();
            if (const auto* pe = std::get_if<Value::PadExact>(&a.rep)) {
                const Rational scale = k >= 0 ? Rational(big_pow(BigInt(p), k))
                                              : Rational(1) / Rational(big_pow(BigInt(p), -k));
                std::vector<Rational> c(pe->coords.size());
                for (std::size_t i = 0; i < c.size(); ++i) c[i] = pe->coords[i] * scale;
                return Value{a.owner, Value::PadExact{std::move(c)}};
            }
            auto pt = std::get<Value::PadTrunc>(a.rep);
            pt.val += k;
            return Value{a.owner, std::move(pt)};
        }
        case TowerField::Kind::Laurent: {
            auto l = std::get<Value::Laurent>(a.rep);
            for (auto& [e, c] : l.coeffs) {
                (void)c;
                e += k;
            }
            l.prec = val_add(l.prec, k);
            return Value{a.owner, std::move(l)};
        }
    }
    throw Error("unreachable");
}

Value v_scale_int(const Value& a, long n) { return v_mul(a, v_int(a.owner, n)); }

Value v_truncate_abs(const Value& a, long abs_prec) {
    switch (a.owner.kind()) {
        case TowerField::Kind::Finite: return a;
        case TowerField::Kind::Padic: {
            if (const auto* pe = std::get_if<Value::PadExact>(&a.rep)) {
                if (rep_is_exact_zero(a)) return a;
                const long v = v_val_lower(a);
                if (v >= abs_prec)
                    return Value{a.owner, Value::PadTrunc{abs_prec, {}, 0}};
                return promote_pad(a, static_cast<int>(abs_prec - v));
            }
            const auto& pt = std::get<Value::PadTrunc>(a.rep);
            if (abs_prec_pad(pt) <= abs_prec) return a;
            if (pt.val >= abs_prec) return Value{a.owner, Value::PadTrunc{abs_prec, {}, 0}};
            auto unit = pt.unit;
            return normalize_pad_trunc(a.owner, pt.val, std::move(unit),
                                       static_cast<int>(abs_prec - pt.val));
        }
        case TowerField::Kind::Laurent: {
            const auto& l = std::get<Value::Laurent>(a.rep);
            if (l.prec <= abs_prec) return a;
            std::vector<std::pair<long, Value>> coeffs;
            for (const auto& c : l.coeffs)
                if (c.first < abs_prec) coeffs.push_back(c);
            return Value{a.owner, Value::Laurent{std::move(coeffs), abs_prec}};
        }
    }
    throw Error("unreachable");
}

Value v_invert(const Value& a, int rel_prec) {
    switch (a.owner.kind()) {
        case TowerField::Kind::Finite: {
            const auto& fq = *a.owner.tower->residue_field();
            return Value{a.owner, Value::Fin{fq.inv(std::get<Value::Fin>(a.rep).enc)}};
        }
        case TowerField::Kind::Padic: {
            if (const auto* pe = std::get_if<Value::PadExact>(&a.rep)) {
                if (rep_is_exact_zero(a)) throw NonUnit("inverse of zero");
                const auto& base = a.owner.tower->padic_base();
                return Value{a.owner,
                             Value::PadExact{ratp_inverse(pe->coords, base.modulus_lift, base.e)}};
            }
            const auto& pt = std::get<Value::PadTrunc>(a.rep);
            if (pt.rel_prec <= 0) throw NonUnit("inverse of a value with unknown unit part");
            const auto& base = a.owner.tower->padic_base();
            const int rel = std::min(rel_prec, pt.rel_prec);
            auto g = gr_ctx(base, rel);
            std::vector<BigInt> u = pt.unit;
            for (auto& c : u) c = mod_floor(c, g.pn);
            return normalize_pad_trunc(a.owner, -pt.val,
                                       gr_inv(u, g, *a.owner.tower->residue_field()), rel);
        }
        case TowerField::Kind::Laurent: {
            const auto ve = v_val_exact(a);
            if (!ve || *ve >= kValInf) throw NonUnit("inverse needs a known leading term");
            const long v = *ve;
            const Value u = v_shift(a, -v); // unit, v = 0
            Value i = lift_to(a.owner, v_invert(residue(u), rel_prec));
            const Value two = v_int(a.owner, 2);
            int iters = 1;
            while ((1L << iters) < rel_prec + 1) ++iters;
            for (int k = 0; k <= iters; ++k) {
                i = v_truncate_abs(v_mul(i, v_sub(two, v_mul(u, i))), rel_prec);
            }
            if (!v_verified_small(v_sub(v_mul(u, i), v_one(a.owner)), rel_prec))
                throw PrecisionExhausted("series inversion did not converge");
            // constants invert exactly
            if (v_is_exact(u)) {
                const auto& lu = std::get<Value::Laurent>(u.rep);
                if (lu.coeffs.size() == 1 && lu.coeffs.front().first == 0) {
                    Value exact = lift_to(a.owner, v_invert(lu.coeffs.front().second, rel_prec));
                    if (v_is_exact(exact)) return v_shift(exact, -v);
                }
            }
            return v_shift(i, -v);
        }
    }
    throw Error("unreachable");
}

// ---------------------------------------------------------------------------
// spec operations

long valuation(const Value& x) {
    if (!x.owner.is_valued()) throw Error("valuation: element of a non-valued level");
    const auto ve = v_val_exact(x);
    if (!ve) throw PrecisionExhausted("valuation not determined at current precision");
    return *ve;
}

Value residue(const Value& x) {
    if (!x.owner.is_valued()) throw Error("residue: element of a non-valued level");
    const auto ve = v_val_exact(x);
    if (!ve || *ve != 0) throw NonUnit("residue requires valuation 0");
    switch (x.owner.kind()) {
        case TowerField::Kind::Padic: {
            const auto& fq = *x.owner.tower->residue_field();
            if (const auto* pe = std::get_if<Value::PadExact>(&x.rep)) {
                std::vector<long> coords(fq.e(), 0);
                for (int i = 0; i < fq.e(); ++i)
                    coords[i] = static_cast<long>(rational_mod(pe->coords[i], BigInt(fq.p())));
                return v_fq(x.owner.residue_ref(), fq.from_coords(coords));
            }
            const auto& pt = std::get<Value::PadTrunc>(x.rep);
            return v_fq(x.owner.residue_ref(), gr_residue_enc(pt.unit, fq));
        }
        case TowerField::Kind::Laurent: {
            const auto& l = std::get<Value::Laurent>(x.rep);
            return l.coeffs.front().second;
        }
        default: throw Error("unreachable");
    }
}

Value lift_to(const FieldRef& target, const Value& residue_elem) {
    if (!target.is_valued()) throw Error("lift_to: target must be valued");
    if (!residue_elem.owner.same_field(target.residue_ref()))
        throw FieldMismatch("lift_to: element is not in the residue field of target");
    switch (target.kind()) {
        case TowerField::Kind::Padic: {
            const auto& fq = *target.tower->residue_field();
            const auto coords = fq.coords(std::get<Value::Fin>(residue_elem.rep).enc);
            std::vector<Rational> c(fq.e(), Rational(0));
            for (int i = 0; i < fq.e(); ++i) c[i] = coords[i];
            return Value{target, Value::PadExact{std::move(c)}};
        }
        case TowerField::Kind::Laurent: {
            if (rep_is_exact_zero(residue_elem)) return v_zero(target);
            return Value{target, Value::Laurent{{{0, residue_elem}}, kValInf}};
        }
        default: throw Error("unreachable");
    }
}

PowerClass dth_power_class(const Value& x, long d) {
    if (!v_known_nonzero(x)) throw ZeroInput("dth_power_class of zero");
    if (x.owner.kind() == TowerField::Kind::Finite) {
        const auto& fq = *x.owner.tower->residue_field();
        return PowerClass{{fq.dth_class(std::get<Value::Fin>(x.rep).enc, d)}, {fq.dstar(d)}};
    }
    const long v = valuation(x);
    const long j = ((v % d) + d) % d;
    PowerClass lower = dth_power_class(residue(v_shift(x, -v)), d);
    PowerClass r;
    r.comps.push_back(j);
    r.moduli.push_back(d);
    r.comps.insert(r.comps.end(), lower.comps.begin(), lower.comps.end());
    r.moduli.insert(r.moduli.end(), lower.moduli.begin(), lower.moduli.end());
    return r;
}

namespace {

// all data known to be nonzero lies at valuation >= t
bool no_known_obstruction_below(const Value& x, long t) {
    if (t <= 0) return true;
    if (const auto* f = std::get_if<Value::Fin>(&x.rep)) return f->enc == 0;
    if (std::holds_alternative<Value::PadExact>(x.rep)) return v_val_lower(x) >= t;
    if (const auto* pt = std::get_if<Value::PadTrunc>(&x.rep))
        return pt->rel_prec == 0 || pt->val >= t;
    const auto& l = std::get<Value::Laurent>(x.rep);
    for (const auto& [e, cc] : l.coeffs) {
        if (e >= t) break;
        if (v_known_nonzero(cc)) return false;
    }
    return true;
}

std::optional<BigInt> integer_dth_root(const BigInt& n, long d) {
    if (n < 0) {
        if (d % 2 == 0) return std::nullopt;
        auto r = integer_dth_root(-n, d);
        if (!r) return std::nullopt;
        return -*r;
    }
    if (n == 0) return BigInt(0);
    BigInt lo = 0, hi = 1;
    while (big_pow(hi, d) < n) hi <<= 1;
    while (lo < hi) {
        BigInt mid = (lo + hi) / 2;
        if (big_pow(mid, d) < n) lo = mid + 1;
        else hi = mid;
    }
    return big_pow(lo, d) == n ? std::optional<BigInt>(lo) : std::nullopt;
}

std::optional<Rational> exact_rational_dth_root(const Rational& r, long d) {
    auto num = integer_dth_root(boost::multiprecision::numerator(r), d);
    if (!num) return std::nullopt;
    auto den = integer_dth_root(boost::multiprecision::denominator(r), d);
    if (!den) return std::nullopt;
    return Rational(*num) / Rational(*den);
}

} // namespace

Value dth_root(const Value& c, long d, int rel_prec, const std::optional<Value>& seed) {
    const long p = c.owner.tower->p();
    if (p <= d) throw UnsupportedCharacteristic("dth_root requires residue characteristic > d");
    if (c.owner.kind() == TowerField::Kind::Finite) {
        const auto& fq = *c.owner.tower->residue_field();
        auto r = fq.dth_root(std::get<Value::Fin>(c.rep).enc, d);
        if (!r) throw NotADthPower("not a d-th power in " + fq.name());
        return v_fq(c.owner, *r);
    }
    const auto ve = v_val_exact(c);
    if (!ve || *ve != 0) throw NonUnit("dth_root requires a unit argument");

    // exact rational d-th powers have a preferred exact root
    if (!seed && c.owner.kind() == TowerField::Kind::Padic) {
        if (const auto* pe = std::get_if<Value::PadExact>(&c.rep)) {
            if (c.owner.tower->padic_base().e == 1) {
                if (auto rr = exact_rational_dth_root(pe->coords[0], d))
                    return Value{c.owner, Value::PadExact{{*rr}}};
            }
        }
    }

    Value x0 = seed ? *seed : lift_to(c.owner, dth_root(residue(c), d, rel_prec));
    if (!no_known_obstruction_below(v_sub(v_pow(x0, d), c), 1))
        throw NotADthPower("seed residue is not a d-th root of the residue");

    Value x = v_truncate_abs(x0, rel_prec);
    int iters = 2;
    while ((1L << iters) < rel_prec + 1) ++iters;
    for (int k = 0; k <= iters; ++k) {
        Value num = v_sub(v_pow(x, d), c);
        if (v_verified_small(num, rel_prec)) break;
        Value den_inv = v_invert(v_scale_int(v_pow(x, d - 1), d), rel_prec);
        x = v_truncate_abs(v_sub(x, v_mul(num, den_inv)), rel_prec);
    }
    if (!v_verified_small(v_sub(v_pow(x, d), c), rel_prec))
        throw PrecisionExhausted("Newton iteration for dth_root did not converge");

    // exact roots (e.g. integer cubes) are recognized and returned exactly
    if (v_is_exact(c)) {
        Value r = v_representative(x);
        if (v_pow(r, d) == c) return r;
    }
    return x;
}

// ---------------------------------------------------------------------------
// representatives and rendering

Value v_representative(const Value& x) {
    switch (x.owner.kind()) {
        case TowerField::Kind::Finite: return x;
        case TowerField::Kind::Padic: {
            if (std::holds_alternative<Value::PadExact>(x.rep)) return x;
            const auto& pt = std::get<Value::PadTrunc>(x.rep);
            if (pt.rel_prec <= 0) return v_zero(x.owner);
            const long p = x.owner.tower->p();
            const Rational scale = pt.val >= 0
                                       ? Rational(big_pow(BigInt(p), pt.val))
                                       : Rational(1) / Rational(big_pow(BigInt(p), -pt.val));
            std::vector<Rational> c(pt.unit.size());
            for (std::size_t i = 0; i < c.size(); ++i) c[i] = Rational(pt.unit[i]) * scale;
            return Value{x.owner, Value::PadExact{std::move(c)}};
        }
        case TowerField::Kind::Laurent: {
            const auto& l = std::get<Value::Laurent>(x.rep);
            std::vector<std::pair<long, Value>> coeffs;
            for (const auto& [e, cc] : l.coeffs) {
                Value r = v_representative(cc);
                if (!rep_is_exact_zero(r)) coeffs.emplace_back(e, std::move(r));
            }
            return Value{x.owner, Value::Laurent{std::move(coeffs), kValInf}};
        }
    }
    throw Error("unreachable");
}

std::string v_to_string(const Value& x) {
    switch (x.owner.kind()) {
        case TowerField::Kind::Finite:
            return x.owner.tower->residue_field()->elem_to_string(std::get<Value::Fin>(x.rep).enc);
        case TowerField::Kind::Padic: {
            const long p = x.owner.tower->p();
            if (const auto* pe = std::get_if<Value::PadExact>(&x.rep)) {
                std::string s;
                bool first = true;
                for (std::size_t i = 0; i < pe->coords.size(); ++i) {
                    if (pe->coords[i] == 0) continue;
                    if (!first) s += " + ";
                    first = false;
                    s += pe->coords[i].str();
                    if (i >= 1) s += "*w" + (i > 1 ? "^" + std::to_string(i) : "");
                }
                return first ? "0" : s;
            }
            const auto& pt = std::get<Value::PadTrunc>(x.rep);
            std::ostringstream os;
            if (pt.rel_prec > 0) {
                Value r = v_representative(x);
                os << v_to_string(r) << " + ";
            }
            os << "O(" << p << "^" << abs_prec_pad(pt) << ")";
            return os.str();
        }
        case TowerField::Kind::Laurent: {
            const auto& l = std::get<Value::Laurent>(x.rep);
            const std::string var = x.owner.tower->var_name(x.owner.level);
            std::string s;
            for (const auto& [e, c] : l.coeffs) {
                if (!s.empty()) s += " + ";
                const std::string cs = v_to_string(c);
                const bool needs_parens = cs.find(' ') != std::string::npos;
                if (e == 0) {
                    s += needs_parens ? "(" + cs + ")" : cs;
                } else {
                    if (cs != "1") s += (needs_parens ? "(" + cs + ")" : cs) + "*";
                    s += var;
                    if (e != 1) s += "^" + std::to_string(e);
                }
            }
            if (l.prec < kValInf) {
                if (!s.empty()) s += " + ";
                s += "O(" + var + "^" + std::to_string(l.prec) + ")";
            }
            return s.empty() ? "0" : s;
        }
    }
    throw Error("unreachable");
}

} // namespace dform
