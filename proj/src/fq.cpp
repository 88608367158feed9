#include "dform/fq.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>

namespace dform {

namespace {

std::mutex g_cache_mutex;
std::map<std::tuple<long, int, long>, FqPtr>& field_cache() {
    static std::map<std::tuple<long, int, long>, FqPtr> cache;
    return cache;
}

// Distinct prime factors by trial division (q - 1 is word-sized here).
std::vector<long> prime_factors(long n) {
    std::vector<long> fs;
    for (long d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            fs.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) fs.push_back(n);
    return fs;
}

} // namespace

FqPtr FqField::make(long p, int e) {
    FqDescriptor d;
    d.p = p;
    d.e = e;
    d.modulus = fppoly::canonical_irreducible(p, e);
    return make(d);
}

FqPtr FqField::make(const FqDescriptor& desc) {
    if (!is_prime(desc.p)) throw Error("FqField: p = " + std::to_string(desc.p) + " is not prime");
    if (desc.e < 1) throw Error("FqField: extension degree must be >= 1");
    if (desc.modulus.degree() != desc.e || !desc.modulus.is_monic())
        throw Error("FqField: modulus must be monic of degree e");
    if (desc.e > 1 && !fppoly::is_irreducible(desc.modulus, desc.p))
        throw Error("FqField: modulus is reducible");

    const auto key = std::make_tuple(desc.p, desc.e, fppoly::encode(desc.modulus, desc.p));
    std::lock_guard<std::mutex> lk(g_cache_mutex);
    auto& cache = field_cache();
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    FqPtr f(new FqField(desc));
    cache.emplace(key, f);
    return f;
}

FqField::FqField(FqDescriptor desc) : desc_(std::move(desc)) {
    q_ = 1;
    for (int i = 0; i < desc_.e; ++i) {
        if (q_ > (1L << 40) / desc_.p) throw Error("FqField: q exceeds the word budget");
        q_ *= desc_.p;
    }
    build_tables();
}

long FqField::from_int(long n) const {
    long r = n % desc_.p;
    return r < 0 ? r + desc_.p : r;
}

long FqField::from_coords(const std::vector<long>& c) const {
    if (static_cast<int>(c.size()) > desc_.e) throw Error("FqField: too many coordinates");
    long enc = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        long x = *it % desc_.p;
        if (x < 0) x += desc_.p;
        enc = enc * desc_.p + x;
    }
    return enc;
}

std::vector<long> FqField::coords(long a) const {
    std::vector<long> c(desc_.e, 0);
    for (int i = 0; i < desc_.e && a > 0; ++i) {
        c[i] = a % desc_.p;
        a /= desc_.p;
    }
    return c;
}

long FqField::add(long a, long b) const {
    long r = 0, scale = 1;
    for (int i = 0; i < desc_.e; ++i) {
        long s = (a % desc_.p + b % desc_.p) % desc_.p;
        r += s * scale;
        scale *= desc_.p;
        a /= desc_.p;
        b /= desc_.p;
    }
    return r;
}

long FqField::neg(long a) const {
    long r = 0, scale = 1;
    for (int i = 0; i < desc_.e; ++i) {
        long s = (desc_.p - a % desc_.p) % desc_.p;
        r += s * scale;
        scale *= desc_.p;
        a /= desc_.p;
    }
    return r;
}

long FqField::sub(long a, long b) const { return add(a, neg(b)); }

long FqField::mul_generic(long a, long b) const {
    FpPoly pa = fppoly::decode(a, desc_.p), pb = fppoly::decode(b, desc_.p);
    FpPoly prod = fppoly::mod(fppoly::mul(pa, pb, desc_.p), desc_.modulus, desc_.p);
    return fppoly::encode(prod, desc_.p);
}

long FqField::mul(long a, long b) const {
    if (a == 0 || b == 0) return 0;
    if (!exp_.empty()) {
        long l = log_[a] + log_[b];
        if (l >= q_ - 1) l -= q_ - 1;
        return exp_[l];
    }
    return mul_generic(a, b);
}

long FqField::inv(long a) const {
    if (a == 0) throw ZeroInput("inverse of zero");
    if (!exp_.empty()) {
        long l = log_[a];
        return exp_[l == 0 ? 0 : q_ - 1 - l];
    }
    return pow(a, q_ - 2);
}

long FqField::pow(long a, BigInt k) const {
    if (a == 0) return k == 0 ? one() : 0;
    k = mod_floor(k, q_ - 1);
    if (!exp_.empty()) {
        BigInt l = mod_floor(BigInt(log_[a]) * k, q_ - 1);
        return exp_[static_cast<long>(l)];
    }
    long r = one(), b = a;
    BigInt e = k;
    while (e > 0) {
        if ((e & 1) != 0) r = mul_generic(r, b);
        e >>= 1;
        if (e > 0) b = mul_generic(b, b);
    }
    return r;
}

long FqField::dlog(long a) const {
    if (a == 0) throw ZeroInput("dlog of zero");
    if (!log_.empty()) return log_[a];
    // Baby-step giant-step fallback for table-less fields.
    const long m = static_cast<long>(std::sqrt(static_cast<double>(q_ - 1))) + 1;
    std::map<long, long> baby;
    long cur = one();
    for (long j = 0; j < m; ++j) {
        baby.emplace(cur, j);
        cur = mul(cur, gen_);
    }
    const long giant = inv(pow(gen_, m));
    long gamma = a;
    for (long i = 0; i < m + 1; ++i) {
        auto it = baby.find(gamma);
        if (it != baby.end()) return (i * m + it->second) % (q_ - 1);
        gamma = mul(gamma, giant);
    }
    throw Error("dlog: not found (generator invalid?)");
}

void FqField::build_tables() {
    // Canonical generator: least encode with multiplicative order q - 1.
    const auto factors = prime_factors(q_ - 1);
    gen_ = 0;
    for (long g = 1; g < q_; ++g) {
        bool ok = true;
        for (long f : factors) {
            long r = one(), b = g;
            long e = (q_ - 1) / f;
            while (e > 0) { // pow without tables
                if (e & 1) r = mul_generic(r, b);
                e >>= 1;
                if (e > 0) b = mul_generic(b, b);
            }
            if (r == one()) { ok = false; break; }
        }
        if (ok) { gen_ = g; break; }
    }
    if (gen_ == 0) throw Error("FqField: no generator found");

    constexpr long kTableCap = 1L << 20;
    if (q_ <= kTableCap) {
        exp_.assign(q_ - 1, 0);
        log_.assign(q_, 0);
        long cur = one();
        for (long i = 0; i < q_ - 1; ++i) {
            exp_[i] = cur;
            log_[cur] = i;
            cur = mul_generic(cur, gen_);
        }
        if (cur != one()) throw Error("FqField: generator order mismatch");
    }
}

long FqField::dth_class(long a, long d) const {
    if (a == 0) throw ZeroInput("dth_power_class of zero");
    return dlog(a) % dstar(d);
}

std::optional<long> FqField::dth_root(long a, long d) const {
    if (a == 0) return 0;
    const long ds = dstar(d);
    const long l = dlog(a);
    if (l % ds != 0) return std::nullopt;
    // Solve d*m = l (mod q-1): with d = ds*d1, q-1 = ds*q1, gcd(d1,q1) = 1,
    // this is d1*m = l/ds (mod q1).
    const long q1 = (q_ - 1) / ds;
    if (q1 == 1) return one(); // d-th powers are trivial; a must be 1 here
    const long d1 = (d / ds) % q1;
    const long m = ((l / ds) % q1) * mod_inverse_long(d1, q1) % q1;
    return pow(gen_, m);
}

long FqField::min_class_representative(long c, long d) const {
    const long ds = dstar(d);
    long best = -1;
    for (long a = 1; a < q_; ++a) {
        if (dth_class(a, d) == c % ds) { best = a; break; }
    }
    return best;
}

const FqField::PowerValues& FqField::dth_power_values(long d) const {
    for (auto& [dd, pv] : power_cache_) {
        if (dd == d) return pv;
    }
    PowerValues pv;
    pv.root_of.assign(q_, -1);
    pv.root_of[0] = 0;
    pv.values.push_back(0);
    for (long x = 1; x < q_; ++x) {
        long v = pow(x, d);
        if (pv.root_of[v] == -1) {
            pv.root_of[v] = x;
            pv.values.push_back(v);
        }
    }
    std::sort(pv.values.begin(), pv.values.end());
    power_cache_.emplace_back(d, std::move(pv));
    return power_cache_.back().second;
}

std::string FqField::elem_to_string(long a) const {
    if (desc_.e == 1) return std::to_string(a);
    return fppoly::to_string(fppoly::decode(a, desc_.p), "a");
}

std::string FqField::name() const { return "F_" + std::to_string(q_); }

} // namespace dform
