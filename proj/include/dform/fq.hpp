#pragma once

#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "dform/fppoly.hpp"
#include "dform/numbers.hpp"

namespace dform {

/// Description of F_q, q = p^e, as F_p[x]/(modulus).
/// Canonical modulus: the monic irreducible of degree e with least integer encode.
struct FqDescriptor {
    long p = 0;
    int e = 1;
    FpPoly modulus; // monic, degree e, irreducible over F_p

    bool operator==(const FqDescriptor& o) const {
        return p == o.p && e == o.e && modulus == o.modulus;
    }
};

class FqField;
using FqPtr = std::shared_ptr<const FqField>;

/// Arithmetic context for one F_q. Elements are integer encodes in [0, q):
/// enc = sum coords[i] * p^i for the x^i coordinates of the residue class.
/// Immutable after construction; safe to share across threads.
class FqField {
public:
    static FqPtr make(long p, int e = 1);            // canonical modulus
    static FqPtr make(const FqDescriptor& desc);     // explicit modulus

    const FqDescriptor& descriptor() const { return desc_; }
    long p() const { return desc_.p; }
    int e() const { return desc_.e; }
    long q() const { return q_; }
    bool same_field(const FqField& o) const { return desc_ == o.desc_; }

    // element construction
    long zero() const { return 0; }
    long one() const { return from_int(1); }
    long from_int(long n) const;                      // prime-field embedding
    long from_coords(const std::vector<long>& c) const;
    std::vector<long> coords(long a) const;

    // ring / field operations on encodes
    long add(long a, long b) const;
    long sub(long a, long b) const;
    long neg(long a) const;
    long mul(long a, long b) const;
    long inv(long a) const;                           // ZeroInput on 0
    long pow(long a, BigInt k) const;

    /// Canonical generator of F_q^x: the least encode of full order
    /// (least primitive root when e = 1).
    long generator() const { return gen_; }
    long dlog(long a) const;                          // ZeroInput on 0

    /// Index of a in k^x / (k^x)^d, cyclic of order d* = gcd(d, q-1),
    /// relative to the canonical generator.
    long dstar(long d) const { return static_cast<long>(std::gcd(d, q_ - 1)); }
    long dth_class(long a, long d) const;
    std::optional<long> dth_root(long a, long d) const;
    /// Least encode representing class c (used for canonical extremal forms).
    long min_class_representative(long c, long d) const;

    /// All values x^d (including 0) together with one chosen root per value.
    struct PowerValues {
        std::vector<long> values;        // sorted, includes 0
        std::vector<long> root_of;       // indexed by encode; -1 when not a d-th power
    };
    const PowerValues& dth_power_values(long d) const;

    std::string elem_to_string(long a) const;
    std::string name() const;                         // e.g. "F_7" or "F_49"

private:
    explicit FqField(FqDescriptor desc);
    void build_tables();
    long mul_generic(long a, long b) const;

    FqDescriptor desc_;
    long q_ = 0;
    long gen_ = 0;
    std::vector<long> exp_;   // exp_[i] = gen^i, i in [0, q-1)
    std::vector<long> log_;   // log_[enc] = dlog, log_[0] unused
    mutable std::vector<std::pair<long, PowerValues>> power_cache_;
};

} // namespace dform
