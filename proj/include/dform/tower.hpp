#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dform/fq.hpp"

namespace dform {

/// Unramified p-adic coefficient level: Q_p for e = 1, else Q_p[w]/(G) with G a
/// monic integer lift of an irreducible degree-e polynomial over F_p.
struct PadicBase {
    long p = 0;
    int e = 1;
    FpPoly residue_modulus;            // degree e, irreducible mod p
    std::vector<BigInt> modulus_lift;  // monic, size e+1; [0,1] when e = 1

    bool operator==(const PadicBase& o) const {
        return p == o.p && e == o.e && residue_modulus == o.residue_modulus &&
               modulus_lift == o.modulus_lift;
    }
};

class TowerField;
using TowerPtr = std::shared_ptr<const TowerField>;

/// A complete discretely valued tower: an F_q or p-adic base under m iterated
/// Laurent levels K = base((t_1))...((t_m)). Level 0 is the finite residue
/// field at the bottom; each higher level has the previous one as residue.
/// Immutable and shareable.
class TowerField : public std::enable_shared_from_this<TowerField> {
public:
    enum class Kind { Finite, Padic, Laurent };

    static TowerPtr make_fq(FqPtr base, std::vector<std::string> vars = {}, int prec = 20);
    static TowerPtr make_padic(long p, std::vector<std::string> vars = {}, int prec = 20);
    static TowerPtr make_padic_ext(long p, const FpPoly& residue_modulus,
                                   std::vector<std::string> vars = {}, int prec = 20);

    bool padic_based() const { return padic_.has_value(); }
    const PadicBase& padic_base() const { return *padic_; }
    FqPtr residue_field() const { return residue_; }   // the level-0 finite field
    long p() const { return residue_->p(); }

    int top_level() const { return (padic_based() ? 1 : 0) + static_cast<int>(vars_.size()); }
    int default_prec() const { return prec_; }
    const std::vector<std::string>& vars() const { return vars_; }

    Kind kind(int level) const;
    /// Laurent variable of a Laurent level.
    const std::string& var_name(int level) const;
    std::string uniformizer_name(int level) const;     // var, or "p" at the p-adic level
    std::string level_name(int level) const;           // e.g. "F_7((t))" or "Q_7"

    bool same_tower(const TowerField& o) const {
        return padic_ == o.padic_ && vars_ == o.vars_ &&
               (padic_based() || residue_->same_field(*o.residue_));
    }

private:
    TowerField() = default;
    std::optional<PadicBase> padic_;
    FqPtr residue_;
    std::vector<std::string> vars_;
    int prec_ = 20;
};

/// One level of a tower, the "owner" of elements.
struct FieldRef {
    TowerPtr tower;
    int level = 0;

    TowerField::Kind kind() const { return tower->kind(level); }
    FieldRef residue_ref() const { return {tower, level - 1}; }
    bool is_valued() const { return level >= 1; }
    bool same_field(const FieldRef& o) const {
        return level == o.level && tower->same_tower(*o.tower);
    }
    std::string name() const { return tower->level_name(level); }
};

/// An element of some tower level, exact or precision-tracked.
///
/// Exact inputs (rationals, iterated Laurent polynomials) stay exact under
/// ring operations; truncation only enters through inversion and root
/// extraction, and the representation keeps a certified precision bound.
class Value {
public:
    struct Fin {
        long enc = 0;
        bool operator==(const Fin& o) const { return enc == o.enc; }
    };
    /// Exact element of the p-adic level: coordinates in Q[w]/(G).
    struct PadExact {
        std::vector<Rational> coords;
        bool operator==(const PadExact& o) const { return coords == o.coords; }
    };
    /// Truncated p-adic: p^val * unit with unit known in GR(p^rel_prec, e).
    /// rel_prec == 0 encodes "known only to lie in p^val * O" (a zero bound).
    struct PadTrunc {
        long val = 0;
        std::vector<BigInt> unit;
        int rel_prec = 0;
        bool operator==(const PadTrunc& o) const {
            return val == o.val && unit == o.unit && rel_prec == o.rel_prec;
        }
    };
    /// Laurent level: sparse coefficients over the residue level, exponents
    /// below prec; prec == kValInf means no unknown tail.
    struct Laurent {
        std::vector<std::pair<long, Value>> coeffs;
        long prec = kValInf;
        bool operator==(const Laurent& o) const { return prec == o.prec && coeffs == o.coeffs; }
    };
    using Rep = std::variant<Fin, PadExact, PadTrunc, Laurent>;

    FieldRef owner;
    Rep rep;

    bool operator==(const Value& o) const { return rep == o.rep && owner.same_field(o.owner); }
};

/// Complete invariant of x modulo d-th powers: the top component is v mod d
/// per valued level, the last one the F_q class; componentwise group law.
struct PowerClass {
    std::vector<long> comps;
    std::vector<long> moduli;

    bool operator==(const PowerClass& o) const { return comps == o.comps && moduli == o.moduli; }
    bool is_identity() const;
    PowerClass plus(const PowerClass& o) const;
    PowerClass minus(const PowerClass& o) const;
    std::string to_string() const;
};

// --- construction ---
Value v_zero(const FieldRef& K);
Value v_one(const FieldRef& K);
Value v_int(const FieldRef& K, long n);
Value v_rational(const FieldRef& K, const Rational& r);
Value v_fq(const FieldRef& K, long enc);                 // level-0 element
Value v_uniformizer(const FieldRef& K);                  // level >= 1
Value v_laurent(const FieldRef& K, std::vector<std::pair<long, Value>> coeffs,
                long prec = kValInf);
Value v_pad_trunc(const FieldRef& K, long val, std::vector<BigInt> unit, int rel_prec);

// --- queries ---
bool v_is_exact(const Value& x);
bool v_known_nonzero(const Value& x);
long v_val_lower(const Value& x);
std::optional<long> v_val_exact(const Value& x);
/// Certified "x has valuation >= t at every level" (exact zero test when exact).
bool v_verified_small(const Value& x, long t);

// --- arithmetic ---
Value v_add(const Value& a, const Value& b);
Value v_sub(const Value& a, const Value& b);
Value v_neg(const Value& a);
Value v_mul(const Value& a, const Value& b);
Value v_pow(const Value& a, long e);
Value v_shift(const Value& a, long k);                   // * uniformizer^k
Value v_scale_int(const Value& a, long n);
/// Inverse of a unit-ish element to the given relative precision; exact when
/// representable exactly (finite level, p-adic level, constants).
Value v_invert(const Value& a, int rel_prec);
Value v_truncate_abs(const Value& a, long abs_prec);

// --- spec operations of the fields module ---
long valuation(const Value& x);                          // v(x); kValInf for zero
Value residue(const Value& x);                           // NonUnit unless v(x) = 0
Value lift_to(const FieldRef& target, const Value& residue_elem);
PowerClass dth_power_class(const Value& x, long d);      // ZeroInput on zero
Value dth_root(const Value& c, long d, int rel_prec,
               const std::optional<Value>& seed = std::nullopt);

// --- representatives and rendering ---
Value v_representative(const Value& x);
std::string v_to_string(const Value& x);

} // namespace dform
