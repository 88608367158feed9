#include "dform/isotropy.hpp"

#include <algorithm>
#include <map>
#include <random>

namespace dform {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t stable_seed(const SearchOptions& opts, long q, long d,
                          const std::vector<long>& coeffs) {
    std::uint64_t h = splitmix64(opts.seed ^ 0x7f4a7c15ULL);
    h = splitmix64(h ^ static_cast<std::uint64_t>(q));
    h = splitmix64(h ^ static_cast<std::uint64_t>(d));
    for (long c : coeffs) h = splitmix64(h ^ static_cast<std::uint64_t>(c));
    return h;
}

struct MitmOutcome {
    std::optional<std::vector<long>> witness; // encodes, same length as slots
    std::uint64_t checked = 0;
};

// Exhaustive search over the per-slot value sets a_i * {x^d}: a nontrivial
// zero exists iff some choice of values sums to zero with a nonzero pick.
MitmOutcome mitm_values(const FqField& fq, long d, const std::vector<long>& a) {
    const auto& D = fq.dth_power_values(d);
    const std::size_t n = a.size();
    const std::size_t nl = n / 2;
    const std::size_t nr = n - nl;

    struct Choice {
        std::vector<long> xs;
        bool nonzero = false;
    };
    std::map<long, Choice> left;

    std::vector<std::size_t> idx(nl, 0);
    std::uint64_t checked = 0;
    // enumerate the left half
    while (true) {
        long sum = 0;
        Choice ch;
        ch.xs.resize(nl);
        for (std::size_t i = 0; i < nl; ++i) {
            const long w = D.values[idx[i]];
            sum = fq.add(sum, fq.mul(a[i], w));
            ch.xs[i] = D.root_of[w];
            if (w != 0) ch.nonzero = true;
        }
        ++checked;
        auto it = left.find(sum);
        if (it == left.end()) left.emplace(sum, std::move(ch));
        else if (!it->second.nonzero && ch.nonzero) it->second = std::move(ch);
        // odometer
        std::size_t k = 0;
        for (; k < nl; ++k) {
            if (++idx[k] < D.values.size()) break;
            idx[k] = 0;
        }
        if (k == nl) break;
        if (nl == 0) break;
    }

    idx.assign(nr, 0);
    while (true) {
        long sum = 0;
        std::vector<long> xs(nr);
        bool nonzero = false;
        for (std::size_t i = 0; i < nr; ++i) {
            const long w = D.values[idx[i]];
            sum = fq.add(sum, fq.mul(a[nl + i], w));
            xs[i] = D.root_of[w];
            if (w != 0) nonzero = true;
        }
        ++checked;
        auto it = left.find(fq.neg(sum));
        if (it != left.end() && (it->second.nonzero || nonzero)) {
            std::vector<long> full = it->second.xs;
            full.insert(full.end(), xs.begin(), xs.end());
            return {std::move(full), checked};
        }
        std::size_t k = 0;
        for (; k < nr; ++k) {
            if (++idx[k] < D.values.size()) break;
            idx[k] = 0;
        }
        if (k == nr) break;
    }
    return {std::nullopt, checked};
}

std::vector<Value> encode_witness(const FieldRef& K, const std::vector<long>& xs,
                                  std::size_t full_dim) {
    std::vector<Value> w;
    w.reserve(full_dim);
    for (long x : xs) w.push_back(v_fq(K, x));
    while (w.size() < full_dim) w.push_back(v_zero(K));
    return w;
}

} // namespace

Certificate decide_fq(const DiagonalForm& phi, const SearchOptions& opts) {
    if (phi.field.kind() != TowerField::Kind::Finite)
        throw Error("decide_fq: form is not over a finite field");
    const FqField& fq = *phi.field.tower->residue_field();
    const long d = phi.degree;
    const std::size_t n = phi.dim();

    std::vector<long> a;
    a.reserve(n);
    for (const auto& c : phi.coeffs) a.push_back(std::get<Value::Fin>(c.rep).enc);

    if (n == 1) {
        AnisoNode::FqLeaf leaf{fq.name(), fq.q(), static_cast<int>(d), 1, a,
                               static_cast<std::uint64_t>(fq.q() - 1)};
        return {Verdict::Anisotropic, {}, 0, make_node(AnisoNode{leaf}), ""};
    }

    const long ds = fq.dstar(d);
    if (ds == 1) {
        // every element is a d-th power: solve a_1 x^d = -a_2 directly
        const long target = fq.mul(fq.neg(a[1]), fq.inv(a[0]));
        const long r = *fq.dth_root(target, d);
        std::vector<long> xs{r, fq.one()};
        return {Verdict::Isotropic, encode_witness(phi.field, xs, n), 0, nullptr, ""};
    }

    if (static_cast<long>(n) > ds) {
        // isotropy is guaranteed (u_diag <= d*); look for a witness fast
        std::mt19937_64 rng(stable_seed(opts, fq.q(), d, a));
        for (std::uint64_t t = 0; t < opts.random_tries; ++t) {
            std::vector<long> xs(n);
            bool nonzero = false;
            long sum = 0;
            for (std::size_t i = 0; i < n; ++i) {
                xs[i] = static_cast<long>(rng() % static_cast<std::uint64_t>(fq.q()));
                if (xs[i] != 0) nonzero = true;
                sum = fq.add(sum, fq.mul(a[i], fq.pow(xs[i], d)));
            }
            if (nonzero && sum == 0)
                return {Verdict::Isotropic, encode_witness(phi.field, xs, n), 0, nullptr, ""};
        }
    }

    // deterministic exhaustive sweep on the first min(n, d*+1) slots
    const std::size_t m = std::min<std::size_t>(n, static_cast<std::size_t>(ds) + 1);
    std::vector<long> sub(a.begin(), a.begin() + m);
    MitmOutcome out = mitm_values(fq, d, sub);
    if (out.witness)
        return {Verdict::Isotropic, encode_witness(phi.field, *out.witness, n), 0, nullptr, ""};
    if (m < n)
        throw Error("internal: subform of dimension d*+1 certified anisotropic over " + fq.name());
    AnisoNode::FqLeaf leaf{fq.name(), fq.q(), static_cast<int>(d), n, a, out.checked};
    return {Verdict::Anisotropic, {}, 0, make_node(AnisoNode{leaf}), ""};
}

std::vector<Value> lift_witness(const SpringerDecomposition& sd, std::size_t block_index,
                                const std::vector<Value>& residue_witness, int prec) {
    const auto& block = sd.blocks.at(block_index);
    const FieldRef& K = sd.form.field;
    const long d = sd.form.degree;
    if (residue_witness.size() != block.original_slots.size())
        throw DimensionMismatch("residue witness does not match the block");
    if (prec < 0) prec = K.tower->default_prec();

    // least block coordinate with nonzero residue
    std::size_t i0 = block.original_slots.size();
    for (std::size_t i = 0; i < residue_witness.size(); ++i) {
        if (v_known_nonzero(residue_witness[i])) {
            i0 = i;
            break;
        }
    }
    if (i0 == block.original_slots.size()) throw ZeroVector("residue witness is zero");

    // canonical lifts everywhere else, then solve for coordinate i0
    std::vector<Value> y(residue_witness.size(), v_zero(K));
    Value sum = v_zero(K);
    bool other_nonzero = false;
    for (std::size_t i = 0; i < residue_witness.size(); ++i) {
        if (i == i0 || !v_known_nonzero(residue_witness[i])) continue;
        y[i] = lift_to(K, residue_witness[i]);
        other_nonzero = true;
        sum = v_add(sum, v_mul(block.unit_form.coeffs[i], v_pow(y[i], d)));
    }
    if (!other_nonzero)
        throw NotLiftable("a residue zero cannot be supported on a single slot");
    if (!v_known_nonzero(sum))
        throw NotLiftable("residue witness does not solve the residue form");

    const Value c = v_mul(v_neg(sum), v_invert(block.unit_form.coeffs[i0], prec));
    y[i0] = dth_root(c, d, prec, lift_to(K, residue_witness[i0]));

    // place block coordinates back at the original slots, undoing the
    // stripped d-th powers, and renormalize to min valuation 0
    long maxk = 0;
    bool first = true;
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (!v_known_nonzero(y[i])) continue;
        const long k = sd.slots[block.original_slots[i]].k;
        if (first || k > maxk) maxk = k;
        first = false;
    }
    std::vector<Value> w(sd.form.dim(), v_zero(K));
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (!v_known_nonzero(y[i])) continue;
        const std::size_t oi = block.original_slots[i];
        w[oi] = v_shift(y[i], maxk - sd.slots[oi].k);
    }
    return w;
}

Certificate decide_cdv(const DiagonalForm& phi, int prec, const SearchOptions& opts) {
    if (phi.field.kind() == TowerField::Kind::Finite) return decide_fq(phi, opts);
    if (prec < 0) prec = phi.field.tower->default_prec();
    for (const auto& c : phi.coeffs)
        if (!v_is_exact(c))
            throw InexactCoefficient("decide_cdv would depend on a truncated coefficient");

    const SpringerDecomposition sd = springer_decompose(phi);
    AnisoNode::Springer node;
    node.level = phi.field.name();
    node.uniformizer = phi.field.tower->uniformizer_name(phi.field.level);
    for (std::size_t bi = 0; bi < sd.blocks.size(); ++bi) {
        const auto& block = sd.blocks[bi];
        std::vector<Value> residues;
        residues.reserve(block.unit_form.dim());
        for (const auto& u : block.unit_form.coeffs) residues.push_back(residue(u));
        DiagonalForm rbar = make_form(phi.degree, phi.field.residue_ref(), std::move(residues));
        Certificate sub = decide_cdv(rbar, prec, opts);
        if (sub.verdict == Verdict::Isotropic) {
            Certificate cert;
            cert.verdict = Verdict::Isotropic;
            cert.witness = lift_witness(sd, bi, sub.witness, prec);
            cert.precision = prec;
            return cert;
        }
        node.blocks.push_back({block.j, block.original_slots, sub.proof});
    }
    return {Verdict::Anisotropic, {}, 0, make_node(AnisoNode{std::move(node)}), ""};
}

Certificate decide(const DiagonalForm& phi, int prec, const SearchOptions& opts) {
    return phi.field.kind() == TowerField::Kind::Finite ? decide_fq(phi, opts)
                                                        : decide_cdv(phi, prec, opts);
}

bool verify_witness(const DiagonalForm& phi, const std::vector<Value>& x_in, long threshold) {
    if (x_in.size() != phi.dim()) throw DimensionMismatch("witness length != form dimension");
    bool any = false;
    for (const auto& xi : x_in) any = any || v_known_nonzero(xi);
    if (!any) throw ZeroVector("witness is the zero vector");

    if (phi.field.kind() == TowerField::Kind::Finite) {
        Value e = evaluate(phi, x_in);
        return std::get<Value::Fin>(e.rep).enc == 0;
    }

    // renormalize by a power of the uniformizer so min_i v(x_i) = 0
    long m = kValInf;
    for (const auto& xi : x_in)
        if (v_known_nonzero(xi)) m = std::min(m, v_val_lower(xi));
    std::vector<Value> x;
    x.reserve(x_in.size());
    bool min_attained = false;
    for (const auto& xi : x_in) {
        Value s = v_shift(xi, -m);
        if (v_val_exact(s) == std::optional<long>(0)) min_attained = true;
        x.push_back(std::move(s));
    }
    if (!min_attained) return false;
    return v_verified_small(evaluate(phi, x), threshold);
}

long anisotropic_value_valuation(const DiagonalForm& phi, const std::vector<Value>& x) {
    Certificate cert = decide(phi);
    if (cert.verdict != Verdict::Anisotropic)
        throw NotAnisotropic("form is not certified anisotropic");
    if (x.size() != phi.dim()) throw DimensionMismatch("vector length != form dimension");
    bool any = false;
    for (const auto& xi : x) any = any || v_known_nonzero(xi);
    if (!any) throw ZeroVector("zero vector");

    const long got = valuation(evaluate(phi, x));
    long expect = kValInf;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const long vx = valuation(x[i]);
        const long term =
            vx >= kValInf ? kValInf : val_add(valuation(phi.coeffs[i]), phi.degree * vx);
        expect = std::min(expect, term);
    }
    if (got != expect)
        throw Error("anisotropic value-valuation identity violated: v(phi(x)) = " +
                    std::to_string(got) + " but min formula gives " + std::to_string(expect));
    return got;
}

} // namespace dform
