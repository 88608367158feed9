#include "dform/forms.hpp"

#include <algorithm>

namespace dform {

DiagonalForm make_form(int degree, const FieldRef& K, std::vector<Value> coeffs) {
    if (degree < 2) throw UnsupportedDegree("degree must be >= 2");
    if (coeffs.empty()) throw DegenerateForm("diagonal forms are nonempty");
    const long p = K.tower->p();
    if (p <= degree)
        throw UnsupportedCharacteristic("residue characteristic " + std::to_string(p) +
                                        " <= degree " + std::to_string(degree));
    for (const auto& a : coeffs) {
        if (!a.owner.same_field(K)) throw FieldMismatch("coefficient from a different field");
        if (!v_known_nonzero(a)) throw DegenerateForm("zero coefficient in a diagonal form");
    }
    return DiagonalForm{degree, K, std::move(coeffs)};
}

Value evaluate(const DiagonalForm& phi, const std::vector<Value>& x) {
    if (x.size() != phi.dim()) throw DimensionMismatch("vector length != form dimension");
    Value acc = v_zero(phi.field);
    for (std::size_t i = 0; i < x.size(); ++i) {
        acc = v_add(acc, v_mul(phi.coeffs[i], v_pow(x[i], phi.degree)));
    }
    return acc;
}

DiagonalForm orthogonal_sum(const DiagonalForm& a, const DiagonalForm& b) {
    if (!a.field.same_field(b.field)) throw FieldMismatch("orthogonal sum across fields");
    if (a.degree != b.degree) throw DegreeMismatch("orthogonal sum across degrees");
    std::vector<Value> coeffs = a.coeffs;
    coeffs.insert(coeffs.end(), b.coeffs.begin(), b.coeffs.end());
    return make_form(a.degree, a.field, std::move(coeffs));
}

DiagonalForm scale_form(const DiagonalForm& phi, const Value& c) {
    if (!v_known_nonzero(c)) throw DegenerateForm("scaling a form by zero");
    std::vector<Value> coeffs;
    coeffs.reserve(phi.dim());
    for (const auto& a : phi.coeffs) coeffs.push_back(v_mul(a, c));
    return make_form(phi.degree, phi.field, std::move(coeffs));
}

Value SpringerDecomposition::reassemble_slot(std::size_t i) const {
    const Slot& s = slots.at(i);
    return v_shift(s.unit, s.j + form.degree * s.k);
}

SpringerDecomposition springer_decompose(const DiagonalForm& phi) {
    if (!phi.field.is_valued()) throw Error("springer_decompose: field is not valued");
    SpringerDecomposition sd;
    sd.form = phi;
    const long d = phi.degree;
    sd.slots.reserve(phi.dim());
    for (const auto& a : phi.coeffs) {
        if (!v_is_exact(a)) throw InexactCoefficient("springer_decompose needs exact coefficients");
        SpringerDecomposition::Slot s;
        s.v = valuation(a);
        s.j = ((s.v % d) + d) % d;
        s.k = (s.v - s.j) / d;
        s.unit = v_shift(a, -s.v);
        sd.slots.push_back(std::move(s));
    }
    for (long j = 0; j < d; ++j) {
        SpringerDecomposition::Block b;
        b.j = j;
        std::vector<Value> units;
        for (std::size_t i = 0; i < sd.slots.size(); ++i) {
            if (sd.slots[i].j == j) {
                b.original_slots.push_back(i);
                units.push_back(sd.slots[i].unit);
            }
        }
        if (units.empty()) continue;
        b.unit_form = make_form(phi.degree, phi.field, std::move(units));
        sd.blocks.push_back(std::move(b));
    }
    return sd;
}

std::optional<std::vector<std::size_t>> is_isomorphic(const DiagonalForm& a,
                                                      const DiagonalForm& b) {
    if (a.degree < 3) throw UnsupportedDegree("isomorphism criterion requires d >= 3");
    if (!a.field.same_field(b.field)) throw FieldMismatch("isomorphism across fields");
    if (a.degree != b.degree) throw DegreeMismatch("isomorphism across degrees");
    if (a.dim() != b.dim()) return std::nullopt;

    auto classes = [&](const DiagonalForm& f) {
        std::vector<std::pair<PowerClass, std::size_t>> cs;
        cs.reserve(f.dim());
        for (std::size_t i = 0; i < f.dim(); ++i)
            cs.emplace_back(dth_power_class(f.coeffs[i], f.degree), i);
        std::sort(cs.begin(), cs.end(), [](const auto& x, const auto& y) {
            return x.first.comps < y.first.comps;
        });
        return cs;
    };
    auto ca = classes(a), cb = classes(b);
    std::vector<std::size_t> perm(a.dim());
    for (std::size_t i = 0; i < ca.size(); ++i) {
        if (!(ca[i].first == cb[i].first)) return std::nullopt;
        perm[cb[i].second] = ca[i].second; // class(b_i) = class(a_perm(i))
    }
    return perm;
}

} // namespace dform
