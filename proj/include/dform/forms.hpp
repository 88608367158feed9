#pragma once

#include <optional>
#include <vector>

#include "dform/tower.hpp"

namespace dform {

/// Nondegenerate diagonal form <a_1,...,a_n> of degree d: all a_i nonzero.
struct DiagonalForm {
    int degree = 0;
    FieldRef field;
    std::vector<Value> coeffs;

    std::size_t dim() const { return coeffs.size(); }
};

/// Validates nondegeneracy, the degree, and the residue characteristic.
DiagonalForm make_form(int degree, const FieldRef& K, std::vector<Value> coeffs);

Value evaluate(const DiagonalForm& phi, const std::vector<Value>& x);

DiagonalForm orthogonal_sum(const DiagonalForm& a, const DiagonalForm& b);

DiagonalForm scale_form(const DiagonalForm& phi, const Value& c);

/// a_i = unit_i * pi^(j_i + d*k_i) with v(unit_i) = 0; slots grouped into unit
/// subforms by j = v(a_i) mod d. Slot order inside a block follows the
/// original slot order, so certificates can point back at input coordinates.
struct SpringerDecomposition {
    DiagonalForm form;
    struct Slot {
        long v = 0;    // valuation of the coefficient
        long j = 0;    // v mod d, in [0, d)
        long k = 0;    // stripped d-th power exponent: v = j + d*k
        Value unit;    // exact unit part
    };
    struct Block {
        long j = 0;
        std::vector<std::size_t> original_slots;
        DiagonalForm unit_form;
    };
    std::vector<Slot> slots;
    std::vector<Block> blocks; // ascending j, nonempty blocks only

    /// unit_i * pi^(j_i + d*k_i); equals the original coefficient exactly.
    Value reassemble_slot(std::size_t i) const;
};

/// Requires a valued level and exact coefficients.
SpringerDecomposition springer_decompose(const DiagonalForm& phi);

/// Slotwise d-th power class matching (d >= 3): returns a permutation pi with
/// class(b_i) = class(a_pi(i)) for all i, or nullopt.
std::optional<std::vector<std::size_t>> is_isomorphic(const DiagonalForm& a,
                                                      const DiagonalForm& b);

} // namespace dform
