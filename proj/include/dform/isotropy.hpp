#pragma once

#include "dform/certificates.hpp"
#include "dform/forms.hpp"

namespace dform {

/// Decision result with a checkable payload: an explicit witness (isotropic)
/// or an exhaustive recursion tree (anisotropic).
struct Certificate {
    Verdict verdict = Verdict::Unknown;
    std::vector<Value> witness; // nontrivial zero, min valuation 0
    int precision = 0;          // relative precision of truncated witness parts
    AnisoPtr proof;
    std::string budget_note;
};

struct SearchOptions {
    std::uint64_t seed = 0;
    std::uint64_t random_tries = 4000;
};

/// Brute-force decision over a finite field, always definite. Witness search
/// uses class normalization and a meet-in-the-middle sweep over value
/// multisets; anisotropy certificates record the exhausted combination count.
Certificate decide_fq(const DiagonalForm& phi, const SearchOptions& opts = {});

/// Springer recursion over a complete discretely valued tower: decompose,
/// take residues, recurse; isotropic iff some residue block is. Witnesses are
/// Hensel-lifted to relative precision prec (tower default when prec < 0).
Certificate decide_cdv(const DiagonalForm& phi, int prec = -1, const SearchOptions& opts = {});

/// Dispatch on the field kind.
Certificate decide(const DiagonalForm& phi, int prec = -1, const SearchOptions& opts = {});

/// Lift a nontrivial residue zero of block `block_index` to a zero of the
/// original form modulo pi^(N + j): solves for the least-index coordinate
/// with nonzero residue, lifts the rest canonically.
std::vector<Value> lift_witness(const SpringerDecomposition& sd, std::size_t block_index,
                                const std::vector<Value>& residue_witness, int prec);

/// min valuation 0 after renormalization and v(phi(x)) >= threshold within
/// the per-level working precision; exact equality to zero over finite fields.
bool verify_witness(const DiagonalForm& phi, const std::vector<Value>& x, long threshold);

/// For certified-anisotropic phi: returns v(phi(x)) and checks it equals
/// min_i (v(a_i) + d v(x_i)); the equality is a theorem, a violation throws.
long anisotropic_value_valuation(const DiagonalForm& phi, const std::vector<Value>& x);

} // namespace dform
