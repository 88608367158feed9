#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "dform/tower.hpp"

namespace dform {

enum class Verdict { Isotropic, Anisotropic, Unknown };

inline std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Isotropic: return "isotropic";
        case Verdict::Anisotropic: return "anisotropic";
        case Verdict::Unknown: return "unknown";
    }
    return "?";
}

struct AnisoNode;
using AnisoPtr = std::shared_ptr<const AnisoNode>;

/// Proof tree for anisotropy: Springer recursion down a tower, terminating in
/// exhaustive finite-field leaves. Patching adds place and grid nodes.
struct AnisoNode {
    struct FqLeaf {
        std::string field;
        long q = 0;
        int degree = 0;
        std::size_t dim = 0;
        std::vector<long> coeffs; // encodes of the residue form checked
        std::uint64_t combinations_checked = 0;
    };
    struct DimOne {
        std::string field;
    };
    struct Springer {
        std::string level;
        std::string uniformizer;
        struct Block {
            long j = 0;
            std::vector<std::size_t> slots; // original slot indices
            AnisoPtr child;
        };
        std::vector<Block> blocks;
    };
    struct Place {
        std::string place; // e.g. "t", "t^2+1", "infinity", "gauss"
        AnisoPtr completion;
    };
    struct Grid {
        std::string point;
        struct Cell {
            long i = 0, j = 0;
            std::vector<std::size_t> slots;
            AnisoPtr child;
        };
        std::vector<Cell> cells;
    };

    std::variant<FqLeaf, DimOne, Springer, Place, Grid> node;

    int depth() const;
};

AnisoPtr make_node(AnisoNode n);

/// Indented plain-text rendering of a proof tree.
std::string render_tree(const AnisoNode& n, int indent = 0);

} // namespace dform
