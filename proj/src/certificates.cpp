#include "dform/certificates.hpp"

#include <sstream>

namespace dform {

AnisoPtr make_node(AnisoNode n) { return std::make_shared<const AnisoNode>(std::move(n)); }

int AnisoNode::depth() const {
    struct V {
        int operator()(const FqLeaf&) const { return 0; }
        int operator()(const DimOne&) const { return 0; }
        int operator()(const Springer& s) const {
            int m = 0;
            for (const auto& b : s.blocks)
                if (b.child) m = std::max(m, b.child->depth());
            return 1 + m;
        }
        int operator()(const Place& p) const { return p.completion ? p.completion->depth() : 0; }
        int operator()(const Grid& g) const {
            int m = 0;
            for (const auto& c : g.cells)
                if (c.child) m = std::max(m, c.child->depth());
            return 2 + m; // a grid combines two Springer directions
        }
    };
    return std::visit(V{}, node);
}

std::string render_tree(const AnisoNode& n, int indent) {
    const std::string pad(2 * indent, ' ');
    std::ostringstream os;
    if (const auto* l = std::get_if<AnisoNode::FqLeaf>(&n.node)) {
        os << pad << "<";
        for (std::size_t i = 0; i < l->coeffs.size(); ++i)
            os << (i ? "," : "") << l->coeffs[i];
        os << "> over " << l->field << ": exhausted (" << l->combinations_checked
           << " combinations, no nontrivial zero)\n";
    } else if (const auto* o = std::get_if<AnisoNode::DimOne>(&n.node)) {
        os << pad << "dimension 1 over " << o->field << ": anisotropic outright\n";
    } else if (const auto* s = std::get_if<AnisoNode::Springer>(&n.node)) {
        os << pad << "Springer over " << s->level << " (uniformizer " << s->uniformizer << "):\n";
        for (const auto& b : s->blocks) {
            os << pad << "  block j=" << b.j << " slots [";
            for (std::size_t i = 0; i < b.slots.size(); ++i)
                os << (i ? "," : "") << b.slots[i];
            os << "]:\n";
            if (b.child) os << render_tree(*b.child, indent + 2);
        }
    } else if (const auto* p = std::get_if<AnisoNode::Place>(&n.node)) {
        os << pad << "obstruction at place " << p->place << ":\n";
        if (p->completion) os << render_tree(*p->completion, indent + 1);
    } else if (const auto* g = std::get_if<AnisoNode::Grid>(&n.node)) {
        os << pad << "local grid at " << g->point << ":\n";
        for (const auto& c : g->cells) {
            os << pad << "  cell (" << c.i << "," << c.j << ") slots [";
            for (std::size_t i = 0; i < c.slots.size(); ++i)
                os << (i ? "," : "") << c.slots[i];
            os << "]:\n";
            if (c.child) os << render_tree(*c.child, indent + 2);
        }
    }
    return os.str();
}

} // namespace dform
