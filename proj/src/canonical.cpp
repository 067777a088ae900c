#include "flatlab/canonical.hpp"

#include <algorithm>

#include "flatlab/error.hpp"

namespace flatlab {

FlatSurface surface_to_field(const FlatSurface& s, const FieldPtr& f) {
    std::vector<Polygon> polys;
    for (const auto& p : s.polygons()) {
        Polygon q;
        for (const auto& v : p) q.push_back({to_field(v.x, f), to_field(v.y, f)});
        polys.push_back(std::move(q));
    }
    return FlatSurface::build(std::move(polys), s.gluings(), s.label());
}

namespace {

std::string encode_from(const CellComplex& c, int start) {
    int m = static_cast<int>(c.vec.size());
    // BFS over cells; each visited cell has an entry edge fixing its walk
    std::vector<int> cell_index(static_cast<size_t>(c.cells), -1);
    std::vector<int> entry(static_cast<size_t>(c.cells), -1);
    std::vector<int> edge_cell(static_cast<size_t>(m), -1);
    std::vector<int> edge_pos(static_cast<size_t>(m), -1);
    std::vector<int> order;
    int assigned = 0;

    auto visit = [&](int e) {
        int cell = c.cell_of[static_cast<size_t>(e)];
        if (cell_index[static_cast<size_t>(cell)] >= 0) return;
        cell_index[static_cast<size_t>(cell)] = assigned++;
        entry[static_cast<size_t>(cell)] = e;
        order.push_back(cell);
        int cur = e, pos = 0, guard = 0;
        do {
            edge_cell[static_cast<size_t>(cur)] = cell_index[static_cast<size_t>(cell)];
            edge_pos[static_cast<size_t>(cur)] = pos++;
            cur = c.next[static_cast<size_t>(cur)];
            if (++guard > m) raise("InconsistentInput", "cell walk does not close");
        } while (cur != e);
    };

    visit(start);
    for (size_t qi = 0; qi < order.size(); ++qi) {
        int cell = order[qi];
        int e = entry[static_cast<size_t>(cell)];
        int cur = e;
        do {
            visit(c.opp[static_cast<size_t>(cur)]);
            cur = c.next[static_cast<size_t>(cur)];
        } while (cur != e);
    }
    if (assigned != c.cells) raise("Disconnected", "cell complex is not connected");

    std::string out;
    out.reserve(256);
    for (int cell : order) {
        int e = entry[static_cast<size_t>(cell)];
        out += "[";
        int cur = e;
        do {
            int o = c.opp[static_cast<size_t>(cur)];
            out += "(" + c.vec[static_cast<size_t>(cur)].x.key() + "|" + c.vec[static_cast<size_t>(cur)].y.key() + "@" +
                   std::to_string(edge_cell[static_cast<size_t>(o)]) + "." + std::to_string(edge_pos[static_cast<size_t>(o)]) + ")";
            cur = c.next[static_cast<size_t>(cur)];
        } while (cur != e);
        out += "]";
    }
    return out;
}

}  // namespace

CanonicalForm canonical_form(const FlatSurface& s) {
    CellComplex c = delaunay_cells(s);
    std::string best;
    for (int e = 0; e < static_cast<int>(c.vec.size()); ++e) {
        std::string cand = encode_from(c, e);
        if (best.empty() || cand < best) best = std::move(cand);
    }
    return {best};
}

CanonicalForm canonical_form(const FlatSurface& s, const FieldPtr& field) {
    return canonical_form(surface_to_field(s, field));
}

}  // namespace flatlab
