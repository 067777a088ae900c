#pragma once

#include <vector>

#include "flatlab/surface.hpp"

namespace flatlab {

// Triangulated translation surface with explicit halfedge wiring. Each
// halfedge carries its developed edge vector; every triangle is positively
// oriented and its three vectors sum to zero.
struct Triangulation {
    FieldPtr field;
    std::vector<int> opp;
    std::vector<int> next;
    std::vector<Vec2> vec;

    int halfedges() const { return static_cast<int>(vec.size()); }
    int prev(int h) const { return next[static_cast<size_t>(next[static_cast<size_t>(h)])]; }

    static Triangulation from_surface(const FlatSurface& s);

    // in-circumcircle value across edge h: positive when the far apex lies
    // strictly inside, zero when the four points are cocircular
    int incircle_sign(int h) const;
    void flip(int h);
    // flips until locally Delaunay everywhere (cocircular edges stay)
    void make_delaunay();
    void validate() const;
};

// Delaunay cell decomposition: cocircular triangles merged into one cell.
struct CellComplex {
    FieldPtr field;
    // directed cell edges, indexed densely; each is a surviving halfedge
    std::vector<int> opp;
    std::vector<int> next;   // next edge counterclockwise around the cell
    std::vector<Vec2> vec;
    std::vector<int> cell_of;
    int cells = 0;
};

CellComplex delaunay_cells(const FlatSurface& s);

}  // namespace flatlab
