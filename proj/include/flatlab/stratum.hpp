#pragma once

#include <vector>

#include "flatlab/surface.hpp"

namespace flatlab {

// Combinatorics of the glued CW complex: vertex classes of polygon corners,
// undirected edge classes with a chosen representative direction, and the
// exact cone angle (in full turns) at every vertex class.
struct SurfaceComplex {
    std::vector<int> edge_offset;   // directed-edge id = edge_offset[poly] + edge
    int dedges = 0;
    std::vector<int> partner;       // dedge -> dedge
    std::vector<int> next;          // dedge -> next dedge around its polygon
    std::vector<int> prev;
    std::vector<int> poly_of;       // dedge -> polygon
    std::vector<int> vertex_class;  // dedge id doubles as the id of its tail corner
    int vertex_count = 0;
    std::vector<int> vertex_turns;  // class -> cone angle / 2pi (>= 1)
    std::vector<int> edge_class;    // dedge -> undirected edge id
    std::vector<int> edge_sign;     // +1 on the representative dedge, -1 on its partner
    std::vector<int> edge_rep;      // undirected edge id -> representative dedge
    int edge_count = 0;

    EdgeRef ref(int dedge) const;
    int id(const EdgeRef& e) const;
};

SurfaceComplex build_complex(const FlatSurface& s);

struct StratumSignature {
    int genus = 0;
    std::vector<int> zero_orders;   // positive orders, sorted descending
    std::vector<int> cone_turns;    // per vertex class, cone angle / 2pi, sorted descending
    int marked_points = 0;          // classes with cone angle exactly 2pi

    bool operator==(const StratumSignature& o) const {
        return genus == o.genus && zero_orders == o.zero_orders && cone_turns == o.cone_turns;
    }
};

StratumSignature classify_stratum(const FlatSurface& s);

// Is direction d inside the counterclockwise arc [from, to)? Exact; arcs are
// assumed shorter than a full turn.
bool ccw_arc_contains(const Vec2& from, const Vec2& to, const Vec2& d);

}  // namespace flatlab
