#pragma once

#include "flatlab/surface.hpp"

namespace flatlab {

// Lagrange-Gauss reduction of a rank-2 lattice with exact coordinates.
struct ReducedBasis {
    Vec2 b1, b2;           // |b1| <= |b2|, reduced
    ExactScalar n1, n2;    // squared norms, exact
};

ReducedBasis lagrange_reduce(Vec2 b1, Vec2 b2);

// Squared length of a shortest nonzero vector.
ExactScalar shortest_norm_sq(const Vec2& b1, const Vec2& b2);

}  // namespace flatlab
