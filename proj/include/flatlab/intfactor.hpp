#pragma once

#include <vector>

#include "flatlab/qmatrix.hpp"
#include "flatlab/qpoly.hpp"

namespace flatlab {

// Characteristic polynomial det(tI - A), exact (Faddeev-LeVerrier).
QPoly char_poly(const Mat<Rat>& a);

struct IrreducibleFactor {
    QPoly poly;        // monic, integer coefficients, irreducible over Q
    int multiplicity;
};

// Factors a monic integer polynomial into irreducibles over Q. Linear factors
// come from the rational root theorem; factors of degree 2..4 from divisor
// interpolation at small integer points. Complete for deg(f) <= 8.
std::vector<IrreducibleFactor> factor_monic_integer(const QPoly& f);

}  // namespace flatlab
