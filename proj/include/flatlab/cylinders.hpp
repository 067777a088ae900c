#pragma once

#include <optional>
#include <vector>

#include "flatlab/surface.hpp"

namespace flatlab {

struct Cylinder {
    ExactScalar circumference;  // measured in units of |direction|
    ExactScalar height;
    ExactScalar modulus;        // height / circumference
};

struct CylinderDecomposition {
    enum class Status { Periodic, Inconclusive };
    Status status = Status::Inconclusive;
    Vec2 direction;
    std::vector<Cylinder> cylinders;
    long trace_steps = 0;
};

// Traces separatrices from every vertex class in the given direction. When
// each one closes into a saddle connection, slices the surface along them and
// returns the cylinders. Exceeding a budget yields Inconclusive, never a
// negative verdict.
CylinderDecomposition cylinder_decomposition(const FlatSurface& s, const Vec2& direction,
                                             const Rat& length_budget = Rat(10000),
                                             long step_budget = 200000);

struct ParabolicResult {
    CylinderDecomposition::Status status = CylinderDecomposition::Status::Inconclusive;
    std::vector<ExactScalar> moduli;
    std::optional<Mat<ExactScalar>> matrix;  // empty on incommensurable moduli
};

// Shear fixing the direction, twisting each cylinder an integral number of
// times; the twist is the least c with c * modulus integral for every
// cylinder. Verified through the stabilizer membership test before returning.
ParabolicResult parabolic_in_direction(const FlatSurface& s, const Vec2& direction,
                                       const Rat& length_budget = Rat(10000),
                                       long step_budget = 200000);

}  // namespace flatlab
