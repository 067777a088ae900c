#pragma once

#include <optional>
#include <utility>

#include "flatlab/homology.hpp"

namespace flatlab {

struct TorusLattice {
    Vec2 b1, b2;            // positively oriented basis
    ExactScalar covolume;   // |cross(b1, b2)|, exact
};

struct TauRankReport {
    int z_rank = 0;                  // rank of tau(H1rel(Z)) as a Z-module
    int q_dim = 0;                   // dim_Q tau(H1(Q))
    int holonomy_field_degree = 1;   // degree of the field generated by period ratios
    std::optional<TorusLattice> torus_lattice;
};

TauRankReport tau_rank(const FlatSurface& s);
TauRankReport tau_rank(const FlatSurface& s, const PeriodData& d);

struct TorusCover {
    TorusLattice lattice;
    Int degree;                       // = area(s) / covolume
    std::vector<Vec2> poly_shifts;    // per-polygon translation into the cover chart
    // images of vertex classes in lattice coordinates (fractional parts),
    // when they are rational in the lattice basis
    std::vector<std::optional<std::pair<Rat, Rat>>> vertex_images;
};

std::optional<TorusCover> detect_torus_cover(const FlatSurface& s);
std::optional<TorusCover> detect_torus_cover(const FlatSurface& s, const PeriodData& d);

struct LeftInverse {
    Mat<Rat> r;                          // abs_rank x rel_rank, r * p_star = Id
    std::vector<std::vector<Rat>> kernel;  // basis of ker r in relative coordinates
};

// r = (tau restricted to absolute homology)^{-1} composed with tau on
// relative homology. Requires tau|abs to be injective with the same image as
// tau on relative classes; raises DegenerateTau otherwise.
LeftInverse left_inverse_r(const FlatSurface& s);
LeftInverse left_inverse_r(const FlatSurface& s, const PeriodData& d);

// Degree over Q of the field generated by the given scalars.
int generated_field_degree(const std::vector<ExactScalar>& xs);

}  // namespace flatlab
