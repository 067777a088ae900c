#pragma once

#include <vector>

#include "flatlab/stratum.hpp"
#include "flatlab/zmatrix.hpp"

namespace flatlab {

// Free quotient K / im(X) of a kernel sublattice K of Z^E by a relation
// lattice, with exact coordinates for arbitrary cycles.
class QuotientLattice {
public:
    QuotientLattice() = default;
    // kernel_basis: basis of K (vectors in Z^E); relations: generating vectors
    // of the sublattice to quotient by (must lie in K). Torsion is rejected.
    QuotientLattice(std::vector<ZVec> kernel_basis, const std::vector<ZVec>& relations);

    int rank() const { return rank_; }
    const std::vector<ZVec>& basis() const { return basis_; }

    // Exact coordinates of [cycle] in basis(); cycle must lie in K.
    ZVec coords(const ZVec& cycle) const;

    // Replace the basis by new combinations: new_j = sum_i T[i][j] * old_i,
    // T unimodular (used to line the relative basis up with p*).
    void change_basis(const ZMat& T, const ZMat& Tinv);

private:
    std::vector<ZVec> kbasis_;   // K basis, list of E-vectors
    ZMat kmat_;                  // E x k, columns = K basis
    ZMat u_;                     // SNF row transform of the relation matrix
    int relation_rank_ = 0;
    int rank_ = 0;
    std::vector<ZVec> basis_;    // quotient basis lifted to Z^E
    ZMat post_;                  // extra transform applied to quotient coords
};

struct PeriodData {
    SurfaceComplex complex;
    std::vector<int> sigma_classes;  // vertex classes that are genuine zeros
    int abs_rank = 0;                // 2 * genus
    int rel_rank = 0;                // 2g + |Sigma| - 1 (2g when Sigma is empty)
    QuotientLattice rel;             // H1(S, Sigma; Z)
    QuotientLattice abs;             // H1(S; Z)
    std::vector<ZVec> rel_cycles;    // representatives in Z^E; first 2g are p*(abs)
    std::vector<ZVec> abs_cycles;
    ZMat inclusion;                  // rel_rank x abs_rank matrix of p*
    Mat<ExactScalar> period_matrix;  // 2 x rel_rank holonomies
    FieldPtr field;
};

PeriodData homology_bases(const FlatSurface& s);

// Holonomy of an edge-class cycle: sum of representative edge vectors.
Vec2 holonomy(const FlatSurface& s, const SurfaceComplex& c, const ZVec& cycle);

// Recomputes the 2 x rel_rank matrix of holonomies from the stored basis.
Mat<ExactScalar> period_map(const FlatSurface& s, const PeriodData& d);

}  // namespace flatlab
