#pragma once

#include <optional>
#include <vector>

#include "flatlab/rational.hpp"

namespace flatlab {

// Row-major integer matrices.
using ZMat = std::vector<std::vector<Int>>;
using ZVec = std::vector<Int>;

ZMat z_zeros(int m, int n);
ZMat z_identity(int n);
ZMat z_mul(const ZMat& a, const ZMat& b);
ZVec z_mul_vec(const ZMat& a, const ZVec& x);
ZMat z_transpose(const ZMat& a);
int z_rows(const ZMat& a);
int z_cols(const ZMat& a);

// U * A * V = S with U, V unimodular and S diagonal, d_1 | d_2 | ... >= 0.
// Uinv is maintained alongside so that A = Uinv * S * Vinv-free callers can
// read lattice bases off Uinv columns.
struct SmithResult {
    ZMat U, Uinv, V, S;
    int rank = 0;
    std::vector<Int> divisors;  // the nonzero diagonal entries
};
SmithResult smith_normal_form(const ZMat& A);

// Basis of {x in Z^n : A x = 0}; returned as a list of n-vectors forming a
// basis of the (saturated) kernel lattice.
std::vector<ZVec> z_kernel(const ZMat& A);

// One integer solution of A x = b, if any.
std::optional<ZVec> z_solve(const ZMat& A, const ZVec& b);

// Basis of the saturation of the column span of A inside Z^m (all integer
// vectors lying in the rational column span), as a list of m-vectors.
std::vector<ZVec> saturate_column_span(const ZMat& A);

// Basis of the lattice generated by the columns of A (not saturated).
std::vector<ZVec> column_lattice_basis(const ZMat& A);

// Rank over Q.
int z_rank(const ZMat& A);

}  // namespace flatlab
