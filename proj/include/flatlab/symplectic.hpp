#pragma once

#include <optional>
#include <string>
#include <vector>

#include "flatlab/exact_scalar.hpp"
#include "flatlab/qmatrix.hpp"
#include "flatlab/zmatrix.hpp"

namespace flatlab {

// Integer antisymmetric bilinear form on Z^n; nondegeneracy decided exactly.
struct SymplecticForm {
    ZMat matrix;
    int dimension = 0;
    bool nondegenerate = false;

    static SymplecticForm from_matrix(ZMat m);
    static SymplecticForm standard(int n);  // e1^e2 + e3^e4 + ...
    static SymplecticForm paired(int n);    // e_i ^ e_{i + n/2}
};

Rat omega_value(const SymplecticForm& w, const std::vector<Rat>& a, const std::vector<Rat>& b);
ExactScalar omega_value(const SymplecticForm& w, const std::vector<ExactScalar>& a,
                        const std::vector<ExactScalar>& b);

// A 2-plane in the ambient space, spanned by two exact vectors; optional
// integral data filled in by the membership tests.
struct SymplecticPlane {
    std::vector<ExactScalar> v1, v2;
    std::optional<std::pair<ZVec, ZVec>> integral_lattice;
    std::optional<Int> covolume;

    static SymplecticPlane from_rational(const std::vector<Rat>& a, const std::vector<Rat>& b);
    static SymplecticPlane from_integer(const ZVec& a, const ZVec& b);
};

// A_V(v) = w(v, v2) v1 - w(v, v1) v2: multiplication by w(v1, v2) on the
// plane, zero on its symplectic complement.
Mat<Rat> build_AV(const SymplecticForm& w, const std::vector<Rat>& v1, const std::vector<Rat>& v2);
Mat<ExactScalar> build_AV(const SymplecticForm& w, const std::vector<ExactScalar>& v1,
                          const std::vector<ExactScalar>& v2);

enum class DIntegralReason { Ok, RankDeficient, CovolumeMismatch };

struct DIntegralResult {
    bool member = false;
    DIntegralReason reason = DIntegralReason::Ok;
    Int actual_covolume = 0;          // valid when rank is full
    std::optional<std::pair<ZVec, ZVec>> lattice;  // basis of V cap Z^n
    std::optional<ZMat> a_v;          // integer certificate on a covolume-D basis
};

// V cap Z^n has full rank 2 and symplectic covolume exactly D.
DIntegralResult is_D_integral(const SymplecticForm& w, const SymplecticPlane& v, const Int& D);

struct EtaIntegralResult {
    bool member = false;
    Mat<ExactScalar> a_field;         // the unique operator, over the field
    std::optional<ZMat> a;            // integer certificate when member
};

// The unique operator acting as eta on V and sigma(eta) on the symplectic
// complement has integer entries.
EtaIntegralResult is_eta_integral(const SymplecticForm& w, const SymplecticPlane& v,
                                  const ExactScalar& eta, const ExactScalar& sigma_eta);

struct Eigenplane {
    bool real = true;
    ExactScalar eta;                          // real eigenvalue (when real)
    std::vector<std::vector<ExactScalar>> basis;  // eigenvectors over Q(eta)
    QPoly factor;                             // irreducible factor of the char poly
    std::complex<double> eta_approx;
};

struct EigenplaneDecomposition {
    std::vector<Eigenplane> planes;
    bool direct_sum_verified = false;
    bool orthogonality_verified = false;
    std::vector<std::string> notes;
};

enum class OperatorKind { Symplectic, Symmetrized };

// Splits the symmetrized operator into 2-dimensional eigenplanes with exact
// conjugate-algebraic eigenvalues; verifies directness and the pairwise
// symplectic orthogonality of planes with distinct eigenvalues.
EigenplaneDecomposition eigenplane_decomposition(const Mat<Rat>& a, const SymplecticForm& w,
                                                 OperatorKind kind);

struct ProbeSpec {
    std::optional<Int> D;                       // D-integral variant
    std::optional<std::pair<ExactScalar, ExactScalar>> eta;  // (eta, sigma(eta)) variant
};

// Counts members of the discrete family within the principal-angle
// neighborhood of v0, enumerating candidate lattices with bounded entries.
// The radius r bounds sin(theta_max); all comparisons are exact.
int discreteness_probe(const SymplecticForm& w, const SymplecticPlane& v0, const ProbeSpec& spec,
                       const Rat& radius, int search_bound, int threads = 1);

}  // namespace flatlab
