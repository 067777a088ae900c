#pragma once

#include <vector>

#include "flatlab/canonical.hpp"
#include "flatlab/cylinders.hpp"

namespace flatlab {

// True iff applying g returns the surface to itself up to translation
// equivalence (equal Delaunay canonical forms). Requires det g = 1 exactly.
bool is_stabilizer_element(const Mat<ExactScalar>& g, const FlatSurface& s);

// Frobenius norm squared, exact.
ExactScalar frobenius_sq(const Mat<ExactScalar>& g);

// Ball threshold: |g|_B <= R iff |g|_F^2 <= 2 cosh(R). The right side is
// pinned as the exact binary64 value of 2 cosh(R).
Rat ball_threshold(double radius);

struct StabilizerEnumeration {
    std::vector<Mat<ExactScalar>> elements;  // verified members, canonically sorted
    bool budget_exhausted = false;
    long membership_tests = 0;
    std::vector<Vec2> periodic_directions;   // directions that produced parabolics
};

struct EnumerationBudget {
    long membership_tests = 100000;  //每 verification decrements this
    Rat trace_length = Rat(1000);
    long trace_steps = 100000;
    int max_rounds = 64;             // closure rounds
};

// Best-effort bounded enumeration: parabolic generators from short periodic
// directions, closed under products within the norm ball. Every returned
// element is a verified member; completeness is not claimed.
StabilizerEnumeration enumerate_stabilizer(const FlatSurface& s, double radius,
                                           const EnumerationBudget& budget = {});

struct CriticalExponentEstimate {
    std::vector<double> radii;
    std::vector<long> counts;      // elements within each ball, non-decreasing
    std::vector<double> delta_hat; // log(count) / R
};

CriticalExponentEstimate critical_exponent_estimate(const std::vector<Mat<ExactScalar>>& elements,
                                                    const std::vector<double>& radii);

}  // namespace flatlab
