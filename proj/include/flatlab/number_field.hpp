#pragma once

#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "flatlab/qpoly.hpp"
#include "flatlab/rational.hpp"

namespace flatlab {

class NumberField;
using FieldPtr = std::shared_ptr<const NumberField>;

// A real-embedded number field Q[t]/(m(t)) with a distinguished real root of
// m. The root is stored as a refinable isolating interval with rational
// endpoints; refinement only shrinks it, so all sign decisions are stable.
// Irreducibility of m over Q is the caller's contract (verified for degree
// <= 2 and for the canonical constructors used throughout).
class NumberField {
public:
    // min_poly: integer coefficients, coeff i multiplies t^i, monic.
    // embedding_index: index into the increasing list of real roots.
    static FieldPtr create(std::vector<Int> min_poly, int embedding_index);
    static FieldPtr rationals();
    // Q(sqrt(radicand)) for a squarefree radicand > 1; distinguished root is
    // +sqrt(radicand) when positive_root.
    static FieldPtr quadratic(const Int& radicand, bool positive_root = true);

    int degree() const { return degree_; }
    const std::vector<Int>& min_poly() const { return min_poly_; }
    int embedding_index() const { return embedding_index_; }
    int real_root_count() const { return real_root_count_; }
    const QPoly& min_poly_q() const { return min_poly_q_; }

    bool same_field(const NumberField& o) const {
        return min_poly_ == o.min_poly_ && embedding_index_ == o.embedding_index_;
    }

    // Isolating interval [lo, hi] of the distinguished root; exact == true
    // means lo == hi == root (degree-1 fields).
    struct RootInterval {
        Rat lo, hi;
        bool exact;
    };
    RootInterval root_interval() const;
    void refine_root_interval() const;  // halve the current interval

    // Reduction rows: t^(d+k) = sum_i rows[k][i] t^i for k in [0, d-2].
    const std::vector<std::vector<Rat>>& power_reduction() const { return reduction_; }

    std::string str() const;

private:
    NumberField() = default;

    std::vector<Int> min_poly_;
    QPoly min_poly_q_;
    int degree_ = 0;
    int embedding_index_ = 0;
    int real_root_count_ = 0;
    std::vector<std::vector<Rat>> reduction_;

    mutable std::mutex mu_;
    mutable Rat lo_, hi_;
    mutable bool exact_root_ = false;
};

// Quadratic fields in canonical form: x in F corresponds to
// u + v*sqrt(m0) with m0 squarefree. Only valid for degree-2 F.
struct CanonicalQuadratic {
    FieldPtr field;  // Q(sqrt(m0)), positive root
    Int m0;
    // generator of F maps to (gen_const + gen_sqrt * sqrt(m0))
    Rat gen_const, gen_sqrt;
};
CanonicalQuadratic canonicalize_quadratic(const FieldPtr& f);

}  // namespace flatlab
