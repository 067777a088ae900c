#pragma once

#include <complex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "flatlab/number_field.hpp"

namespace flatlab {

// Element of a real-embedded number field, held as rational coordinates in
// the power basis of the field generator. Rationals are degree-1 elements of
// the canonical field NumberField::rationals(). Immutable value type.
class ExactScalar {
public:
    ExactScalar() : ExactScalar(Rat(0)) {}
    ExactScalar(const Rat& q);
    ExactScalar(long v) : ExactScalar(Rat(v)) {}
    ExactScalar(int v) : ExactScalar(Rat(v)) {}
    ExactScalar(FieldPtr field, std::vector<Rat> coords);
    static ExactScalar generator(const FieldPtr& field);
    static ExactScalar sqrt_of(const Int& radicand);  // sqrt(n) for n > 1 nonsquare, or exact

    const FieldPtr& field() const { return field_; }
    const std::vector<Rat>& coords() const { return coords_; }
    int degree() const { return field_->degree(); }

    bool is_zero() const;
    bool is_rational() const;  // value lies in Q
    Rat rational_value() const;
    bool is_integer() const;

    // Exact sign under the distinguished embedding.
    int sign() const;
    Int floor() const;
    double to_double() const;

    ExactScalar operator-() const;
    ExactScalar inverse() const;
    friend ExactScalar operator+(const ExactScalar& a, const ExactScalar& b);
    friend ExactScalar operator-(const ExactScalar& a, const ExactScalar& b);
    friend ExactScalar operator*(const ExactScalar& a, const ExactScalar& b);
    friend ExactScalar operator/(const ExactScalar& a, const ExactScalar& b);
    ExactScalar& operator+=(const ExactScalar& o) { return *this = *this + o; }
    ExactScalar& operator-=(const ExactScalar& o) { return *this = *this - o; }
    ExactScalar& operator*=(const ExactScalar& o) { return *this = *this * o; }
    ExactScalar& operator/=(const ExactScalar& o) { return *this = *this / o; }

    friend bool operator==(const ExactScalar& a, const ExactScalar& b);
    friend bool operator!=(const ExactScalar& a, const ExactScalar& b) { return !(a == b); }
    friend bool operator<(const ExactScalar& a, const ExactScalar& b);
    friend bool operator<=(const ExactScalar& a, const ExactScalar& b);
    friend bool operator>(const ExactScalar& a, const ExactScalar& b) { return b < a; }
    friend bool operator>=(const ExactScalar& a, const ExactScalar& b) { return b <= a; }

    // Exact trichotomy: -1, 0, +1. Raises IncompatibleFields when no common
    // overfield can be constructed.
    static int compare(const ExactScalar& a, const ExactScalar& b);

    // Nonzero element of the same field with value 1 used as a unit.
    ExactScalar one_like() const;

    // Stable text key: field and coordinates; equal keys iff identical
    // representation (same field object contents and coordinates).
    std::string key() const;
    std::string str() const;

private:
    FieldPtr field_;
    std::vector<Rat> coords_;

    void reduce_tail_();  // drop to Q if all non-constant coords vanish
    friend std::pair<ExactScalar, ExactScalar> unify(const ExactScalar& a, const ExactScalar& b);
};

// Rewrites a and b in one common field (identity, rational embedding,
// canonical quadratic identification, or a quadratic compositum).
std::pair<ExactScalar, ExactScalar> unify(const ExactScalar& a, const ExactScalar& b);

// Smallest supported common overfield; raises IncompatibleFields when none
// can be constructed.
FieldPtr join_fields(const FieldPtr& a, const FieldPtr& b);

// The radicands (m, n) of a standard biquadratic compositum
// t^4 - 2(m+n) t^2 + (m-n)^2 with the largest root distinguished.
std::optional<std::pair<Int, Int>> compositum_radicands(const FieldPtr& f);

// Embeds x into field F when an embedding is known; raises IncompatibleFields
// otherwise.
ExactScalar to_field(const ExactScalar& x, const FieldPtr& f);

struct Conjugate {
    bool real;
    ExactScalar value;             // meaningful when real
    std::complex<double> approx;   // always set
};
// Images of x under all embeddings of its field into C; the distinguished
// embedding first, then remaining real embeddings, then complex pairs.
std::vector<Conjugate> galois_conjugates(const ExactScalar& x);

// a = b - 1 + sqrt(b^2 - b + 1). Raises RationalParameter when a is rational
// unless allow_rational.
ExactScalar make_mcmullen_parameter(const Rat& b, bool allow_rational = false);

}  // namespace flatlab
