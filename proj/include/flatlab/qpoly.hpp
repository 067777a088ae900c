#pragma once

#include <utility>
#include <vector>

#include "flatlab/rational.hpp"

namespace flatlab {

// Dense univariate polynomial over Q. coeffs[i] multiplies t^i; the zero
// polynomial is the empty vector, everything else has a nonzero leading
// coefficient.
class QPoly {
public:
    QPoly() = default;
    explicit QPoly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }
    static QPoly constant(const Rat& a);
    static QPoly from_int_coeffs(const std::vector<Int>& coeffs);

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    const std::vector<Rat>& coeffs() const { return c_; }
    const Rat& operator[](int i) const { return c_[static_cast<size_t>(i)]; }
    const Rat& leading() const { return c_.back(); }

    QPoly operator+(const QPoly& o) const;
    QPoly operator-(const QPoly& o) const;
    QPoly operator*(const QPoly& o) const;
    QPoly operator*(const Rat& a) const;
    QPoly operator-() const;
    bool operator==(const QPoly& o) const { return c_ == o.c_; }

    QPoly monic() const;
    QPoly derivative() const;
    Rat eval(const Rat& x) const;
    // Interval evaluation: image bounds of the polynomial on [lo, hi].
    std::pair<Rat, Rat> eval_interval(const Rat& lo, const Rat& hi) const;
    // q, r with *this = q*d + r, deg r < deg d.
    std::pair<QPoly, QPoly> divmod(const QPoly& d) const;
    bool divides(const QPoly& f) const;  // *this | f exactly

    // substitute t -> a*t (used to clear denominators of monic rational polys)
    QPoly scale_arg(const Rat& a) const;

    std::string str() const;

private:
    void trim();
    std::vector<Rat> c_;
};

QPoly gcd(const QPoly& a, const QPoly& b);  // monic gcd

// Sturm chain of a squarefree polynomial; counts real roots exactly.
class SturmChain {
public:
    explicit SturmChain(const QPoly& f);
    // Number of real roots in (a, b].
    int count_roots(const Rat& a, const Rat& b) const;
    int count_all_real_roots() const;
    // Cauchy bound: all real roots lie in (-B, B).
    Rat root_bound() const;

private:
    int variations(const Rat& x) const;
    int variations_at_inf(int sig) const;
    std::vector<QPoly> chain_;
};

// Disjoint isolating intervals (lo, hi] with rational endpoints, one per real
// root, sorted increasingly. Endpoints are never roots when f has no rational
// roots; rational roots are returned as degenerate [r, r] intervals.
struct IsolatedRoot {
    Rat lo, hi;
    bool exact = false;  // lo == hi == the root
};
std::vector<IsolatedRoot> isolate_real_roots(const QPoly& f);

// All rational roots of f (each once, sorted).
std::vector<Rat> rational_roots(const QPoly& f);

}  // namespace flatlab
