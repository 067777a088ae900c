#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "flatlab/exact_scalar.hpp"
#include "flatlab/qmatrix.hpp"

namespace flatlab {

struct Vec2 {
    ExactScalar x, y;

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator-() const { return {-x, -y}; }
    Vec2 operator*(const ExactScalar& c) const { return {x * c, y * c}; }
    bool operator==(const Vec2& o) const { return x == o.x && y == o.y; }
    bool operator!=(const Vec2& o) const { return !(*this == o); }
    bool is_zero() const { return x.is_zero() && y.is_zero(); }
};

inline ExactScalar cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
inline ExactScalar dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }

struct EdgeRef {
    int poly = -1;
    int edge = -1;
    bool operator==(const EdgeRef& o) const { return poly == o.poly && edge == o.edge; }
};

using Polygon = std::vector<Vec2>;
using GluingPair = std::array<EdgeRef, 2>;

// Polygons with translation edge identifications over one number field.
// Immutable after construction; build() validates every type invariant and
// throws the first violated one (NonSimplePolygon, NonParallelGluing,
// LengthMismatch, Disconnected).
class FlatSurface {
public:
    static FlatSurface build(std::vector<Polygon> polygons, std::vector<GluingPair> gluings,
                             std::string label = "");

    const FieldPtr& field() const { return field_; }
    const std::vector<Polygon>& polygons() const { return polys_; }
    const std::vector<GluingPair>& gluings() const { return gluings_; }
    const std::string& label() const { return label_; }

    int polygon_count() const { return static_cast<int>(polys_.size()); }
    int edge_count(int poly) const { return static_cast<int>(polys_[static_cast<size_t>(poly)].size()); }

    Vec2 vertex(const EdgeRef& e) const;      // tail of the directed edge
    Vec2 edge_vector(const EdgeRef& e) const; // head - tail
    EdgeRef partner(const EdgeRef& e) const;
    EdgeRef next_edge(const EdgeRef& e) const;
    EdgeRef prev_edge(const EdgeRef& e) const;

    ExactScalar area() const;  // exact, strictly positive

private:
    FlatSurface() = default;
    FieldPtr field_;
    std::vector<Polygon> polys_;
    std::vector<GluingPair> gluings_;
    std::vector<std::vector<EdgeRef>> partner_;
    std::string label_;
};

// The three-square surface: squares of side 1, 1+a, a with opposite edges
// glued, a = b-1+sqrt(b^2-b+1). Genus 2 with two simple zeros.
FlatSurface build_mcmullen_surface(const Rat& b);

// g (2x2, exact entries, det != 0) applied to every vertex; gluings are
// carried along. Orientation is re-fixed when det < 0.
FlatSurface apply_matrix(const Mat<ExactScalar>& g, const FlatSurface& s);

Mat<ExactScalar> mat2(const ExactScalar& a, const ExactScalar& b, const ExactScalar& c,
                      const ExactScalar& d);
ExactScalar det2(const Mat<ExactScalar>& g);

// Stock surfaces used across tests and the CLI.
FlatSurface square_torus();
FlatSurface rectangle_torus(const Rat& width, const Rat& height);
FlatSurface l_surface();         // three unit squares, H(2)
FlatSurface regular_octagon();   // opposite edges glued, H(2)

}  // namespace flatlab
