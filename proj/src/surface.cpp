#include "flatlab/surface.hpp"

#include <algorithm>
#include <functional>

#include "flatlab/error.hpp"

namespace flatlab {

namespace {

// segments [a,b] and [c,d] intersect (touching counts)
bool segments_intersect(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
    auto orient = [](const Vec2& p, const Vec2& q, const Vec2& r) {
        return cross(q - p, r - p).sign();
    };
    auto on_segment = [](const Vec2& p, const Vec2& q, const Vec2& r) {
        // r collinear with pq assumed; inside the closed segment?
        return dot(r - p, r - q).sign() <= 0;
    };
    int o1 = orient(a, b, c), o2 = orient(a, b, d);
    int o3 = orient(c, d, a), o4 = orient(c, d, b);
    if (o1 * o2 < 0 && o3 * o4 < 0) return true;  // proper crossing
    if (o1 == 0 && on_segment(a, b, c)) return true;
    if (o2 == 0 && on_segment(a, b, d)) return true;
    if (o3 == 0 && on_segment(c, d, a)) return true;
    if (o4 == 0 && on_segment(c, d, b)) return true;
    return false;
}

ExactScalar polygon_double_area(const Polygon& p) {
    ExactScalar acc(0);
    int n = static_cast<int>(p.size());
    for (int i = 0; i < n; ++i) acc += cross(p[static_cast<size_t>(i)], p[static_cast<size_t>((i + 1) % n)]);
    return acc;
}

void check_polygon(const Polygon& p, int index) {
    int n = static_cast<int>(p.size());
    if (n < 3) raise("NonSimplePolygon", "polygon " + std::to_string(index) + " has fewer than 3 vertices");
    for (int i = 0; i < n; ++i) {
        Vec2 e = p[static_cast<size_t>((i + 1) % n)] - p[static_cast<size_t>(i)];
        if (e.is_zero())
            raise("NonSimplePolygon", "polygon " + std::to_string(index) + " has a zero-length edge " + std::to_string(i));
    }
    if (polygon_double_area(p).sign() <= 0)
        raise("NonSimplePolygon", "polygon " + std::to_string(index) + " is not positively oriented");
    // corners must have interior angle in (0, 2pi): reject spikes where the
    // outgoing edge runs straight back along the incoming one
    for (int i = 0; i < n; ++i) {
        Vec2 in = p[static_cast<size_t>(i)] - p[static_cast<size_t>((i + n - 1) % n)];
        Vec2 out = p[static_cast<size_t>((i + 1) % n)] - p[static_cast<size_t>(i)];
        if (cross(in, out).sign() == 0 && dot(in, out).sign() < 0)
            raise("NonSimplePolygon", "polygon " + std::to_string(index) + " has a degenerate spike at vertex " + std::to_string(i));
    }
    // no two non-adjacent edges may meet
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (j == i + 1 || (i == 0 && j == n - 1)) continue;
            if (segments_intersect(p[static_cast<size_t>(i)], p[static_cast<size_t>((i + 1) % n)],
                                   p[static_cast<size_t>(j)], p[static_cast<size_t>((j + 1) % n)]))
                raise("NonSimplePolygon", "polygon " + std::to_string(index) + " self-intersects (edges " +
                                              std::to_string(i) + ", " + std::to_string(j) + ")");
        }
    }
}

}  // namespace

FlatSurface FlatSurface::build(std::vector<Polygon> polygons, std::vector<GluingPair> gluings,
                               std::string label) {
    if (polygons.empty()) raise("InconsistentInput", "no polygons");

    // move every coordinate into one common field
    FieldPtr field = NumberField::rationals();
    for (const auto& p : polygons)
        for (const auto& v : p) {
            field = join_fields(field, v.x.field());
            field = join_fields(field, v.y.field());
        }
    for (auto& p : polygons)
        for (auto& v : p) {
            v.x = to_field(v.x, field);
            v.y = to_field(v.y, field);
        }

    for (size_t i = 0; i < polygons.size(); ++i) check_polygon(polygons[i], static_cast<int>(i));

    FlatSurface s;
    s.field_ = field;
    s.polys_ = std::move(polygons);
    s.gluings_ = std::move(gluings);
    s.label_ = std::move(label);

    // pairing table; every directed edge in exactly one pair
    s.partner_.resize(s.polys_.size());
    for (size_t p = 0; p < s.polys_.size(); ++p)
        s.partner_[p].assign(s.polys_[p].size(), EdgeRef{});
    auto in_range = [&](const EdgeRef& e) {
        return e.poly >= 0 && e.poly < s.polygon_count() && e.edge >= 0 &&
               e.edge < s.edge_count(e.poly);
    };
    for (const auto& pair : s.gluings_) {
        const EdgeRef& e = pair[0];
        const EdgeRef& f = pair[1];
        if (!in_range(e) || !in_range(f)) raise("InconsistentInput", "gluing references a missing edge");
        if (e == f) raise("InconsistentInput", "edge glued to itself");
        for (const EdgeRef& g : {e, f}) {
            if (s.partner_[static_cast<size_t>(g.poly)][static_cast<size_t>(g.edge)].poly != -1)
                raise("InconsistentInput", "edge (" + std::to_string(g.poly) + "," + std::to_string(g.edge) + ") glued twice");
        }
        s.partner_[static_cast<size_t>(e.poly)][static_cast<size_t>(e.edge)] = f;
        s.partner_[static_cast<size_t>(f.poly)][static_cast<size_t>(f.edge)] = e;
    }
    for (int p = 0; p < s.polygon_count(); ++p)
        for (int e = 0; e < s.edge_count(p); ++e)
            if (s.partner_[static_cast<size_t>(p)][static_cast<size_t>(e)].poly == -1)
                raise("InconsistentInput", "edge (" + std::to_string(p) + "," + std::to_string(e) + ") is unglued");

    // translation gluing: partner vectors must be exact opposites
    for (const auto& pair : s.gluings_) {
        Vec2 u = s.edge_vector(pair[0]);
        Vec2 v = s.edge_vector(pair[1]);
        if (cross(u, v).sign() != 0)
            raise("NonParallelGluing", "glued edges (" + std::to_string(pair[0].poly) + "," +
                                           std::to_string(pair[0].edge) + ")~(" + std::to_string(pair[1].poly) +
                                           "," + std::to_string(pair[1].edge) + ") are not parallel");
        if (!(u + v).is_zero()) {
            if (dot(u, u) != dot(v, v))
                raise("LengthMismatch", "glued edges (" + std::to_string(pair[0].poly) + "," +
                                            std::to_string(pair[0].edge) + ")~(" + std::to_string(pair[1].poly) +
                                            "," + std::to_string(pair[1].edge) + ") have different lengths");
            raise("NonParallelGluing", "glued edges must have opposite orientation");
        }
    }

    // connectivity of the glued complex
    std::vector<int> comp(s.polys_.size());
    for (size_t i = 0; i < comp.size(); ++i) comp[i] = static_cast<int>(i);
    std::function<int(int)> find = [&](int x) { return comp[static_cast<size_t>(x)] == x ? x : comp[static_cast<size_t>(x)] = find(comp[static_cast<size_t>(x)]); };
    for (const auto& pair : s.gluings_) comp[static_cast<size_t>(find(pair[0].poly))] = find(pair[1].poly);
    for (int p = 0; p < s.polygon_count(); ++p)
        if (find(p) != find(0)) raise("Disconnected", "glued complex is not connected");

    return s;
}

Vec2 FlatSurface::vertex(const EdgeRef& e) const {
    return polys_[static_cast<size_t>(e.poly)][static_cast<size_t>(e.edge)];
}

Vec2 FlatSurface::edge_vector(const EdgeRef& e) const {
    const auto& p = polys_[static_cast<size_t>(e.poly)];
    int n = static_cast<int>(p.size());
    return p[static_cast<size_t>((e.edge + 1) % n)] - p[static_cast<size_t>(e.edge)];
}

EdgeRef FlatSurface::partner(const EdgeRef& e) const {
    return partner_[static_cast<size_t>(e.poly)][static_cast<size_t>(e.edge)];
}

EdgeRef FlatSurface::next_edge(const EdgeRef& e) const {
    return {e.poly, (e.edge + 1) % edge_count(e.poly)};
}

EdgeRef FlatSurface::prev_edge(const EdgeRef& e) const {
    int n = edge_count(e.poly);
    return {e.poly, (e.edge + n - 1) % n};
}

ExactScalar FlatSurface::area() const {
    ExactScalar acc(0);
    for (const auto& p : polys_) acc += polygon_double_area(p);
    return acc / ExactScalar(2);
}

FlatSurface build_mcmullen_surface(const Rat& b) {
    ExactScalar a = make_mcmullen_parameter(b);
    ExactScalar zero(0), one(1);
    ExactScalar a1 = a + one;        // 1 + a
    ExactScalar a21 = a + a + one;   // 1 + 2a

    // unit square [-1,0] x [0,1]
    Polygon p0{{-one, zero}, {zero, zero}, {zero, one}, {-one, one}};
    // big square [0,1+a]^2 with break points at height 1 on both sides
    Polygon p1{{zero, zero}, {a1, zero}, {a1, one}, {a1, a1}, {zero, a1}, {zero, one}};
    // small square [1+a, 1+2a] x [1, 1+a]
    Polygon p2{{a1, one}, {a21, one}, {a21, a1}, {a1, a1}};

    std::vector<GluingPair> gl{
        {EdgeRef{0, 0}, EdgeRef{0, 2}},  // unit square bottom ~ top
        {EdgeRef{0, 1}, EdgeRef{1, 5}},  // shared vertical edge
        {EdgeRef{0, 3}, EdgeRef{1, 1}},  // unit square left ~ big square lower right
        {EdgeRef{1, 0}, EdgeRef{1, 3}},  // big square bottom ~ top
        {EdgeRef{1, 2}, EdgeRef{2, 3}},  // shared vertical edge
        {EdgeRef{1, 4}, EdgeRef{2, 1}},  // big square upper left ~ small square right
        {EdgeRef{2, 0}, EdgeRef{2, 2}},  // small square bottom ~ top
    };
    return FlatSurface::build({p0, p1, p2}, gl, "S(a), b=" + to_string(b));
}

Mat<ExactScalar> mat2(const ExactScalar& a, const ExactScalar& b, const ExactScalar& c,
                      const ExactScalar& d) {
    return Mat<ExactScalar>{{a, b}, {c, d}};
}

ExactScalar det2(const Mat<ExactScalar>& g) { return g[0][0] * g[1][1] - g[0][1] * g[1][0]; }

FlatSurface apply_matrix(const Mat<ExactScalar>& g, const FlatSurface& s) {
    if (rows(g) != 2 || cols(g) != 2) raise("InconsistentInput", "expected a 2x2 matrix");
    ExactScalar det = det2(g);
    int ds = det.sign();
    if (ds == 0) raise("SingularMatrix", "matrix has determinant zero");

    std::vector<Polygon> polys;
    polys.reserve(s.polygons().size());
    for (const auto& p : s.polygons()) {
        Polygon q;
        q.reserve(p.size());
        for (const auto& v : p)
            q.push_back({g[0][0] * v.x + g[0][1] * v.y, g[1][0] * v.x + g[1][1] * v.y});
        polys.push_back(std::move(q));
    }
    std::vector<GluingPair> gl = s.gluings();
    if (ds < 0) {
        // restore positive orientation: reverse vertex order, remap edges
        for (auto& p : polys) std::reverse(p.begin(), p.end());
        auto remap = [&](EdgeRef e) {
            int n = static_cast<int>(polys[static_cast<size_t>(e.poly)].size());
            return EdgeRef{e.poly, ((n - 2 - e.edge) % n + n) % n};
        };
        for (auto& pair : gl) {
            pair[0] = remap(pair[0]);
            pair[1] = remap(pair[1]);
        }
    }
    return FlatSurface::build(std::move(polys), std::move(gl), s.label());
}

FlatSurface square_torus() {
    ExactScalar z(0), o(1);
    Polygon p{{z, z}, {o, z}, {o, o}, {z, o}};
    return FlatSurface::build({p}, {{EdgeRef{0, 0}, EdgeRef{0, 2}}, {EdgeRef{0, 1}, EdgeRef{0, 3}}},
                              "square torus");
}

FlatSurface rectangle_torus(const Rat& width, const Rat& height) {
    ExactScalar z(0), w(width), h(height);
    Polygon p{{z, z}, {w, z}, {w, h}, {z, h}};
    return FlatSurface::build({p}, {{EdgeRef{0, 0}, EdgeRef{0, 2}}, {EdgeRef{0, 1}, EdgeRef{0, 3}}},
                              "rectangle torus");
}

FlatSurface l_surface() {
    ExactScalar z(0), o(1), t(2);
    Polygon p{{z, z}, {o, z}, {t, z}, {t, o}, {o, o}, {o, t}, {z, t}, {z, o}};
    std::vector<GluingPair> gl{
        {EdgeRef{0, 0}, EdgeRef{0, 5}},  // lower-left bottom ~ top of the tall column
        {EdgeRef{0, 1}, EdgeRef{0, 3}},  // lower-right bottom ~ its ceiling at height 1
        {EdgeRef{0, 2}, EdgeRef{0, 7}},  // right side ~ left side, y in [0,1]
        {EdgeRef{0, 4}, EdgeRef{0, 6}},  // x = 1 side ~ x = 0 side, y in [1,2]
    };
    return FlatSurface::build({p}, gl, "L of three unit squares");
}

FlatSurface regular_octagon() {
    ExactScalar r2 = ExactScalar::sqrt_of(2);
    ExactScalar o(1);
    ExactScalar c = o + r2;  // 1 + sqrt(2)
    Polygon p{{c, o},  {o, c},  {-o, c},  {-c, o},
              {-c, -o}, {-o, -c}, {o, -c},  {c, -o}};
    std::vector<GluingPair> gl;
    for (int i = 0; i < 4; ++i) gl.push_back({EdgeRef{0, i}, EdgeRef{0, i + 4}});
    return FlatSurface::build({p}, gl, "regular octagon");
}

}  // namespace flatlab
