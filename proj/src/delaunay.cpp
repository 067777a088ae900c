#include "flatlab/delaunay.hpp"

#include <algorithm>

#include "flatlab/error.hpp"

namespace flatlab {

namespace {

// ear clipping with exact predicates; returns triangles as vertex index
// triples and the diagonals created, each triple counterclockwise
struct EarClip {
    std::vector<std::array<int, 3>> triangles;
};

int orient(const Vec2& a, const Vec2& b, const Vec2& c) { return cross(b - a, c - a).sign(); }

bool point_in_closed_triangle(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& p) {
    return orient(a, b, p) >= 0 && orient(b, c, p) >= 0 && orient(c, a, p) >= 0;
}

EarClip ear_clip(const Polygon& poly) {
    int n = static_cast<int>(poly.size());
    std::vector<int> idx(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) idx[static_cast<size_t>(i)] = i;
    EarClip out;
    int guard = 0;
    while (idx.size() > 3) {
        if (++guard > 4 * n * n) raise("NonSimplePolygon", "ear clipping failed to make progress");
        bool clipped = false;
        int m = static_cast<int>(idx.size());
        for (int i = 0; i < m; ++i) {
            int ia = idx[static_cast<size_t>((i + m - 1) % m)];
            int ib = idx[static_cast<size_t>(i)];
            int ic = idx[static_cast<size_t>((i + 1) % m)];
            const Vec2& a = poly[static_cast<size_t>(ia)];
            const Vec2& b = poly[static_cast<size_t>(ib)];
            const Vec2& c = poly[static_cast<size_t>(ic)];
            if (orient(a, b, c) <= 0) continue;  // reflex or straight corner
            bool blocked = false;
            for (int j : idx) {
                if (j == ia || j == ib || j == ic) continue;
                if (point_in_closed_triangle(a, b, c, poly[static_cast<size_t>(j)])) {
                    blocked = true;
                    break;
                }
            }
            if (blocked) continue;
            out.triangles.push_back({ia, ib, ic});
            idx.erase(idx.begin() + i);
            clipped = true;
            break;
        }
        if (!clipped) raise("NonSimplePolygon", "no ear found; polygon is not simple");
    }
    out.triangles.push_back({idx[0], idx[1], idx[2]});
    return out;
}

}  // namespace

Triangulation Triangulation::from_surface(const FlatSurface& s) {
    Triangulation t;
    t.field = s.field();

    // halfedge ids are assigned per clipped triangle; diagonals pair up by
    // their (polygon, ordered vertex pair) key, boundary edges via gluings
    std::map<std::pair<int, std::pair<int, int>>, int> open_diag;
    std::map<std::pair<int, int>, int> boundary;  // (poly, edge index) -> halfedge

    for (int p = 0; p < s.polygon_count(); ++p) {
        const Polygon& poly = s.polygons()[static_cast<size_t>(p)];
        int n = static_cast<int>(poly.size());
        EarClip clip = ear_clip(poly);
        for (const auto& tri : clip.triangles) {
            int base = t.halfedges();
            for (int k = 0; k < 3; ++k) {
                int u = tri[static_cast<size_t>(k)], v = tri[static_cast<size_t>((k + 1) % 3)];
                t.vec.push_back(poly[static_cast<size_t>(v)] - poly[static_cast<size_t>(u)]);
                t.next.push_back(base + (k + 1) % 3);
                t.opp.push_back(-1);
                int he = base + k;
                if (v == (u + 1) % n) {
                    boundary[{p, u}] = he;  // original polygon edge
                } else {
                    auto key = std::make_pair(p, std::minmax(u, v));
                    auto it = open_diag.find(key);
                    if (it == open_diag.end()) {
                        open_diag.emplace(key, he);
                    } else {
                        t.opp[static_cast<size_t>(he)] = it->second;
                        t.opp[static_cast<size_t>(it->second)] = he;
                        open_diag.erase(it);
                    }
                }
            }
        }
    }
    if (!open_diag.empty()) raise("InconsistentInput", "unmatched triangulation diagonal");
    for (const auto& pair : s.gluings()) {
        int ha = boundary.at({pair[0].poly, pair[0].edge});
        int hb = boundary.at({pair[1].poly, pair[1].edge});
        t.opp[static_cast<size_t>(ha)] = hb;
        t.opp[static_cast<size_t>(hb)] = ha;
    }
    t.validate();
    return t;
}

void Triangulation::validate() const {
    int m = halfedges();
    for (int h = 0; h < m; ++h) {
        if (opp[static_cast<size_t>(h)] < 0 || opp[static_cast<size_t>(opp[static_cast<size_t>(h)])] != h)
            raise("InconsistentInput", "broken halfedge pairing");
        if (!(vec[static_cast<size_t>(h)] + vec[static_cast<size_t>(opp[static_cast<size_t>(h)])]).is_zero())
            raise("InconsistentInput", "opposite halfedges must carry opposite vectors");
        int n1 = next[static_cast<size_t>(h)], n2 = next[static_cast<size_t>(n1)];
        if (next[static_cast<size_t>(n2)] != h) raise("InconsistentInput", "halfedge cycle is not a triangle");
        Vec2 sum = vec[static_cast<size_t>(h)] + vec[static_cast<size_t>(n1)] + vec[static_cast<size_t>(n2)];
        if (!sum.is_zero()) raise("InconsistentInput", "triangle vectors do not close");
        if (cross(vec[static_cast<size_t>(h)], vec[static_cast<size_t>(n1)]).sign() <= 0)
            raise("InconsistentInput", "triangle is not positively oriented");
    }
}

int Triangulation::incircle_sign(int h) const {
    // triangle of h developed at the origin; apex of the opposite triangle
    const Vec2& e = vec[static_cast<size_t>(h)];
    Vec2 a{e.x - e.x, e.y - e.y};  // zero of the field
    Vec2 b = e;
    Vec2 c = e + vec[static_cast<size_t>(next[static_cast<size_t>(h)]) ];
    Vec2 d = vec[static_cast<size_t>(next[static_cast<size_t>(opp[static_cast<size_t>(h)]) ])];
    auto col = [&](const Vec2& p) {
        Vec2 q = p - d;
        return std::array<ExactScalar, 3>{q.x, q.y, q.x * q.x + q.y * q.y};
    };
    auto ra = col(a), rb = col(b), rc = col(c);
    ExactScalar det = ra[0] * (rb[1] * rc[2] - rb[2] * rc[1]) -
                      ra[1] * (rb[0] * rc[2] - rb[2] * rc[0]) +
                      ra[2] * (rb[0] * rc[1] - rb[1] * rc[0]);
    return det.sign();
}

void Triangulation::flip(int h) {
    int h2 = opp[static_cast<size_t>(h)];
    int n1 = next[static_cast<size_t>(h)], n2 = next[static_cast<size_t>(n1)];
    int m1 = next[static_cast<size_t>(h2)], m2 = next[static_cast<size_t>(m1)];
    Vec2 e = vec[static_cast<size_t>(h)], f = vec[static_cast<size_t>(n1)];
    Vec2 f2 = vec[static_cast<size_t>(m1)];
    Vec2 m = e + f - f2;  // new diagonal, apex to apex
    vec[static_cast<size_t>(h)] = m;
    vec[static_cast<size_t>(h2)] = -m;
    next[static_cast<size_t>(h)] = n2;
    next[static_cast<size_t>(n2)] = m1;
    next[static_cast<size_t>(m1)] = h;
    next[static_cast<size_t>(h2)] = m2;
    next[static_cast<size_t>(m2)] = n1;
    next[static_cast<size_t>(n1)] = h2;
}

void Triangulation::make_delaunay() {
    int m = halfedges();
    long cap = 2000L + 200L * static_cast<long>(m) * static_cast<long>(m);
    long flips = 0;
    bool any = true;
    while (any) {
        any = false;
        for (int h = 0; h < m; ++h) {
            if (h > opp[static_cast<size_t>(h)]) continue;  // one test per edge
            if (incircle_sign(h) > 0) {
                flip(h);
                any = true;
                if (++flips > cap) raise("InconsistentInput", "Delaunay flipping did not terminate");
            }
        }
    }
}

CellComplex delaunay_cells(const FlatSurface& s) {
    Triangulation t = Triangulation::from_surface(s);
    t.make_delaunay();
    t.validate();
    int m = t.halfedges();
    std::vector<bool> removable(static_cast<size_t>(m), false);
    for (int h = 0; h < m; ++h) {
        if (h > t.opp[static_cast<size_t>(h)]) continue;
        if (t.incircle_sign(h) == 0) {
            removable[static_cast<size_t>(h)] = true;
            removable[static_cast<size_t>(t.opp[static_cast<size_t>(h)])] = true;
        }
    }
    CellComplex c;
    c.field = t.field;
    std::vector<int> dense(static_cast<size_t>(m), -1);
    for (int h = 0; h < m; ++h)
        if (!removable[static_cast<size_t>(h)]) {
            dense[static_cast<size_t>(h)] = static_cast<int>(c.vec.size());
            c.vec.push_back(t.vec[static_cast<size_t>(h)]);
        }
    c.opp.assign(c.vec.size(), -1);
    c.next.assign(c.vec.size(), -1);
    c.cell_of.assign(c.vec.size(), -1);
    for (int h = 0; h < m; ++h) {
        if (removable[static_cast<size_t>(h)]) continue;
        c.opp[static_cast<size_t>(dense[static_cast<size_t>(h)])] = dense[static_cast<size_t>(t.opp[static_cast<size_t>(h)])];
        // walk to the next surviving edge of the merged cell
        int cur = t.next[static_cast<size_t>(h)];
        int guard = 0;
        while (removable[static_cast<size_t>(cur)]) {
            cur = t.next[static_cast<size_t>(t.opp[static_cast<size_t>(cur)])];
            if (++guard > m) raise("InconsistentInput", "cell walk does not close");
        }
        c.next[static_cast<size_t>(dense[static_cast<size_t>(h)])] = dense[static_cast<size_t>(cur)];
    }
    for (size_t h = 0; h < c.vec.size(); ++h) {
        if (c.cell_of[h] >= 0) continue;
        int cell = c.cells++;
        int cur = static_cast<int>(h);
        int guard = 0;
        while (c.cell_of[static_cast<size_t>(cur)] < 0) {
            c.cell_of[static_cast<size_t>(cur)] = cell;
            cur = c.next[static_cast<size_t>(cur)];
            if (++guard > m) raise("InconsistentInput", "cell closure failure");
        }
    }
    return c;
}

}  // namespace flatlab
