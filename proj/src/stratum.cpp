#include "flatlab/stratum.hpp"

#include <algorithm>

#include "flatlab/error.hpp"

namespace flatlab {

EdgeRef SurfaceComplex::ref(int dedge) const {
    int p = poly_of[static_cast<size_t>(dedge)];
    return {p, dedge - edge_offset[static_cast<size_t>(p)]};
}

int SurfaceComplex::id(const EdgeRef& e) const {
    return edge_offset[static_cast<size_t>(e.poly)] + e.edge;
}

bool ccw_arc_contains(const Vec2& from, const Vec2& to, const Vec2& d) {
    auto parallel_same = [](const Vec2& u, const Vec2& v) {
        return cross(u, v).sign() == 0 && dot(u, v).sign() > 0;
    };
    if (parallel_same(from, d)) return true;   // inclusive start
    if (parallel_same(to, d)) return false;    // exclusive end
    int c = cross(from, to).sign();
    if (c > 0) return cross(from, d).sign() > 0 && cross(d, to).sign() > 0;
    if (c < 0) return !(cross(to, d).sign() > 0 && cross(d, from).sign() > 0);
    // from and to opposite (arc of exactly pi)
    return cross(from, d).sign() > 0;
}

SurfaceComplex build_complex(const FlatSurface& s) {
    SurfaceComplex c;
    int np = s.polygon_count();
    c.edge_offset.resize(static_cast<size_t>(np));
    int total = 0;
    for (int p = 0; p < np; ++p) {
        c.edge_offset[static_cast<size_t>(p)] = total;
        total += s.edge_count(p);
    }
    c.dedges = total;
    c.partner.resize(static_cast<size_t>(total));
    c.next.resize(static_cast<size_t>(total));
    c.prev.resize(static_cast<size_t>(total));
    c.poly_of.resize(static_cast<size_t>(total));
    for (int p = 0; p < np; ++p) {
        int n = s.edge_count(p);
        for (int e = 0; e < n; ++e) {
            int id = c.edge_offset[static_cast<size_t>(p)] + e;
            c.poly_of[static_cast<size_t>(id)] = p;
            c.next[static_cast<size_t>(id)] = c.edge_offset[static_cast<size_t>(p)] + (e + 1) % n;
            c.prev[static_cast<size_t>(id)] = c.edge_offset[static_cast<size_t>(p)] + (e + n - 1) % n;
            c.partner[static_cast<size_t>(id)] = c.id(s.partner({p, e}));
        }
    }

    // undirected edge classes
    c.edge_class.assign(static_cast<size_t>(total), -1);
    c.edge_sign.assign(static_cast<size_t>(total), 0);
    for (int d = 0; d < total; ++d) {
        if (c.edge_class[static_cast<size_t>(d)] >= 0) continue;
        int q = c.partner[static_cast<size_t>(d)];
        c.edge_class[static_cast<size_t>(d)] = c.edge_count;
        c.edge_class[static_cast<size_t>(q)] = c.edge_count;
        c.edge_sign[static_cast<size_t>(d)] = 1;
        c.edge_sign[static_cast<size_t>(q)] = -1;
        c.edge_rep.push_back(d);
        ++c.edge_count;
    }

    // vertex classes: corner (tail of dedge d) is identified with the corner
    // at the head of partner(d); the orbit of that successor map is the class
    c.vertex_class.assign(static_cast<size_t>(total), -1);
    for (int d = 0; d < total; ++d) {
        if (c.vertex_class[static_cast<size_t>(d)] >= 0) continue;
        int cls = c.vertex_count++;
        int cur = d;
        while (c.vertex_class[static_cast<size_t>(cur)] < 0) {
            c.vertex_class[static_cast<size_t>(cur)] = cls;
            cur = c.next[static_cast<size_t>(c.partner[static_cast<size_t>(cur)])];
        }
        if (cur != d) raise("NonMultipleConeAngle", "corner identification walk does not close");
    }

    // exact cone angles: sum the corner wedges of each class and count how
    // many times the positive x direction is crossed
    c.vertex_turns.assign(static_cast<size_t>(c.vertex_count), 0);
    Vec2 east{ExactScalar(1), ExactScalar(0)};
    for (int d = 0; d < total; ++d) {
        Vec2 w = s.edge_vector(c.ref(d));
        Vec2 u = -s.edge_vector(c.ref(c.prev[static_cast<size_t>(d)]));
        if (ccw_arc_contains(w, u, east))
            c.vertex_turns[static_cast<size_t>(c.vertex_class[static_cast<size_t>(d)])] += 1;
    }
    for (int v = 0; v < c.vertex_count; ++v)
        if (c.vertex_turns[static_cast<size_t>(v)] < 1)
            raise("NonMultipleConeAngle",
                  "vertex class " + std::to_string(v) + " has zero total angle");
    return c;
}

StratumSignature classify_stratum(const FlatSurface& s) {
    SurfaceComplex c = build_complex(s);
    StratumSignature sig;
    sig.cone_turns = c.vertex_turns;
    std::sort(sig.cone_turns.begin(), sig.cone_turns.end(), std::greater<int>());
    for (int w : sig.cone_turns) {
        if (w == 1) sig.marked_points += 1;
        else sig.zero_orders.push_back(w - 1);
    }
    int chi = c.vertex_count - c.edge_count + s.polygon_count();
    if ((2 - chi) % 2 != 0) raise("NonMultipleConeAngle", "odd Euler characteristic");
    sig.genus = (2 - chi) / 2;
    // Gauss-Bonnet cross-check: total angle defect must match the genus
    int order_sum = 0;
    for (int k : sig.zero_orders) order_sum += k;
    if (sig.genus < 1 || order_sum != 2 * sig.genus - 2)
        raise("NonMultipleConeAngle", "cone angles inconsistent with the Euler characteristic");
    return sig;
}

}  // namespace flatlab
