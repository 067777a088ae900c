#include "flatlab/cylinders.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "flatlab/canonical.hpp"
#include "flatlab/error.hpp"
#include "flatlab/stratum.hpp"

namespace flatlab {

namespace {

bool parallel_same(const Vec2& a, const Vec2& b) {
    return cross(a, b).sign() == 0 && dot(a, b).sign() > 0;
}

struct Chord {
    Vec2 a, b;  // a.x < b.x, horizontal
};

struct Node {
    Vec2 pt;
    long label;  // label of the edge leaving this point
};

}  // namespace

CylinderDecomposition cylinder_decomposition(const FlatSurface& s_in, const Vec2& dir,
                                             const Rat& length_budget, long step_budget) {
    if (dir.is_zero()) raise("InconsistentInput", "direction must be nonzero");
    CylinderDecomposition out;
    out.direction = dir;

    // shear the direction onto the positive x axis
    FieldPtr f = join_fields(s_in.field(), join_fields(dir.x.field(), dir.y.field()));
    ExactScalar vx = to_field(dir.x, f), vy = to_field(dir.y, f);
    ExactScalar det = vx * vx + vy * vy;
    Mat<ExactScalar> g = mat2(vx, vy, -vy, vx);
    FlatSurface sh = apply_matrix(g, surface_to_field(s_in, f));
    ExactScalar east_x(1), east_y(0);
    Vec2 east{east_x, east_y};

    SurfaceComplex cx = build_complex(sh);

    // gluing-pair index per directed edge
    std::map<std::pair<int, int>, std::pair<int, int>> side_of;  // (poly,edge) -> (pair, side)
    for (size_t gi = 0; gi < sh.gluings().size(); ++gi)
        for (int side = 0; side < 2; ++side) {
            const EdgeRef& e = sh.gluings()[gi][static_cast<size_t>(side)];
            side_of[{e.poly, e.edge}] = {static_cast<int>(gi), side};
        }

    std::vector<std::vector<Chord>> chords(static_cast<size_t>(sh.polygon_count()));
    // crossing points per directed edge
    std::map<std::pair<int, int>, std::vector<Vec2>> crossings;

    auto translation = [&](const EdgeRef& e, const EdgeRef& fe) {
        return (sh.vertex(fe) + sh.edge_vector(fe)) - sh.vertex(e);
    };

    long steps = 0;
    ExactScalar budget = ExactScalar(length_budget) * det;  // sheared lengths scale by |v|^2

    auto trace = [&](int poly0, Vec2 pos) -> bool {
        int p = poly0;
        ExactScalar travelled(0);
        while (true) {
            if (++steps > step_budget) return false;
            const Polygon& poly = sh.polygons()[static_cast<size_t>(p)];
            int n = static_cast<int>(poly.size());
            // nearest boundary contact to the east
            bool have = false, corner_hit = false;
            ExactScalar best_t(0);
            Vec2 hit{east_x, east_y};
            int hit_edge = -1;
            for (int e = 0; e < n; ++e) {
                const Vec2& A = poly[static_cast<size_t>(e)];
                const Vec2& B = poly[static_cast<size_t>((e + 1) % n)];
                // corner on the ray
                if ((A.y - pos.y).is_zero()) {
                    ExactScalar t = A.x - pos.x;
                    if (t.sign() > 0 && (!have || t < best_t)) {
                        have = true;
                        corner_hit = true;
                        best_t = t;
                        hit = A;
                        hit_edge = -1;
                    }
                }
                // strict crossing of the open edge
                int sa = (A.y - pos.y).sign(), sb = (B.y - pos.y).sign();
                if (sa * sb < 0) {
                    ExactScalar x = A.x + (pos.y - A.y) * (B.x - A.x) / (B.y - A.y);
                    ExactScalar t = x - pos.x;
                    if (t.sign() > 0 && (!have || t < best_t)) {
                        have = true;
                        corner_hit = false;
                        best_t = t;
                        hit = Vec2{x, pos.y};
                        hit_edge = e;
                    }
                }
            }
            if (!have) raise("InconsistentInput", "separatrix escaped its polygon");
            travelled += best_t;
            if (ExactScalar::compare(travelled, budget) > 0) return false;
            chords[static_cast<size_t>(p)].push_back({pos, hit});
            if (corner_hit) return true;
            EdgeRef e{p, hit_edge};
            EdgeRef fe = sh.partner(e);
            crossings[{e.poly, e.edge}].push_back(hit);
            Vec2 other = hit + translation(e, fe);
            crossings[{fe.poly, fe.edge}].push_back(other);
            pos = other;
            p = fe.poly;
        }
    };

    for (int d = 0; d < cx.dedges; ++d) {
        EdgeRef ref = cx.ref(d);
        Vec2 w = sh.edge_vector(ref);
        Vec2 u = -sh.edge_vector(cx.ref(cx.prev[static_cast<size_t>(d)]));
        if (parallel_same(w, east)) continue;  // the edge itself is the saddle connection
        if (!ccw_arc_contains(w, u, east)) continue;
        if (!trace(ref.poly, sh.vertex(ref))) {
            out.status = CylinderDecomposition::Status::Inconclusive;
            out.trace_steps = steps;
            return out;
        }
    }
    out.trace_steps = steps;

    // slice: refine edges at crossing points, then cut along the chords
    long next_label = 0;
    std::map<std::pair<std::pair<int, int>, int>, long> sub_label;  // ((pair, side), k)
    auto label_for = [&](int pair, int side, int k, int total) {
        auto key = std::make_pair(std::make_pair(pair, side), k);
        auto it = sub_label.find(key);
        if (it != sub_label.end()) return it->second;
        long l1 = next_label++;
        long l2 = next_label++;
        sub_label[key] = l1;
        sub_label[{{pair, 1 - side}, total - 1 - k}] = l2;
        return l1;
    };
    std::map<long, long> partner_label;

    std::vector<std::vector<Node>> pieces;
    for (int p = 0; p < sh.polygon_count(); ++p) {
        const Polygon& poly = sh.polygons()[static_cast<size_t>(p)];
        int n = static_cast<int>(poly.size());
        std::vector<Node> loop;
        for (int e = 0; e < n; ++e) {
            const Vec2& A = poly[static_cast<size_t>(e)];
            const Vec2& B = poly[static_cast<size_t>((e + 1) % n)];
            auto [pair, side] = side_of.at({p, e});
            std::vector<Vec2> pts;
            auto it = crossings.find({p, e});
            if (it != crossings.end()) {
                pts = it->second;
                Vec2 ev = B - A;
                std::sort(pts.begin(), pts.end(), [&](const Vec2& x, const Vec2& y) {
                    return ExactScalar::compare(dot(x - A, ev), dot(y - A, ev)) < 0;
                });
                pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
            }
            int total = static_cast<int>(pts.size()) + 1;
            Vec2 cur = A;
            for (int k = 0; k < total; ++k) {
                long l = label_for(pair, side, k, total);
                loop.push_back({cur, l});
                if (k + 1 < total) cur = pts[static_cast<size_t>(k)];
            }
        }
        pieces.push_back(std::move(loop));
    }
    // pair the sub-labels
    for (const auto& [key, l] : sub_label) {
        auto [ps, k] = key;
        auto [pair, side] = ps;
        long other = sub_label.at({{pair, 1 - side}, [&] {
                                       // recompute total on the partner side
                                       int t = 0;
                                       while (sub_label.count({{pair, side}, t})) ++t;
                                       return t - 1 - k;
                                   }()});
        partner_label[l] = other;
    }

    // cut along the chords
    for (int p0 = 0; p0 < sh.polygon_count(); ++p0) {
        for (const Chord& c : chords[static_cast<size_t>(p0)]) {
            // locate the piece holding this chord: both endpoints are loop
            // vertices and the chord leaves the wedge at its left endpoint
            bool placed = false;
            for (size_t pi = 0; pi < pieces.size() && !placed; ++pi) {
                auto& loop = pieces[pi];
                int n = static_cast<int>(loop.size());
                int ia = -1, ib = -1;
                for (int i = 0; i < n; ++i) {
                    if (loop[static_cast<size_t>(i)].pt == c.a) ia = i;
                    if (loop[static_cast<size_t>(i)].pt == c.b) ib = i;
                }
                if (ia < 0 || ib < 0 || ia == ib) continue;
                Vec2 w = loop[static_cast<size_t>(ia)].pt;
                Vec2 wout = loop[static_cast<size_t>((ia + 1) % n)].pt - w;
                Vec2 win = w - loop[static_cast<size_t>((ia + n - 1) % n)].pt;
                Vec2 d = c.b - c.a;
                if (!ccw_arc_contains(wout, -win, d) || parallel_same(wout, d)) continue;
                // split loop at ia, ib
                long l1 = next_label++, l2 = next_label++;
                partner_label[l1] = l2;
                partner_label[l2] = l1;
                std::vector<Node> first, second;
                for (int i = ia;; i = (i + 1) % n) {
                    first.push_back(loop[static_cast<size_t>(i)]);
                    if (i == ib) break;
                }
                first.back().label = l1;  // chord edge b -> a closes the first piece
                for (int i = ib;; i = (i + 1) % n) {
                    second.push_back(loop[static_cast<size_t>(i)]);
                    if (i == ia) break;
                }
                second.back().label = l2;  // chord edge a -> b closes the second piece
                pieces.erase(pieces.begin() + static_cast<long>(pi));
                pieces.push_back(std::move(first));
                pieces.push_back(std::move(second));
                placed = true;
            }
            if (!placed) raise("InconsistentInput", "chord endpoints missing from the sliced complex");
        }
    }

    // assemble and validate the sliced surface
    std::map<long, EdgeRef> where;
    std::vector<Polygon> polys;
    for (size_t pi = 0; pi < pieces.size(); ++pi) {
        Polygon poly;
        for (size_t i = 0; i < pieces[pi].size(); ++i) {
            poly.push_back(pieces[pi][i].pt);
            where[pieces[pi][i].label] = {static_cast<int>(pi), static_cast<int>(i)};
        }
        polys.push_back(std::move(poly));
    }
    std::vector<GluingPair> gl;
    for (const auto& [l, m] : partner_label)
        if (l < m) gl.push_back({where.at(l), where.at(m)});
    FlatSurface sliced = FlatSurface::build(std::move(polys), std::move(gl), "sliced");

    // cylinders: components across non-horizontal gluings
    int np = sliced.polygon_count();
    std::vector<int> comp(static_cast<size_t>(np));
    for (int i = 0; i < np; ++i) comp[static_cast<size_t>(i)] = i;
    std::function<int(int)> find = [&](int x) {
        return comp[static_cast<size_t>(x)] == x ? x : comp[static_cast<size_t>(x)] = find(comp[static_cast<size_t>(x)]);
    };
    for (const auto& pair : sliced.gluings()) {
        Vec2 ev = sliced.edge_vector(pair[0]);
        if (!ev.y.is_zero()) comp[static_cast<size_t>(find(pair[0].poly))] = find(pair[1].poly);
    }
    std::map<int, std::vector<int>> groups;
    for (int i = 0; i < np; ++i) groups[find(i)].push_back(i);

    for (const auto& [root, members] : groups) {
        ExactScalar area(0), circ(0), back(0);
        for (int p : members) {
            const Polygon& poly = sliced.polygons()[static_cast<size_t>(p)];
            int n = static_cast<int>(poly.size());
            for (int e = 0; e < n; ++e) {
                area += cross(poly[static_cast<size_t>(e)], poly[static_cast<size_t>((e + 1) % n)]);
                Vec2 ev = sliced.edge_vector({p, e});
                if (ev.y.is_zero()) {
                    if (ev.x.sign() > 0) circ += ev.x;
                    else back -= ev.x;
                }
            }
        }
        area = area / ExactScalar(2);
        if (!(circ == back) || circ.sign() <= 0)
            raise("InconsistentInput", "cylinder boundary lengths disagree");
        ExactScalar height = area / circ;
        out.cylinders.push_back({circ / det, height / det, height / circ});
    }
    out.status = CylinderDecomposition::Status::Periodic;
    return out;
}

ParabolicResult parabolic_in_direction(const FlatSurface& s, const Vec2& dir,
                                       const Rat& length_budget, long step_budget) {
    ParabolicResult res;
    CylinderDecomposition dec = cylinder_decomposition(s, dir, length_budget, step_budget);
    res.status = dec.status;
    if (dec.status != CylinderDecomposition::Status::Periodic) return res;
    for (const auto& c : dec.cylinders) res.moduli.push_back(c.modulus);

    // least c with c * modulus integral for every cylinder
    const ExactScalar& m1 = res.moduli.front();
    Int denom_lcm(1);
    for (const auto& m : res.moduli) {
        ExactScalar ratio = m / m1;
        if (!ratio.is_rational()) return res;  // incommensurable moduli
        denom_lcm = lcm(denom_lcm, ratio.rational_value().get_den());
    }
    ExactScalar c = ExactScalar(Rat(denom_lcm)) / m1;

    FieldPtr f = join_fields(s.field(), join_fields(dir.x.field(), dir.y.field()));
    f = join_fields(f, c.field());
    ExactScalar vx = to_field(dir.x, f), vy = to_field(dir.y, f);
    ExactScalar det = vx * vx + vy * vy;
    ExactScalar sc = to_field(c, f) / det;
    ExactScalar one(1);
    Mat<ExactScalar> p = mat2(one - sc * vx * vy, sc * vx * vx, ExactScalar(0) - sc * vy * vy,
                              one + sc * vx * vy);
    // membership check through the canonical form
    FlatSurface base = surface_to_field(s, f);
    if (!(canonical_form(apply_matrix(p, base)) == canonical_form(base)))
        raise("InconsistentInput", "constructed twist does not stabilize the surface");
    res.matrix = p;
    return res;
}

}  // namespace flatlab
