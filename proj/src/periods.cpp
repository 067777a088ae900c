#include "flatlab/periods.hpp"

#include <algorithm>

#include "flatlab/error.hpp"

namespace flatlab {

namespace {

// Flatten field scalars to rational coordinate vectors (power basis).
std::vector<Rat> flatten_pair(const ExactScalar& x, const ExactScalar& y, int d) {
    std::vector<Rat> out;
    out.reserve(static_cast<size_t>(2 * d));
    for (int i = 0; i < d; ++i) out.push_back(i < static_cast<int>(x.coords().size()) ? x.coords()[static_cast<size_t>(i)] : Rat(0));
    for (int i = 0; i < d; ++i) out.push_back(i < static_cast<int>(y.coords().size()) ? y.coords()[static_cast<size_t>(i)] : Rat(0));
    return out;
}

Mat<Rat> flatten_periods(const PeriodData& d, int ncols) {
    int deg = d.field->degree();
    Mat<Rat> m;
    for (int j = 0; j < ncols; ++j)
        m.push_back(flatten_pair(d.period_matrix[0][static_cast<size_t>(j)],
                                 d.period_matrix[1][static_cast<size_t>(j)], deg));
    return m;  // rows = columns of the period matrix
}

ExactScalar unflatten(const FieldPtr& f, const std::vector<Rat>& coords, int offset) {
    std::vector<Rat> c(coords.begin() + offset, coords.begin() + offset + f->degree());
    return ExactScalar(f, std::move(c));
}

}  // namespace

int generated_field_degree(const std::vector<ExactScalar>& xs) {
    if (xs.empty()) return 1;
    // common field
    FieldPtr f = NumberField::rationals();
    for (const auto& x : xs) f = join_fields(f, x.field());
    int d = f->degree();
    if (d == 1) return 1;
    // span of products: start with {1}, close under multiplication by the xs
    std::vector<ExactScalar> gens;
    for (const auto& x : xs) gens.push_back(to_field(x, f));
    Mat<Rat> span;
    std::vector<ExactScalar> elems{to_field(ExactScalar(1), f)};
    span.push_back(elems[0].coords());
    size_t next = 0;
    while (next < elems.size()) {
        ExactScalar e = elems[next++];
        for (const auto& g : gens) {
            ExactScalar p = e * g;
            Mat<Rat> trial = span;
            trial.push_back(p.coords());
            if (mat_rank(trial) > mat_rank(span)) {
                span.push_back(p.coords());
                elems.push_back(p);
            }
        }
    }
    return mat_rank(span);
}

TauRankReport tau_rank(const FlatSurface& s) { return tau_rank(s, homology_bases(s)); }

TauRankReport tau_rank(const FlatSurface& s, const PeriodData& d) {
    TauRankReport rep;
    Mat<Rat> rel_flat = flatten_periods(d, d.rel_rank);
    Mat<Rat> abs_flat(rel_flat.begin(), rel_flat.begin() + d.abs_rank);
    rep.z_rank = rel_flat.empty() ? 0 : mat_rank(rel_flat);
    rep.q_dim = abs_flat.empty() ? 0 : mat_rank(abs_flat);

    std::vector<ExactScalar> entries;
    for (int j = 0; j < d.rel_rank; ++j) {
        entries.push_back(d.period_matrix[0][static_cast<size_t>(j)]);
        entries.push_back(d.period_matrix[1][static_cast<size_t>(j)]);
    }
    // ratios against the first nonzero entry
    ExactScalar ref(0);
    for (const auto& e : entries)
        if (!e.is_zero()) { ref = e; break; }
    std::vector<ExactScalar> ratios;
    if (!ref.is_zero())
        for (const auto& e : entries) ratios.push_back(e / ref);
    rep.holonomy_field_degree = generated_field_degree(ratios);

    if (rep.z_rank == 2 && rep.q_dim == 2) {
        // the Z-module generated by the relative periods is a planar lattice
        std::vector<std::vector<Int>> zcols;
        Int den;
        clear_denominators(rel_flat, zcols, den);  // rows scaled by den
        ZMat m = z_transpose(zcols);               // 2d x relrank
        auto basis = column_lattice_basis(m);
        if (basis.size() != 2) raise("InconsistentInput", "torus lattice rank mismatch");
        int deg = d.field->degree();
        auto tovec = [&](const ZVec& v) {
            std::vector<Rat> q;
            q.reserve(v.size());
            for (const auto& z : v) q.emplace_back(Rat(z) / Rat(den));
            return Vec2{unflatten(d.field, q, 0), unflatten(d.field, q, deg)};
        };
        Vec2 b1 = tovec(basis[0]), b2 = tovec(basis[1]);
        ExactScalar cr = cross(b1, b2);
        if (cr.sign() == 0) raise("InconsistentInput", "degenerate torus lattice");
        if (cr.sign() < 0) std::swap(b1, b2);
        rep.torus_lattice = TorusLattice{b1, b2, cross(b1, b2)};
    }
    return rep;
}

namespace {

// c1 * b1 + c2 * b2 = target over the field, solved exactly in flattened
// rational coordinates; nullopt when target is outside the Q-span.
std::optional<std::pair<Rat, Rat>> solve_in_lattice_q(const FieldPtr& f, const Vec2& b1,
                                                      const Vec2& b2, const Vec2& target) {
    int d = f->degree();
    auto c1 = flatten_pair(to_field(b1.x, f), to_field(b1.y, f), d);
    auto c2 = flatten_pair(to_field(b2.x, f), to_field(b2.y, f), d);
    auto t = flatten_pair(to_field(target.x, f), to_field(target.y, f), d);
    Mat<Rat> a = mat_filled(2 * d, 2, Rat(0));
    for (int i = 0; i < 2 * d; ++i) {
        a[static_cast<size_t>(i)][0] = c1[static_cast<size_t>(i)];
        a[static_cast<size_t>(i)][1] = c2[static_cast<size_t>(i)];
    }
    auto sol = solve(a, t);
    if (!sol) return std::nullopt;
    // solve() does not verify consistency for overdetermined systems; check
    auto back = mat_vec(a, *sol);
    for (int i = 0; i < 2 * d; ++i)
        if (back[static_cast<size_t>(i)] != t[static_cast<size_t>(i)]) return std::nullopt;
    return std::make_pair((*sol)[0], (*sol)[1]);
}

}  // namespace

std::optional<TorusCover> detect_torus_cover(const FlatSurface& s) {
    return detect_torus_cover(s, homology_bases(s));
}

std::optional<TorusCover> detect_torus_cover(const FlatSurface& s, const PeriodData& d) {
    TauRankReport rep = tau_rank(s, d);
    if (!rep.torus_lattice) return std::nullopt;
    TorusCover cover;
    cover.lattice = *rep.torus_lattice;

    ExactScalar ratio = s.area() / cover.lattice.covolume;
    if (!ratio.is_integer() || ratio.sign() <= 0)
        raise("InconsistentInput", "area is not an integer multiple of the lattice covolume");
    cover.degree = ratio.rational_value().get_num();

    // per-polygon shifts over a spanning tree of the gluing graph
    int np = s.polygon_count();
    ExactScalar z(0);
    cover.poly_shifts.assign(static_cast<size_t>(np), Vec2{z, z});
    std::vector<bool> seen(static_cast<size_t>(np), false);
    std::vector<int> queue{0};
    seen[0] = true;
    auto translation = [&](const EdgeRef& e, const EdgeRef& f) {
        // identification x -> x + t maps edge e onto edge f reversed
        return (s.vertex(f) + s.edge_vector(f)) - s.vertex(e);
    };
    std::vector<GluingPair> chords;
    while (!queue.empty()) {
        int p = queue.back();
        queue.pop_back();
        for (const auto& pair : s.gluings()) {
            for (int dir = 0; dir < 2; ++dir) {
                EdgeRef e = pair[static_cast<size_t>(dir)], f = pair[static_cast<size_t>(1 - dir)];
                if (e.poly != p) continue;
                if (seen[static_cast<size_t>(f.poly)]) continue;
                Vec2 t = translation(e, f);
                cover.poly_shifts[static_cast<size_t>(f.poly)] =
                    cover.poly_shifts[static_cast<size_t>(p)] - t;
                seen[static_cast<size_t>(f.poly)] = true;
                queue.push_back(f.poly);
            }
        }
    }
    // residual translations of non-tree gluings must lie in the lattice
    for (const auto& pair : s.gluings()) {
        Vec2 t = translation(pair[0], pair[1]);
        Vec2 res = cover.poly_shifts[static_cast<size_t>(pair[0].poly)] - t -
                   cover.poly_shifts[static_cast<size_t>(pair[1].poly)];
        auto sol = solve_in_lattice_q(d.field, cover.lattice.b1, cover.lattice.b2, res);
        if (!sol || sol->first.get_den() != 1 || sol->second.get_den() != 1)
            raise("InconsistentInput", "gluing translation escapes the period lattice");
    }

    // vertex class images, normalized so the first zero (or first class) is 0
    const SurfaceComplex& c = d.complex;
    int base_class = d.sigma_classes.empty() ? 0 : d.sigma_classes[0];
    Vec2 base{z, z};
    bool base_set = false;
    std::vector<Vec2> rep_pos(static_cast<size_t>(c.vertex_count), Vec2{z, z});
    std::vector<bool> have(static_cast<size_t>(c.vertex_count), false);
    for (int de = 0; de < c.dedges; ++de) {
        int cls = c.vertex_class[static_cast<size_t>(de)];
        if (have[static_cast<size_t>(cls)]) continue;
        EdgeRef e = c.ref(de);
        rep_pos[static_cast<size_t>(cls)] = s.vertex(e) + cover.poly_shifts[static_cast<size_t>(e.poly)];
        have[static_cast<size_t>(cls)] = true;
        if (cls == base_class && !base_set) {
            base = rep_pos[static_cast<size_t>(cls)];
            base_set = true;
        }
    }
    for (int v = 0; v < c.vertex_count; ++v) {
        Vec2 p = rep_pos[static_cast<size_t>(v)] - base;
        auto sol = solve_in_lattice_q(d.field, cover.lattice.b1, cover.lattice.b2, p);
        if (!sol) {
            cover.vertex_images.push_back(std::nullopt);
            continue;
        }
        Rat f1 = sol->first - Rat(floor_rat(sol->first));
        Rat f2 = sol->second - Rat(floor_rat(sol->second));
        cover.vertex_images.push_back(std::make_pair(f1, f2));
    }
    return cover;
}

LeftInverse left_inverse_r(const FlatSurface& s) { return left_inverse_r(s, homology_bases(s)); }

LeftInverse left_inverse_r(const FlatSurface& s, const PeriodData& d) {
    Mat<Rat> rel_flat = flatten_periods(d, d.rel_rank);  // rows = period columns
    Mat<Rat> abs_rows(rel_flat.begin(), rel_flat.begin() + d.abs_rank);
    int qa = abs_rows.empty() ? 0 : mat_rank(abs_rows);
    int qr = rel_flat.empty() ? 0 : mat_rank(rel_flat);
    if (qa != d.abs_rank || qr != qa)
        raise("DegenerateTau", "tau restricted to absolute homology is not bijective onto the relative image (q_dim " +
                                   std::to_string(qa) + ", relative dim " + std::to_string(qr) + ")");

    // solve tau(rel_j) = sum_i r[i][j] tau(abs_i)
    Mat<Rat> a = mat_transpose(abs_rows);  // 2d x abs_rank
    LeftInverse li;
    li.r = mat_filled(d.abs_rank, d.rel_rank, Rat(0));
    for (int j = 0; j < d.rel_rank; ++j) {
        auto sol = solve(a, rel_flat[static_cast<size_t>(j)]);
        if (!sol) raise("DegenerateTau", "relative period escapes the absolute image");
        auto back = mat_vec(a, *sol);
        for (size_t i = 0; i < back.size(); ++i)
            if (back[i] != rel_flat[static_cast<size_t>(j)][i])
                raise("DegenerateTau", "relative period escapes the absolute image");
        for (int i = 0; i < d.abs_rank; ++i) li.r[static_cast<size_t>(i)][static_cast<size_t>(j)] = (*sol)[static_cast<size_t>(i)];
    }
    li.kernel = kernel_basis(li.r);
    return li;
}

}  // namespace flatlab
