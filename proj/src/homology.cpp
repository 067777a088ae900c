#include "flatlab/homology.hpp"

#include "flatlab/error.hpp"

namespace flatlab {

QuotientLattice::QuotientLattice(std::vector<ZVec> kernel_basis,
                                 const std::vector<ZVec>& relations) {
    kbasis_ = std::move(kernel_basis);
    int k = static_cast<int>(kbasis_.size());
    int e = k ? static_cast<int>(kbasis_[0].size()) : 0;
    kmat_ = z_zeros(e, k);
    for (int j = 0; j < k; ++j)
        for (int i = 0; i < e; ++i) kmat_[static_cast<size_t>(i)][static_cast<size_t>(j)] = kbasis_[static_cast<size_t>(j)][static_cast<size_t>(i)];

    // relations in K coordinates
    ZMat x = z_zeros(k, static_cast<int>(relations.size()));
    for (size_t j = 0; j < relations.size(); ++j) {
        auto y = z_solve(kmat_, relations[j]);
        if (!y) raise("InconsistentInput", "relation does not lie in the kernel lattice");
        for (int i = 0; i < k; ++i) x[static_cast<size_t>(i)][j] = (*y)[static_cast<size_t>(i)];
    }
    auto snf = smith_normal_form(x);
    relation_rank_ = snf.rank;
    for (const Int& d : snf.divisors)
        if (d != 1) raise("InconsistentInput", "torsion in a surface homology quotient");
    u_ = snf.U;
    rank_ = k - relation_rank_;
    post_ = z_identity(rank_);
    basis_.clear();
    for (int j = relation_rank_; j < k; ++j) {
        ZVec v(static_cast<size_t>(e), Int(0));
        for (int i = 0; i < k; ++i) {
            const Int& c = snf.Uinv[static_cast<size_t>(i)][static_cast<size_t>(j)];
            if (c == 0) continue;
            for (int t = 0; t < e; ++t) v[static_cast<size_t>(t)] += c * kbasis_[static_cast<size_t>(i)][static_cast<size_t>(t)];
        }
        basis_.push_back(std::move(v));
    }
}

ZVec QuotientLattice::coords(const ZVec& cycle) const {
    auto y = z_solve(kmat_, cycle);
    if (!y) raise("InconsistentInput", "cycle does not lie in the kernel lattice");
    ZVec w = z_mul_vec(u_, *y);
    ZVec raw(w.begin() + relation_rank_, w.end());
    return z_mul_vec(post_, raw);
}

void QuotientLattice::change_basis(const ZMat& T, const ZMat& Tinv) {
    // new_j = sum_i T[i][j] old_i; coordinates transform by Tinv
    std::vector<ZVec> nb;
    int e = basis_.empty() ? 0 : static_cast<int>(basis_[0].size());
    for (int j = 0; j < rank_; ++j) {
        ZVec v(static_cast<size_t>(e), Int(0));
        for (int i = 0; i < rank_; ++i) {
            const Int& c = T[static_cast<size_t>(i)][static_cast<size_t>(j)];
            if (c == 0) continue;
            for (int t = 0; t < e; ++t) v[static_cast<size_t>(t)] += c * basis_[static_cast<size_t>(i)][static_cast<size_t>(t)];
        }
        nb.push_back(std::move(v));
    }
    basis_ = std::move(nb);
    post_ = z_mul(Tinv, post_);
}

Vec2 holonomy(const FlatSurface& s, const SurfaceComplex& c, const ZVec& cycle) {
    ExactScalar zx(0), zy(0);
    Vec2 acc{zx, zy};
    for (int e = 0; e < c.edge_count; ++e) {
        const Int& coef = cycle[static_cast<size_t>(e)];
        if (coef == 0) continue;
        Vec2 v = s.edge_vector(c.ref(c.edge_rep[static_cast<size_t>(e)]));
        acc = acc + v * ExactScalar(Rat(coef));
    }
    return acc;
}

PeriodData homology_bases(const FlatSurface& s) {
    PeriodData d;
    d.field = s.field();
    d.complex = build_complex(s);
    const SurfaceComplex& c = d.complex;

    for (int v = 0; v < c.vertex_count; ++v)
        if (c.vertex_turns[static_cast<size_t>(v)] >= 2) d.sigma_classes.push_back(v);

    // boundary operators on the edge-class chain group
    ZMat d1 = z_zeros(c.vertex_count, c.edge_count);
    for (int e = 0; e < c.edge_count; ++e) {
        int rep = c.edge_rep[static_cast<size_t>(e)];
        int tail = c.vertex_class[static_cast<size_t>(rep)];
        int head = c.vertex_class[static_cast<size_t>(c.next[static_cast<size_t>(rep)])];
        d1[static_cast<size_t>(head)][static_cast<size_t>(e)] += 1;
        d1[static_cast<size_t>(tail)][static_cast<size_t>(e)] -= 1;
    }
    std::vector<ZVec> d2cols;
    for (int p = 0; p < s.polygon_count(); ++p) {
        ZVec col(static_cast<size_t>(c.edge_count), Int(0));
        for (int e = 0; e < s.edge_count(p); ++e) {
            int id = c.edge_offset[static_cast<size_t>(p)] + e;
            col[static_cast<size_t>(c.edge_class[static_cast<size_t>(id)])] += c.edge_sign[static_cast<size_t>(id)];
        }
        d2cols.push_back(std::move(col));
    }

    // relative boundary: delete the rows of the zero classes
    std::vector<bool> in_sigma(static_cast<size_t>(c.vertex_count), false);
    for (int v : d.sigma_classes) in_sigma[static_cast<size_t>(v)] = true;
    ZMat d1rel;
    for (int v = 0; v < c.vertex_count; ++v)
        if (!in_sigma[static_cast<size_t>(v)]) d1rel.push_back(d1[static_cast<size_t>(v)]);

    std::vector<ZVec> krel;
    if (d1rel.empty()) {
        // every vertex class is a zero: all chains are relative cycles
        for (int e = 0; e < c.edge_count; ++e) {
            ZVec v(static_cast<size_t>(c.edge_count), Int(0));
            v[static_cast<size_t>(e)] = 1;
            krel.push_back(std::move(v));
        }
    } else {
        krel = z_kernel(d1rel);
    }

    d.abs = QuotientLattice(z_kernel(d1), d2cols);
    d.rel = QuotientLattice(std::move(krel), d2cols);
    d.abs_rank = d.abs.rank();
    d.rel_rank = d.rel.rank();

    // realign the relative basis so that p* maps the absolute basis onto the
    // first 2g relative basis vectors
    ZMat m = z_zeros(d.rel_rank, d.abs_rank);
    for (int j = 0; j < d.abs_rank; ++j) {
        ZVec col = d.rel.coords(d.abs.basis()[static_cast<size_t>(j)]);
        for (int i = 0; i < d.rel_rank; ++i) m[static_cast<size_t>(i)][static_cast<size_t>(j)] = col[static_cast<size_t>(i)];
    }
    auto snf = smith_normal_form(m);
    if (snf.rank != d.abs_rank) raise("InconsistentInput", "p* is not injective");
    for (const Int& dv : snf.divisors)
        if (dv != 1) raise("InconsistentInput", "p* image is not primitive");
    // abs' = abs * V ; rel basis -> Uinv columns
    std::vector<ZVec> abs_new;
    for (int j = 0; j < d.abs_rank; ++j) {
        ZVec v(static_cast<size_t>(c.edge_count), Int(0));
        for (int i = 0; i < d.abs_rank; ++i) {
            const Int& coef = snf.V[static_cast<size_t>(i)][static_cast<size_t>(j)];
            if (coef == 0) continue;
            const ZVec& bi = d.abs.basis()[static_cast<size_t>(i)];
            for (int t = 0; t < c.edge_count; ++t) v[static_cast<size_t>(t)] += coef * bi[static_cast<size_t>(t)];
        }
        abs_new.push_back(std::move(v));
    }
    d.rel.change_basis(snf.Uinv, snf.U);
    d.abs_cycles = std::move(abs_new);
    d.rel_cycles = d.rel.basis();

    d.inclusion = z_zeros(d.rel_rank, d.abs_rank);
    for (int j = 0; j < d.abs_rank; ++j) {
        ZVec col = d.rel.coords(d.abs_cycles[static_cast<size_t>(j)]);
        for (int i = 0; i < d.rel_rank; ++i) d.inclusion[static_cast<size_t>(i)][static_cast<size_t>(j)] = col[static_cast<size_t>(i)];
        if (col[static_cast<size_t>(j)] != 1) raise("InconsistentInput", "inclusion realignment failed");
    }

    d.period_matrix = period_map(s, d);
    return d;
}

Mat<ExactScalar> period_map(const FlatSurface& s, const PeriodData& d) {
    ExactScalar z(0);
    Mat<ExactScalar> pm = mat_filled(2, d.rel_rank, z);
    for (int j = 0; j < d.rel_rank; ++j) {
        Vec2 h = holonomy(s, d.complex, d.rel_cycles[static_cast<size_t>(j)]);
        pm[0][static_cast<size_t>(j)] = h.x;
        pm[1][static_cast<size_t>(j)] = h.y;
    }
    return pm;
}

}  // namespace flatlab
