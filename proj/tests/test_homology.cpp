#include <cstdint>

#include "doctest.h"
#include "flatlab/error.hpp"
#include "flatlab/periods.hpp"

using namespace flatlab;

namespace {

struct Lcg {
    uint64_t s;
    explicit Lcg(uint64_t seed) : s(seed) {}
    uint64_t next() {
        s = s * 6364136223846793005ULL + 1442695040888963407ULL;
        return s >> 33;
    }
    long small(long lo, long hi) { return lo + static_cast<long>(next() % static_cast<uint64_t>(hi - lo + 1)); }
};

Mat<ExactScalar> random_sl2z(Lcg& rng, int len = 4) {
    Mat<ExactScalar> g = mat_identity(2, ExactScalar(0));
    for (int i = 0; i < len; ++i) {
        long k = rng.small(-2, 2);
        Mat<ExactScalar> e = (rng.next() & 1)
                                 ? mat2(ExactScalar(1), ExactScalar(k), ExactScalar(0), ExactScalar(1))
                                 : mat2(ExactScalar(1), ExactScalar(0), ExactScalar(k), ExactScalar(1));
        g = mat_mul(g, e);
    }
    return g;
}

}  // namespace

TEST_CASE("homology ranks") {
    PeriodData torus = homology_bases(square_torus());
    CHECK(torus.abs_rank == 2);
    CHECK(torus.rel_rank == 2);  // no zeros, so relative = absolute

    PeriodData sa = homology_bases(build_mcmullen_surface(Rat(2)));
    CHECK(sa.abs_rank == 4);
    CHECK(sa.rel_rank == 5);  // 2g + |Sigma| - 1 = 4 + 2 - 1

    PeriodData oct = homology_bases(regular_octagon());
    CHECK(oct.abs_rank == 4);
    CHECK(oct.rel_rank == 4);  // single zero
}

TEST_CASE("inclusion p* is the identity block") {
    for (const FlatSurface& s : {build_mcmullen_surface(Rat(2)), l_surface(), square_torus()}) {
        PeriodData d = homology_bases(s);
        REQUIRE(z_rows(d.inclusion) == d.rel_rank);
        REQUIRE(z_cols(d.inclusion) == d.abs_rank);
        for (int i = 0; i < d.rel_rank; ++i)
            for (int j = 0; j < d.abs_rank; ++j)
                CHECK(d.inclusion[i][j] == ((i == j) ? 1 : 0));
        // full column rank: no zero invariant factors
        auto snf = smith_normal_form(d.inclusion);
        CHECK(snf.rank == d.abs_rank);
        for (const auto& dv : snf.divisors) CHECK(dv == 1);
    }
}

TEST_CASE("torus period columns") {
    FlatSurface t = square_torus();
    PeriodData d = homology_bases(t);
    // columns span Z^2 with determinant +-1
    const auto& pm = d.period_matrix;
    REQUIRE(cols(pm) == 2);
    ExactScalar det = pm[0][0] * pm[1][1] - pm[0][1] * pm[1][0];
    CHECK((det == ExactScalar(1) || det == ExactScalar(-1)));
    for (int j = 0; j < 2; ++j) {
        CHECK(pm[0][j].is_integer());
        CHECK(pm[1][j].is_integer());
    }
}

TEST_CASE("period equivariance under exact SL2 matrices") {
    Lcg rng(424242);
    FlatSurface s = build_mcmullen_surface(Rat(2));
    PeriodData d = homology_bases(s);
    for (int trial = 0; trial < 100; ++trial) {
        Mat<ExactScalar> g = random_sl2z(rng);
        FlatSurface gs = apply_matrix(g, s);
        PeriodData dg = homology_bases(gs);
        REQUIRE(dg.rel_rank == d.rel_rank);
        // combinatorics is unchanged, so the bases agree and
        // period(g.s) = g * period(s) column by column
        Mat<ExactScalar> expect = mat_mul(g, d.period_matrix);
        for (int j = 0; j < d.rel_rank; ++j) {
            CHECK(dg.period_matrix[0][j] == expect[0][j]);
            CHECK(dg.period_matrix[1][j] == expect[1][j]);
        }
    }
}

TEST_CASE("tau ranks: S(a) has Z-rank and Q-dim 4") {
    for (const Rat& b : {Rat(2), Rat(3), Rat(5), Rat(1, 2)}) {
        FlatSurface s = build_mcmullen_surface(b);
        TauRankReport rep = tau_rank(s);
        CHECK(rep.z_rank == 4);
        CHECK(rep.q_dim == 4);
        CHECK(rep.holonomy_field_degree == 2);
        CHECK_FALSE(rep.torus_lattice.has_value());
    }
}

TEST_CASE("tau ranks: torus and L surface are torus covers") {
    TauRankReport t = tau_rank(square_torus());
    CHECK(t.z_rank == 2);
    CHECK(t.q_dim == 2);
    CHECK(t.holonomy_field_degree == 1);
    REQUIRE(t.torus_lattice.has_value());
    CHECK(t.torus_lattice->covolume == ExactScalar(1));

    TauRankReport l = tau_rank(l_surface());
    CHECK(l.z_rank == 2);
    CHECK(l.q_dim == 2);
    REQUIRE(l.torus_lattice.has_value());
    CHECK(l.torus_lattice->covolume == ExactScalar(1));
    // the lattice is Z^2: both basis vectors integral, covolume 1
    for (const Vec2& v : {l.torus_lattice->b1, l.torus_lattice->b2}) {
        CHECK(v.x.is_integer());
        CHECK(v.y.is_integer());
    }
}

TEST_CASE("torus cover detection") {
    auto lc = detect_torus_cover(l_surface());
    REQUIRE(lc.has_value());
    CHECK(lc->degree == 3);  // area 3 over covolume 1

    auto tc = detect_torus_cover(square_torus());
    REQUIRE(tc.has_value());
    CHECK(tc->degree == 1);

    CHECK_FALSE(detect_torus_cover(build_mcmullen_surface(Rat(2))).has_value());
}

TEST_CASE("left inverse r on S(a)") {
    FlatSurface s = build_mcmullen_surface(Rat(2));
    PeriodData d = homology_bases(s);
    LeftInverse li = left_inverse_r(s, d);
    REQUIRE(rows(li.r) == 4);
    REQUIRE(cols(li.r) == 5);
    // r * p_star = identity, exactly
    Mat<Rat> comp = mat_mul(li.r, q_from_z(d.inclusion));
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) CHECK(comp[i][j] == ((i == j) ? 1 : 0));
    REQUIRE(li.kernel.size() == 1);

    // torus: r is the identity on rank-2 spaces
    LeftInverse lt = left_inverse_r(square_torus());
    CHECK(rows(lt.r) == 2);
    CHECK(cols(lt.r) == 2);
    CHECK(lt.kernel.empty());
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) CHECK(lt.r[i][j] == ((i == j) ? 1 : 0));

    // torus covers of higher rel rank degenerate
    CHECK_THROWS_WITH_AS(left_inverse_r(l_surface()), doctest::Contains("DegenerateTau"), Error);
}

TEST_CASE("kernel line of r is equivariant") {
    Lcg rng(98765);
    FlatSurface s = build_mcmullen_surface(Rat(2));
    LeftInverse base = left_inverse_r(s);
    REQUIRE(base.kernel.size() == 1);
    for (int trial = 0; trial < 20; ++trial) {
        Mat<ExactScalar> g = random_sl2z(rng);
        LeftInverse li = left_inverse_r(apply_matrix(g, s));
        REQUIRE(li.kernel.size() == 1);
        // identical combinatorial bases: the induced map on homology is the
        // identity, so the kernel lines must agree exactly as lines
        const auto& u = base.kernel[0];
        const auto& v = li.kernel[0];
        // find scale factor from the first nonzero coordinate
        size_t nz = 0;
        while (nz < u.size() && u[nz] == 0) ++nz;
        REQUIRE(nz < u.size());
        REQUIRE(v[nz] != 0);
        Rat scale = u[nz] / v[nz];
        for (size_t i = 0; i < u.size(); ++i) CHECK(u[i] == scale * v[i]);
    }
}
