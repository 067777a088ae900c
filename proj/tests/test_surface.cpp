#include <cstdint>

#include "doctest.h"
#include "flatlab/error.hpp"
#include "flatlab/stratum.hpp"
#include "flatlab/surface.hpp"

using namespace flatlab;

namespace {

Mat<ExactScalar> shear(long s) {
    return mat2(ExactScalar(1), ExactScalar(s), ExactScalar(0), ExactScalar(1));
}

struct Lcg {
    uint64_t s;
    explicit Lcg(uint64_t seed) : s(seed) {}
    uint64_t next() {
        s = s * 6364136223846793005ULL + 1442695040888963407ULL;
        return s >> 33;
    }
    long small(long lo, long hi) { return lo + static_cast<long>(next() % static_cast<uint64_t>(hi - lo + 1)); }
};

// random SL2(Z) element as a short word in the elementary shears
Mat<ExactScalar> random_sl2z(Lcg& rng, int len = 4) {
    Mat<ExactScalar> g = mat_identity(2, ExactScalar(0));
    for (int i = 0; i < len; ++i) {
        long k = rng.small(-2, 2);
        Mat<ExactScalar> e = (rng.next() & 1) ? mat2(ExactScalar(1), ExactScalar(k), ExactScalar(0), ExactScalar(1))
                                              : mat2(ExactScalar(1), ExactScalar(0), ExactScalar(k), ExactScalar(1));
        g = mat_mul(g, e);
    }
    return g;
}

}  // namespace

TEST_CASE("square torus basics") {
    FlatSurface t = square_torus();
    CHECK(t.area() == ExactScalar(1));
    StratumSignature sig = classify_stratum(t);
    CHECK(sig.genus == 1);
    CHECK(sig.zero_orders.empty());
    CHECK(sig.marked_points == 1);
}

TEST_CASE("mcmullen surface S(a)") {
    FlatSurface s = build_mcmullen_surface(Rat(2));
    StratumSignature sig = classify_stratum(s);
    CHECK(sig.genus == 2);
    CHECK(sig.zero_orders == std::vector<int>{1, 1});
    // area = 1 + (1+a)^2 + a^2 = 12 + 6 sqrt(3) for b = 2
    ExactScalar expected = ExactScalar(12) + ExactScalar(6) * ExactScalar::sqrt_of(3);
    CHECK(s.area() == expected);
    CHECK_THROWS_WITH_AS(build_mcmullen_surface(Rat(1)), doctest::Contains("RationalParameter"),
                         Error);
}

TEST_CASE("octagon stratum") {
    FlatSurface o = regular_octagon();
    StratumSignature sig = classify_stratum(o);
    CHECK(sig.genus == 2);
    CHECK(sig.zero_orders == std::vector<int>{2});
    CHECK(sig.cone_turns == std::vector<int>{3});
}

TEST_CASE("l surface stratum") {
    FlatSurface l = l_surface();
    CHECK(l.area() == ExactScalar(3));
    StratumSignature sig = classify_stratum(l);
    CHECK(sig.genus == 2);
    CHECK(sig.zero_orders == std::vector<int>{2});
}

TEST_CASE("matrix action: area and stratum") {
    FlatSurface s = build_mcmullen_surface(Rat(2));
    ExactScalar area = s.area();

    FlatSurface sheared = apply_matrix(shear(1), s);
    CHECK(sheared.area() == area);
    CHECK(classify_stratum(sheared) == classify_stratum(s));

    Mat<ExactScalar> two = mat2(ExactScalar(2), ExactScalar(0), ExactScalar(0), ExactScalar(2));
    CHECK(apply_matrix(two, s).area() == area * ExactScalar(4));

    Mat<ExactScalar> flip = mat2(ExactScalar(1), ExactScalar(0), ExactScalar(0), ExactScalar(-1));
    FlatSurface flipped = apply_matrix(flip, s);
    CHECK(flipped.area() == area);
    CHECK(classify_stratum(flipped) == classify_stratum(s));

    Mat<ExactScalar> sing = mat2(ExactScalar(1), ExactScalar(2), ExactScalar(2), ExactScalar(4));
    CHECK_THROWS_WITH_AS(apply_matrix(sing, s), doctest::Contains("SingularMatrix"), Error);
}

TEST_CASE("action is associative on random exact matrices") {
    Lcg rng(5150);
    FlatSurface s = square_torus();
    for (int i = 0; i < 10; ++i) {
        auto g = random_sl2z(rng);
        auto h = random_sl2z(rng);
        FlatSurface a = apply_matrix(mat_mul(g, h), s);
        FlatSurface b = apply_matrix(g, apply_matrix(h, s));
        // same polygons vertex-by-vertex (the canonical-form oracle comes later)
        REQUIRE(a.polygon_count() == b.polygon_count());
        for (int p = 0; p < a.polygon_count(); ++p)
            for (int e = 0; e < a.edge_count(p); ++e)
                CHECK(a.vertex({p, e}) == b.vertex({p, e}));
    }
}

TEST_CASE("diagonal scaling of the torus") {
    // a(t) with t = 2 log 2 maps the square torus to the (4, 1/4)-rectangle
    FlatSurface t = square_torus();
    Mat<ExactScalar> a = mat2(ExactScalar(2), ExactScalar(0), ExactScalar(0), ExactScalar(Rat(1, 2)));
    FlatSurface r = apply_matrix(a, t);
    CHECK(r.area() == ExactScalar(1));
    CHECK(r.vertex({0, 1}).x == ExactScalar(2));
    CHECK(r.vertex({0, 2}).y == ExactScalar(Rat(1, 2)));
}

TEST_CASE("builder rejects invalid input") {
    ExactScalar z(0), o(1), t(2);
    // two squares with a length-mismatched gluing
    Polygon p0{{z, z}, {o, z}, {o, o}, {z, o}};
    Polygon p1{{o, z}, {o + t, z}, {o + t, t}, {o, t}};  // 2x2 square
    std::vector<GluingPair> gl{
        {EdgeRef{0, 0}, EdgeRef{0, 2}}, {EdgeRef{0, 1}, EdgeRef{1, 3}},
        {EdgeRef{0, 3}, EdgeRef{1, 1}}, {EdgeRef{1, 0}, EdgeRef{1, 2}},
    };
    CHECK_THROWS_WITH_AS(FlatSurface::build({p0, p1}, gl), doctest::Contains("LengthMismatch"),
                         Error);

    // non-parallel gluing
    Polygon tri{{z, z}, {t, z}, {z, t}};
    std::vector<GluingPair> glt{
        {EdgeRef{0, 0}, EdgeRef{0, 1}}, {EdgeRef{0, 2}, EdgeRef{0, 2}},
    };
    CHECK_THROWS_AS(FlatSurface::build({tri}, glt), Error);

    // self-intersecting polygon
    Polygon bow{{z, z}, {t, t}, {t, z}, {z, t}};
    CHECK_THROWS_WITH_AS(FlatSurface::build({bow}, {{EdgeRef{0, 0}, EdgeRef{0, 2}},
                                                    {EdgeRef{0, 1}, EdgeRef{0, 3}}}),
                         doctest::Contains("NonSimplePolygon"), Error);

    // disconnected pair of tori
    Polygon far{{t + t, z}, {t + t + o, z}, {t + t + o, o}, {t + t, o}};
    std::vector<GluingPair> gld{
        {EdgeRef{0, 0}, EdgeRef{0, 2}}, {EdgeRef{0, 1}, EdgeRef{0, 3}},
        {EdgeRef{1, 0}, EdgeRef{1, 2}}, {EdgeRef{1, 1}, EdgeRef{1, 3}},
    };
    CHECK_THROWS_WITH_AS(FlatSurface::build({p0, far}, gld), doctest::Contains("Disconnected"),
                         Error);
}
