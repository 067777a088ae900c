#include <cstdint>

#include "doctest.h"
#include "flatlab/error.hpp"
#include "flatlab/exact_scalar.hpp"
#include "flatlab/qpoly.hpp"

using namespace flatlab;

namespace {

// small deterministic generator for property samples
struct Lcg {
    uint64_t s;
    explicit Lcg(uint64_t seed) : s(seed) {}
    uint64_t next() {
        s = s * 6364136223846793005ULL + 1442695040888963407ULL;
        return s >> 33;
    }
    long small(long lo, long hi) { return lo + static_cast<long>(next() % static_cast<uint64_t>(hi - lo + 1)); }
};

ExactScalar random_elem(const FieldPtr& f, Lcg& rng) {
    std::vector<Rat> c;
    for (int i = 0; i < f->degree(); ++i)
        c.emplace_back(rng.small(-6, 6), rng.small(1, 4));
    return ExactScalar(f, std::move(c));
}

}  // namespace

TEST_CASE("mcmullen parameter construction") {
    // b = 1: a = 0 + sqrt(1) = 1 is rational
    CHECK_THROWS_WITH_AS(make_mcmullen_parameter(Rat(1)), doctest::Contains("RationalParameter"),
                         Error);
    ExactScalar a1 = make_mcmullen_parameter(Rat(1), /*allow_rational=*/true);
    CHECK(a1.is_rational());
    CHECK(a1.rational_value() == 1);

    // b = 2: a = 1 + sqrt(3), degree 2
    ExactScalar a2 = make_mcmullen_parameter(Rat(2));
    CHECK(a2.degree() == 2);
    CHECK(a2.field()->min_poly() == std::vector<Int>{-3, 0, 1});
    CHECK(a2.coords()[0] == 1);
    CHECK(a2.coords()[1] == 1);
    CHECK(a2.to_double() == doctest::Approx(1 + std::sqrt(3.0)).epsilon(1e-12));

    // b = 1/2: a = (-1 + sqrt(3)) / 2, same field as b = 2
    ExactScalar ah = make_mcmullen_parameter(Rat(1, 2));
    CHECK(ah.field()->same_field(*a2.field()));
    CHECK(ah.coords()[0] == Rat(-1, 2));
    CHECK(ah.coords()[1] == Rat(1, 2));
}

TEST_CASE("field axioms on random samples") {
    Lcg rng(20240901);
    auto f3 = NumberField::quadratic(3);
    auto fc = NumberField::create({-2, 0, 0, 1}, 0);  // t^3 - 2, the real root
    for (const FieldPtr& f : {f3, fc}) {
        for (int trial = 0; trial < 20; ++trial) {
            ExactScalar x = random_elem(f, rng);
            ExactScalar y = random_elem(f, rng);
            ExactScalar z = random_elem(f, rng);
            CHECK((x + y) * z == x * z + y * z);
            CHECK(x * y == y * x);
            if (!x.is_zero()) CHECK(x * x.inverse() == ExactScalar(1));
        }
    }
}

TEST_CASE("quadratic norm is rational") {
    Lcg rng(77);
    auto f = NumberField::quadratic(5);
    for (int trial = 0; trial < 20; ++trial) {
        ExactScalar x = random_elem(f, rng);
        auto conj = galois_conjugates(x);
        REQUIRE(conj.size() == 2);
        CHECK(conj[0].real);
        CHECK(conj[1].real);
        ExactScalar norm = x * to_field(conj[1].value, f);
        CHECK(norm.is_rational());
        // and it matches the resultant-style product of coordinates
        Rat expect = x.coords()[0] * x.coords()[0] - Rat(5) * x.coords()[1] * x.coords()[1];
        CHECK(norm.rational_value() == expect);
    }
}

TEST_CASE("comparisons and sign stability") {
    ExactScalar r3 = ExactScalar::sqrt_of(3);
    CHECK(ExactScalar::compare(r3, ExactScalar(Rat(17, 10))) > 0);
    CHECK(ExactScalar::compare(r3, r3) == 0);
    ExactScalar half = (ExactScalar(-1) + r3) / ExactScalar(2);
    CHECK(half.sign() > 0);
    // refining the underlying interval never flips a decided comparison
    int before = ExactScalar::compare(r3, ExactScalar(Rat(7, 4)));
    for (int i = 0; i < 12; ++i) r3.field()->refine_root_interval();
    CHECK(ExactScalar::compare(r3, ExactScalar(Rat(7, 4))) == before);
    CHECK(before < 0);
}

TEST_CASE("cross-field comparison via compositum") {
    ExactScalar r2 = ExactScalar::sqrt_of(2);
    ExactScalar r3 = ExactScalar::sqrt_of(3);
    CHECK(ExactScalar::compare(r2, r3) < 0);
    ExactScalar s = r2 + r3;
    CHECK(s.degree() == 4);
    CHECK(s.to_double() == doctest::Approx(std::sqrt(2.0) + std::sqrt(3.0)).epsilon(1e-12));
    ExactScalar p = r2 * r3;  // sqrt(6)
    CHECK(p * p == ExactScalar(6));
    // sqrt(12) collapses into Q(sqrt 3)
    ExactScalar r12 = ExactScalar::sqrt_of(12);
    CHECK(r12.field()->same_field(*r3.field()));
    CHECK(r12 == r3 * ExactScalar(2));
}

TEST_CASE("galois conjugates") {
    ExactScalar x = ExactScalar(1) + ExactScalar::sqrt_of(3);
    auto conj = galois_conjugates(x);
    REQUIRE(conj.size() == 2);
    CHECK(conj[0].value == x);
    CHECK(conj[1].value.to_double() == doctest::Approx(1 - std::sqrt(3.0)).epsilon(1e-12));

    auto conj_rat = galois_conjugates(ExactScalar(3));
    REQUIRE(conj_rat.size() == 1);
    CHECK(conj_rat[0].value == ExactScalar(3));

    auto fc = NumberField::create({-2, 0, 0, 1}, 0);
    auto conj_c = galois_conjugates(ExactScalar::generator(fc));
    REQUIRE(conj_c.size() == 3);
    CHECK(conj_c[0].real);
    CHECK_FALSE(conj_c[1].real);
    CHECK_FALSE(conj_c[2].real);
    CHECK(conj_c[1].approx.real() == doctest::Approx(-std::cbrt(2.0) / 2).epsilon(1e-6));
}

TEST_CASE("floor and integrality") {
    ExactScalar r3 = ExactScalar::sqrt_of(3);
    CHECK(r3.floor() == 1);
    CHECK((-r3).floor() == -2);
    CHECK((r3 * r3).floor() == 3);
    CHECK(ExactScalar(Rat(7, 2)).floor() == 3);
    CHECK(ExactScalar(Rat(-7, 2)).floor() == -4);
    CHECK(ExactScalar(5).is_integer());
    CHECK_FALSE(r3.is_integer());
}

TEST_CASE("incompatible fields error") {
    auto fc = NumberField::create({-2, 0, 0, 1}, 0);  // Q(cbrt 2)
    ExactScalar c = ExactScalar::generator(fc);
    ExactScalar r2 = ExactScalar::sqrt_of(2);
    CHECK_THROWS_WITH_AS((void)ExactScalar::compare(c, r2),
                         doctest::Contains("IncompatibleFields"), Error);
}

TEST_CASE("root isolation basics") {
    // (t^2 - 2)(t - 1) has roots -sqrt2, 1, sqrt2
    QPoly f(std::vector<Rat>{Rat(2), Rat(-2), Rat(-1), Rat(1)});
    auto roots = isolate_real_roots(f);
    REQUIRE(roots.size() == 3);
    CHECK(roots[1].exact);
    CHECK(roots[1].lo == 1);
    CHECK(roots[0].hi < roots[1].lo);
    CHECK(roots[1].hi <= roots[2].lo);
}
