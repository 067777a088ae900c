#include <cstdint>

#include "doctest.h"
#include "flatlab/qmatrix.hpp"
#include "flatlab/zmatrix.hpp"

using namespace flatlab;

TEST_CASE("smith normal form") {
    ZMat a{{2, 4, 4}, {-6, 6, 12}, {10, 4, 16}};
    auto snf = smith_normal_form(a);
    CHECK(snf.rank == 3);
    CHECK(z_mul(z_mul(snf.U, a), snf.V) == snf.S);
    CHECK(z_mul(snf.U, snf.Uinv) == z_identity(3));
    CHECK(snf.divisors == std::vector<Int>{2, 2, 156});  // divisibility chain
    for (size_t i = 0; i + 1 < snf.divisors.size(); ++i)
        CHECK(snf.divisors[i + 1] % snf.divisors[i] == 0);
}

TEST_CASE("integer kernel and solve") {
    ZMat a{{1, 2, 3}, {2, 4, 6}};
    auto ker = z_kernel(a);
    CHECK(ker.size() == 2);
    for (const auto& v : ker) {
        auto y = z_mul_vec(a, v);
        for (const auto& e : y) CHECK(e == 0);
    }
    auto sol = z_solve(a, {3, 6});
    REQUIRE(sol.has_value());
    CHECK(z_mul_vec(a, *sol) == ZVec{3, 6});
    CHECK_FALSE(z_solve(a, {1, 1}).has_value());
}

TEST_CASE("saturation of a column span") {
    // columns (2,0,0) and (0,6,3): saturation contains (0,2,1)
    ZMat a{{2, 0}, {0, 6}, {0, 3}};
    auto sat = saturate_column_span(a);
    REQUIRE(sat.size() == 2);
    // (1,0,0) and (0,2,1) generate the saturation
    auto in_sat = [&](const ZVec& v) {
        ZMat m = z_zeros(3, 2);
        for (int i = 0; i < 3; ++i) {
            m[i][0] = sat[0][i];
            m[i][1] = sat[1][i];
        }
        return z_solve(m, v).has_value();
    };
    CHECK(in_sat({1, 0, 0}));
    CHECK(in_sat({0, 2, 1}));
    CHECK_FALSE(in_sat({0, 1, 0}));
}

TEST_CASE("rational rref, kernel, inverse, det") {
    Mat<Rat> a{{Rat(2), Rat(1)}, {Rat(1), Rat(1)}};
    CHECK(mat_det(a) == Rat(1));
    auto inv = mat_inverse(a);
    CHECK(mat_mul(a, inv) == mat_identity(2, Rat(0)));

    Mat<Rat> b{{Rat(1), Rat(2), Rat(3)}, {Rat(2), Rat(4), Rat(6)}};
    CHECK(mat_rank(b) == 1);
    auto ker = kernel_basis(b);
    CHECK(ker.size() == 2);
    for (const auto& v : ker) {
        auto y = mat_vec(b, v);
        for (const auto& e : y) CHECK(e == 0);
    }
    auto sol = solve(b, std::vector<Rat>{Rat(3), Rat(6)});
    REQUIRE(sol.has_value());
    CHECK(mat_vec(b, *sol) == std::vector<Rat>{Rat(3), Rat(6)});
}

TEST_CASE("linear algebra over a number field") {
    auto f = NumberField::quadratic(5);
    ExactScalar phi = (ExactScalar(1) + ExactScalar::generator(f)) / ExactScalar(2);
    ExactScalar one = ExactScalar(1), zero = ExactScalar(0);
    // kernel of [1, -phi] is spanned by (phi, 1)
    Mat<ExactScalar> a{{one, zero - phi}};
    auto ker = kernel_basis(a);
    REQUIRE(ker.size() == 1);
    CHECK(ker[0][0] == phi);
    CHECK(ker[0][1] == one);
    Mat<ExactScalar> m{{phi, one}, {one, one}};
    ExactScalar d = mat_det(m);
    CHECK(d == phi - one);
    auto inv = mat_inverse(m);
    auto prod = mat_mul(m, inv);
    CHECK(prod[0][0] == one);
    CHECK(prod[0][1].is_zero());
    CHECK(prod[1][1] == one);
}
