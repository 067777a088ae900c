#include "flatlab/lattice2.hpp"

#include "flatlab/error.hpp"

namespace flatlab {

ReducedBasis lagrange_reduce(Vec2 b1, Vec2 b2) {
    if (cross(b1, b2).is_zero()) raise("InconsistentInput", "degenerate lattice basis");
    ExactScalar n1 = dot(b1, b1), n2 = dot(b2, b2);
    for (int guard = 0; guard < 100000; ++guard) {
        if (ExactScalar::compare(n2, n1) < 0) {
            std::swap(b1, b2);
            std::swap(n1, n2);
        }
        ExactScalar mu_exact = dot(b1, b2) / n1;
        Int mu = (mu_exact + ExactScalar(Rat(1, 2))).floor();  // nearest integer
        if (mu == 0) {
            return {b1, b2, n1, n2};
        }
        ExactScalar m{Rat(mu)};
        b2 = b2 - b1 * m;
        n2 = dot(b2, b2);
    }
    raise("InconsistentInput", "lattice reduction did not terminate");
}

ExactScalar shortest_norm_sq(const Vec2& b1, const Vec2& b2) {
    return lagrange_reduce(b1, b2).n1;
}

}  // namespace flatlab
