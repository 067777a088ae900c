#include "flatlab/size_classifier.hpp"

#include "flatlab/error.hpp"

namespace flatlab {

bool size_input_valid(const SizeInput& in, std::string* why) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    if (in.field_degree_d < 1) return fail("d must be at least 1");
    if (in.relative_degree_dprime < 1) return fail("d' must be at least 1");
    if (in.dim_tm % 2 != 0) return fail("dim TM must be even");
    if (in.dim_tm < 4) return fail("dim TM < 4 would be a closed orbit");
    if (in.dim_kerp_cap_tm < 0) return fail("kernel dimension must be non-negative");
    if (2 * in.rank_m + in.dim_kerp_cap_tm != in.dim_tm)
        return fail("2 rank + dim(ker p cap TM) must equal dim TM");
    if (in.relative_degree_dprime > in.rank_m) return fail("d' exceeds the rank");
    return true;
}

SizeVerdict classify_size(const SizeInput& in) {
    std::string why;
    if (!size_input_valid(in, &why)) raise("InconsistentInput", why);

    // sigma != Id_K exists iff d >= 2; then dim V^sigma = dim TM and the
    // extension count is d'. For sigma = Id_K: dim V^Id = dim TM - 2 and the
    // count drops to d' - 1.
    if (in.field_degree_d >= 2 && in.dim_tm >= 3 && in.relative_degree_dprime >= 1)
        return {SizeClass::Large, "sigma != Id_K with dim V^sigma = dim TM >= 3"};
    if (in.dim_tm - 2 >= 3 && in.relative_degree_dprime - 1 >= 1)
        return {SizeClass::Large, "sigma = Id_K with dim V^Id = dim TM - 2 >= 3"};

    if (in.relative_degree_dprime == 1) return {SizeClass::Small, "d' = 1"};
    return {SizeClass::Small, "d' = 2, dim TM = 4, trivial kernel"};
}

}  // namespace flatlab
