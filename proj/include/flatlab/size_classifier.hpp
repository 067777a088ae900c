#pragma once

#include <string>

namespace flatlab {

// Discrete invariants of an affine manifold together with a stabilizer field
// extension: [K:Q] = d, [K_i:K] = d', the tangent dimension, and the kernel
// intersection of the projection to absolute cohomology.
struct SizeInput {
    int field_degree_d = 1;        // d = [K:Q]; d == 1 means K = Q
    int relative_degree_dprime = 1;
    int dim_tm = 4;                // even, >= 4 (dimension 2 is a closed orbit)
    int rank_m = 2;                // = dim p(TM) / 2
    int dim_kerp_cap_tm = 0;
};

enum class SizeClass { Large, Small };

struct SizeVerdict {
    SizeClass cls;
    std::string witness;  // which embedding family produced the verdict
};

// Large when some embedding sigma gives dim(V^sigma) >= 3 together with a
// nonidentity extension; Small otherwise. The two verdicts partition all
// valid inputs. InconsistentInput on d' > rank_m or malformed dimensions.
SizeVerdict classify_size(const SizeInput& in);

bool size_input_valid(const SizeInput& in, std::string* why = nullptr);

}  // namespace flatlab
