#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace flatlab {

using Int = mpz_class;
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) { return Rat(num, den); }

int sign(const Rat& q);
int sign(const Int& z);

Int floor_div(const Int& a, const Int& b);
Int floor_rat(const Rat& q);
Int round_half_up(const Rat& q);  // nearest integer, ties toward +inf

// Parses "p/q" or "p"; rejects zero denominators and junk.
Rat parse_rat(const std::string& s);
std::string to_string(const Rat& q);  // canonical "p/q", or "p" when q == 1

double to_double(const Rat& q);

Int gcd(const Int& a, const Int& b);
Int lcm(const Int& a, const Int& b);

bool is_perfect_square(const Int& n, Int* root = nullptr);

// n = s^2 * m with m square-free. Complete for |n| within the trial-division
// budget; throws otherwise so callers never get a partially stripped radicand.
void strip_square_part(const Int& n, Int& square_root_part, Int& squarefree_part);

// All positive divisors of |n| (n != 0), unsorted.
std::vector<Int> divisors(const Int& n);

}  // namespace flatlab
