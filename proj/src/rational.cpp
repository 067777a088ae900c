#include "flatlab/rational.hpp"

#include "flatlab/error.hpp"

namespace flatlab {

int sign(const Rat& q) { return sgn(q); }
int sign(const Int& z) { return sgn(z); }

Int floor_div(const Int& a, const Int& b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

Int floor_rat(const Rat& q) { return floor_div(q.get_num(), q.get_den()); }

Int round_half_up(const Rat& q) { return floor_rat(q + Rat(1, 2)); }

Rat parse_rat(const std::string& s) {
    if (s.empty()) raise("IO", "empty rational literal");
    Rat q;
    if (q.set_str(s, 10) != 0) raise("IO", "bad rational literal '" + s + "'");
    if (q.get_den() == 0) raise("IO", "zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
}

std::string to_string(const Rat& q) {
    Rat c = q;
    c.canonicalize();
    if (c.get_den() == 1) return c.get_num().get_str();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

double to_double(const Rat& q) { return q.get_d(); }

Int gcd(const Int& a, const Int& b) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

Int lcm(const Int& a, const Int& b) {
    Int l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

bool is_perfect_square(const Int& n, Int* root) {
    if (sgn(n) < 0) return false;
    if (mpz_perfect_square_p(n.get_mpz_t()) == 0) return false;
    if (root) mpz_sqrt(root->get_mpz_t(), n.get_mpz_t());
    return true;
}

void strip_square_part(const Int& n, Int& square_root_part, Int& squarefree_part) {
    if (n == 0) {
        square_root_part = 1;
        squarefree_part = 0;
        return;
    }
    Int m = abs(n);
    Int s = 1, f = (sgn(n) < 0) ? Int(-1) : Int(1);
    for (Int p = 2; p * p <= m; p += (p == 2) ? 1 : 2) {
        if (p > 1000000) {
            // residual cofactor too large to certify square-free
            Int r;
            if (is_perfect_square(m, &r)) {
                s *= r;
                m = 1;
                break;
            }
            raise("InconsistentInput",
                  "radicand too large to strip square part: " + n.get_str());
        }
        while (m % (p * p) == 0) {
            m /= p * p;
            s *= p;
        }
        if (m % p == 0) {
            m /= p;
            f *= p;
        }
    }
    f *= m;
    square_root_part = s;
    squarefree_part = f;
}

std::vector<Int> divisors(const Int& n) {
    Int m = abs(n);
    if (m == 0) raise("InconsistentInput", "divisors of zero requested");
    std::vector<Int> out;
    for (Int d = 1; d * d <= m; ++d) {
        if (m % d == 0) {
            out.push_back(d);
            if (d * d != m) out.push_back(m / d);
        }
    }
    return out;
}

}  // namespace flatlab
