#include "flatlab/intfactor.hpp"

#include <algorithm>

#include "flatlab/error.hpp"

namespace flatlab {

QPoly char_poly(const Mat<Rat>& a) {
    int n = rows(a);
    if (n != cols(a)) raise("InconsistentInput", "characteristic polynomial of a non-square matrix");
    // Faddeev-LeVerrier: M_1 = A, c_{n-1} = -tr M_1, M_k = A (M_{k-1} + c_{n-k+1} I)
    std::vector<Rat> c(static_cast<size_t>(n + 1), Rat(0));
    c[static_cast<size_t>(n)] = 1;
    Mat<Rat> m = a;
    auto trace = [&](const Mat<Rat>& x) {
        Rat t(0);
        for (int i = 0; i < n; ++i) t += x[static_cast<size_t>(i)][static_cast<size_t>(i)];
        return t;
    };
    c[static_cast<size_t>(n - 1)] = -trace(m);
    for (int k = 2; k <= n; ++k) {
        for (int i = 0; i < n; ++i) m[static_cast<size_t>(i)][static_cast<size_t>(i)] += c[static_cast<size_t>(n - k + 1)];
        m = mat_mul(a, m);
        c[static_cast<size_t>(n - k)] = -trace(m) / Rat(k);
    }
    return QPoly(std::move(c));
}

namespace {

bool integer_coeffs(const QPoly& f, std::vector<Int>* out = nullptr) {
    if (out) out->clear();
    for (const Rat& q : f.coeffs()) {
        if (q.get_den() != 1) return false;
        if (out) out->push_back(q.get_num());
    }
    return true;
}

// All monic integer factors of degree k found by divisor interpolation.
// f must be monic, integer, without rational roots, deg f > k.
std::vector<QPoly> degree_k_factors(const QPoly& f, int k) {
    std::vector<Rat> pts;
    for (long v : {0L, 1L, -1L, 2L, -2L, 3L, -3L, 4L, -4L}) {
        pts.emplace_back(v);
        if (static_cast<int>(pts.size()) == k) break;
    }
    std::vector<std::vector<Int>> divs;  // signed divisors of f(x_i)
    double combos = 1;
    for (const Rat& x : pts) {
        Rat val = f.eval(x);
        if (val == 0) raise("InconsistentInput", "unexpected rational root during factorization");
        std::vector<Int> ds;
        for (const Int& d : divisors(val.get_num())) {
            ds.push_back(d);
            ds.push_back(-d);
        }
        combos *= static_cast<double>(ds.size());
        divs.push_back(std::move(ds));
    }
    if (combos > 4e6)
        raise("InconsistentInput", "factorization search space too large at degree " + std::to_string(k));

    // Lagrange setup: candidate g = x^k + h(x) with deg h < k interpolated
    // from h(x_i) = d_i - x_i^k
    Mat<Rat> vand = mat_filled(k, k, Rat(0));
    for (int i = 0; i < k; ++i) {
        Rat p(1);
        for (int j = 0; j < k; ++j) {
            vand[static_cast<size_t>(i)][static_cast<size_t>(j)] = p;
            p *= pts[static_cast<size_t>(i)];
        }
    }
    Mat<Rat> vinv = mat_inverse(vand);

    std::vector<QPoly> found;
    std::vector<size_t> idx(static_cast<size_t>(k), 0);
    while (true) {
        std::vector<Rat> rhs(static_cast<size_t>(k));
        for (int i = 0; i < k; ++i) {
            Rat xk(1);
            for (int t = 0; t < k; ++t) xk *= pts[static_cast<size_t>(i)];
            rhs[static_cast<size_t>(i)] = Rat(divs[static_cast<size_t>(i)][idx[static_cast<size_t>(i)]]) - xk;
        }
        std::vector<Rat> h = mat_vec(vinv, rhs);
        std::vector<Rat> gc(h);
        gc.push_back(Rat(1));
        QPoly g(std::move(gc));
        std::vector<Int> zc;
        if (integer_coeffs(g, &zc) && g.divides(f)) {
            if (std::find(found.begin(), found.end(), g) == found.end()) found.push_back(g);
        }
        // advance the divisor tuple
        int pos = 0;
        while (pos < k) {
            if (++idx[static_cast<size_t>(pos)] < divs[static_cast<size_t>(pos)].size()) break;
            idx[static_cast<size_t>(pos)] = 0;
            ++pos;
        }
        if (pos == k) break;
    }
    return found;
}

}  // namespace

std::vector<IrreducibleFactor> factor_monic_integer(const QPoly& f_in) {
    if (f_in.is_zero() || f_in.leading() != 1) raise("InconsistentInput", "factorization requires a monic polynomial");
    if (!integer_coeffs(f_in)) raise("InconsistentInput", "factorization requires integer coefficients");
    if (f_in.degree() > 8) raise("InconsistentInput", "factorization implemented for degree <= 8");

    std::vector<IrreducibleFactor> out;
    auto push_factor = [&](const QPoly& q) {
        for (auto& fac : out)
            if (fac.poly == q) {
                ++fac.multiplicity;
                return;
            }
        out.push_back({q, 1});
    };

    QPoly rest = f_in;
    // rational roots of a monic integer polynomial are integers
    bool again = true;
    while (again && rest.degree() >= 1) {
        again = false;
        for (const Rat& r : rational_roots(rest)) {
            QPoly lin(std::vector<Rat>{-r, Rat(1)});
            while (lin.divides(rest)) {
                rest = rest.divmod(lin).first;
                push_factor(lin);
                again = true;
            }
        }
    }
    for (int k = 2; k <= 4 && rest.degree() > k; ++k) {
        bool progress = true;
        while (progress && rest.degree() > k) {
            progress = false;
            for (const QPoly& g : degree_k_factors(rest, k)) {
                // g has no factor of degree < k left in rest, hence irreducible
                while (g.divides(rest)) {
                    rest = rest.divmod(g).first;
                    push_factor(g);
                    progress = true;
                }
                if (progress) break;
            }
        }
    }
    if (rest.degree() >= 1) push_factor(rest);  // no factor of degree <= deg/2: irreducible

    // sanity: product of the factors reproduces the input
    QPoly prod = QPoly::constant(Rat(1));
    for (const auto& fac : out)
        for (int i = 0; i < fac.multiplicity; ++i) prod = prod * fac.poly;
    if (!(prod == f_in)) raise("InconsistentInput", "factorization self-check failed");
    return out;
}

}  // namespace flatlab
