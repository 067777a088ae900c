#include "flatlab/zmatrix.hpp"

#include <algorithm>

#include "flatlab/error.hpp"

namespace flatlab {

int z_rows(const ZMat& a) { return static_cast<int>(a.size()); }
int z_cols(const ZMat& a) { return a.empty() ? 0 : static_cast<int>(a[0].size()); }

ZMat z_zeros(int m, int n) {
    return ZMat(static_cast<size_t>(m), ZVec(static_cast<size_t>(n), Int(0)));
}

ZMat z_identity(int n) {
    ZMat a = z_zeros(n, n);
    for (int i = 0; i < n; ++i) a[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1;
    return a;
}

ZMat z_mul(const ZMat& a, const ZMat& b) {
    int m = z_rows(a), k = z_cols(a), n = z_cols(b);
    if (k != z_rows(b)) raise("InconsistentInput", "matrix dimension mismatch");
    ZMat c = z_zeros(m, n);
    for (int i = 0; i < m; ++i)
        for (int l = 0; l < k; ++l) {
            const Int& ail = a[static_cast<size_t>(i)][static_cast<size_t>(l)];
            if (ail == 0) continue;
            for (int j = 0; j < n; ++j)
                c[static_cast<size_t>(i)][static_cast<size_t>(j)] +=
                    ail * b[static_cast<size_t>(l)][static_cast<size_t>(j)];
        }
    return c;
}

ZVec z_mul_vec(const ZMat& a, const ZVec& x) {
    int m = z_rows(a), n = z_cols(a);
    if (n != static_cast<int>(x.size())) raise("InconsistentInput", "matrix/vector mismatch");
    ZVec y(static_cast<size_t>(m), Int(0));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j)
            y[static_cast<size_t>(i)] += a[static_cast<size_t>(i)][static_cast<size_t>(j)] * x[static_cast<size_t>(j)];
    return y;
}

ZMat z_transpose(const ZMat& a) {
    int m = z_rows(a), n = z_cols(a);
    ZMat t = z_zeros(n, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) t[static_cast<size_t>(j)][static_cast<size_t>(i)] = a[static_cast<size_t>(i)][static_cast<size_t>(j)];
    return t;
}

namespace {

struct SnfWork {
    ZMat S, U, Uinv, V;
    int m, n;

    void row_swap(int i, int j) {
        std::swap(S[static_cast<size_t>(i)], S[static_cast<size_t>(j)]);
        std::swap(U[static_cast<size_t>(i)], U[static_cast<size_t>(j)]);
        for (int k = 0; k < m; ++k)
            std::swap(Uinv[static_cast<size_t>(k)][static_cast<size_t>(i)], Uinv[static_cast<size_t>(k)][static_cast<size_t>(j)]);
    }
    void row_add(int dst, int src, const Int& c) {  // row dst += c * row src
        for (int k = 0; k < n; ++k) S[static_cast<size_t>(dst)][static_cast<size_t>(k)] += c * S[static_cast<size_t>(src)][static_cast<size_t>(k)];
        for (int k = 0; k < m; ++k) U[static_cast<size_t>(dst)][static_cast<size_t>(k)] += c * U[static_cast<size_t>(src)][static_cast<size_t>(k)];
        for (int k = 0; k < m; ++k)
            Uinv[static_cast<size_t>(k)][static_cast<size_t>(src)] -= c * Uinv[static_cast<size_t>(k)][static_cast<size_t>(dst)];
    }
    void row_negate(int i) {
        for (auto& x : S[static_cast<size_t>(i)]) x = -x;
        for (auto& x : U[static_cast<size_t>(i)]) x = -x;
        for (int k = 0; k < m; ++k) Uinv[static_cast<size_t>(k)][static_cast<size_t>(i)] = -Uinv[static_cast<size_t>(k)][static_cast<size_t>(i)];
    }
    void col_swap(int i, int j) {
        for (int k = 0; k < m; ++k) std::swap(S[static_cast<size_t>(k)][static_cast<size_t>(i)], S[static_cast<size_t>(k)][static_cast<size_t>(j)]);
        for (int k = 0; k < n; ++k) std::swap(V[static_cast<size_t>(k)][static_cast<size_t>(i)], V[static_cast<size_t>(k)][static_cast<size_t>(j)]);
    }
    void col_add(int dst, int src, const Int& c) {  // col dst += c * col src
        for (int k = 0; k < m; ++k) S[static_cast<size_t>(k)][static_cast<size_t>(dst)] += c * S[static_cast<size_t>(k)][static_cast<size_t>(src)];
        for (int k = 0; k < n; ++k) V[static_cast<size_t>(k)][static_cast<size_t>(dst)] += c * V[static_cast<size_t>(k)][static_cast<size_t>(src)];
    }
    void col_negate(int i) {
        for (int k = 0; k < m; ++k) S[static_cast<size_t>(k)][static_cast<size_t>(i)] = -S[static_cast<size_t>(k)][static_cast<size_t>(i)];
        for (int k = 0; k < n; ++k) V[static_cast<size_t>(k)][static_cast<size_t>(i)] = -V[static_cast<size_t>(k)][static_cast<size_t>(i)];
    }
};

}  // namespace

SmithResult smith_normal_form(const ZMat& A) {
    SnfWork w;
    w.m = z_rows(A);
    w.n = z_cols(A);
    w.S = A;
    w.U = z_identity(w.m);
    w.Uinv = z_identity(w.m);
    w.V = z_identity(w.n);

    int t = 0;
    int lim = std::min(w.m, w.n);
    while (t < lim) {
        // find a pivot with minimal |value|
        int pi = -1, pj = -1;
        Int best;
        for (int i = t; i < w.m; ++i)
            for (int j = t; j < w.n; ++j) {
                const Int& v = w.S[static_cast<size_t>(i)][static_cast<size_t>(j)];
                if (v == 0) continue;
                if (pi < 0 || abs(v) < best) {
                    best = abs(v);
                    pi = i;
                    pj = j;
                }
            }
        if (pi < 0) break;
        if (pi != t) w.row_swap(pi, t);
        if (pj != t) w.col_swap(pj, t);
        if (w.S[static_cast<size_t>(t)][static_cast<size_t>(t)] < 0) w.row_negate(t);

        bool clean = true;
        for (int i = t + 1; i < w.m; ++i) {
            Int q = floor_div(w.S[static_cast<size_t>(i)][static_cast<size_t>(t)], w.S[static_cast<size_t>(t)][static_cast<size_t>(t)]);
            if (q != 0) w.row_add(i, t, -q);
            if (w.S[static_cast<size_t>(i)][static_cast<size_t>(t)] != 0) clean = false;
        }
        for (int j = t + 1; j < w.n; ++j) {
            Int q = floor_div(w.S[static_cast<size_t>(t)][static_cast<size_t>(j)], w.S[static_cast<size_t>(t)][static_cast<size_t>(t)]);
            if (q != 0) w.col_add(j, t, -q);
            if (w.S[static_cast<size_t>(t)][static_cast<size_t>(j)] != 0) clean = false;
        }
        if (!clean) continue;  // remainders became new smaller pivot candidates
        ++t;
    }

    // enforce the divisibility chain d_i | d_{i+1}: each fix replaces the
    // pair by (gcd, lcm), which sorts prime exponents pairwise and terminates
    bool changed = true;
    while (changed) {
        changed = false;
        for (int i = 0; i + 1 < t; ++i) {
            Int a = w.S[static_cast<size_t>(i)][static_cast<size_t>(i)];
            Int b = w.S[static_cast<size_t>(i + 1)][static_cast<size_t>(i + 1)];
            if (b % a == 0) continue;
            changed = true;
            int j = i + 1;
            w.col_add(i, j, Int(1));  // block is now [[a, 0], [b, b]]
            while (true) {
                if (w.S[static_cast<size_t>(j)][static_cast<size_t>(i)] != 0) {
                    Int q = floor_div(w.S[static_cast<size_t>(j)][static_cast<size_t>(i)],
                                      w.S[static_cast<size_t>(i)][static_cast<size_t>(i)]);
                    if (q != 0) w.row_add(j, i, -q);
                    if (w.S[static_cast<size_t>(j)][static_cast<size_t>(i)] != 0) {
                        w.row_swap(i, j);
                        continue;
                    }
                }
                if (w.S[static_cast<size_t>(i)][static_cast<size_t>(j)] != 0) {
                    Int q = floor_div(w.S[static_cast<size_t>(i)][static_cast<size_t>(j)],
                                      w.S[static_cast<size_t>(i)][static_cast<size_t>(i)]);
                    if (q != 0) w.col_add(j, i, -q);
                    if (w.S[static_cast<size_t>(i)][static_cast<size_t>(j)] != 0) {
                        w.col_swap(i, j);
                        continue;
                    }
                }
                break;
            }
            if (w.S[static_cast<size_t>(i)][static_cast<size_t>(i)] < 0) w.row_negate(i);
            if (w.S[static_cast<size_t>(j)][static_cast<size_t>(j)] < 0) w.row_negate(j);
        }
    }

    SmithResult r;
    r.U = std::move(w.U);
    r.Uinv = std::move(w.Uinv);
    r.V = std::move(w.V);
    r.S = std::move(w.S);
    r.rank = t;
    for (int i = 0; i < t; ++i) r.divisors.push_back(r.S[static_cast<size_t>(i)][static_cast<size_t>(i)]);
    return r;
}

std::vector<ZVec> z_kernel(const ZMat& A) {
    auto snf = smith_normal_form(A);
    int n = z_cols(A);
    std::vector<ZVec> basis;
    for (int j = snf.rank; j < n; ++j) {
        ZVec v(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) v[static_cast<size_t>(i)] = snf.V[static_cast<size_t>(i)][static_cast<size_t>(j)];
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<ZVec> z_solve(const ZMat& A, const ZVec& b) {
    auto snf = smith_normal_form(A);
    int m = z_rows(A), n = z_cols(A);
    ZVec ub = z_mul_vec(snf.U, b);
    ZVec y(static_cast<size_t>(n), Int(0));
    for (int i = 0; i < snf.rank; ++i) {
        const Int& d = snf.S[static_cast<size_t>(i)][static_cast<size_t>(i)];
        if (ub[static_cast<size_t>(i)] % d != 0) return std::nullopt;
        y[static_cast<size_t>(i)] = ub[static_cast<size_t>(i)] / d;
    }
    for (int i = snf.rank; i < m; ++i)
        if (ub[static_cast<size_t>(i)] != 0) return std::nullopt;
    return z_mul_vec(snf.V, y);
}

std::vector<ZVec> saturate_column_span(const ZMat& A) {
    auto snf = smith_normal_form(A);
    int m = z_rows(A);
    std::vector<ZVec> basis;
    for (int j = 0; j < snf.rank; ++j) {
        ZVec v(static_cast<size_t>(m));
        for (int i = 0; i < m; ++i) v[static_cast<size_t>(i)] = snf.Uinv[static_cast<size_t>(i)][static_cast<size_t>(j)];
        basis.push_back(std::move(v));
    }
    return basis;
}

std::vector<ZVec> column_lattice_basis(const ZMat& A) {
    auto snf = smith_normal_form(A);
    int m = z_rows(A);
    std::vector<ZVec> basis;
    for (int j = 0; j < snf.rank; ++j) {
        ZVec v(static_cast<size_t>(m));
        for (int i = 0; i < m; ++i)
            v[static_cast<size_t>(i)] = snf.divisors[static_cast<size_t>(j)] *
                                        snf.Uinv[static_cast<size_t>(i)][static_cast<size_t>(j)];
        basis.push_back(std::move(v));
    }
    return basis;
}

int z_rank(const ZMat& A) { return smith_normal_form(A).rank; }

}  // namespace flatlab
