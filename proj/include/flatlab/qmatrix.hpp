#pragma once

#include <optional>
#include <vector>

#include "flatlab/error.hpp"
#include "flatlab/exact_scalar.hpp"
#include "flatlab/rational.hpp"

namespace flatlab {

// Dense exact linear algebra over a field type K (Rat or ExactScalar).
template <class K>
struct FieldOps;

template <>
struct FieldOps<Rat> {
    static bool is_zero(const Rat& x) { return x == 0; }
    static Rat zero(const Rat&) { return Rat(0); }
    static Rat one(const Rat&) { return Rat(1); }
};

template <>
struct FieldOps<ExactScalar> {
    static bool is_zero(const ExactScalar& x) { return x.is_zero(); }
    static ExactScalar zero(const ExactScalar& like) { return like - like; }
    static ExactScalar one(const ExactScalar& like) { return (like - like).one_like(); }
};

template <class K>
using Mat = std::vector<std::vector<K>>;

template <class K>
int rows(const Mat<K>& a) { return static_cast<int>(a.size()); }
template <class K>
int cols(const Mat<K>& a) { return a.empty() ? 0 : static_cast<int>(a[0].size()); }

template <class K>
Mat<K> mat_filled(int m, int n, const K& v) {
    return Mat<K>(static_cast<size_t>(m), std::vector<K>(static_cast<size_t>(n), v));
}

template <class K>
Mat<K> mat_identity(int n, const K& like) {
    Mat<K> a = mat_filled(n, n, FieldOps<K>::zero(like));
    for (int i = 0; i < n; ++i) a[i][i] = FieldOps<K>::one(like);
    return a;
}

template <class K>
Mat<K> mat_mul(const Mat<K>& a, const Mat<K>& b) {
    int m = rows(a), k = cols(a), n = cols(b);
    if (k != rows(b)) raise("InconsistentInput", "matrix dimension mismatch");
    K z = FieldOps<K>::zero(a[0][0]);
    Mat<K> c = mat_filled(m, n, z);
    for (int i = 0; i < m; ++i)
        for (int l = 0; l < k; ++l) {
            if (FieldOps<K>::is_zero(a[i][l])) continue;
            for (int j = 0; j < n; ++j) c[i][j] += a[i][l] * b[l][j];
        }
    return c;
}

template <class K>
std::vector<K> mat_vec(const Mat<K>& a, const std::vector<K>& x) {
    int m = rows(a), n = cols(a);
    if (n != static_cast<int>(x.size())) raise("InconsistentInput", "matrix/vector mismatch");
    std::vector<K> y(static_cast<size_t>(m), FieldOps<K>::zero(a[0][0]));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) y[i] += a[i][j] * x[j];
    return y;
}

template <class K>
Mat<K> mat_transpose(const Mat<K>& a) {
    int m = rows(a), n = cols(a);
    if (m == 0) return {};
    Mat<K> t = mat_filled(n, m, a[0][0]);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) t[j][i] = a[i][j];
    return t;
}

// Row-reduce in place; returns pivot column per pivot row.
template <class K>
std::vector<int> rref(Mat<K>& a) {
    int m = rows(a), n = cols(a);
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < n && r < m; ++c) {
        int p = -1;
        for (int i = r; i < m; ++i)
            if (!FieldOps<K>::is_zero(a[i][c])) { p = i; break; }
        if (p < 0) continue;
        std::swap(a[p], a[r]);
        K inv = FieldOps<K>::one(a[r][c]) / a[r][c];
        for (int j = c; j < n; ++j) a[r][j] = a[r][j] * inv;
        for (int i = 0; i < m; ++i) {
            if (i == r || FieldOps<K>::is_zero(a[i][c])) continue;
            K f = a[i][c];
            for (int j = c; j < n; ++j) a[i][j] -= f * a[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

template <class K>
int mat_rank(Mat<K> a) {
    if (a.empty() || a[0].empty()) return 0;
    return static_cast<int>(rref(a).size());
}

// Basis of the right kernel {x : A x = 0}.
template <class K>
std::vector<std::vector<K>> kernel_basis(Mat<K> a) {
    if (a.empty() || a[0].empty()) {
        // kernel of an empty map is everything; caller supplies dimensions
        return {};
    }
    int n = cols(a);
    K z = FieldOps<K>::zero(a[0][0]);
    K o = FieldOps<K>::one(a[0][0]);
    auto pivots = rref(a);
    std::vector<bool> is_pivot(static_cast<size_t>(n), false);
    for (int c : pivots) is_pivot[static_cast<size_t>(c)] = true;
    std::vector<std::vector<K>> basis;
    for (int c = 0; c < n; ++c) {
        if (is_pivot[static_cast<size_t>(c)]) continue;
        std::vector<K> v(static_cast<size_t>(n), z);
        v[static_cast<size_t>(c)] = o;
        for (size_t r = 0; r < pivots.size(); ++r)
            v[static_cast<size_t>(pivots[r])] = z - a[r][static_cast<size_t>(c)];
        basis.push_back(std::move(v));
    }
    return basis;
}

// One solution of A x = b, if consistent.
template <class K>
std::optional<std::vector<K>> solve(const Mat<K>& a, const std::vector<K>& b) {
    int m = rows(a), n = cols(a);
    K z = FieldOps<K>::zero(b.empty() ? a[0][0] : b[0]);
    Mat<K> aug = a;
    for (int i = 0; i < m; ++i) aug[i].push_back(b[static_cast<size_t>(i)]);
    auto pivots = rref(aug);
    std::vector<K> x(static_cast<size_t>(n), z);
    for (size_t r = 0; r < pivots.size(); ++r) {
        if (pivots[r] == n) return std::nullopt;  // pivot in the rhs column
        x[static_cast<size_t>(pivots[r])] = aug[r][static_cast<size_t>(n)];
    }
    return x;
}

template <class K>
Mat<K> mat_inverse(const Mat<K>& a) {
    int n = rows(a);
    if (n != cols(a)) raise("InconsistentInput", "inverse of a non-square matrix");
    Mat<K> aug = a;
    K z = FieldOps<K>::zero(a[0][0]);
    K o = FieldOps<K>::one(a[0][0]);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) aug[i].push_back(i == j ? o : z);
    auto pivots = rref(aug);
    if (static_cast<int>(pivots.size()) != n || pivots.back() != n - 1)
        raise("SingularMatrix", "matrix is singular");
    Mat<K> inv = mat_filled(n, n, z);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) inv[i][j] = aug[i][static_cast<size_t>(n + j)];
    return inv;
}

template <class K>
K mat_det(Mat<K> a) {
    int n = rows(a);
    if (n != cols(a)) raise("InconsistentInput", "determinant of a non-square matrix");
    K det = FieldOps<K>::one(a[0][0]);
    for (int c = 0; c < n; ++c) {
        int p = -1;
        for (int i = c; i < n; ++i)
            if (!FieldOps<K>::is_zero(a[i][c])) { p = i; break; }
        if (p < 0) return FieldOps<K>::zero(a[0][0]);
        if (p != c) {
            std::swap(a[p], a[c]);
            det = FieldOps<K>::zero(det) - det;
        }
        det = det * a[c][c];
        K inv = FieldOps<K>::one(a[c][c]) / a[c][c];
        for (int i = c + 1; i < n; ++i) {
            if (FieldOps<K>::is_zero(a[i][c])) continue;
            K f = a[i][c] * inv;
            for (int j = c; j < n; ++j) a[i][j] -= f * a[c][j];
        }
    }
    return det;
}

// Rat matrix <-> integer matrix with common denominator.
Mat<Rat> q_from_z(const std::vector<std::vector<Int>>& a);
void clear_denominators(const Mat<Rat>& a, std::vector<std::vector<Int>>& out, Int& den);

}  // namespace flatlab
