#include "flatlab/symplectic.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <functional>
#include <thread>

#include "flatlab/error.hpp"
#include "flatlab/intfactor.hpp"

namespace flatlab {

SymplecticForm SymplecticForm::from_matrix(ZMat m) {
    SymplecticForm w;
    w.dimension = z_rows(m);
    if (w.dimension != z_cols(m)) raise("InconsistentInput", "form matrix must be square");
    for (int i = 0; i < w.dimension; ++i)
        for (int j = 0; j < w.dimension; ++j)
            if (m[static_cast<size_t>(i)][static_cast<size_t>(j)] != -m[static_cast<size_t>(j)][static_cast<size_t>(i)])
                raise("InconsistentInput", "form matrix must be antisymmetric");
    w.matrix = std::move(m);
    w.nondegenerate = (mat_det(q_from_z(w.matrix)) != 0);
    return w;
}

SymplecticForm SymplecticForm::standard(int n) {
    if (n % 2) raise("InconsistentInput", "standard symplectic form needs even dimension");
    ZMat m = z_zeros(n, n);
    for (int i = 0; i + 1 < n; i += 2) {
        m[static_cast<size_t>(i)][static_cast<size_t>(i + 1)] = 1;
        m[static_cast<size_t>(i + 1)][static_cast<size_t>(i)] = -1;
    }
    return from_matrix(std::move(m));
}

SymplecticForm SymplecticForm::paired(int n) {
    if (n % 2) raise("InconsistentInput", "paired symplectic form needs even dimension");
    int h = n / 2;
    ZMat m = z_zeros(n, n);
    for (int i = 0; i < h; ++i) {
        m[static_cast<size_t>(i)][static_cast<size_t>(i + h)] = 1;
        m[static_cast<size_t>(i + h)][static_cast<size_t>(i)] = -1;
    }
    return from_matrix(std::move(m));
}

Rat omega_value(const SymplecticForm& w, const std::vector<Rat>& a, const std::vector<Rat>& b) {
    Rat acc(0);
    for (int i = 0; i < w.dimension; ++i) {
        if (a[static_cast<size_t>(i)] == 0) continue;
        for (int j = 0; j < w.dimension; ++j) {
            const Int& wij = w.matrix[static_cast<size_t>(i)][static_cast<size_t>(j)];
            if (wij == 0) continue;
            acc += a[static_cast<size_t>(i)] * Rat(wij) * b[static_cast<size_t>(j)];
        }
    }
    return acc;
}

ExactScalar omega_value(const SymplecticForm& w, const std::vector<ExactScalar>& a,
                        const std::vector<ExactScalar>& b) {
    ExactScalar acc(0);
    for (int i = 0; i < w.dimension; ++i) {
        if (a[static_cast<size_t>(i)].is_zero()) continue;
        for (int j = 0; j < w.dimension; ++j) {
            const Int& wij = w.matrix[static_cast<size_t>(i)][static_cast<size_t>(j)];
            if (wij == 0) continue;
            acc += a[static_cast<size_t>(i)] * ExactScalar(Rat(wij)) * b[static_cast<size_t>(j)];
        }
    }
    return acc;
}

SymplecticPlane SymplecticPlane::from_rational(const std::vector<Rat>& a, const std::vector<Rat>& b) {
    SymplecticPlane p;
    for (const Rat& q : a) p.v1.emplace_back(q);
    for (const Rat& q : b) p.v2.emplace_back(q);
    return p;
}

SymplecticPlane SymplecticPlane::from_integer(const ZVec& a, const ZVec& b) {
    SymplecticPlane p;
    for (const Int& z : a) p.v1.emplace_back(Rat(z));
    for (const Int& z : b) p.v2.emplace_back(Rat(z));
    return p;
}

Mat<Rat> build_AV(const SymplecticForm& w, const std::vector<Rat>& v1, const std::vector<Rat>& v2) {
    if (omega_value(w, v1, v2) == 0) raise("DegeneratePlane", "omega(v1, v2) = 0");
    int n = w.dimension;
    auto wv = [&](const std::vector<Rat>& v) {
        std::vector<Rat> out(static_cast<size_t>(n), Rat(0));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                out[static_cast<size_t>(i)] += Rat(w.matrix[static_cast<size_t>(i)][static_cast<size_t>(j)]) * v[static_cast<size_t>(j)];
        return out;
    };
    std::vector<Rat> w2 = wv(v2), w1 = wv(v1);
    Mat<Rat> a = mat_filled(n, n, Rat(0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            a[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                v1[static_cast<size_t>(i)] * w2[static_cast<size_t>(j)] - v2[static_cast<size_t>(i)] * w1[static_cast<size_t>(j)];
    return a;
}

Mat<ExactScalar> build_AV(const SymplecticForm& w, const std::vector<ExactScalar>& v1,
                          const std::vector<ExactScalar>& v2) {
    if (omega_value(w, v1, v2).is_zero()) raise("DegeneratePlane", "omega(v1, v2) = 0");
    int n = w.dimension;
    ExactScalar zero(0);
    auto wv = [&](const std::vector<ExactScalar>& v) {
        std::vector<ExactScalar> out(static_cast<size_t>(n), zero);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const Int& wij = w.matrix[static_cast<size_t>(i)][static_cast<size_t>(j)];
                if (wij == 0) continue;
                out[static_cast<size_t>(i)] += ExactScalar(Rat(wij)) * v[static_cast<size_t>(j)];
            }
        return out;
    };
    std::vector<ExactScalar> w2 = wv(v2), w1 = wv(v1);
    Mat<ExactScalar> a = mat_filled(n, n, zero);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            a[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                v1[static_cast<size_t>(i)] * w2[static_cast<size_t>(j)] - v2[static_cast<size_t>(i)] * w1[static_cast<size_t>(j)];
    return a;
}

namespace {

FieldPtr plane_field(const SymplecticPlane& v) {
    FieldPtr f = NumberField::rationals();
    for (const auto& x : v.v1) f = join_fields(f, x.field());
    for (const auto& x : v.v2) f = join_fields(f, x.field());
    return f;
}

// Rational points of the K-span of v1, v2: basis of {x in Q^n : x in V}.
std::vector<std::vector<Rat>> rational_points_of_plane(const SymplecticPlane& v) {
    FieldPtr f = plane_field(v);
    int n = static_cast<int>(v.v1.size());
    ExactScalar zero = to_field(ExactScalar(0), f);
    Mat<ExactScalar> rowsm = mat_filled(2, n, zero);
    for (int j = 0; j < n; ++j) {
        rowsm[0][static_cast<size_t>(j)] = to_field(v.v1[static_cast<size_t>(j)], f);
        rowsm[1][static_cast<size_t>(j)] = to_field(v.v2[static_cast<size_t>(j)], f);
    }
    if (mat_rank(rowsm) < 2) raise("InconsistentInput", "plane basis vectors are dependent");
    auto ann = kernel_basis(rowsm);  // functionals vanishing on the plane, over K
    int d = f->degree();
    Mat<Rat> constraints;
    for (const auto& phi : ann) {
        for (int t = 0; t < d; ++t) {
            std::vector<Rat> row(static_cast<size_t>(n), Rat(0));
            bool nonzero = false;
            for (int j = 0; j < n; ++j) {
                const auto& coords = phi[static_cast<size_t>(j)].coords();
                Rat c = (t < static_cast<int>(coords.size())) ? coords[static_cast<size_t>(t)] : Rat(0);
                row[static_cast<size_t>(j)] = c;
                if (c != 0) nonzero = true;
            }
            if (nonzero) constraints.push_back(std::move(row));
        }
    }
    if (constraints.empty()) {
        // plane is all of Q^n only when n == 2
        std::vector<std::vector<Rat>> basis;
        for (int i = 0; i < n; ++i) {
            std::vector<Rat> e(static_cast<size_t>(n), Rat(0));
            e[static_cast<size_t>(i)] = 1;
            basis.push_back(std::move(e));
        }
        return basis;
    }
    return kernel_basis(constraints);
}

std::string plane_key_rational(const std::vector<ZVec>& basis) {
    // canonical key: reduced row echelon form of the rational row space
    Mat<Rat> m;
    for (const auto& v : basis) {
        std::vector<Rat> row;
        for (const auto& z : v) row.emplace_back(z);
        m.push_back(std::move(row));
    }
    rref(m);
    std::string key;
    for (const auto& row : m)
        for (const auto& q : row) key += to_string(q) + ",";
    return key;
}

}  // namespace

DIntegralResult is_D_integral(const SymplecticForm& w, const SymplecticPlane& v, const Int& D) {
    if (static_cast<int>(v.v1.size()) != w.dimension || static_cast<int>(v.v2.size()) != w.dimension)
        raise("InconsistentInput", "plane/form dimension mismatch");
    if (omega_value(w, v.v1, v.v2).is_zero())
        raise("DegeneratePlane", "form is degenerate on the plane");
    DIntegralResult res;
    auto rat_basis = rational_points_of_plane(v);
    if (rat_basis.size() < 2) {
        res.member = false;
        res.reason = DIntegralReason::RankDeficient;
        return res;
    }
    // saturate to the integer lattice V cap Z^n
    ZMat cols;
    Int den;
    Mat<Rat> bm;
    for (const auto& b : rat_basis) bm.push_back(b);
    clear_denominators(mat_transpose(bm), cols, den);
    auto sat = saturate_column_span(cols);
    if (sat.size() != 2) {
        res.member = false;
        res.reason = DIntegralReason::RankDeficient;
        return res;
    }
    ZVec w1 = sat[0], w2 = sat[1];
    Rat cov = omega_value(w, q_from_z({w1})[0], q_from_z({w2})[0]);
    Int cov_int = cov.get_num();
    if (cov.get_den() != 1) raise("InconsistentInput", "non-integer covolume on an integer lattice");
    if (cov_int < 0) {
        std::swap(w1, w2);
        cov_int = -cov_int;
    }
    res.actual_covolume = cov_int;
    res.lattice = std::make_pair(w1, w2);
    if (cov_int != D) {
        res.member = false;
        res.reason = DIntegralReason::CovolumeMismatch;
        return res;
    }
    std::vector<Rat> q1, q2;
    for (const auto& z : w1) q1.emplace_back(z);
    for (const auto& z : w2) q2.emplace_back(z);
    Mat<Rat> av = build_AV(w, q1, q2);
    ZMat avz;
    for (const auto& row : av) {
        ZVec r;
        for (const auto& q : row) {
            if (q.get_den() != 1) raise("InconsistentInput", "A_V not integral on an integral basis");
            r.push_back(q.get_num());
        }
        avz.push_back(std::move(r));
    }
    res.member = true;
    res.a_v = std::move(avz);
    return res;
}

EtaIntegralResult is_eta_integral(const SymplecticForm& w, const SymplecticPlane& v,
                                  const ExactScalar& eta, const ExactScalar& sigma_eta) {
    int n = w.dimension;
    if (static_cast<int>(v.v1.size()) != n) raise("InconsistentInput", "plane/form dimension mismatch");
    FieldPtr f = plane_field(v);
    f = join_fields(f, eta.field());
    f = join_fields(f, sigma_eta.field());
    ExactScalar zero = to_field(ExactScalar(0), f);
    ExactScalar e = to_field(eta, f), se = to_field(sigma_eta, f);

    // symplectic complement of the plane
    Mat<ExactScalar> rowsm = mat_filled(2, n, zero);
    for (int j = 0; j < n; ++j) {
        ExactScalar a1 = zero, a2 = zero;
        for (int i = 0; i < n; ++i) {
            const Int& wij = w.matrix[static_cast<size_t>(j)][static_cast<size_t>(i)];
            if (wij == 0) continue;
            // omega(x, v) as a functional of x: coefficient of x_j is (W v)_j
            a1 += ExactScalar(Rat(wij)) * to_field(v.v1[static_cast<size_t>(i)], f);
            a2 += ExactScalar(Rat(wij)) * to_field(v.v2[static_cast<size_t>(i)], f);
        }
        rowsm[0][static_cast<size_t>(j)] = a1;
        rowsm[1][static_cast<size_t>(j)] = a2;
    }
    auto comp = kernel_basis(rowsm);
    if (static_cast<int>(comp.size()) != n - 2)
        raise("DegeneratePlane", "symplectic complement has the wrong dimension");

    Mat<ExactScalar> m = mat_filled(n, n, zero);
    for (int i = 0; i < n; ++i) {
        m[static_cast<size_t>(i)][0] = to_field(v.v1[static_cast<size_t>(i)], f);
        m[static_cast<size_t>(i)][1] = to_field(v.v2[static_cast<size_t>(i)], f);
        for (int j = 0; j < n - 2; ++j)
            m[static_cast<size_t>(i)][static_cast<size_t>(2 + j)] = comp[static_cast<size_t>(j)][static_cast<size_t>(i)];
    }
    Mat<ExactScalar> minv;
    try {
        minv = mat_inverse(m);
    } catch (const Error&) {
        raise("DegeneratePlane", "plane meets its symplectic complement");
    }
    // A = sigma_eta * I + (eta - sigma_eta) * P, P the projection onto V
    Mat<ExactScalar> diag = mat_filled(n, n, zero);
    diag[0][0] = e - se;
    diag[1][1] = e - se;
    Mat<ExactScalar> a = mat_mul(mat_mul(m, diag), minv);
    for (int i = 0; i < n; ++i) a[static_cast<size_t>(i)][static_cast<size_t>(i)] += se;

    EtaIntegralResult res;
    res.a_field = a;
    bool integral = true;
    ZMat az = z_zeros(n, n);
    for (int i = 0; i < n && integral; ++i)
        for (int j = 0; j < n; ++j) {
            if (!a[static_cast<size_t>(i)][static_cast<size_t>(j)].is_integer()) {
                integral = false;
                break;
            }
            az[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                a[static_cast<size_t>(i)][static_cast<size_t>(j)].rational_value().get_num();
        }
    res.member = integral;
    if (integral) res.a = std::move(az);
    return res;
}

namespace {

std::vector<std::complex<double>> complex_roots_of(const QPoly& q) {
    int deg = q.degree();
    std::vector<std::complex<double>> coef;
    for (int i = 0; i <= deg; ++i) coef.push_back({to_double(q[i]), 0.0});
    std::vector<std::complex<double>> r(static_cast<size_t>(deg));
    std::complex<double> seed(0.4, 0.9), p(1.0, 0.0);
    for (int i = 0; i < deg; ++i) {
        p *= seed;
        r[static_cast<size_t>(i)] = p;
    }
    auto evalp = [&](std::complex<double> z) {
        std::complex<double> acc(0.0, 0.0);
        for (int i = deg; i >= 0; --i) acc = acc * z + coef[static_cast<size_t>(i)];
        return acc;
    };
    for (int iter = 0; iter < 500; ++iter)
        for (int i = 0; i < deg; ++i) {
            std::complex<double> den(1.0, 0.0);
            for (int j = 0; j < deg; ++j)
                if (j != i) den *= r[static_cast<size_t>(i)] - r[static_cast<size_t>(j)];
            r[static_cast<size_t>(i)] -= evalp(r[static_cast<size_t>(i)]) / den;
        }
    return r;
}

}  // namespace

EigenplaneDecomposition eigenplane_decomposition(const Mat<Rat>& a_in, const SymplecticForm& w,
                                                 OperatorKind kind) {
    int n = w.dimension;
    if (rows(a_in) != n || cols(a_in) != n) raise("InconsistentInput", "operator/form dimension mismatch");
    Mat<Rat> wq = q_from_z(w.matrix);

    Mat<Rat> b;
    if (kind == OperatorKind::Symplectic) {
        // require A^T W A = W, then symmetrize
        Mat<Rat> chk = mat_mul(mat_transpose(a_in), mat_mul(wq, a_in));
        if (!(chk == wq)) raise("InconsistentInput", "operator does not preserve the form");
        b = a_in;
        Mat<Rat> inv = mat_inverse(a_in);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) b[static_cast<size_t>(i)][static_cast<size_t>(j)] += inv[static_cast<size_t>(i)][static_cast<size_t>(j)];
    } else {
        b = a_in;
    }
    // self-adjointness B^T W = W B
    if (!(mat_mul(mat_transpose(b), wq) == mat_mul(wq, b)))
        raise("InconsistentInput", "operator is not self-adjoint for the form");

    // integer rescaling: eigenspaces are unchanged, eigenvalues divide back
    Int scale(1);
    for (const auto& row : b)
        for (const auto& q : row) scale = lcm(scale, q.get_den());
    Mat<Rat> bz = b;
    for (auto& row : bz)
        for (auto& q : row) q *= Rat(scale);

    QPoly chi = char_poly(bz);
    auto factors = factor_monic_integer(chi);

    EigenplaneDecomposition out;
    std::vector<std::vector<std::vector<Rat>>> primary_bases;  // per factor, over Q
    for (const auto& fac : factors) {
        // primary component: semisimplicity means ker q(B) has full dimension
        Mat<Rat> qb = mat_filled(n, n, Rat(0));
        for (int i = 0; i < n; ++i) qb[static_cast<size_t>(i)][static_cast<size_t>(i)] = fac.poly[fac.poly.degree()];
        for (int k = fac.poly.degree() - 1; k >= 0; --k) {
            qb = mat_mul(qb, bz);
            for (int i = 0; i < n; ++i) qb[static_cast<size_t>(i)][static_cast<size_t>(i)] += fac.poly[k];
        }
        auto prim = kernel_basis(qb);
        int expected = fac.poly.degree() * fac.multiplicity;
        if (static_cast<int>(prim.size()) != expected)
            raise("NonSemisimple", "eigenvalue of " + fac.poly.str() + " has a deficient eigenspace (dim " +
                                       std::to_string(prim.size()) + " of " + std::to_string(expected) + ")");
        if (fac.multiplicity != 2)
            raise("NonSemisimple", "eigenvalue of " + fac.poly.str() + " has multiplicity " +
                                       std::to_string(fac.multiplicity) + "; no 2-plane splitting");
        primary_bases.push_back(prim);

        auto roots = isolate_real_roots(fac.poly);
        int real_count = static_cast<int>(roots.size());
        for (int ri = 0; ri < real_count; ++ri) {
            Eigenplane ep;
            ep.factor = fac.poly;
            if (fac.poly.degree() == 1) {
                ep.eta = ExactScalar(-fac.poly[0] / Rat(scale));
            } else {
                std::vector<Int> mp;
                for (int i = 0; i <= fac.poly.degree(); ++i) mp.push_back(fac.poly[i].get_num());
                auto field = NumberField::create(mp, ri);
                ep.eta = ExactScalar::generator(field) / ExactScalar(Rat(scale));
            }
            ep.eta_approx = {ep.eta.to_double(), 0.0};
            // eigenvectors over Q(eta) of the scaled operator
            ExactScalar etaz = ep.eta * ExactScalar(Rat(scale));
            FieldPtr kf = etaz.field();
            ExactScalar zero = to_field(ExactScalar(0), kf);
            Mat<ExactScalar> bk = mat_filled(n, n, zero);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    bk[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                        to_field(ExactScalar(bz[static_cast<size_t>(i)][static_cast<size_t>(j)]), kf);
            for (int i = 0; i < n; ++i) bk[static_cast<size_t>(i)][static_cast<size_t>(i)] -= to_field(etaz, kf);
            ep.basis = kernel_basis(bk);
            if (ep.basis.size() != 2)
                raise("NonSemisimple", "eigenspace of a real eigenvalue is not a plane");
            out.planes.push_back(std::move(ep));
        }
        int complex_pairs = (fac.poly.degree() - real_count) / 2;
        if (complex_pairs > 0) {
            auto cr = complex_roots_of(fac.poly);
            for (const auto& z : cr) {
                if (z.imag() <= 1e-9) continue;
                Eigenplane ep;
                ep.factor = fac.poly;
                ep.real = false;
                ep.eta_approx = z / static_cast<double>(scale.get_d());
                out.planes.push_back(std::move(ep));
                out.notes.push_back("complex eigenvalue pair reported without exact basis");
            }
        }
    }

    // directness over Q: primary components stack to full rank
    Mat<Rat> stacked;
    int dims = 0;
    for (const auto& pb : primary_bases)
        for (const auto& v : pb) {
            stacked.push_back(v);
            ++dims;
        }
    out.direct_sum_verified = (dims == n) && (mat_rank(stacked) == n);

    // orthogonality: distinct factors pair off over Q
    bool ortho = true;
    for (size_t i = 0; i < primary_bases.size(); ++i)
        for (size_t j = i + 1; j < primary_bases.size(); ++j)
            for (const auto& u : primary_bases[i])
                for (const auto& v : primary_bases[j])
                    if (omega_value(w, u, v) != 0) ortho = false;
    // conjugate real roots of one factor: verify over the common field when
    // the factor is quadratic
    for (size_t i = 0; i < out.planes.size(); ++i)
        for (size_t j = i + 1; j < out.planes.size(); ++j) {
            const auto& p = out.planes[i];
            const auto& q = out.planes[j];
            if (!p.real || !q.real) continue;
            if (!(p.factor == q.factor)) continue;
            if (p.factor.degree() > 2) {
                out.notes.push_back("orthogonality of conjugate planes beyond quadratic factors not checked");
                continue;
            }
            for (const auto& u : p.basis)
                for (const auto& v : q.basis)
                    if (!omega_value(w, u, v).is_zero()) ortho = false;
        }
    if (!ortho)
        raise("InconsistentInput", "eigenplanes for distinct eigenvalues are not orthogonal");
    out.orthogonality_verified = true;
    return out;
}

namespace {

struct RationalProjector {
    ZMat num;  // n x n integer
    Int den;   // positive
};

RationalProjector euclidean_projector(const std::vector<ZVec>& basis, int n) {
    // P = B (B^T B)^{-1} B^T for the n x 2 basis matrix B
    Mat<Rat> b = mat_filled(n, 2, Rat(0));
    for (int i = 0; i < n; ++i) {
        b[static_cast<size_t>(i)][0] = Rat(basis[0][static_cast<size_t>(i)]);
        b[static_cast<size_t>(i)][1] = Rat(basis[1][static_cast<size_t>(i)]);
    }
    Mat<Rat> bt = mat_transpose(b);
    Mat<Rat> g = mat_mul(bt, b);
    Mat<Rat> p = mat_mul(mat_mul(b, mat_inverse(g)), bt);
    RationalProjector rp;
    std::vector<std::vector<Int>> num;
    clear_denominators(p, num, rp.den);
    rp.num = std::move(num);
    return rp;
}

// smallest eigenvalue of the 2x2 matrix m is >= c (eigenvalues known real)
bool min_eigenvalue_at_least(const Mat<Rat>& m, const Rat& c) {
    Rat tr = m[0][0] + m[1][1];
    Rat det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    Rat p = c * c - tr * c + det;
    return p >= 0 && tr >= 2 * c;
}

}  // namespace

int discreteness_probe(const SymplecticForm& w, const SymplecticPlane& v0, const ProbeSpec& spec,
                       const Rat& radius, int search_bound, int threads) {
    if (!spec.D.has_value() && !spec.eta.has_value())
        raise("InconsistentInput", "probe needs either D or an eta pair");
    int n = w.dimension;
    Rat r2 = radius * radius;
    Rat c = Rat(1) - r2;  // membership threshold on cos^2 of the largest principal angle

    if (spec.D.has_value()) {
        auto self = is_D_integral(w, v0, *spec.D);
        if (!self.member) raise("PreconditionNotVerified", "base plane fails the membership test");
        const auto& lat = *self.lattice;
        std::vector<ZVec> b0{lat.first, lat.second};
        std::string key0 = plane_key_rational(b0);
        RationalProjector proj = euclidean_projector(b0, n);

        // vectors within angle r of the base plane (a plane within the
        // neighborhood is spanned by such vectors)
        std::vector<ZVec> survivors;
        ZVec v(static_cast<size_t>(n), Int(0));
        Int rn = (c.get_num() > 0) ? c.get_num() : Int(0);
        Int rd = c.get_den();
        std::function<void(int)> rec = [&](int pos) {
            if (pos == n) {
                bool zero = true;
                Int g(0);
                for (const auto& x : v) {
                    if (x != 0) zero = false;
                    g = gcd(g, x);
                }
                if (zero || g != 1) return;
                int first = 0;
                while (v[static_cast<size_t>(first)] == 0) ++first;
                if (v[static_cast<size_t>(first)] < 0) return;  // canonical sign
                // rd * v^T N v >= rn * den * v^T v
                Int quad(0), norm(0);
                for (int i = 0; i < n; ++i) {
                    norm += v[static_cast<size_t>(i)] * v[static_cast<size_t>(i)];
                    for (int j = 0; j < n; ++j)
                        quad += v[static_cast<size_t>(i)] * proj.num[static_cast<size_t>(i)][static_cast<size_t>(j)] * v[static_cast<size_t>(j)];
                }
                if (rd * quad >= rn * proj.den * norm) survivors.push_back(v);
                return;
            }
            for (long t = -search_bound; t <= search_bound; ++t) {
                v[static_cast<size_t>(pos)] = t;
                rec(pos + 1);
            }
        };
        rec(0);

        // distinct planes spanned by survivor pairs
        std::map<std::string, std::vector<ZVec>> planes;
        for (size_t i = 0; i < survivors.size(); ++i)
            for (size_t j = i + 1; j < survivors.size(); ++j) {
                ZMat cols = z_zeros(n, 2);
                for (int t = 0; t < n; ++t) {
                    cols[static_cast<size_t>(t)][0] = survivors[i][static_cast<size_t>(t)];
                    cols[static_cast<size_t>(t)][1] = survivors[j][static_cast<size_t>(t)];
                }
                auto sat = saturate_column_span(cols);
                if (sat.size() != 2) continue;
                std::string key = plane_key_rational(sat);
                if (key == key0) continue;
                planes.emplace(std::move(key), std::move(sat));
            }

        // exact neighborhood + membership per candidate plane
        std::vector<std::pair<std::string, std::vector<ZVec>>> cand(planes.begin(), planes.end());
        std::vector<int> hit(cand.size(), 0);
        auto work = [&](size_t lo, size_t hi) {
            Mat<Rat> b0q = mat_filled(n, 2, Rat(0));
            for (int i = 0; i < n; ++i) {
                b0q[static_cast<size_t>(i)][0] = Rat(b0[0][static_cast<size_t>(i)]);
                b0q[static_cast<size_t>(i)][1] = Rat(b0[1][static_cast<size_t>(i)]);
            }
            Mat<Rat> g0inv = mat_inverse(mat_mul(mat_transpose(b0q), b0q));
            for (size_t t = lo; t < hi; ++t) {
                const auto& sat = cand[t].second;
                Mat<Rat> wq = mat_filled(n, 2, Rat(0));
                for (int i = 0; i < n; ++i) {
                    wq[static_cast<size_t>(i)][0] = Rat(sat[0][static_cast<size_t>(i)]);
                    wq[static_cast<size_t>(i)][1] = Rat(sat[1][static_cast<size_t>(i)]);
                }
                Mat<Rat> gw = mat_mul(mat_transpose(wq), wq);
                // M = (B0^T B0)^{-1} B0^T W (W^T W)^{-1} W^T B0
                Mat<Rat> m = mat_mul(g0inv, mat_mul(mat_transpose(b0q), mat_mul(wq, mat_mul(mat_inverse(gw), mat_mul(mat_transpose(wq), b0q)))));
                if (!min_eigenvalue_at_least(m, c)) continue;
                SymplecticPlane p = SymplecticPlane::from_integer(sat[0], sat[1]);
                try {
                    if (is_D_integral(w, p, *spec.D).member) hit[t] = 1;
                } catch (const Error&) {
                    // omega degenerate on the candidate: not a member
                }
            }
        };
        if (threads <= 1 || cand.size() < 2) {
            work(0, cand.size());
        } else {
            size_t nt = std::min<size_t>(static_cast<size_t>(threads), cand.size());
            std::vector<std::thread> pool;
            size_t chunk = (cand.size() + nt - 1) / nt;
            for (size_t t = 0; t < nt; ++t)
                pool.emplace_back(work, t * chunk, std::min(cand.size(), (t + 1) * chunk));
            for (auto& th : pool) th.join();
        }
        int count = 0;
        for (int h : hit) count += h;
        return count;
    }

    // eta variant: candidate lattices over Z[eta]
    const auto& [eta, sigma_eta] = *spec.eta;
    auto self = is_eta_integral(w, v0, eta, sigma_eta);
    if (!self.member) raise("PreconditionNotVerified", "base plane fails the membership test");
    FieldPtr kf = join_fields(plane_field(v0), eta.field());
    if (kf->degree() != 2) raise("InconsistentInput", "eta probe expects a quadratic field");
    ExactScalar zero = to_field(ExactScalar(0), kf);
    ExactScalar gen = to_field(eta, kf);

    // base projector over K and base key
    auto key_of = [&](const Mat<ExactScalar>& rowsm) {
        Mat<ExactScalar> m = rowsm;
        rref(m);
        std::string key;
        for (const auto& row : m)
            for (const auto& x : row) key += x.key() + ";";
        return key;
    };
    Mat<ExactScalar> base_rows = mat_filled(2, n, zero);
    for (int j = 0; j < n; ++j) {
        base_rows[0][static_cast<size_t>(j)] = to_field(v0.v1[static_cast<size_t>(j)], kf);
        base_rows[1][static_cast<size_t>(j)] = to_field(v0.v2[static_cast<size_t>(j)], kf);
    }
    std::string key0 = key_of(base_rows);
    Mat<ExactScalar> b0 = mat_transpose(base_rows);
    Mat<ExactScalar> g0inv = mat_inverse(mat_mul(base_rows, b0));
    Mat<ExactScalar> proj = mat_mul(b0, mat_mul(g0inv, base_rows));

    ExactScalar cK = to_field(ExactScalar(Rat(1) - r2), kf);
    std::vector<std::vector<ExactScalar>> survivors;
    std::set<std::string> directions;  // projective dedupe of survivors
    std::vector<ExactScalar> vec(static_cast<size_t>(n), zero);
    std::function<void(int)> rec = [&](int pos) {
        if (pos == n) {
            int first = -1;
            for (int i = 0; i < n; ++i)
                if (!vec[static_cast<size_t>(i)].is_zero()) { first = i; break; }
            if (first < 0) return;
            // v^T P v >= c * v^T v, exact over K
            ExactScalar quad = zero, norm = zero;
            for (int i = 0; i < n; ++i) {
                norm += vec[static_cast<size_t>(i)] * vec[static_cast<size_t>(i)];
                for (int j = 0; j < n; ++j)
                    quad += vec[static_cast<size_t>(i)] * proj[static_cast<size_t>(i)][static_cast<size_t>(j)] * vec[static_cast<size_t>(j)];
            }
            if ((quad - cK * norm).sign() < 0) return;
            std::vector<ExactScalar> dir = vec;
            ExactScalar lead = dir[static_cast<size_t>(first)];
            for (auto& x : dir) x = x / lead;
            std::string key;
            for (const auto& x : dir) key += x.key() + ";";
            if (directions.insert(key).second) survivors.push_back(std::move(dir));
            return;
        }
        for (long a = -search_bound; a <= search_bound; ++a)
            for (long b2 = -search_bound; b2 <= search_bound; ++b2) {
                vec[static_cast<size_t>(pos)] = ExactScalar(Rat(a)) + gen * ExactScalar(Rat(b2));
                rec(pos + 1);
            }
    };
    rec(0);

    // division-free pair stage in raw quadratic coordinates x + y sqrt(m):
    // with G = W^T W (delta = det G > 0) and M'' = g0inv B0^T W adj(G) W^T B0,
    // the test lambda_min(M'' / delta) >= c becomes two sign conditions
    Int m0 = -kf->min_poly()[0];
    struct Q2 {
        Rat x, y;
    };
    auto q2_of = [&](const ExactScalar& e) {
        ExactScalar t = to_field(e, kf);
        return Q2{t.coords()[0], t.coords()[1]};
    };
    Rat m0q(m0);
    auto mul = [&](const Q2& a, const Q2& b) {
        return Q2{a.x * b.x + m0q * a.y * b.y, a.x * b.y + a.y * b.x};
    };
    auto add = [](const Q2& a, const Q2& b) { return Q2{a.x + b.x, a.y + b.y}; };
    auto sub = [](const Q2& a, const Q2& b) { return Q2{a.x - b.x, a.y - b.y}; };
    auto sgn = [&](const Q2& a) {
        // sign of x + y sqrt(m0), m0 > 1
        int sx = sign(a.x), sy = sign(a.y);
        if (sy == 0) return sx;
        if (sx == 0) return sy;
        if (sx == sy) return sx;
        int cmp = sign(m0q * a.y * a.y - a.x * a.x);  // |y sqrt(m)| vs |x|
        return cmp == 0 ? 0 : (cmp > 0 ? sy : sx);
    };

    std::vector<std::vector<Q2>> raw;
    raw.reserve(survivors.size());
    for (const auto& s : survivors) {
        std::vector<Q2> r;
        for (const auto& e : s) r.push_back(q2_of(e));
        raw.push_back(std::move(r));
    }
    std::vector<std::vector<Q2>> braw(2), g0raw(2, std::vector<Q2>(2));
    for (int r = 0; r < 2; ++r) {
        for (int t = 0; t < n; ++t) braw[static_cast<size_t>(r)].push_back(q2_of(base_rows[static_cast<size_t>(r)][static_cast<size_t>(t)]));
        for (int t = 0; t < 2; ++t) g0raw[static_cast<size_t>(r)][static_cast<size_t>(t)] = q2_of(g0inv[static_cast<size_t>(r)][static_cast<size_t>(t)]);
    }
    Q2 craw = q2_of(cK);

    std::set<std::string> seen;
    int count = 0;
    for (size_t i = 0; i < raw.size(); ++i)
        for (size_t j = i + 1; j < raw.size(); ++j) {
            const auto& u = raw[i];
            const auto& v = raw[j];
            Q2 guu{Rat(0), Rat(0)}, guv{Rat(0), Rat(0)}, gvv{Rat(0), Rat(0)};
            Q2 pu[2] = {{Rat(0), Rat(0)}, {Rat(0), Rat(0)}};
            Q2 pv[2] = {{Rat(0), Rat(0)}, {Rat(0), Rat(0)}};
            for (int t = 0; t < n; ++t) {
                guu = add(guu, mul(u[static_cast<size_t>(t)], u[static_cast<size_t>(t)]));
                guv = add(guv, mul(u[static_cast<size_t>(t)], v[static_cast<size_t>(t)]));
                gvv = add(gvv, mul(v[static_cast<size_t>(t)], v[static_cast<size_t>(t)]));
                for (int r = 0; r < 2; ++r) {
                    pu[r] = add(pu[r], mul(braw[static_cast<size_t>(r)][static_cast<size_t>(t)], u[static_cast<size_t>(t)]));
                    pv[r] = add(pv[r], mul(braw[static_cast<size_t>(r)][static_cast<size_t>(t)], v[static_cast<size_t>(t)]));
                }
            }
            Q2 delta = sub(mul(guu, gvv), mul(guv, guv));
            if (delta.x == 0 && delta.y == 0) continue;  // dependent pair
            Q2 nm[2][2];
            for (int r = 0; r < 2; ++r)
                for (int t = 0; t < 2; ++t) {
                    Q2 a = sub(mul(gvv, pu[t]), mul(guv, pv[t]));
                    Q2 b = sub(mul(guu, pv[t]), mul(guv, pu[t]));
                    nm[r][t] = add(mul(pu[r], a), mul(pv[r], b));
                }
            Q2 mm[2][2];
            for (int r = 0; r < 2; ++r)
                for (int t = 0; t < 2; ++t)
                    mm[r][t] = add(mul(g0raw[static_cast<size_t>(r)][0], nm[0][t]),
                                   mul(g0raw[static_cast<size_t>(r)][1], nm[1][t]));
            Q2 tr = add(mm[0][0], mm[1][1]);
            Q2 detm = sub(mul(mm[0][0], mm[1][1]), mul(mm[0][1], mm[1][0]));
            Q2 cd = mul(craw, delta);
            Q2 pscaled = add(sub(mul(cd, cd), mul(tr, cd)), detm);
            if (!(sgn(pscaled) >= 0 && sgn(sub(tr, add(cd, cd))) >= 0)) continue;

            Mat<ExactScalar> rowsm = mat_filled(2, n, zero);
            for (int t = 0; t < n; ++t) {
                rowsm[0][static_cast<size_t>(t)] = survivors[i][static_cast<size_t>(t)];
                rowsm[1][static_cast<size_t>(t)] = survivors[j][static_cast<size_t>(t)];
            }
            std::string key = key_of(rowsm);
            if (key == key0 || seen.count(key)) continue;
            seen.insert(key);
            SymplecticPlane cand;
            cand.v1 = survivors[i];
            cand.v2 = survivors[j];
            try {
                if (is_eta_integral(w, cand, eta, sigma_eta).member) ++count;
            } catch (const Error&) {
            }
        }
    return count;
}

}  // namespace flatlab
