#include "flatlab/exact_scalar.hpp"

#include <algorithm>

#include "flatlab/error.hpp"

namespace flatlab {

namespace {

// extended Euclid in Q[t]: returns (g, u, v) with u*a + v*b = g (g monic)
struct XGcd {
    QPoly g, u, v;
};
XGcd xgcd(const QPoly& a, const QPoly& b) {
    QPoly r0 = a, r1 = b;
    QPoly s0 = QPoly::constant(1), s1;
    QPoly t0, t1 = QPoly::constant(1);
    while (!r1.is_zero()) {
        auto [q, r] = r0.divmod(r1);
        QPoly s = s0 - q * s1;
        QPoly t = t0 - q * t1;
        r0 = r1; r1 = r;
        s0 = s1; s1 = s;
        t0 = t1; t1 = t;
    }
    Rat lead = r0.leading();
    Rat inv = Rat(1) / lead;
    return {r0 * inv, s0 * inv, t0 * inv};
}

std::vector<Rat> mul_mod(const FieldPtr& f, const std::vector<Rat>& a, const std::vector<Rat>& b) {
    int d = f->degree();
    std::vector<Rat> prod(static_cast<size_t>(2 * d - 1), Rat(0));
    for (int i = 0; i < d; ++i) {
        if (a[static_cast<size_t>(i)] == 0) continue;
        for (int j = 0; j < d; ++j) {
            if (b[static_cast<size_t>(j)] == 0) continue;
            prod[static_cast<size_t>(i + j)] += a[static_cast<size_t>(i)] * b[static_cast<size_t>(j)];
        }
    }
    std::vector<Rat> out(prod.begin(), prod.begin() + d);
    const auto& red = f->power_reduction();
    for (int k = d; k <= 2 * d - 2; ++k) {
        const Rat& c = prod[static_cast<size_t>(k)];
        if (c == 0) continue;
        const auto& row = red[static_cast<size_t>(k - d)];
        for (int i = 0; i < d; ++i) out[static_cast<size_t>(i)] += c * row[static_cast<size_t>(i)];
    }
    return out;
}

}  // namespace

ExactScalar::ExactScalar(const Rat& q) : field_(NumberField::rationals()), coords_{q} {
    coords_[0].canonicalize();
}

ExactScalar::ExactScalar(FieldPtr field, std::vector<Rat> coords)
    : field_(std::move(field)), coords_(std::move(coords)) {
    if (static_cast<int>(coords_.size()) != field_->degree())
        raise("InconsistentInput", "coordinate vector length does not match field degree");
    for (auto& c : coords_) c.canonicalize();
    reduce_tail_();
}

void ExactScalar::reduce_tail_() {
    if (field_->degree() == 1 && field_->min_poly() != std::vector<Int>{0, 1}) {
        // normalize any degree-1 field to the canonical rationals: the
        // generator is the integer root r, so value = c0 + 0*... with basis {1}
        field_ = NumberField::rationals();
    }
}

ExactScalar ExactScalar::generator(const FieldPtr& field) {
    if (field->degree() == 1) {
        // generator of a degree-1 field is its (integer) root
        return ExactScalar(Rat(-field->min_poly()[0]));
    }
    std::vector<Rat> c(static_cast<size_t>(field->degree()), Rat(0));
    c[1] = 1;
    return ExactScalar(field, std::move(c));
}

ExactScalar ExactScalar::sqrt_of(const Int& radicand) {
    if (radicand < 0) raise("InconsistentInput", "negative radicand");
    Int r;
    if (is_perfect_square(radicand, &r)) return ExactScalar(Rat(r));
    Int s, m0;
    strip_square_part(radicand, s, m0);
    auto f = NumberField::quadratic(m0, true);
    std::vector<Rat> c{Rat(0), Rat(s)};
    return ExactScalar(f, std::move(c));
}

bool ExactScalar::is_zero() const {
    for (const auto& c : coords_)
        if (c != 0) return false;
    return true;
}

bool ExactScalar::is_rational() const {
    for (size_t i = 1; i < coords_.size(); ++i)
        if (coords_[i] != 0) return false;
    return true;
}

Rat ExactScalar::rational_value() const {
    if (!is_rational()) raise("InconsistentInput", "scalar is irrational");
    return coords_[0];
}

bool ExactScalar::is_integer() const {
    return is_rational() && coords_[0].get_den() == 1;
}

int ExactScalar::sign() const {
    if (is_rational()) return flatlab::sign(coords_[0]);
    QPoly val(coords_);
    for (int iter = 0; iter < 100000; ++iter) {
        auto iv = field_->root_interval();
        auto [lo, hi] = val.eval_interval(iv.lo, iv.hi);
        if (flatlab::sign(lo) > 0) return 1;
        if (flatlab::sign(hi) < 0) return -1;
        field_->refine_root_interval();
    }
    raise("InconsistentInput", "sign refinement did not converge");
}

Int ExactScalar::floor() const {
    if (is_rational()) return floor_rat(coords_[0]);
    QPoly val(coords_);
    for (int iter = 0; iter < 100000; ++iter) {
        auto iv = field_->root_interval();
        auto [lo, hi] = val.eval_interval(iv.lo, iv.hi);
        Int flo = floor_rat(lo), fhi = floor_rat(hi);
        if (flo == fhi) return flo;
        field_->refine_root_interval();
    }
    raise("InconsistentInput", "floor refinement did not converge");
}

double ExactScalar::to_double() const {
    if (is_rational()) return flatlab::to_double(coords_[0]);
    QPoly val(coords_);
    Rat width_target(1, Int(1) << 62);
    for (int iter = 0; iter < 100000; ++iter) {
        auto iv = field_->root_interval();
        auto [lo, hi] = val.eval_interval(iv.lo, iv.hi);
        Rat w = hi - lo;
        Rat scale = std::max(Rat(abs(lo)), Rat(abs(hi)));
        if (scale == 0) return 0.0;
        if (w / scale < width_target) return flatlab::to_double((lo + hi) / 2);
        field_->refine_root_interval();
    }
    raise("InconsistentInput", "numeric refinement did not converge");
}

ExactScalar ExactScalar::operator-() const {
    std::vector<Rat> c(coords_);
    for (auto& x : c) x = -x;
    return ExactScalar(field_, std::move(c));
}

ExactScalar ExactScalar::one_like() const {
    std::vector<Rat> c(coords_.size(), Rat(0));
    c[0] = 1;
    return ExactScalar(field_, std::move(c));
}

ExactScalar ExactScalar::inverse() const {
    if (is_zero()) raise("InconsistentInput", "inverse of zero");
    if (is_rational()) return ExactScalar(Rat(1) / coords_[0]);
    QPoly a(coords_);
    auto res = xgcd(a, field_->min_poly_q());
    if (res.g.degree() != 0)
        raise("InconsistentInput", "reducible minimal polynomial detected in inversion");
    QPoly inv = res.u.divmod(field_->min_poly_q()).second;
    std::vector<Rat> c(static_cast<size_t>(field_->degree()), Rat(0));
    for (int i = 0; i <= inv.degree(); ++i) c[static_cast<size_t>(i)] = inv[i];
    return ExactScalar(field_, std::move(c));
}

ExactScalar operator+(const ExactScalar& a, const ExactScalar& b) {
    auto [x, y] = unify(a, b);
    std::vector<Rat> c(x.coords_);
    for (size_t i = 0; i < c.size(); ++i) c[i] += y.coords_[i];
    return ExactScalar(x.field_, std::move(c));
}

ExactScalar operator-(const ExactScalar& a, const ExactScalar& b) { return a + (-b); }

ExactScalar operator*(const ExactScalar& a, const ExactScalar& b) {
    auto [x, y] = unify(a, b);
    if (x.field_->degree() == 1) return ExactScalar(x.coords_[0] * y.coords_[0]);
    return ExactScalar(x.field_, mul_mod(x.field_, x.coords_, y.coords_));
}

ExactScalar operator/(const ExactScalar& a, const ExactScalar& b) {
    auto [x, y] = unify(a, b);
    return x * y.inverse();
}

int ExactScalar::compare(const ExactScalar& a, const ExactScalar& b) {
    return (a - b).sign();
}

bool operator==(const ExactScalar& a, const ExactScalar& b) {
    if (a.field_->same_field(*b.field_)) return a.coords_ == b.coords_;
    return ExactScalar::compare(a, b) == 0;
}

bool operator<(const ExactScalar& a, const ExactScalar& b) {
    return ExactScalar::compare(a, b) < 0;
}

bool operator<=(const ExactScalar& a, const ExactScalar& b) {
    return ExactScalar::compare(a, b) <= 0;
}

std::optional<std::pair<Int, Int>> compositum_radicands(const FieldPtr& f) {
    if (f->degree() != 4 || f->embedding_index() != 3) return std::nullopt;
    const auto& mp = f->min_poly();
    if (mp[1] != 0 || mp[3] != 0) return std::nullopt;
    Int sum2 = -mp[2], diff2 = mp[0];
    Int diff;
    if (sum2 % 2 != 0 || !is_perfect_square(diff2, &diff)) return std::nullopt;
    Int s = sum2 / 2;
    Int twom = s + diff;
    if (twom % 2 != 0) return std::nullopt;
    Int m = twom / 2, n = s - m;
    if (m <= 1 || n <= 1) return std::nullopt;
    if (m < n) std::swap(m, n);
    if (m == n) return std::nullopt;
    return std::make_pair(m, n);
}

ExactScalar to_field(const ExactScalar& x, const FieldPtr& f) {
    if (x.field()->same_field(*f)) return ExactScalar(f, x.coords());
    if (x.is_rational()) {
        std::vector<Rat> c(static_cast<size_t>(f->degree()), Rat(0));
        c[0] = x.coords()[0];
        return ExactScalar(f, std::move(c));
    }
    if (x.degree() == 2) {
        auto canon = canonicalize_quadratic(x.field());
        // x = c0 + c1 * gen, gen = gc + gs * sqrt(m0)
        Rat u = x.coords()[0] + x.coords()[1] * canon.gen_const;
        Rat v = x.coords()[1] * canon.gen_sqrt;
        if (canon.field->same_field(*f))
            return ExactScalar(f, {u, v});
        if (auto mn = compositum_radicands(f)) {
            auto [m, n] = *mn;
            // sqrt(m) = (a^3 - (3m+n) a) / (2(n-m)) for a = sqrt(m)+sqrt(n)
            Int m0 = canon.m0;
            if (m0 == m || m0 == n) {
                Int other = (m0 == m) ? n : m;
                Rat den = Rat(2 * (other - m0));
                std::vector<Rat> c(4, Rat(0));
                c[0] = u;
                c[1] = -Rat(3 * m0 + other) / den * v;
                c[3] = v / den;
                return ExactScalar(f, std::move(c));
            }
        }
    }
    raise("IncompatibleFields", "no embedding of " + x.field()->str() + " into " + f->str());
}

FieldPtr join_fields(const FieldPtr& a, const FieldPtr& b) {
    if (a->same_field(*b)) return a;
    if (a->degree() == 1) return b;
    if (b->degree() == 1) return a;
    if (a->degree() == 2 && b->degree() == 2) {
        auto ca = canonicalize_quadratic(a);
        auto cb = canonicalize_quadratic(b);
        if (ca.m0 == cb.m0) return ca.field;
        // biquadratic compositum Q(sqrt(m) + sqrt(n))
        Int m = std::max(ca.m0, cb.m0), n = std::min(ca.m0, cb.m0);
        std::vector<Int> mp(5, Int(0));
        mp[4] = 1;
        mp[2] = -2 * (m + n);
        mp[0] = (m - n) * (m - n);
        return NumberField::create(mp, 3);  // largest root = sqrt(m)+sqrt(n)
    }
    auto contains_quadratic = [](const FieldPtr& big, const FieldPtr& small) {
        auto mn = compositum_radicands(big);
        if (!mn) return false;
        Int m0 = canonicalize_quadratic(small).m0;
        return m0 == mn->first || m0 == mn->second;
    };
    if (a->degree() == 2 && b->degree() == 4 && contains_quadratic(b, a)) return b;
    if (b->degree() == 2 && a->degree() == 4 && contains_quadratic(a, b)) return a;
    raise("IncompatibleFields", "cannot join " + a->str() + " with " + b->str());
}

std::pair<ExactScalar, ExactScalar> unify(const ExactScalar& a, const ExactScalar& b) {
    if (a.field_->same_field(*b.field_)) return {a, b};
    FieldPtr f = join_fields(a.field_, b.field_);
    return {to_field(a, f), to_field(b, f)};
}

std::string ExactScalar::key() const {
    std::string s = "[";
    for (const auto& z : field_->min_poly()) s += z.get_str() + ",";
    s += "]#" + std::to_string(field_->embedding_index()) + ":";
    for (const auto& c : coords_) s += to_string(c) + ",";
    return s;
}

std::string ExactScalar::str() const {
    if (is_rational()) return to_string(coords_[0]);
    std::string s = "(";
    for (size_t i = 0; i < coords_.size(); ++i) {
        if (i) s += ", ";
        s += to_string(coords_[i]);
    }
    return s + ") in " + field_->str();
}

std::vector<Conjugate> galois_conjugates(const ExactScalar& x) {
    std::vector<Conjugate> out;
    const FieldPtr& f = x.field();
    int d = f->degree();
    if (d == 1) {
        out.push_back({true, x, {x.to_double(), 0.0}});
        return out;
    }
    // distinguished first, then remaining real embeddings
    out.push_back({true, x, {x.to_double(), 0.0}});
    for (int i = 0; i < f->real_root_count(); ++i) {
        if (i == f->embedding_index()) continue;
        auto fi = NumberField::create(f->min_poly(), i);
        ExactScalar xi(fi, x.coords());
        out.push_back({true, xi, {xi.to_double(), 0.0}});
    }
    int complex_pairs = (d - f->real_root_count()) / 2;
    if (complex_pairs > 0) {
        // Durand-Kerner for the complex roots of the minimal polynomial
        std::vector<std::complex<double>> coef;
        for (const auto& z : f->min_poly()) coef.push_back({z.get_d(), 0.0});
        int deg = d;
        std::vector<std::complex<double>> r(static_cast<size_t>(deg));
        std::complex<double> seed(0.4, 0.9);
        std::complex<double> p(1.0, 0.0);
        for (int i = 0; i < deg; ++i) {
            p *= seed;
            r[static_cast<size_t>(i)] = p;
        }
        auto evalp = [&](std::complex<double> z) {
            std::complex<double> acc(0.0, 0.0);
            for (int i = deg; i >= 0; --i) acc = acc * z + coef[static_cast<size_t>(i)];
            return acc;
        };
        for (int iter = 0; iter < 500; ++iter) {
            for (int i = 0; i < deg; ++i) {
                std::complex<double> den(1.0, 0.0);
                for (int j = 0; j < deg; ++j)
                    if (j != i) den *= r[static_cast<size_t>(i)] - r[static_cast<size_t>(j)];
                r[static_cast<size_t>(i)] -= evalp(r[static_cast<size_t>(i)]) / den;
            }
        }
        std::vector<std::complex<double>> cplx;
        for (const auto& z : r)
            if (z.imag() > 1e-8) cplx.push_back(z);
        std::sort(cplx.begin(), cplx.end(), [](auto u, auto v) {
            return u.real() < v.real() || (u.real() == v.real() && u.imag() < v.imag());
        });
        for (const auto& z : cplx) {
            // evaluate the coordinate polynomial at the complex root
            std::complex<double> acc(0.0, 0.0);
            for (size_t i = x.coords().size(); i-- > 0;)
                acc = acc * z + std::complex<double>(flatlab::to_double(x.coords()[i]), 0.0);
            out.push_back({false, ExactScalar(Rat(0)), acc});
            out.push_back({false, ExactScalar(Rat(0)), std::conj(acc)});
        }
    }
    return out;
}

ExactScalar make_mcmullen_parameter(const Rat& b, bool allow_rational) {
    Rat disc = b * b - b + 1;  // positive for every rational b
    Int n = disc.get_num(), d = disc.get_den();
    Int nroot, droot;
    bool is_sq = is_perfect_square(n, &nroot) && is_perfect_square(d, &droot);
    if (is_sq) {
        Rat a = b - 1 + Rat(nroot, droot);
        if (!allow_rational)
            raise("RationalParameter",
                  "a = " + to_string(a) + " is rational for b = " + to_string(b));
        return ExactScalar(a);
    }
    // sqrt(n/d) = sqrt(n*d)/d
    ExactScalar root = ExactScalar::sqrt_of(n * d);
    return ExactScalar(b - 1) + root * ExactScalar(Rat(1, d));
}

}  // namespace flatlab
