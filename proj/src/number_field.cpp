#include "flatlab/number_field.hpp"

#include "flatlab/error.hpp"

namespace flatlab {

FieldPtr NumberField::create(std::vector<Int> min_poly, int embedding_index) {
    while (min_poly.size() > 1 && min_poly.back() == 0) min_poly.pop_back();
    if (min_poly.size() < 2) raise("InconsistentInput", "minimal polynomial must be nonconstant");
    if (min_poly.back() != 1) raise("InconsistentInput", "minimal polynomial must be monic");
    auto f = std::shared_ptr<NumberField>(new NumberField());
    f->min_poly_ = std::move(min_poly);
    f->degree_ = static_cast<int>(f->min_poly_.size()) - 1;
    f->min_poly_q_ = QPoly::from_int_coeffs(f->min_poly_);

    if (f->degree_ == 2) {
        // irreducible over Q iff the discriminant is not a perfect square
        Int p = f->min_poly_[1], q = f->min_poly_[0];
        if (is_perfect_square(p * p - 4 * q))
            raise("InconsistentInput", "reducible quadratic minimal polynomial");
    }

    auto roots = isolate_real_roots(f->min_poly_q_);
    f->real_root_count_ = static_cast<int>(roots.size());
    if (f->degree_ == 1) {
        // root is -a0 exactly
        f->exact_root_ = true;
        f->lo_ = f->hi_ = Rat(-f->min_poly_[0]);
        f->embedding_index_ = 0;
        if (embedding_index != 0) raise("InconsistentInput", "degree-1 field has a single root");
        return f;
    }
    if (f->degree_ >= 2 && !rational_roots(f->min_poly_q_).empty())
        raise("InconsistentInput", "minimal polynomial has a rational root");
    if (embedding_index < 0 || embedding_index >= f->real_root_count_)
        raise("InconsistentInput", "embedding index does not select a real root");
    f->embedding_index_ = embedding_index;
    f->lo_ = roots[static_cast<size_t>(embedding_index)].lo;
    f->hi_ = roots[static_cast<size_t>(embedding_index)].hi;
    f->exact_root_ = false;

    // t^(d+k) reduced mod the minimal polynomial
    int d = f->degree_;
    std::vector<Rat> pw(static_cast<size_t>(d), Rat(0));
    // pw = t^(d-1) initially; multiply by t and reduce, d-1 times
    pw[static_cast<size_t>(d - 1)] = 1;
    for (int k = 0; k <= d - 2; ++k) {
        std::vector<Rat> nxt(static_cast<size_t>(d), Rat(0));
        // multiply by t
        Rat top = pw[static_cast<size_t>(d - 1)];
        for (int i = d - 1; i >= 1; --i) nxt[static_cast<size_t>(i)] = pw[static_cast<size_t>(i - 1)];
        nxt[0] = 0;
        // reduce top * t^d = -top * (a_{d-1} t^{d-1} + ... + a_0)
        for (int i = 0; i < d; ++i) nxt[static_cast<size_t>(i)] -= top * Rat(f->min_poly_[static_cast<size_t>(i)]);
        f->reduction_.push_back(nxt);
        pw = std::move(nxt);
    }
    return f;
}

FieldPtr NumberField::rationals() {
    static FieldPtr q = create({0, 1}, 0);
    return q;
}

FieldPtr NumberField::quadratic(const Int& radicand, bool positive_root) {
    if (radicand <= 1) raise("InconsistentInput", "quadratic radicand must exceed 1");
    return create({-radicand, 0, 1}, positive_root ? 1 : 0);
}

NumberField::RootInterval NumberField::root_interval() const {
    std::lock_guard<std::mutex> g(mu_);
    return {lo_, hi_, exact_root_};
}

void NumberField::refine_root_interval() const {
    std::lock_guard<std::mutex> g(mu_);
    if (exact_root_) return;
    Rat mid = (lo_ + hi_) / 2;
    // no rational roots for degree >= 2, so the sign at mid is nonzero
    int sm = sign(min_poly_q_.eval(mid));
    int sl = sign(min_poly_q_.eval(lo_));
    if (sm == sl) lo_ = mid;
    else hi_ = mid;
}

std::string NumberField::str() const {
    if (degree_ == 1) return "Q";
    return "Q[t]/(" + min_poly_q_.str() + "), root #" + std::to_string(embedding_index_);
}

CanonicalQuadratic canonicalize_quadratic(const FieldPtr& f) {
    if (f->degree() != 2) raise("InconsistentInput", "canonicalize_quadratic needs a degree-2 field");
    Int p = f->min_poly()[1], q = f->min_poly()[0];
    Int disc = p * p - 4 * q;
    if (disc <= 0) raise("InconsistentInput", "quadratic field has no real embedding");
    Int s, m0;
    strip_square_part(disc, s, m0);
    // roots (-p +- s*sqrt(m0)) / 2; index 1 is the larger, i.e. the + sign
    int eps = (f->embedding_index() == 1) ? 1 : -1;
    CanonicalQuadratic out;
    out.m0 = m0;
    out.field = NumberField::quadratic(m0, true);
    out.gen_const = Rat(-p, 2);
    out.gen_sqrt = Rat(eps * s, 2);
    out.gen_const.canonicalize();
    out.gen_sqrt.canonicalize();
    return out;
}

}  // namespace flatlab
