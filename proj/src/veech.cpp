#include "flatlab/veech.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "flatlab/error.hpp"

namespace flatlab {

namespace {

FieldPtr matrix_field(const Mat<ExactScalar>& g) {
    FieldPtr f = NumberField::rationals();
    for (const auto& row : g)
        for (const auto& x : row) f = join_fields(f, x.field());
    return f;
}

std::string matrix_key(const Mat<ExactScalar>& g) {
    return g[0][0].key() + "," + g[0][1].key() + "," + g[1][0].key() + "," + g[1][1].key();
}

Mat<ExactScalar> inverse2(const Mat<ExactScalar>& g) {
    ExactScalar det = det2(g);
    return mat2(g[1][1] / det, ExactScalar(0) - g[0][1] / det, ExactScalar(0) - g[1][0] / det,
                g[0][0] / det);
}

}  // namespace

bool is_stabilizer_element(const Mat<ExactScalar>& g, const FlatSurface& s) {
    if (!(det2(g) == ExactScalar(1)))
        raise("InconsistentInput", "stabilizer membership requires det g = 1 exactly");
    FieldPtr f = join_fields(s.field(), matrix_field(g));
    FlatSurface base = surface_to_field(s, f);
    return canonical_form(apply_matrix(g, base)) == canonical_form(base);
}

ExactScalar frobenius_sq(const Mat<ExactScalar>& g) {
    ExactScalar acc(0);
    for (const auto& row : g)
        for (const auto& x : row) acc += x * x;
    return acc;
}

Rat ball_threshold(double radius) {
    double t = 2.0 * std::cosh(radius);
    return Rat(t);  // exact binary64 value
}

StabilizerEnumeration enumerate_stabilizer(const FlatSurface& s, double radius,
                                           const EnumerationBudget& budget) {
    if (radius <= 0) raise("InconsistentInput", "radius must be positive");
    StabilizerEnumeration out;
    Rat threshold = ball_threshold(radius);

    FieldPtr f = s.field();
    FlatSurface base = surface_to_field(s, f);
    CanonicalForm base_form = canonical_form(base);
    long tests_left = budget.membership_tests;
    auto member = [&](const Mat<ExactScalar>& g) {
        if (tests_left <= 0) {
            out.budget_exhausted = true;
            return false;
        }
        --tests_left;
        ++out.membership_tests;
        FieldPtr fg = join_fields(f, matrix_field(g));
        if (fg->same_field(*f))
            return canonical_form(apply_matrix(g, base)) == base_form;
        FlatSurface lifted = surface_to_field(base, fg);
        return canonical_form(apply_matrix(g, lifted)) == canonical_form(lifted);
    };
    auto in_ball = [&](const Mat<ExactScalar>& g) {
        return ExactScalar::compare(frobenius_sq(g), ExactScalar(threshold)) <= 0;
    };

    // candidate periodic directions: vertex differences within polygons
    std::vector<Vec2> dirs;
    std::set<std::string> dir_seen;
    for (const auto& poly : base.polygons()) {
        int n = static_cast<int>(poly.size());
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (i == j) continue;
                Vec2 d = poly[static_cast<size_t>(j)] - poly[static_cast<size_t>(i)];
                if (d.is_zero()) continue;
                // canonical projective representative
                int sx = d.x.sign();
                if (sx < 0 || (sx == 0 && d.y.sign() < 0)) d = -d;
                ExactScalar lead = sx != 0 ? d.x : d.y;
                Vec2 nd{d.x / lead, d.y / lead};
                std::string key = nd.x.key() + "|" + nd.y.key();
                if (dir_seen.insert(key).second) dirs.push_back(nd);
            }
    }
    std::sort(dirs.begin(), dirs.end(), [](const Vec2& a, const Vec2& b) {
        return a.x.key() + "|" + a.y.key() < b.x.key() + "|" + b.y.key();
    });

    // parabolic generators from commensurable periodic directions
    std::map<std::string, Mat<ExactScalar>> pool;
    auto add_verified = [&](const Mat<ExactScalar>& g) {
        if (!in_ball(g)) return;
        std::string key = matrix_key(g);
        if (pool.count(key)) return;
        if (member(g)) pool.emplace(std::move(key), g);
    };
    Mat<ExactScalar> id = mat_identity(2, ExactScalar(0));
    pool.emplace(matrix_key(id), id);

    std::vector<Mat<ExactScalar>> gens;
    for (const Vec2& d : dirs) {
        ParabolicResult pr;
        try {
            pr = parabolic_in_direction(base, d, budget.trace_length, budget.trace_steps);
        } catch (const Error&) {
            continue;
        }
        if (!pr.matrix) continue;
        out.periodic_directions.push_back(d);
        Mat<ExactScalar> p = *pr.matrix;
        Mat<ExactScalar> pinv = inverse2(p);
        gens.push_back(p);
        gens.push_back(pinv);
        add_verified(p);
        add_verified(pinv);
    }
    // -I stabilizes many translation surfaces; test it once
    Mat<ExactScalar> neg = mat2(ExactScalar(-1), ExactScalar(0), ExactScalar(0), ExactScalar(-1));
    add_verified(neg);
    if (pool.count(matrix_key(neg))) gens.push_back(neg);

    // closure under products inside the ball
    std::vector<Mat<ExactScalar>> frontier;
    for (const auto& [k, g] : pool) frontier.push_back(g);
    for (int round = 0; round < budget.max_rounds && !frontier.empty(); ++round) {
        if (out.budget_exhausted) break;
        std::vector<Mat<ExactScalar>> fresh;
        for (const auto& g : frontier) {
            for (const auto& h : gens) {
                Mat<ExactScalar> gh = mat_mul(g, h);
                if (!in_ball(gh)) continue;
                std::string key = matrix_key(gh);
                if (pool.count(key)) continue;
                if (tests_left <= 0) {
                    out.budget_exhausted = true;
                    break;
                }
                if (member(gh)) {
                    pool.emplace(key, gh);
                    fresh.push_back(gh);
                }
            }
            if (out.budget_exhausted) break;
        }
        frontier = std::move(fresh);
    }
    if (!frontier.empty()) out.budget_exhausted = true;

    for (const auto& [k, g] : pool) out.elements.push_back(g);
    std::sort(out.elements.begin(), out.elements.end(),
              [](const Mat<ExactScalar>& a, const Mat<ExactScalar>& b) {
                  return matrix_key(a) < matrix_key(b);
              });
    return out;
}

CriticalExponentEstimate critical_exponent_estimate(
    const std::vector<Mat<ExactScalar>>& elements, const std::vector<double>& radii) {
    if (elements.empty()) raise("EmptyInput", "no elements to count");
    for (size_t i = 1; i < radii.size(); ++i)
        if (!(radii[i] > radii[i - 1])) raise("InconsistentInput", "radii must increase");
    CriticalExponentEstimate est;
    est.radii = radii;
    std::vector<ExactScalar> norms;
    norms.reserve(elements.size());
    for (const auto& g : elements) norms.push_back(frobenius_sq(g));
    for (double r : radii) {
        ExactScalar thr = ExactScalar(ball_threshold(r));
        long count = 0;
        for (const auto& n : norms)
            if (ExactScalar::compare(n, thr) <= 0) ++count;
        est.counts.push_back(count);
        est.delta_hat.push_back(count > 0 ? std::log(static_cast<double>(count)) / r : 0.0);
    }
    for (size_t i = 1; i < est.counts.size(); ++i)
        if (est.counts[i] < est.counts[i - 1])
            raise("InconsistentInput", "counts must be non-decreasing");
    return est;
}

}  // namespace flatlab
