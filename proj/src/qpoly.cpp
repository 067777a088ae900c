#include "flatlab/qpoly.hpp"

#include <algorithm>

#include "flatlab/error.hpp"

namespace flatlab {

void QPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

QPoly QPoly::constant(const Rat& a) {
    QPoly p;
    if (a != 0) p.c_ = {a};
    return p;
}

QPoly QPoly::from_int_coeffs(const std::vector<Int>& coeffs) {
    std::vector<Rat> c;
    c.reserve(coeffs.size());
    for (const auto& z : coeffs) c.emplace_back(z);
    return QPoly(std::move(c));
}

QPoly QPoly::operator+(const QPoly& o) const {
    std::vector<Rat> c(std::max(c_.size(), o.c_.size()), Rat(0));
    for (size_t i = 0; i < c_.size(); ++i) c[i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) c[i] += o.c_[i];
    return QPoly(std::move(c));
}

QPoly QPoly::operator-(const QPoly& o) const { return *this + (-o); }

QPoly QPoly::operator-() const {
    std::vector<Rat> c(c_);
    for (auto& x : c) x = -x;
    return QPoly(std::move(c));
}

QPoly QPoly::operator*(const QPoly& o) const {
    if (is_zero() || o.is_zero()) return QPoly();
    std::vector<Rat> c(c_.size() + o.c_.size() - 1, Rat(0));
    for (size_t i = 0; i < c_.size(); ++i)
        for (size_t j = 0; j < o.c_.size(); ++j) c[i + j] += c_[i] * o.c_[j];
    return QPoly(std::move(c));
}

QPoly QPoly::operator*(const Rat& a) const {
    std::vector<Rat> c(c_);
    for (auto& x : c) x *= a;
    return QPoly(std::move(c));
}

QPoly QPoly::monic() const {
    if (is_zero()) return *this;
    return *this * (Rat(1) / leading());
}

QPoly QPoly::derivative() const {
    if (c_.size() <= 1) return QPoly();
    std::vector<Rat> c(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) c[i - 1] = c_[i] * Rat(static_cast<long>(i));
    return QPoly(std::move(c));
}

Rat QPoly::eval(const Rat& x) const {
    Rat acc(0);
    for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
}

std::pair<Rat, Rat> QPoly::eval_interval(const Rat& lo, const Rat& hi) const {
    Rat alo(0), ahi(0);
    for (size_t i = c_.size(); i-- > 0;) {
        // [alo,ahi] * [lo,hi]
        Rat p1 = alo * lo, p2 = alo * hi, p3 = ahi * lo, p4 = ahi * hi;
        Rat mlo = std::min(std::min(p1, p2), std::min(p3, p4));
        Rat mhi = std::max(std::max(p1, p2), std::max(p3, p4));
        alo = mlo + c_[i];
        ahi = mhi + c_[i];
    }
    return {alo, ahi};
}

std::pair<QPoly, QPoly> QPoly::divmod(const QPoly& d) const {
    if (d.is_zero()) raise("InconsistentInput", "polynomial division by zero");
    std::vector<Rat> r(c_);
    int dd = d.degree();
    int dr = static_cast<int>(r.size()) - 1;
    if (dr < dd) return {QPoly(), *this};
    std::vector<Rat> q(static_cast<size_t>(dr - dd + 1), Rat(0));
    for (int k = dr; k >= dd; --k) {
        Rat f = r[static_cast<size_t>(k)] / d.leading();
        q[static_cast<size_t>(k - dd)] = f;
        if (f == 0) continue;
        for (int j = 0; j <= dd; ++j) r[static_cast<size_t>(k - dd + j)] -= f * d[j];
    }
    return {QPoly(std::move(q)), QPoly(std::move(r))};
}

bool QPoly::divides(const QPoly& f) const { return f.divmod(*this).second.is_zero(); }

QPoly QPoly::scale_arg(const Rat& a) const {
    std::vector<Rat> c(c_);
    Rat pw(1);
    for (size_t i = 0; i < c.size(); ++i) {
        c[i] *= pw;
        pw *= a;
    }
    return QPoly(std::move(c));
}

std::string QPoly::str() const {
    if (is_zero()) return "0";
    std::string s;
    for (int i = degree(); i >= 0; --i) {
        const Rat& a = c_[static_cast<size_t>(i)];
        if (a == 0) continue;
        if (!s.empty()) s += (sign(a) > 0) ? " + " : " - ";
        else if (sign(a) < 0) s += "-";
        Rat m = abs(a);
        if (i == 0 || m != 1) s += to_string(m);
        if (i > 0) {
            if (m != 1) s += "*";
            s += "t";
            if (i > 1) s += "^" + std::to_string(i);
        }
    }
    return s;
}

QPoly gcd(const QPoly& a, const QPoly& b) {
    QPoly x = a, y = b;
    while (!y.is_zero()) {
        QPoly r = x.divmod(y).second;
        x = y;
        y = r;
    }
    return x.monic();
}

SturmChain::SturmChain(const QPoly& f) {
    if (f.is_zero()) raise("InconsistentInput", "Sturm chain of zero polynomial");
    chain_.push_back(f);
    QPoly d = f.derivative();
    if (!d.is_zero()) chain_.push_back(d);
    while (chain_.size() >= 2) {
        QPoly r = chain_[chain_.size() - 2].divmod(chain_.back()).second;
        if (r.is_zero()) break;
        chain_.push_back(-r);
    }
}

int SturmChain::variations(const Rat& x) const {
    int v = 0, last = 0;
    for (const auto& p : chain_) {
        int s = sign(p.eval(x));
        if (s == 0) continue;
        if (last != 0 && s != last) ++v;
        last = s;
    }
    return v;
}

int SturmChain::count_roots(const Rat& a, const Rat& b) const {
    return variations(a) - variations(b);
}

Rat SturmChain::root_bound() const {
    const QPoly& f = chain_.front();
    Rat m(0);
    for (int i = 0; i < f.degree(); ++i) m = std::max(m, Rat(abs(f[i])));
    return Rat(1) + m / abs(f.leading());
}

int SturmChain::count_all_real_roots() const {
    Rat b = root_bound();
    return count_roots(-b, b);
}

std::vector<Rat> rational_roots(const QPoly& f) {
    if (f.is_zero()) raise("InconsistentInput", "rational roots of zero polynomial");
    std::vector<Rat> roots;
    QPoly g = f;
    // factor out t^k
    while (g.degree() >= 1 && g[0] == 0) {
        std::vector<Rat> c(g.coeffs().begin() + 1, g.coeffs().end());
        g = QPoly(std::move(c));
        if (std::find(roots.begin(), roots.end(), Rat(0)) == roots.end())
            roots.emplace_back(0);
    }
    if (g.degree() < 1) return roots;
    // clear denominators
    Int den(1);
    for (const auto& c : g.coeffs()) den = lcm(den, c.get_den());
    std::vector<Int> zc;
    for (const auto& c : g.coeffs()) {
        Rat s = c * Rat(den);
        zc.push_back(s.get_num());
    }
    Int a0 = zc.front(), ad = zc.back();
    for (const Int& p : divisors(a0)) {
        for (const Int& q : divisors(ad)) {
            for (int s : {1, -1}) {
                Rat cand(s * p, q);
                cand.canonicalize();
                if (g.eval(cand) == 0 &&
                    std::find(roots.begin(), roots.end(), cand) == roots.end())
                    roots.push_back(cand);
            }
        }
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

std::vector<IsolatedRoot> isolate_real_roots(const QPoly& f) {
    if (f.is_zero()) raise("InconsistentInput", "root isolation of zero polynomial");
    if (f.degree() == 0) return {};
    QPoly g = (f * (Rat(1) / f.leading()));
    QPoly sq = gcd(g, g.derivative());
    if (sq.degree() > 0) g = g.divmod(sq).first.monic();

    std::vector<IsolatedRoot> out;
    // pull out rational roots so bisection midpoints are never roots
    for (const Rat& r : rational_roots(g)) {
        QPoly lin(std::vector<Rat>{-r, Rat(1)});
        g = g.divmod(lin).first;
        out.push_back({r, r, true});
    }
    if (g.degree() >= 1) {
        SturmChain st(g);
        Rat b = st.root_bound();
        std::vector<std::pair<Rat, Rat>> stack{{-b, b}};
        while (!stack.empty()) {
            auto [lo, hi] = stack.back();
            stack.pop_back();
            int n = st.count_roots(lo, hi);
            if (n == 0) continue;
            if (n == 1) {
                out.push_back({lo, hi, false});
                continue;
            }
            Rat mid = (lo + hi) / 2;
            stack.push_back({lo, mid});
            stack.push_back({mid, hi});
        }
        // shrink intervals until they avoid the extracted rational roots
        for (auto& iv : out) {
            if (iv.exact) continue;
            bool again = true;
            while (again) {
                again = false;
                for (const auto& rr : out) {
                    if (!rr.exact) continue;
                    if (rr.lo > iv.lo && rr.lo <= iv.hi) {
                        Rat mid = (iv.lo + iv.hi) / 2;
                        while (mid == rr.lo) mid = (iv.lo + mid) / 2;
                        if (st.count_roots(iv.lo, mid) == 1) iv.hi = mid;
                        else iv.lo = mid;
                        again = true;
                    }
                }
            }
        }
    }
    std::sort(out.begin(), out.end(),
              [](const IsolatedRoot& a, const IsolatedRoot& b) { return a.lo < b.lo; });
    return out;
}

}  // namespace flatlab
