#include "flatlab/qmatrix.hpp"

namespace flatlab {

Mat<Rat> q_from_z(const std::vector<std::vector<Int>>& a) {
    Mat<Rat> out;
    out.reserve(a.size());
    for (const auto& row : a) {
        std::vector<Rat> r;
        r.reserve(row.size());
        for (const auto& z : row) r.emplace_back(z);
        out.push_back(std::move(r));
    }
    return out;
}

void clear_denominators(const Mat<Rat>& a, std::vector<std::vector<Int>>& out, Int& den) {
    den = 1;
    for (const auto& row : a)
        for (const auto& q : row) den = lcm(den, q.get_den());
    out.clear();
    for (const auto& row : a) {
        std::vector<Int> r;
        for (const auto& q : row) {
            Rat s = q * Rat(den);
            r.push_back(s.get_num());
        }
        out.push_back(std::move(r));
    }
}

}  // namespace flatlab
