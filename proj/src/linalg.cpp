#include "ck/linalg.hpp"

#include <algorithm>
#include <utility>

namespace ck {

std::vector<Integer> smith_invariants(IntMatrix m) {
    using std::swap;
    const Eigen::Index rows = m.rows(), cols = m.cols();
    Eigen::Index t = 0;
    for (; t < std::min(rows, cols); ++t) {
        // pivot: smallest nonzero absolute value in the remaining block
        Eigen::Index pr = -1, pc = -1;
        Integer best = 0;
        for (Eigen::Index i = t; i < rows; ++i)
            for (Eigen::Index j = t; j < cols; ++j)
                if (m(i, j) != 0 && (pr < 0 || abs(m(i, j)) < best)) {
                    best = abs(m(i, j));
                    pr = i;
                    pc = j;
                }
        if (pr < 0) break;
        m.row(t).swap(m.row(pr));
        m.col(t).swap(m.col(pc));
        for (;;) {
            bool changed = false;
            for (Eigen::Index i = t + 1; i < rows; ++i) {
                if (m(i, t) == 0) continue;
                Integer q = m(i, t) / m(t, t);
                m.row(i) -= q * m.row(t);
                if (m(i, t) != 0) {
                    m.row(t).swap(m.row(i));
                    changed = true;
                }
            }
            for (Eigen::Index j = t + 1; j < cols; ++j) {
                if (m(t, j) == 0) continue;
                Integer q = m(t, j) / m(t, t);
                m.col(j) -= q * m.col(t);
                if (m(t, j) != 0) {
                    m.col(t).swap(m.col(j));
                    changed = true;
                }
            }
            if (changed) continue;
            // divisibility: the pivot must divide every remaining entry
            bool fixed = true;
            for (Eigen::Index i = t + 1; i < rows && fixed; ++i)
                for (Eigen::Index j = t + 1; j < cols && fixed; ++j)
                    if (m(i, j) % m(t, t) != 0) {
                        m.row(t) += m.row(i);
                        fixed = false;
                    }
            if (fixed) break;
        }
    }
    std::vector<Integer> d;
    for (Eigen::Index i = 0; i < t; ++i)
        if (m(i, i) != 0) d.push_back(abs(m(i, i)));
    std::sort(d.begin(), d.end());
    return d;
}

AbelianInvariants cokernel_invariants(const IntMatrix& m) {
    AbelianInvariants out;
    auto d = smith_invariants(m);
    out.rank = static_cast<int>(m.cols()) - static_cast<int>(d.size());
    for (const auto& x : d)
        if (x > 1) out.torsion.push_back(x);
    return out;
}

int rank(RatMatrix m) {
    int r = 0;
    const Eigen::Index rows = m.rows(), cols = m.cols();
    for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
        Eigen::Index p = r;
        while (p < rows && m(p, c).is_zero()) ++p;
        if (p == rows) continue;
        m.row(r).swap(m.row(p));
        for (Eigen::Index i = r + 1; i < rows; ++i) {
            if (m(i, c).is_zero()) continue;
            Rational f = m(i, c) / m(r, c);
            m.row(i) -= f * m.row(r);
        }
        ++r;
    }
    return r;
}

std::vector<Rational> RationalSubspace::reduce(std::vector<Rational> v) const {
    for (std::size_t k = 0; k < rows_.size(); ++k) {
        const Rational& f = v[pivots_[k]];
        if (f.is_zero()) continue;
        Rational fc = f;
        const auto& row = rows_[k];
        for (std::size_t j = 0; j < dim_; ++j)
            if (!row[j].is_zero()) v[j] -= fc * row[j];
    }
    return v;
}

bool RationalSubspace::contains(const std::vector<Rational>& v) const {
    auto r = reduce(v);
    return std::all_of(r.begin(), r.end(), [](const Rational& x) { return x.is_zero(); });
}

bool RationalSubspace::insert(const std::vector<Rational>& v) {
    auto r = reduce(v);
    std::size_t p = 0;
    while (p < dim_ && r[p].is_zero()) ++p;
    if (p == dim_) return false;
    Rational lead = r[p];
    for (auto& x : r) x /= lead;
    // keep the basis fully reduced
    for (auto& row : rows_) {
        if (row[p].is_zero()) continue;
        Rational f = row[p];
        for (std::size_t j = 0; j < dim_; ++j)
            if (!r[j].is_zero()) row[j] -= f * r[j];
    }
    rows_.push_back(std::move(r));
    pivots_.push_back(p);
    return true;
}

}  // namespace ck
