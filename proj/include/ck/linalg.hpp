#pragma once

// Exact linear algebra over Z, Q and other exact scalar types.

#include "ck/numeric.hpp"

#include <optional>
#include <vector>

namespace ck {

/// Fraction-free determinant (Bareiss) for an integral-domain scalar whose
/// operator/ is exact division.
template <typename Scalar>
Scalar bareiss_determinant(Matrix<Scalar> m) {
    const Eigen::Index n = m.rows();
    if (n == 0) return Scalar(1);
    Scalar sign(1);
    Scalar prev(1);
    for (Eigen::Index k = 0; k < n - 1; ++k) {
        if (m(k, k) == Scalar(0)) {
            Eigen::Index p = k + 1;
            while (p < n && m(p, k) == Scalar(0)) ++p;
            if (p == n) return Scalar(0);
            m.row(k).swap(m.row(p));
            sign = -sign;
        }
        for (Eigen::Index i = k + 1; i < n; ++i) {
            for (Eigen::Index j = k + 1; j < n; ++j) {
                Scalar t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
                m(i, j) = t / prev;
            }
            m(i, k) = Scalar(0);
        }
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

/// Nonzero Smith invariants d_1 | d_2 | ... (all positive) of an integer matrix.
std::vector<Integer> smith_invariants(IntMatrix m);

struct AbelianInvariants {
    int rank = 0;
    std::vector<Integer> torsion;  // each > 1, d_i | d_{i+1}
};

/// Invariants of Z^cols / rowspan(m).
AbelianInvariants cokernel_invariants(const IntMatrix& m);

/// Rank of a rational matrix.
int rank(RatMatrix m);

/// Incrementally maintained subspace of Q^n in reduced row echelon form.
class RationalSubspace {
public:
    explicit RationalSubspace(std::size_t dim = 0) : dim_(dim) {}
    std::size_t dim() const { return dim_; }
    std::size_t rank() const { return rows_.size(); }
    const std::vector<std::vector<Rational>>& basis() const { return rows_; }

    /// Residue of v after reduction by the basis (zero iff v is in the span).
    std::vector<Rational> reduce(std::vector<Rational> v) const;
    bool contains(const std::vector<Rational>& v) const;
    /// Adds v; returns true if the span grew.
    bool insert(const std::vector<Rational>& v);

private:
    std::size_t dim_;
    std::vector<std::vector<Rational>> rows_;
    std::vector<std::size_t> pivots_;
};

}  // namespace ck
