#pragma once

// Random inputs shared by the unit tests and the acceptance run.

#include "ck/alexander.hpp"
#include "ck/word.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <complex>
#include <random>

namespace ck::testing {

inline Word random_word(std::mt19937& rng, int rank, int max_len, int max_exp = 2) {
    std::uniform_int_distribution<int> gen(0, rank - 1), ex(-max_exp, max_exp), len(0, max_len);
    std::vector<Syllable> s;
    for (int l = len(rng); l > 0; --l) {
        int e = ex(rng);
        if (e != 0) s.push_back({gen(rng), e});
    }
    return Word(free_reduce(s));
}

/// Seifert matrix U^T (P + N) U with P symmetric, N the standard block
/// [[0,1],[0,0]] repeated, U a random unimodular matrix; det(V - V^T) = 1.
inline SeifertMatrix random_seifert(std::mt19937& rng, int genus, int entry = 2) {
    const int n = 2 * genus;
    std::uniform_int_distribution<int> d(-entry, entry);
    IntMatrix v = IntMatrix::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) v(i, j) = v(j, i) = Integer(d(rng));
    for (int k = 0; k < genus; ++k) v(2 * k, 2 * k + 1) += 1;
    IntMatrix u = IntMatrix::Identity(n, n);
    std::uniform_int_distribution<int> idx(0, n > 0 ? n - 1 : 0), small(-1, 1);
    for (int step = 0; n > 1 && step < n; ++step) {
        int a = idx(rng), b = idx(rng);
        if (a == b) continue;
        u.row(a) += Integer(small(rng)) * u.row(b);
    }
    return {"random", IntMatrix(u.transpose() * v * u)};
}

inline SeifertMatrix trefoil_seifert() {
    IntMatrix v(2, 2);
    v << -1, 1, 0, -1;
    return {"trefoil", v};
}

inline SeifertMatrix figure_eight_seifert() {
    IntMatrix v(2, 2);
    v << 1, 1, 0, -1;
    return {"figure-eight", v};
}

// Floating-point signature of (1 - w) V + (1 - conj w) V^T from eigenvalues.
inline int numeric_signature(const SeifertMatrix& v, double theta) {
    const auto n = v.V.rows();
    if (n == 0) return 0;
    const std::complex<double> w = std::polar(1.0, theta);
    Eigen::MatrixXcd h(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            h(i, j) = (1.0 - w) * static_cast<double>(v.V(i, j)) + (1.0 - std::conj(w)) * static_cast<double>(v.V(j, i));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
    int s = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
        double e = es.eigenvalues()(i);
        if (e > 1e-9) ++s;
        else if (e < -1e-9) --s;
    }
    return s;
}

// Midpoint rule on a uniform grid in theta.
inline double sampled_integral(const SeifertMatrix& v, int points) {
    double sum = 0;
    for (int k = 0; k < points; ++k) sum += numeric_signature(v, (k + 0.5) * 2 * M_PI / points);
    return sum / points;
}

// One uniform random theta in each of `points` equal strata of the circle.
inline double monte_carlo_integral(const SeifertMatrix& v, int points, std::mt19937& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double sum = 0;
    for (int k = 0; k < points; ++k) sum += numeric_signature(v, (k + u(rng)) * 2 * M_PI / points);
    return sum / points;
}

}  // namespace ck::testing
