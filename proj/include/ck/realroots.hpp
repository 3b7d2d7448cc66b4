#pragma once

// Dense univariate polynomials over Q and Sturm-sequence root isolation.

#include "ck/numeric.hpp"

#include <string>
#include <vector>

namespace ck {

/// Coefficients low to high; no trailing zeros (the zero polynomial is empty).
struct QPoly {
    std::vector<Rational> c;

    QPoly() = default;
    explicit QPoly(std::vector<Rational> coeffs);
    static QPoly x_minus(const Rational& r);

    int degree() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    const Rational& leading() const { return c.back(); }
    Rational operator()(const Rational& x) const;
    std::string str(const std::string& var = "x") const;

    friend bool operator==(const QPoly&, const QPoly&) = default;
};

QPoly operator+(const QPoly& a, const QPoly& b);
QPoly operator-(const QPoly& a, const QPoly& b);
QPoly operator*(const QPoly& a, const QPoly& b);
QPoly operator*(const Rational& s, const QPoly& a);
/// Polynomial long division; throws on a zero divisor.
std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b);
QPoly derivative(const QPoly& p);
QPoly monic(const QPoly& p);
QPoly gcd(QPoly a, QPoly b);
QPoly squarefree_part(const QPoly& p);

/// Chebyshev polynomial of the first kind, T_k(cos t) = cos(k t).
QPoly chebyshev_t(int k);

std::vector<QPoly> sturm_chain(const QPoly& p);
/// Number of distinct roots in (a, b]; a must not be a root.
int count_roots(const std::vector<QPoly>& chain, const Rational& a, const Rational& b);

/// A real root known to lie in [lo, hi]; lo == hi when it is exact.
struct RootInterval {
    Rational lo, hi;
    bool exact() const { return lo == hi; }
    Rational width() const { return hi - lo; }
    Rational center() const { return (lo + hi) / 2; }
};

/// Isolates every distinct root of p in the open interval (a, b), sorted
/// increasingly. Intervals lie strictly inside (a, b) and never touch.
std::vector<RootInterval> isolate_roots(const QPoly& p, const Rational& a, const Rational& b);
/// Bisects until hi - lo <= width. p must have a simple root in the interval.
RootInterval refine_root(const QPoly& p, RootInterval iv, const Rational& width);

}  // namespace ck
