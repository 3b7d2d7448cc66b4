#pragma once

// Levine-Tristram signatures of Seifert matrices: pointwise values, the
// step function on the circle, and certified integrals over it.

#include "ck/alexander.hpp"
#include "ck/realroots.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ck {

/// omega = ((1 - s^2) + 2 s i) / (1 + s^2) for rational s, or omega = -1.
struct CirclePoint {
    std::optional<Rational> s;  // nullopt means omega = -1

    static CirclePoint minus_one() { return {}; }
    static CirclePoint at(const Rational& s);
    /// Re(omega) = cos(theta).
    Rational cos_theta() const;
    CirclePoint conjugate() const;
    std::string str() const;
};

/// cos(theta) in the Chebyshev variable whose roots in [-1, 1) are exactly the
/// jump points on the upper half circle.
QPoly circle_polynomial(const SeifertMatrix& v);

/// Exact signature of (1 - w) V + (1 - conj w) V^T. Throws DomainError at
/// omega = 1 and at roots of the Alexander polynomial.
int lt_signature_at(const SeifertMatrix& v, const CirclePoint& w);

/// Signature of a symmetric rational matrix by congruence diagonalization.
int symmetric_signature(RatMatrix m);

struct SignatureFunction {
    /// Jumps strictly inside the upper half circle, by decreasing cos(theta).
    std::vector<RootInterval> jumps;
    /// Whether omega = -1 is itself a root.
    bool jump_at_minus_one = false;
    /// values[k] is the value on the arc after jumps[k-1], starting from omega = 1.
    std::vector<int> values;
    /// A rational sample point inside each arc.
    std::vector<CirclePoint> samples;
    QPoly polynomial;

    /// Value at the point with the given cos(theta); throws on a jump.
    int value_at_cos(const Rational& x) const;
    std::string csv() const;
    std::string svg(int width = 640, int height = 240) const;
};

SignatureFunction signature_function(const SeifertMatrix& v);

/// A real number enclosed in [lo, hi], with an exact description when one is known.
struct CertifiedReal {
    Rational lo, hi;
    std::string symbolic;

    Rational center() const { return (lo + hi) / 2; }
    Rational width() const { return hi - lo; }
    bool contains(const Rational& q) const { return lo <= q && q <= hi; }
    std::string json() const;
};

/// Integral of the signature over the circle, total measure 1.
CertifiedReal signature_integral(const SeifertMatrix& v, const Rational& tol);
CertifiedReal signature_integral(const SignatureFunction& f, const Rational& tol);

/// Enclosure of acos(x)/pi for x in [lo, hi] within [-1, 1].
std::pair<Rational, Rational> acos_over_pi(const Rational& lo, const Rational& hi, int precision_bits);

SeifertMatrix connected_sum(const SeifertMatrix& a, const SeifertMatrix& b);
SeifertMatrix mirror(const SeifertMatrix& v);
SeifertMatrix twist_knot(int m);
/// The (2, 2k+1) torus knot.
SeifertMatrix torus_knot_2(int k);

struct FamilyMember {
    SeifertMatrix matrix;
    CertifiedReal integral;
    std::vector<std::string> summands;
    Rational target;
};

struct DenseFamilyOptions {
    int max_summands = 4;
    int twist_range = 60;
};

/// Connected sums of generator knots whose integrals lie within eps of each target.
std::vector<FamilyMember> dense_family(const std::vector<Rational>& targets, const Rational& eps,
                                       const DenseFamilyOptions& opt = {});
/// A family whose integrals come within eps of every point of [lo, hi].
std::vector<FamilyMember> dense_family(const Rational& eps, const Rational& lo, const Rational& hi,
                                       const DenseFamilyOptions& opt = {});
/// Largest distance from a point of [lo, hi] to the nearest certified integral.
Rational coverage_radius(const std::vector<FamilyMember>& family, const Rational& lo, const Rational& hi);

SeifertMatrix seifert_from_json(const std::string& text);
std::string seifert_to_json(const SeifertMatrix& v);

}  // namespace ck
