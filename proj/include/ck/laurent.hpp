#pragma once

// Laurent polynomials sum_k c_k t^k over an exact scalar ring.

#include "ck/numeric.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace ck {

template <typename S>
class Laurent {
public:
    Laurent() = default;
    Laurent(const S& c) {  // NOLINT: constants convert implicitly
        if (c != 0) coef_.push_back(c);
    }
    Laurent(int c) : Laurent(S(c)) {}  // NOLINT
    Laurent(int low, std::vector<S> coef) : low_(low), coef_(std::move(coef)) { normalize(); }

    static Laurent monomial(const S& c, int deg) { return Laurent(deg, {c}); }
    static Laurent t(int deg = 1) { return monomial(S(1), deg); }
    static Laurent from_map(const std::map<int, S>& m) {
        if (m.empty()) return {};
        std::vector<S> c(m.rbegin()->first - m.begin()->first + 1, S(0));
        for (const auto& [d, v] : m) c[d - m.begin()->first] = v;
        return Laurent(m.begin()->first, std::move(c));
    }

    bool is_zero() const { return coef_.empty(); }
    /// Nonzero constant times a power of t.
    bool is_unit() const { return coef_.size() == 1; }
    int low() const { return low_; }
    int high() const { return low_ + static_cast<int>(coef_.size()) - 1; }
    /// Euclidean size: high - low, or -1 for zero.
    int span() const { return static_cast<int>(coef_.size()) - 1; }
    const std::vector<S>& coefficients() const { return coef_; }
    S coeff(int d) const {
        if (d < low_ || d > high() || is_zero()) return S(0);
        return coef_[d - low_];
    }
    const S& leading() const { return coef_.back(); }
    const S& trailing() const { return coef_.front(); }

    std::map<int, S> to_map() const {
        std::map<int, S> m;
        for (std::size_t i = 0; i < coef_.size(); ++i)
            if (coef_[i] != 0) m[low_ + static_cast<int>(i)] = coef_[i];
        return m;
    }

    Laurent shifted(int k) const {
        Laurent r = *this;
        if (!is_zero()) r.low_ += k;
        return r;
    }
    /// p(t^-1)
    Laurent reflected() const {
        if (is_zero()) return {};
        std::vector<S> c(coef_.rbegin(), coef_.rend());
        return Laurent(-high(), std::move(c));
    }
    Laurent operator-() const {
        Laurent r = *this;
        for (auto& c : r.coef_) c = -c;
        return r;
    }

    Laurent& operator+=(const Laurent& o) { return *this = *this + o; }
    Laurent& operator-=(const Laurent& o) { return *this = *this - o; }
    Laurent& operator*=(const Laurent& o) { return *this = *this * o; }

    friend Laurent operator+(const Laurent& a, const Laurent& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        int lo = std::min(a.low_, b.low_), hi = std::max(a.high(), b.high());
        std::vector<S> c(hi - lo + 1, S(0));
        for (std::size_t i = 0; i < a.coef_.size(); ++i) c[a.low_ - lo + i] += a.coef_[i];
        for (std::size_t i = 0; i < b.coef_.size(); ++i) c[b.low_ - lo + i] += b.coef_[i];
        return Laurent(lo, std::move(c));
    }
    friend Laurent operator-(const Laurent& a, const Laurent& b) { return a + (-b); }
    friend Laurent operator*(const Laurent& a, const Laurent& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<S> c(a.coef_.size() + b.coef_.size() - 1, S(0));
        for (std::size_t i = 0; i < a.coef_.size(); ++i) {
            if (a.coef_[i] == 0) continue;
            for (std::size_t j = 0; j < b.coef_.size(); ++j) c[i + j] += a.coef_[i] * b.coef_[j];
        }
        return Laurent(a.low_ + b.low_, std::move(c));
    }
    friend bool operator==(const Laurent& a, const Laurent& b) {
        return a.coef_ == b.coef_ && (a.is_zero() || a.low_ == b.low_);
    }
    friend bool operator!=(const Laurent& a, const Laurent& b) { return !(a == b); }

    /// Division with remainder: a = q*b + r with span(r) < span(b). Needs
    /// exact division of leading coefficients (always true over a field).
    friend std::pair<Laurent, Laurent> divmod(const Laurent& a, const Laurent& b) {
        if (b.is_zero()) throw std::domain_error("Laurent division by zero");
        if (a.is_zero()) return {{}, {}};
        // work with polynomials a0 = t^-a.low a, b0 = t^-b.low b
        std::vector<S> r(a.coef_);
        const int n = static_cast<int>(b.coef_.size());
        std::vector<S> q;
        if (static_cast<int>(r.size()) >= n) q.assign(r.size() - n + 1, S(0));
        for (int i = static_cast<int>(r.size()) - 1; i >= n - 1; --i) {
            if (r[i] == 0) continue;
            S f = r[i] / b.leading();
            if (f * b.leading() != r[i]) throw std::domain_error("inexact Laurent division");
            q[i - n + 1] = f;
            for (int j = 0; j < n; ++j) r[i - n + 1 + j] -= f * b.coef_[j];
        }
        Laurent quo(a.low_ - b.low_, std::move(q));
        Laurent rem(a.low_, std::move(r));
        return {quo, rem};
    }
    /// Exact quotient; throws if b does not divide a.
    friend Laurent operator/(const Laurent& a, const Laurent& b) {
        auto [q, r] = divmod(a, b);
        if (!r.is_zero()) throw std::domain_error("Laurent quotient is not exact");
        return q;
    }
    friend Laurent operator%(const Laurent& a, const Laurent& b) { return divmod(a, b).second; }

    template <typename T>
    T evaluate(const T& x) const {
        T acc(0);
        for (auto it = coef_.rbegin(); it != coef_.rend(); ++it) acc = acc * x + T(*it);
        if (is_zero()) return acc;
        T p(1);
        int e = low_;
        T base = e < 0 ? T(1) / x : x;
        for (int k = 0; k < (e < 0 ? -e : e); ++k) p *= base;
        return acc * p;
    }

    std::string str(const std::string& var = "t") const {
        if (is_zero()) return "0";
        std::string out;
        for (int d = high(); d >= low_; --d) {
            S c = coeff(d);
            if (c == 0) continue;
            bool neg = c < 0;
            S a = neg ? S(-c) : c;
            if (out.empty())
                out += neg ? "-" : "";
            else
                out += neg ? " - " : " + ";
            std::string cs = to_string(a);
            if (d == 0) {
                out += cs;
                continue;
            }
            if (a != 1) out += cs + "*";
            out += var;
            if (d != 1) out += "^" + std::to_string(d);
        }
        return out;
    }

private:
    void normalize() {
        std::size_t first = 0;
        while (first < coef_.size() && coef_[first] == 0) ++first;
        if (first == coef_.size()) {
            coef_.clear();
            low_ = 0;
            return;
        }
        while (coef_.back() == 0) coef_.pop_back();
        if (first) coef_.erase(coef_.begin(), coef_.begin() + static_cast<std::ptrdiff_t>(first));
        low_ += static_cast<int>(first);
    }

    int low_ = 0;
    std::vector<S> coef_;
};

using LaurentQ = Laurent<Rational>;
using LaurentZ = Laurent<Integer>;

/// Associate with lowest degree 0 and leading coefficient 1 (field case).
inline LaurentQ monic_normal(const LaurentQ& p) {
    if (p.is_zero()) return p;
    LaurentQ r = p.shifted(-p.low());
    return r * LaurentQ(Rational(1) / r.leading());
}

/// Associate with lowest degree 0 and positive leading coefficient.
template <typename S>
Laurent<S> unit_normal(const Laurent<S>& p) {
    if (p.is_zero()) return p;
    Laurent<S> r = p.shifted(-p.low());
    return r.leading() < 0 ? -r : r;
}

inline LaurentQ gcd(LaurentQ a, LaurentQ b) {
    while (!b.is_zero()) {
        LaurentQ r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return monic_normal(a);
}

/// Equal up to multiplication by c t^k with c a nonzero scalar.
inline bool associated(const LaurentQ& a, const LaurentQ& b) { return monic_normal(a) == monic_normal(b); }

inline LaurentQ to_rational(const LaurentZ& p) {
    std::vector<Rational> c(p.coefficients().begin(), p.coefficients().end());
    return LaurentQ(p.low(), std::move(c));
}

template <typename S>
using LaurentMatrix = Matrix<Laurent<S>>;

}  // namespace ck

namespace Eigen {
template <typename S>
struct NumTraits<ck::Laurent<S>> : GenericNumTraits<ck::Laurent<S>> {
    using Real = ck::Laurent<S>;
    using NonInteger = ck::Laurent<S>;
    using Nested = ck::Laurent<S>;
    using Literal = ck::Laurent<S>;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 4,
        AddCost = 16,
        MulCost = 32
    };
};
}  // namespace Eigen
