#pragma once

// Truncated free associative algebra Z<<X_1..X_r>> / (degree > c), used as a
// faithful model of the free nilpotent group F_r / gamma_{c+1}.

#include "ck/numeric.hpp"
#include "ck/word.hpp"

#include <cstdint>
#include <vector>

namespace ck {

struct MagnusLayout {
    int rank = 0;
    int cls = 0;
    std::vector<std::size_t> offset;  // offset[k] = first index of degree k; offset[cls+1] = size
    std::vector<std::size_t> rpow;    // rank^k

    MagnusLayout() = default;
    MagnusLayout(int r, int c);
    std::size_t size() const { return offset[cls + 1]; }
    std::size_t block(int k) const { return rpow[k]; }
    /// Index of the monomial X_{l0} X_{l1} ... within its degree block.
    std::size_t monomial(const std::vector<int>& letters) const;
};

namespace detail {

inline void fma(std::int64_t& acc, std::int64_t a, std::int64_t b) { acc = checked::add(acc, checked::mul(a, b)); }
inline void fma(Rational& acc, const Rational& a, const Rational& b) { acc += a * b; }
inline bool is_zero(std::int64_t v) { return v == 0; }
inline bool is_zero(const Rational& v) { return v.is_zero(); }

}  // namespace detail

template <typename T>
using Series = std::vector<T>;

template <typename T>
Series<T> series_one(const MagnusLayout& L) {
    Series<T> s(L.size(), T(0));
    s[0] = T(1);
    return s;
}

template <typename T>
bool block_zero(const MagnusLayout& L, const Series<T>& a, int k) {
    for (std::size_t i = L.offset[k]; i < L.offset[k + 1]; ++i)
        if (!detail::is_zero(a[i])) return false;
    return true;
}

/// Lowest degree with a nonzero coefficient, or cls+1 for the zero series.
template <typename T>
int min_degree(const MagnusLayout& L, const Series<T>& a) {
    for (int k = 0; k <= L.cls; ++k)
        if (!block_zero(L, a, k)) return k;
    return L.cls + 1;
}

template <typename T>
Series<T> series_mul(const MagnusLayout& L, const Series<T>& a, const Series<T>& b) {
    Series<T> out(L.size(), T(0));
    std::vector<bool> za(L.cls + 1), zb(L.cls + 1);
    for (int k = 0; k <= L.cls; ++k) {
        za[k] = block_zero(L, a, k);
        zb[k] = block_zero(L, b, k);
    }
    for (int i = 0; i <= L.cls; ++i) {
        if (za[i]) continue;
        for (int j = 0; i + j <= L.cls; ++j) {
            if (zb[j]) continue;
            std::size_t bj = L.rpow[j];
            std::size_t base_out = L.offset[i + j];
            for (std::size_t u = 0; u < L.rpow[i]; ++u) {
                const T& au = a[L.offset[i] + u];
                if (detail::is_zero(au)) continue;
                std::size_t o = base_out + u * bj;
                for (std::size_t v = 0; v < bj; ++v) {
                    const T& bv = b[L.offset[j] + v];
                    if (!detail::is_zero(bv)) detail::fma(out[o + v], au, bv);
                }
            }
        }
    }
    return out;
}

template <typename T>
Series<T> series_sub(const Series<T>& a, const Series<T>& b) {
    Series<T> out = a;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] -= b[i];
    return out;
}

/// a * (1 + X_gen)^e.
template <typename T>
Series<T> series_mul_letter_power(const MagnusLayout& L, const Series<T>& a, int gen, std::int64_t e) {
    Series<T> out = a;
    std::size_t mono = 0;  // index of X_gen^k inside degree k
    for (int k = 1; k <= L.cls; ++k) {
        mono = mono * L.rank + gen;
        T coeff = T(binomial(e, k));
        if (detail::is_zero(coeff)) continue;
        for (int i = 0; i + k <= L.cls; ++i) {
            std::size_t base_out = L.offset[i + k];
            for (std::size_t u = 0; u < L.rpow[i]; ++u) {
                const T& au = a[L.offset[i] + u];
                if (!detail::is_zero(au)) detail::fma(out[base_out + u * L.rpow[k] + mono], au, coeff);
            }
        }
    }
    return out;
}

template <typename T>
Series<T> word_series(const MagnusLayout& L, const Word& w) {
    Series<T> s = series_one<T>(L);
    for (const auto& syl : w.syllables()) s = series_mul_letter_power(L, s, syl.gen, syl.exp);
    return s;
}

/// (1 + N)^e for e in Z, where `a` = 1 + N.
template <typename T>
Series<T> series_pow(const MagnusLayout& L, const Series<T>& a, std::int64_t e) {
    Series<T> n = a;
    n[0] -= T(1);
    int d = min_degree(L, n);
    Series<T> out = series_one<T>(L);
    if (d > L.cls || e == 0) return out;
    Series<T> nk = n;
    for (int k = 1; k * d <= L.cls; ++k) {
        T coeff = T(binomial(e, k));
        if (!detail::is_zero(coeff))
            for (std::size_t i = 0; i < out.size(); ++i)
                if (!detail::is_zero(nk[i])) detail::fma(out[i], nk[i], coeff);
        if ((k + 1) * d <= L.cls) nk = series_mul(L, nk, n);
    }
    return out;
}

template <typename T>
Series<T> series_inverse(const MagnusLayout& L, const Series<T>& a) {
    return series_pow(L, a, -1);
}

/// log(1 + N) = N - N^2/2 + N^3/3 - ...
Series<Rational> series_log(const MagnusLayout& L, const Series<Rational>& a);
/// exp(N) for N without constant term.
Series<Rational> series_exp(const MagnusLayout& L, const Series<Rational>& n);
/// Lie bracket ab - ba.
Series<Rational> series_bracket(const MagnusLayout& L, const Series<Rational>& a, const Series<Rational>& b);

Series<Rational> to_rational(const Series<std::int64_t>& s);

}  // namespace ck
