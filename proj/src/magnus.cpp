#include "ck/magnus.hpp"

namespace ck {

MagnusLayout::MagnusLayout(int r, int c) : rank(r), cls(c) {
    rpow.assign(c + 2, 1);
    for (int k = 1; k <= c + 1; ++k) rpow[k] = rpow[k - 1] * static_cast<std::size_t>(r);
    offset.assign(c + 2, 0);
    for (int k = 1; k <= c + 1; ++k) offset[k] = offset[k - 1] + rpow[k - 1];
}

std::size_t MagnusLayout::monomial(const std::vector<int>& letters) const {
    std::size_t idx = 0;
    for (int l : letters) idx = idx * static_cast<std::size_t>(rank) + static_cast<std::size_t>(l);
    return idx;
}

Series<Rational> series_log(const MagnusLayout& L, const Series<Rational>& a) {
    Series<Rational> n = a;
    n[0] -= 1;
    Series<Rational> out(L.size(), Rational(0));
    int d = min_degree(L, n);
    if (d > L.cls) return out;
    Series<Rational> nk = n;
    for (int k = 1; k * d <= L.cls; ++k) {
        Rational coeff(k % 2 == 1 ? 1 : -1, k);
        for (std::size_t i = 0; i < out.size(); ++i)
            if (!nk[i].is_zero()) out[i] += coeff * nk[i];
        if ((k + 1) * d <= L.cls) nk = series_mul(L, nk, n);
    }
    return out;
}

Series<Rational> series_exp(const MagnusLayout& L, const Series<Rational>& n) {
    Series<Rational> out = series_one<Rational>(L);
    int d = min_degree(L, n);
    if (d > L.cls) return out;
    Series<Rational> nk = n;
    Rational fact = 1;
    for (int k = 1; k * d <= L.cls; ++k) {
        fact *= k;
        for (std::size_t i = 0; i < out.size(); ++i)
            if (!nk[i].is_zero()) out[i] += nk[i] / fact;
        if ((k + 1) * d <= L.cls) nk = series_mul(L, nk, n);
    }
    return out;
}

Series<Rational> series_bracket(const MagnusLayout& L, const Series<Rational>& a, const Series<Rational>& b) {
    return series_sub(series_mul(L, a, b), series_mul(L, b, a));
}

Series<Rational> to_rational(const Series<std::int64_t>& s) {
    Series<Rational> out(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) out[i] = Rational(s[i]);
    return out;
}

}  // namespace ck
