#include "ck/realroots.hpp"

#include <sstream>
#include <stdexcept>

namespace ck {

namespace {

void trim(std::vector<Rational>& c) {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

int sign_at(const QPoly& p, const Rational& x) { return p(x).sign(); }

int variations(const std::vector<QPoly>& chain, const Rational& x) {
    int v = 0, last = 0;
    for (const auto& p : chain) {
        int s = sign_at(p, x);
        if (s == 0) continue;
        if (last != 0 && s != last) ++v;
        last = s;
    }
    return v;
}

}  // namespace

QPoly::QPoly(std::vector<Rational> coeffs) : c(std::move(coeffs)) { trim(c); }

QPoly QPoly::x_minus(const Rational& r) { return QPoly({-r, Rational(1)}); }

Rational QPoly::operator()(const Rational& x) const {
    Rational acc = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
    return acc;
}

std::string QPoly::str(const std::string& var) const {
    if (c.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int k = degree(); k >= 0; --k) {
        if (c[k] == 0) continue;
        Rational a = c[k];
        if (!first) os << (a < 0 ? " - " : " + ");
        else if (a < 0) os << "-";
        if (a < 0) a = -a;
        if (k == 0 || a != 1) os << a.str() << (k ? "*" : "");
        if (k >= 1) os << var;
        if (k >= 2) os << "^" << k;
        first = false;
    }
    return os.str();
}

QPoly operator+(const QPoly& a, const QPoly& b) {
    std::vector<Rational> r(std::max(a.c.size(), b.c.size()));
    for (std::size_t i = 0; i < a.c.size(); ++i) r[i] += a.c[i];
    for (std::size_t i = 0; i < b.c.size(); ++i) r[i] += b.c[i];
    return QPoly(std::move(r));
}

QPoly operator-(const QPoly& a, const QPoly& b) { return a + Rational(-1) * b; }

QPoly operator*(const QPoly& a, const QPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> r(a.c.size() + b.c.size() - 1);
    for (std::size_t i = 0; i < a.c.size(); ++i)
        for (std::size_t j = 0; j < b.c.size(); ++j) r[i + j] += a.c[i] * b.c[j];
    return QPoly(std::move(r));
}

QPoly operator*(const Rational& s, const QPoly& a) {
    auto r = a.c;
    for (auto& x : r) x *= s;
    return QPoly(std::move(r));
}

std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    std::vector<Rational> r = a.c;
    if (a.degree() < b.degree()) return {QPoly{}, a};
    std::vector<Rational> q(a.degree() - b.degree() + 1);
    for (int k = a.degree() - b.degree(); k >= 0; --k) {
        Rational f = r[k + b.degree()] / b.leading();
        q[k] = f;
        if (f == 0) continue;
        for (int j = 0; j <= b.degree(); ++j) r[k + j] -= f * b.c[j];
    }
    return {QPoly(std::move(q)), QPoly(std::move(r))};
}

QPoly derivative(const QPoly& p) {
    std::vector<Rational> r;
    for (std::size_t k = 1; k < p.c.size(); ++k) r.push_back(Rational(static_cast<long>(k)) * p.c[k]);
    return QPoly(std::move(r));
}

QPoly monic(const QPoly& p) { return p.is_zero() ? p : Rational(1) / p.leading() * p; }

QPoly gcd(QPoly a, QPoly b) {
    while (!b.is_zero()) {
        auto r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a);
}

QPoly squarefree_part(const QPoly& p) {
    if (p.degree() < 1) return monic(p);
    return monic(divmod(p, gcd(p, derivative(p))).first);
}

QPoly chebyshev_t(int k) {
    QPoly t0({Rational(1)}), t1({Rational(0), Rational(1)});
    if (k == 0) return t0;
    const QPoly two_x({Rational(0), Rational(2)});
    for (int i = 1; i < k; ++i) {
        QPoly t2 = two_x * t1 - t0;
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    return t1;
}

std::vector<QPoly> sturm_chain(const QPoly& p) {
    std::vector<QPoly> chain{p, derivative(p)};
    while (!chain.back().is_zero()) {
        auto r = divmod(chain[chain.size() - 2], chain.back()).second;
        if (r.is_zero()) break;
        chain.push_back(Rational(-1) * r);
    }
    return chain;
}

int count_roots(const std::vector<QPoly>& chain, const Rational& a, const Rational& b) {
    return variations(chain, a) - variations(chain, b);
}

std::vector<RootInterval> isolate_roots(const QPoly& p, const Rational& a, const Rational& b) {
    if (p.is_zero()) throw std::domain_error("cannot isolate the roots of the zero polynomial");
    std::vector<RootInterval> out;
    QPoly q = squarefree_part(p);
    // strip roots sitting exactly on the endpoints so they can serve as Sturm bases
    for (const auto& e : {a, b})
        if (q.degree() >= 1 && q(e) == 0) q = divmod(q, QPoly::x_minus(e)).first;
    if (q.degree() < 1) return out;
    for (;;) {
        if (q.degree() == 1) {
            Rational r = -q.c[0] / q.c[1];
            if (a < r && r < b) out.push_back({r, r});
            break;
        }
        auto chain = sturm_chain(q);
        bool deflated = false;
        std::vector<std::pair<Rational, Rational>> work{{a, b}};
        std::vector<RootInterval> found;
        while (!work.empty() && !deflated) {
            auto [lo, hi] = work.back();
            work.pop_back();
            int n = count_roots(chain, lo, hi);
            if (n == 0) continue;
            if (n == 1) {
                found.push_back({lo, hi});
                continue;
            }
            Rational m = (lo + hi) / 2;
            if (q(m) == 0) {
                out.push_back({m, m});
                q = divmod(q, QPoly::x_minus(m)).first;
                deflated = true;
                break;
            }
            work.push_back({lo, m});
            work.push_back({m, hi});
        }
        if (deflated) {
            if (q.degree() < 1) break;
            continue;
        }
        for (auto& iv : found) {
            // half-open (lo, hi] may hold the root at hi itself
            if (q(iv.hi) == 0) iv.lo = iv.hi;
            // keep the endpoints off a, b and the roots that were stripped or deflated
            while (!iv.exact() && (p(iv.lo) == 0 || p(iv.hi) == 0 || iv.lo == a || iv.hi == b)) iv = refine_root(q, iv, iv.width() / 2);
            out.push_back(iv);
        }
        break;
    }
    // shrink q's intervals away from exact roots and from each other
    auto clashes = [&](std::size_t i) {
        for (std::size_t j = 0; j < out.size(); ++j)
            if (j != i && out[j].lo <= out[i].hi && out[i].lo <= out[j].hi) return true;
        return false;
    };
    for (bool again = true; again;) {
        again = false;
        for (std::size_t i = 0; i < out.size(); ++i)
            if (!out[i].exact() && clashes(i)) {
                out[i] = refine_root(q, out[i], out[i].width() / 2);
                again = true;
            }
    }
    std::sort(out.begin(), out.end(), [](const RootInterval& x, const RootInterval& y) { return x.lo < y.lo; });
    return out;
}

RootInterval refine_root(const QPoly& p, RootInterval iv, const Rational& width) {
    if (iv.exact()) return iv;
    QPoly q = squarefree_part(p);
    int s_hi = sign_at(q, iv.hi);
    if (s_hi == 0) return {iv.hi, iv.hi};
    int s_lo = sign_at(q, iv.lo);
    if (s_lo == 0) return {iv.lo, iv.lo};
    if (s_lo == s_hi) throw std::domain_error("refine_root: no sign change on the interval");
    while (iv.width() > width) {
        Rational m = (iv.lo + iv.hi) / 2;
        int s = sign_at(q, m);
        if (s == 0) return {m, m};
        if (s == s_lo) iv.lo = m;
        else iv.hi = m;
    }
    return iv;
}

}  // namespace ck
