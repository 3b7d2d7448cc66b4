#include "ck/signatures.hpp"

#include "ck/errors.hpp"

#include <mpfr.h>
#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ck {

CirclePoint CirclePoint::at(const Rational& s) {
    if (s == 0) throw DomainError("s = 0 is omega = 1, where the signature is not defined");
    return {s};
}

Rational CirclePoint::cos_theta() const {
    if (!s) return Rational(-1);
    Rational s2 = *s * *s;
    return (1 - s2) / (1 + s2);
}

CirclePoint CirclePoint::conjugate() const {
    if (!s) return *this;
    return {Rational(-*s)};
}

std::string CirclePoint::str() const {
    if (!s) return "omega=-1";
    return "s=" + s->str();
}

QPoly circle_polynomial(const SeifertMatrix& v) {
    LaurentQ d = alexander_poly_from_seifert(v);
    if (d.low() != -d.high()) throw DomainError("Alexander polynomial is not centred");
    std::vector<Rational> none;
    QPoly p({d.coeff(0)});
    for (int k = 1; k <= d.high(); ++k) {
        if (d.coeff(k) != d.coeff(-k)) throw DomainError("Alexander polynomial is not symmetric");
        p = p + Rational(2) * d.coeff(k) * chebyshev_t(k);
    }
    return p;
}

int symmetric_signature(RatMatrix m) {
    const Eigen::Index n = m.rows();
    int pos = 0, neg = 0;
    auto swap_index = [&](Eigen::Index a, Eigen::Index b) {
        if (a == b) return;
        m.row(a).swap(m.row(b));
        m.col(a).swap(m.col(b));
    };
    for (Eigen::Index k = 0; k < n; ++k) {
        Eigen::Index p = k;
        while (p < n && m(p, p) == 0) ++p;
        if (p == n) {
            // all remaining diagonal entries vanish; make one nonzero from an off-diagonal pair
            Eigen::Index pi = -1, pj = -1;
            for (Eigen::Index i = k; i < n && pi < 0; ++i)
                for (Eigen::Index j = i + 1; j < n; ++j)
                    if (m(i, j) != 0) {
                        pi = i;
                        pj = j;
                        break;
                    }
            if (pi < 0) break;
            m.row(pi) += m.row(pj);
            m.col(pi) += m.col(pj);
            p = pi;
        }
        swap_index(k, p);
        const Rational piv = m(k, k);
        (piv > 0 ? pos : neg) += 1;
        for (Eigen::Index r = k + 1; r < n; ++r) {
            if (m(r, k) == 0) continue;
            Rational f = m(r, k) / piv;
            m.row(r) -= f * m.row(k);
            m.col(r) -= f * m.col(k);
        }
    }
    return pos - neg;
}

int lt_signature_at(const SeifertMatrix& v, const CirclePoint& w) {
    v.validate();
    const Eigen::Index n = v.V.rows();
    if (n == 0) return 0;
    if (w.s && *w.s == 0) throw DomainError("omega = 1");
    if (circle_polynomial(v)(w.cos_theta()) == 0)
        throw DomainError("omega = " + w.str() + " is a jump point; evaluate on an arc instead");
    RatMatrix vq = v.V.cast<Rational>();
    RatMatrix sym = vq + vq.transpose();
    if (!w.s) return symmetric_signature(sym);
    // (1 - w) V + (1 - conj w) V^T = 2s/(1+s^2) [ s (V + V^T) - i (V - V^T) ]
    RatMatrix a = *w.s * sym;
    RatMatrix b = vq.transpose() - vq;
    RatMatrix real(2 * n, 2 * n);
    real << a, -b, b, a;
    int sig = symmetric_signature(real) / 2;
    return *w.s > 0 ? sig : -sig;
}

namespace {

Rational x_of(const Rational& s) {
    Rational s2 = s * s;
    return (1 - s2) / (1 + s2);
}

// s > 0 with lo < x(s) < hi
Rational sample_in(const Rational& lo, const Rational& hi) {
    Rational s_low = 0, s_high = 1;
    while (x_of(s_high) >= hi) {
        s_low = s_high;
        s_high *= 2;
    }
    if (x_of(s_high) > lo) return s_high;
    for (;;) {
        Rational mid = (s_low + s_high) / 2;
        Rational x = x_of(mid);
        if (x >= hi) s_low = mid;
        else if (x <= lo) s_high = mid;
        else return mid;
    }
}

}  // namespace

SignatureFunction signature_function(const SeifertMatrix& v) {
    SignatureFunction f;
    f.polynomial = circle_polynomial(v);
    f.jump_at_minus_one = f.polynomial(Rational(-1)) == 0;
    f.jumps = isolate_roots(f.polynomial, Rational(-1), Rational(1));
    std::reverse(f.jumps.begin(), f.jumps.end());
    Rational upper = 1;
    for (std::size_t k = 0; k <= f.jumps.size(); ++k) {
        Rational lower = k < f.jumps.size() ? f.jumps[k].hi : Rational(-1);
        auto pt = CirclePoint::at(sample_in(lower, upper));
        f.samples.push_back(pt);
        f.values.push_back(lt_signature_at(v, pt));
        if (k < f.jumps.size()) upper = f.jumps[k].lo;
    }
    return f;
}

int SignatureFunction::value_at_cos(const Rational& x) const {
    if (x >= 1 || x < -1) throw DomainError("cos(theta) must lie in [-1, 1)");
    if (x == -1 && jump_at_minus_one) throw DomainError("omega = -1 is a jump point");
    std::size_t arc = 0;
    for (const auto& j : jumps) {
        if (j.lo <= x && x <= j.hi) throw DomainError("point lies in an isolating interval of a jump");
        if (j.lo > x) ++arc;
    }
    return values[arc];
}

std::string SignatureFunction::csv() const {
    std::ostringstream os;
    os << "cos_lo,cos_hi,value\n";
    Rational upper = 1;
    for (std::size_t k = 0; k < values.size(); ++k) {
        Rational lower = k < jumps.size() ? jumps[k].hi : Rational(-1);
        os << lower.str() << "," << upper.str() << "," << values[k] << "\n";
        if (k < jumps.size()) upper = jumps[k].lo;
    }
    return os.str();
}

std::string SignatureFunction::svg(int width, int height) const {
    // theta/pi on the horizontal axis; display only, so doubles suffice
    int vmax = 2;
    for (int v : values) vmax = std::max(vmax, std::abs(v));
    const double mx = 40, my = 20, w = width - 2 * mx, h = height - 2 * my;
    auto px = [&](double t) { return mx + t * w; };
    auto py = [&](double v) { return my + (vmax - v) / (2.0 * vmax) * h; };
    std::vector<double> cuts{0.0};
    for (const auto& j : jumps) cuts.push_back(std::acos(static_cast<double>(j.center())) / M_PI);
    cuts.push_back(1.0);
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\">\n";
    os << "<line x1=\"" << px(0) << "\" y1=\"" << py(0) << "\" x2=\"" << px(1) << "\" y2=\"" << py(0)
       << "\" stroke=\"#999\"/>\n";
    os << "<polyline fill=\"none\" stroke=\"black\" points=\"";
    for (std::size_t k = 0; k < values.size(); ++k)
        os << px(cuts[k]) << "," << py(values[k]) << " " << px(cuts[k + 1]) << "," << py(values[k]) << " ";
    os << "\"/>\n";
    os << "<text x=\"" << px(0) << "\" y=\"" << height - 4 << "\" font-size=\"10\">0</text>\n";
    os << "<text x=\"" << px(1) << "\" y=\"" << height - 4 << "\" font-size=\"10\">pi</text>\n";
    os << "<text x=\"4\" y=\"" << py(vmax) + 4 << "\" font-size=\"10\">" << vmax << "</text>\n";
    os << "<text x=\"4\" y=\"" << py(-vmax) + 4 << "\" font-size=\"10\">" << -vmax << "</text>\n";
    os << "</svg>\n";
    return os.str();
}

std::string CertifiedReal::json() const {
    nlohmann::ordered_json j;
    j["lo"] = lo.str();
    j["hi"] = hi.str();
    j["symbolic"] = symbolic;
    return j.dump();
}

namespace {

Rational from_mpfr(const mpfr_t x) {
    mpz_t m;
    mpz_init(m);
    mpfr_exp_t e = mpfr_get_z_2exp(m, x);
    Integer z;
    mpz_set(z.backend().data(), m);
    mpz_clear(m);
    if (e >= 0) return Rational(z << static_cast<unsigned>(e));
    return Rational(z, Integer(1) << static_cast<unsigned>(-e));
}

std::optional<Rational> exact_acos_over_pi(const Rational& x) {
    if (x == 1) return Rational(0);
    if (x == Rational(1, 2)) return Rational(1, 3);
    if (x == 0) return Rational(1, 2);
    if (x == Rational(-1, 2)) return Rational(2, 3);
    if (x == -1) return Rational(1);
    return std::nullopt;
}

}  // namespace

std::pair<Rational, Rational> acos_over_pi(const Rational& lo, const Rational& hi, int precision_bits) {
    if (lo > hi || lo < -1 || hi > 1) throw DomainError("acos enclosure needs -1 <= lo <= hi <= 1");
    mpfr_t x, a, p, r;
    mpfr_inits2(precision_bits, x, a, p, r, static_cast<mpfr_ptr>(nullptr));
    // lower bound: acos is decreasing, so start from hi rounded up
    mpfr_set_q(x, hi.backend().data(), MPFR_RNDU);
    if (mpfr_cmp_si(x, 1) > 0) mpfr_set_si(x, 1, MPFR_RNDN);
    mpfr_acos(a, x, MPFR_RNDD);
    mpfr_const_pi(p, MPFR_RNDU);
    mpfr_div(r, a, p, MPFR_RNDD);
    Rational lower = from_mpfr(r);
    mpfr_set_q(x, lo.backend().data(), MPFR_RNDD);
    if (mpfr_cmp_si(x, -1) < 0) mpfr_set_si(x, -1, MPFR_RNDN);
    mpfr_acos(a, x, MPFR_RNDU);
    mpfr_const_pi(p, MPFR_RNDD);
    mpfr_div(r, a, p, MPFR_RNDU);
    Rational upper = from_mpfr(r);
    mpfr_clears(x, a, p, r, static_cast<mpfr_ptr>(nullptr));
    return {std::max(lower, Rational(0)), std::min(upper, Rational(1))};
}

CertifiedReal signature_integral(const SignatureFunction& f, const Rational& tol) {
    if (tol <= 0) throw DomainError("tolerance must be positive");
    // integral = v_last + sum_j (v_{j-1} - v_j) acos(x_j) / pi
    const int v_last = f.values.back();
    std::vector<int> coef;
    for (std::size_t j = 0; j < f.jumps.size(); ++j) coef.push_back(f.values[j] - f.values[j + 1]);
    std::vector<RootInterval> iv = f.jumps;
    QPoly sf = squarefree_part(f.polynomial);

    std::ostringstream sym;
    sym << v_last;
    bool all_exact = true;
    for (std::size_t j = 0; j < iv.size(); ++j) {
        if (coef[j] == 0) continue;
        auto e = iv[j].exact() ? exact_acos_over_pi(iv[j].lo) : std::nullopt;
        all_exact = all_exact && e.has_value();
        sym << (coef[j] > 0 ? " + " : " - ") << std::abs(coef[j]) << "*acos(r" << j + 1 << ")/pi";
    }
    for (std::size_t j = 0; j < iv.size(); ++j) {
        if (coef[j] == 0) continue;
        if (iv[j].exact()) sym << "; r" << j + 1 << " = " << iv[j].lo.str();
        else
            sym << "; r" << j + 1 << " = root of " << sf.str() << " in [" << iv[j].lo.str() << ", "
                << iv[j].hi.str() << "]";
    }

    int prec = 64;
    for (;;) {
        Rational lo = v_last, hi = v_last, width = 0;
        for (std::size_t j = 0; j < iv.size(); ++j) {
            if (coef[j] == 0) continue;
            Rational a, b;
            if (auto e = iv[j].exact() ? exact_acos_over_pi(iv[j].lo) : std::nullopt) {
                a = b = *e;
            } else {
                std::tie(a, b) = acos_over_pi(iv[j].lo, iv[j].hi, prec);
            }
            Rational c = coef[j];
            if (c > 0) {
                lo += c * a;
                hi += c * b;
            } else {
                lo += c * b;
                hi += c * a;
            }
        }
        if (hi - lo <= tol) {
            CertifiedReal out{lo, hi, sym.str()};
            if (all_exact) out.symbolic = lo.str();
            return out;
        }
        for (auto& r : iv)
            if (!r.exact()) r = refine_root(sf, r, r.width() / 256);
        prec += 32;
    }
}

CertifiedReal signature_integral(const SeifertMatrix& v, const Rational& tol) {
    return signature_integral(signature_function(v), tol);
}

SeifertMatrix connected_sum(const SeifertMatrix& a, const SeifertMatrix& b) {
    const auto n = a.V.rows(), m = b.V.rows();
    IntMatrix v = IntMatrix::Zero(n + m, n + m);
    v.topLeftCorner(n, n) = a.V;
    v.bottomRightCorner(m, m) = b.V;
    std::string name = a.name.empty() ? b.name : b.name.empty() ? a.name : a.name + " # " + b.name;
    return {name, v};
}

SeifertMatrix mirror(const SeifertMatrix& v) {
    return {"mirror(" + v.name + ")", IntMatrix(-v.V.transpose())};
}

SeifertMatrix twist_knot(int m) {
    IntMatrix v(2, 2);
    v << -1, 1, 0, m;
    return {"twist(" + std::to_string(m) + ")", v};
}

SeifertMatrix torus_knot_2(int k) {
    if (k < 0) throw DomainError("torus knot index must be non-negative");
    IntMatrix v = IntMatrix::Zero(2 * k, 2 * k);
    for (int i = 0; i < 2 * k; ++i) {
        v(i, i) = -1;
        if (i + 1 < 2 * k) v(i, i + 1) = 1;
    }
    return {"T(2," + std::to_string(2 * k + 1) + ")", v};
}

namespace {

struct Generator {
    SeifertMatrix matrix;
    double value;
};

std::vector<Generator> generators(const DenseFamilyOptions& opt, const Rational& tol) {
    std::vector<SeifertMatrix> base;
    for (int m = -1; m >= -opt.twist_range; --m) base.push_back(twist_knot(m));
    base.push_back(torus_knot_2(2));
    base.push_back(torus_knot_2(3));
    std::vector<Generator> out;
    for (const auto& v : base) {
        auto r = signature_integral(v, tol);
        double c = static_cast<double>(r.center());
        out.push_back({v, c});
        out.push_back({mirror(v), -c});
    }
    return out;
}

struct Partial {
    double value;
    int a = -1, b = -1;
    int count() const { return (a >= 0) + (b >= 0); }
};

}  // namespace

std::vector<FamilyMember> dense_family(const std::vector<Rational>& targets, const Rational& eps,
                                       const DenseFamilyOptions& opt) {
    if (eps <= 0) throw DomainError("eps must be positive");
    const Rational tol = eps / 16;
    auto gens = generators(opt, tol / 16);
    const int half = std::min(2, opt.max_summands);
    std::vector<Partial> parts{{0.0}};
    for (int i = 0; i < static_cast<int>(gens.size()) && half >= 1; ++i) {
        parts.push_back({gens[i].value, i});
        for (int j = i; j < static_cast<int>(gens.size()) && half >= 2; ++j)
            parts.push_back({gens[i].value + gens[j].value, i, j});
    }
    std::sort(parts.begin(), parts.end(), [](const Partial& x, const Partial& y) {
        return x.value < y.value || (x.value == y.value && x.count() < y.count());
    });
    std::vector<FamilyMember> out;
    for (const auto& target : targets) {
        const double t = static_cast<double>(target);
        double best_err = 1e300;
        int best_count = 1 << 20;
        std::pair<const Partial*, const Partial*> best{nullptr, nullptr};
        auto consider = [&](const Partial& p, const Partial* q) {
            int cnt = p.count() + (q ? q->count() : 0);
            if (cnt > opt.max_summands) return;
            double err = std::abs(t - p.value - (q ? q->value : 0.0));
            if (err < best_err - 1e-12 || (std::abs(err - best_err) <= 1e-12 && cnt < best_count)) {
                best_err = err;
                best_count = cnt;
                best = {&p, q};
            }
        };
        for (const auto& p : parts) {
            consider(p, nullptr);
            if (opt.max_summands <= half) continue;
            auto it = std::lower_bound(parts.begin(), parts.end(), t - p.value,
                                       [](const Partial& x, double v) { return x.value < v; });
            for (int d = -2; d <= 1; ++d) {
                auto jt = it + d;
                if (jt < parts.begin() || jt >= parts.end()) continue;
                consider(p, &*jt);
            }
        }
        FamilyMember m;
        m.target = target;
        m.matrix = {"unknot", IntMatrix(0, 0)};
        std::vector<int> idx;
        for (const Partial* p : {best.first, best.second})
            if (p) {
                if (p->a >= 0) idx.push_back(p->a);
                if (p->b >= 0) idx.push_back(p->b);
            }
        std::sort(idx.begin(), idx.end());
        for (int i : idx) {
            m.matrix = m.summands.empty() ? gens[i].matrix : connected_sum(m.matrix, gens[i].matrix);
            m.summands.push_back(gens[i].matrix.name);
        }
        m.integral = signature_integral(m.matrix, tol);
        if (m.integral.lo < target - eps || m.integral.hi > target + eps)
            throw DomainError("target " + target.str() + " is unreachable with " + std::to_string(opt.max_summands) +
                              " summands");
        out.push_back(std::move(m));
    }
    return out;
}

std::vector<FamilyMember> dense_family(const Rational& eps, const Rational& lo, const Rational& hi,
                                       const DenseFamilyOptions& opt) {
    if (eps <= 0 || lo >= hi) throw DomainError("need eps > 0 and lo < hi");
    std::vector<Rational> targets;
    for (Rational t = lo + eps / 2; t - eps / 2 < hi; t += eps) targets.push_back(std::min(t, hi));
    auto fam = dense_family(targets, eps / 2, opt);
    std::vector<FamilyMember> unique;
    for (auto& m : fam) {
        bool seen = false;
        for (const auto& u : unique) seen = seen || u.summands == m.summands;
        if (!seen) unique.push_back(std::move(m));
    }
    return unique;
}

Rational coverage_radius(const std::vector<FamilyMember>& family, const Rational& lo, const Rational& hi) {
    if (family.empty()) return hi - lo;
    std::vector<CertifiedReal> v;
    for (const auto& m : family) v.push_back(m.integral);
    std::sort(v.begin(), v.end(), [](const CertifiedReal& a, const CertifiedReal& b) { return a.lo < b.lo; });
    Rational r = std::max(Rational(0), v.front().hi - lo);
    r = std::max(r, hi - v.back().lo);
    for (std::size_t i = 0; i + 1 < v.size(); ++i) r = std::max(r, (v[i + 1].hi - v[i].lo) / 2);
    return r;
}

SeifertMatrix seifert_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what(), 1, 1);
    }
    if (!j.is_object() || !j.contains("matrix") || !j["matrix"].is_array())
        throw ParseError("Seifert JSON needs a \"matrix\" array", 1, 1);
    const auto& rows = j["matrix"];
    const auto n = static_cast<Eigen::Index>(rows.size());
    IntMatrix v(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        if (!rows[i].is_array() || static_cast<Eigen::Index>(rows[i].size()) != n)
            throw ParseError("Seifert matrix must be square", 1, 1);
        for (Eigen::Index k = 0; k < n; ++k) {
            const auto& e = rows[i][k];
            if (e.is_number_integer()) v(i, k) = Integer(e.get<std::int64_t>());
            else if (e.is_string()) v(i, k) = Integer(e.get<std::string>());
            else throw ParseError("Seifert matrix entries must be integers", 1, 1);
        }
    }
    SeifertMatrix out{j.value("name", std::string("knot")), v};
    out.validate();
    return out;
}

std::string seifert_to_json(const SeifertMatrix& v) {
    nlohmann::ordered_json j;
    j["name"] = v.name;
    j["matrix"] = nlohmann::ordered_json::array();
    for (Eigen::Index i = 0; i < v.V.rows(); ++i) {
        auto row = nlohmann::ordered_json::array();
        for (Eigen::Index k = 0; k < v.V.cols(); ++k) {
            const Integer& e = v.V(i, k);
            if (e >= INT64_MIN && e <= INT64_MAX) row.push_back(static_cast<std::int64_t>(e));
            else row.push_back(e.str());
        }
        j["matrix"].push_back(row);
    }
    return j.dump();
}

}  // namespace ck
