#include "doctest.h"

#include "ck/errors.hpp"
#include "ck/signatures.hpp"
#include "support.hpp"

#include <cmath>
#include <complex>

using namespace ck;
using testing::figure_eight_seifert;
using testing::numeric_signature;
using testing::sampled_integral;
using testing::trefoil_seifert;

namespace {

const Rational tol6 = Rational(1, 1000000);

}  // namespace

TEST_CASE("Sturm isolation finds known roots") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> num(-40, 40), den(1, 9);
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<Rational> roots;
        QPoly p({Rational(1)});
        for (int k = 0; k < 5; ++k) {
            Rational r(num(rng), den(rng) * 10);
            roots.push_back(r);
            p = p * QPoly::x_minus(r);
        }
        std::sort(roots.begin(), roots.end());
        roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
        auto iv = isolate_roots(p, Rational(-5), Rational(5));
        REQUIRE(iv.size() == roots.size());
        for (std::size_t i = 0; i < iv.size(); ++i) {
            CHECK(iv[i].lo <= roots[i]);
            CHECK(roots[i] <= iv[i].hi);
            if (i + 1 < iv.size()) CHECK(iv[i].hi < iv[i + 1].lo);
        }
    }
    QPoly two({Rational(-2), Rational(0), Rational(1)});
    auto r = isolate_roots(two, Rational(0), Rational(10));
    REQUIRE(r.size() == 1);
    auto fine = refine_root(two, r[0], Rational(1, 1000000));
    CHECK(fine.lo * fine.lo < 2);
    CHECK(fine.hi * fine.hi > 2);
    CHECK(fine.width() <= Rational(1, 1000000));
    CHECK(isolate_roots(two, Rational(-1), Rational(1)).empty());
}

TEST_CASE("Chebyshev polynomials") {
    for (int k = 0; k < 8; ++k) {
        auto t = chebyshev_t(k);
        for (double th : {0.1, 0.7, 2.0}) {
            double acc = 0;
            for (int i = t.degree(); i >= 0; --i) acc = acc * std::cos(th) + static_cast<double>(t.c[i]);
            CHECK(acc == doctest::Approx(std::cos(k * th)));
        }
    }
}

TEST_CASE("pointwise signatures") {
    auto tr = trefoil_seifert();
    CHECK(lt_signature_at(tr, CirclePoint::minus_one()) == -2);
    CHECK(lt_signature_at(SeifertMatrix{"unknot", IntMatrix(0, 0)}, CirclePoint::at(Rational(3))) == 0);
    CHECK(lt_signature_at(figure_eight_seifert(), CirclePoint::minus_one()) == 0);
    CHECK(lt_signature_at(tr, CirclePoint::at(Rational(1, 10))) == 0);
    CHECK(lt_signature_at(tr, CirclePoint::at(Rational(5))) == -2);
    // s = 1/sqrt(3) is the jump; s = 1 is omega = i, past it
    CHECK(lt_signature_at(tr, CirclePoint::at(Rational(1))) == -2);
    CHECK_THROWS_AS(CirclePoint::at(Rational(0)), DomainError);
    CHECK(lt_signature_at(torus_knot_2(2), CirclePoint::minus_one()) == -4);

    IntMatrix sym(3, 3);
    sym << 0, 1, 0, 1, 0, 0, 0, 0, 0;
    CHECK(symmetric_signature(sym.cast<Rational>()) == 0);
    sym << 1, 2, 0, 2, 1, 0, 0, 0, -3;
    CHECK(symmetric_signature(sym.cast<Rational>()) == -1);
}

TEST_CASE("jump at a root is refused") {
    // omega = e^{i pi/3}: s = tan(pi/6) is irrational, so build a knot with a rational jump
    // twist(-1) has its jump at cos = 1/2; a root exactly at omega = -1 comes from the polynomial t^2 + 1 shape
    IntMatrix v(2, 2);
    v << 1, 1, 0, -1;
    SeifertMatrix k{"k", v};  // figure eight: roots off the circle
    CHECK_NOTHROW(lt_signature_at(k, CirclePoint::minus_one()));
    auto f = signature_function(trefoil_seifert());
    CHECK_THROWS_AS(f.value_at_cos(Rational(1, 2)), DomainError);
    CHECK(f.value_at_cos(Rational(0)) == -2);
    CHECK(f.value_at_cos(Rational(9, 10)) == 0);
}

TEST_CASE("signature functions") {
    auto f = signature_function(trefoil_seifert());
    REQUIRE(f.jumps.size() == 1);
    CHECK(f.jumps[0].exact());
    CHECK(f.jumps[0].lo == Rational(1, 2));
    CHECK(f.values == std::vector<int>{0, -2});
    auto u = signature_function(SeifertMatrix{"unknot", IntMatrix(0, 0)});
    CHECK(u.jumps.empty());
    CHECK(u.values == std::vector<int>{0});
    auto cancel = signature_function(connected_sum(trefoil_seifert(), mirror(trefoil_seifert())));
    for (int v : cancel.values) CHECK(v == 0);
    auto t5 = signature_function(torus_knot_2(2));
    CHECK(t5.jumps.size() == 2);
    CHECK(t5.values == std::vector<int>{0, -2, -4});
    CHECK(f.csv() == "cos_lo,cos_hi,value\n1/2,1,0\n-1,1/2,-2\n");
    CHECK(f.svg().find("<polyline") != std::string::npos);
}

TEST_CASE("signature integrals") {
    auto tr = trefoil_seifert();
    auto t = signature_integral(tr, tol6);
    CHECK(t.contains(Rational(-4, 3)));
    CHECK(t.width() <= tol6);
    CHECK(t.symbolic == "-4/3");
    auto u = signature_integral(SeifertMatrix{"unknot", IntMatrix(0, 0)}, tol6);
    CHECK(u.lo == 0);
    CHECK(u.hi == 0);
    auto granny = signature_integral(connected_sum(tr, tr), tol6);
    CHECK(granny.contains(Rational(-8, 3)));
    auto sq = signature_integral(connected_sum(tr, mirror(tr)), tol6);
    CHECK(sq.contains(Rational(0)));
    CHECK(connected_sum(tr, SeifertMatrix{"", IntMatrix(0, 0)}).V == tr.V);

    // irrational jumps go through the acos enclosure
    auto tw = signature_integral(twist_knot(-2), Rational(1, 1000000000));
    double expect = -2.0 * (1.0 - std::acos(0.75) / M_PI);
    CHECK(static_cast<double>(tw.center()) == doctest::Approx(expect).epsilon(1e-9));
    CHECK(tw.width() <= Rational(1, 1000000000));
    auto t7 = signature_integral(torus_knot_2(3), tol6);
    CHECK(t7.symbolic.find("acos") != std::string::npos);
    CHECK(static_cast<double>(t7.center()) == doctest::Approx(sampled_integral(torus_knot_2(3), 20000)).epsilon(1e-3));
    CHECK(t.json() == "{\"lo\":\"-4/3\",\"hi\":\"-4/3\",\"symbolic\":\"-4/3\"}");
}

TEST_CASE("acos enclosures") {
    for (Rational x : {Rational(-1), Rational(-3, 7), Rational(0), Rational(1, 3), Rational(99, 100), Rational(1)}) {
        auto [lo, hi] = acos_over_pi(x, x, 80);
        double d = std::acos(static_cast<double>(x)) / M_PI;
        CHECK(static_cast<double>(lo) <= d + 1e-15);
        CHECK(static_cast<double>(hi) >= d - 1e-15);
        CHECK(hi - lo < Rational(1, 1000000000000LL));
    }
}

TEST_CASE("signature properties on random Seifert matrices") {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 40; ++trial) {
        auto v = testing::random_seifert(rng, 1 + trial % 4);
        const int n = static_cast<int>(v.V.rows());
        auto f = signature_function(v);
        CHECK(f.values.front() == 0);
        for (int x : f.values) {
            CHECK(x % 2 == 0);
            CHECK(std::abs(x) <= n);
        }
        for (const auto& pt : f.samples) CHECK(lt_signature_at(v, pt) == lt_signature_at(v, pt.conjugate()));
        auto m = signature_function(mirror(v));
        REQUIRE(m.values.size() == f.values.size());
        for (std::size_t k = 0; k < f.values.size(); ++k) CHECK(m.values[k] == -f.values[k]);
    }
}

TEST_CASE("additivity of integrals") {
    std::mt19937 rng(8);
    for (int trial = 0; trial < 50; ++trial) {
        auto a = testing::random_seifert(rng, 1 + trial % 2);
        auto b = testing::random_seifert(rng, 1 + (trial / 2) % 2);
        auto ia = signature_integral(a, tol6), ib = signature_integral(b, tol6);
        auto s = signature_integral(connected_sum(a, b), tol6);
        Rational sum = ia.center() + ib.center();
        CHECK(s.lo - tol6 <= sum);
        CHECK(sum <= s.hi + tol6);
    }
}

TEST_CASE("sampling agrees with the certified integral") {
    std::mt19937 rng(13);
    for (int trial = 0; trial < 4; ++trial) {
        auto v = testing::random_seifert(rng, 1 + trial);
        auto c = signature_integral(v, tol6);
        double mc = sampled_integral(v, 100000);
        CHECK(std::abs(mc - static_cast<double>(c.center())) <= 3e-3);
    }
}

TEST_CASE("dense families") {
    auto zero = dense_family({Rational(0)}, Rational(1, 10));
    REQUIRE(zero.size() == 1);
    CHECK(zero[0].summands.empty());
    auto tre = dense_family({Rational(-4, 3)}, tol6);
    REQUIRE(tre.size() == 1);
    CHECK(tre[0].summands == std::vector<std::string>{"twist(-1)"});
    auto fam = dense_family(Rational(1, 10), Rational(-2), Rational(2));
    CHECK(fam.size() <= 200);
    CHECK(coverage_radius(fam, Rational(-2), Rational(2)) <= Rational(1, 10));
    CHECK_THROWS_AS(dense_family({Rational(50)}, Rational(1, 10)), DomainError);
}

TEST_CASE("Seifert JSON") {
    auto v = seifert_from_json(R"({"name": "trefoil", "matrix": [[-1, 1], [0, -1]]})");
    CHECK(v.V == trefoil_seifert().V);
    CHECK(seifert_to_json(v) == R"({"name":"trefoil","matrix":[[-1,1],[0,-1]]})");
    CHECK_THROWS_AS(seifert_from_json("{\"matrix\": [[1,2]]}"), ParseError);
    CHECK_THROWS_AS(seifert_from_json("nope"), ParseError);
    CHECK_THROWS(seifert_from_json(R"({"matrix": [[1, 0], [0, 1]]})"));
}
