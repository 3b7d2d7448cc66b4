// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "ck/alexander.hpp"
#include "ck/errors.hpp"
#include "ck/groups.hpp"
#include "ck/ledger.hpp"
#include "ck/localization.hpp"
#include "ck/nilpotent.hpp"
#include "ck/series.hpp"
#include "ck/signatures.hpp"
#include "support.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

using namespace ck;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
};

// Collects failed expectations with a short reason each.
struct Checker {
    Outcome out;
    void expect(bool cond, const std::string& what) {
        if (!cond && out.ok) {
            out.ok = false;
            out.detail = what;
        }
    }
};

const Word x = Word::letter(0), y = Word::letter(1), t = Word::letter(2);
const Rational tol6(1, 1000000);

SeifertMatrix unknot() { return {"unknot", IntMatrix(0, 0)}; }
SeifertMatrix granny() {
    auto g = connected_sum(testing::trefoil_seifert(), testing::trefoil_seifert());
    g.name = "granny";
    return g;
}

EpiOverG heisenberg_map() {
    EpiOverG g;
    g.source = parse_presentation("group FxZ\ngens x y t\nrel [x,t]\nrel [y,t]");
    g.target = free_nilpotent_presentation("H", {"x", "y"}, 2);
    g.images = {x, y, commutator(x, y)};
    return g;
}

bool disjoint(const CertifiedReal& a, const CertifiedReal& b) { return a.hi < b.lo || b.hi < a.lo; }

// ---------------------------------------------------------------------------

Outcome trefoil_levine_tristram() {
    Checker c;
    auto v = testing::trefoil_seifert();
    c.expect(lt_signature_at(v, CirclePoint::minus_one()) == -2, "sigma(-1) != -2");
    auto r = signature_integral(v, tol6);
    c.expect(r.contains(Rational(-4, 3)), "integral misses -4/3");
    c.expect(r.width() <= tol6, "interval wider than 1e-6");
    std::mt19937 rng(1);
    double mc = testing::monte_carlo_integral(v, 100000, rng);
    c.expect(std::abs(mc + 4.0 / 3.0) <= 3e-3, "Monte Carlo oracle off by more than 3e-3");
    c.expect(std::abs(mc - static_cast<double>(r.center())) <= 3e-3, "Monte Carlo disagrees with the interval");
    std::ostringstream os;
    os << "integral " << r.symbolic << ", Monte Carlo " << mc;
    c.out.detail = c.out.ok ? os.str() : c.out.detail;
    return c.out;
}

Outcome additivity() {
    Checker c;
    std::mt19937 rng(2026);
    for (int trial = 0; trial < 50; ++trial) {
        auto a = testing::random_seifert(rng, 1 + trial % 3);
        auto b = testing::random_seifert(rng, 1 + (trial / 3) % 3);
        auto ia = signature_integral(a, tol6), ib = signature_integral(b, tol6);
        auto is = signature_integral(connected_sum(a, b), tol6);
        c.expect(is.lo <= ia.hi + ib.hi && ia.lo + ib.lo <= is.hi,
                 "pair " + std::to_string(trial) + ": sum interval misses the block-sum interval");
    }
    auto tr = testing::trefoil_seifert();
    const std::vector<SeifertMatrix> basic{unknot(), tr, mirror(tr), testing::figure_eight_seifert(), granny()};
    int pairs = 0;
    for (std::size_t i = 0; i < basic.size(); ++i)
        for (std::size_t j = i; j < basic.size() && pairs < 10; ++j, ++pairs) {
            auto sa = signature_integral(basic[i], tol6).symbolic;
            auto sb = signature_integral(basic[j], tol6).symbolic;
            auto ss = signature_integral(connected_sum(basic[i], basic[j]), tol6).symbolic;
            c.expect(parse_rational(ss) == parse_rational(sa) + parse_rational(sb),
                     basic[i].name + " # " + basic[j].name + ": " + ss + " != " + sa + " + " + sb);
        }
    c.expect(pairs == 10, "fewer than 10 exact pairs");
    if (c.out.ok) c.out.detail = "50 random pairs, 10 exact symbolic pairs";
    return c.out;
}

Outcome density() {
    Checker c;
    const Rational eps(1, 10), lo(-2), hi(2);
    auto fam = dense_family(eps, lo, hi);
    c.expect(fam.size() <= 200, "more than 200 matrices");
    std::vector<CertifiedReal> iv;
    for (const auto& m : fam) iv.push_back(m.integral);
    std::sort(iv.begin(), iv.end(), [](const auto& a, const auto& b) { return a.center() < b.center(); });
    // x is within eps of the true value whenever hi - eps <= x <= lo + eps
    c.expect(!iv.empty() && iv.front().hi - eps <= lo, "left end uncovered");
    for (std::size_t i = 0; i + 1 < iv.size(); ++i)
        c.expect(iv[i + 1].hi - eps <= iv[i].lo + eps,
                 "gap after " + std::to_string(static_cast<double>(iv[i].center())));
    c.expect(!iv.empty() && iv.back().lo + eps >= hi, "right end uncovered");
    if (c.out.ok) c.out.detail = std::to_string(fam.size()) + " matrices";
    return c.out;
}

Outcome ledger_reproduction() {
    Checker c;
    auto cert = certify_eta(heisenberg_map(), commutator(x, y) * t.inverse(), 0);
    const std::vector<std::pair<SeifertMatrix, Rational>> cases{
        {unknot(), Rational(0)}, {testing::trefoil_seifert(), Rational(-4, 3)}, {granny(), Rational(-8, 3)}};
    std::vector<FamilyInput> fam;
    for (const auto& [l, value] : cases) {
        auto r = rho_differences(cert, l, 1, tol6, l.name);
        c.expect(r.size() == 2, "wrong number of entries");
        c.expect(r[0].exact_zero && r[0].value.lo == 0 && r[0].value.hi == 0, l.name + ": rho_0 not exactly 0");
        c.expect(r[1].value.contains(value) && r[1].value.width() <= tol6, l.name + ": rho_1 misses its value");
        fam.push_back({"K(eta," + l.name + ")", cert, l});
    }
    KnotData base;
    base.label = "K";
    auto rep = distinguish_report(base, fam);
    std::map<std::string, CertifiedReal> val;
    for (const auto& row : rep.family) val[row.label] = row.rho.back().value;
    int separated = 0;
    for (const auto& v : rep.verdicts) {
        if (!val.count(v.a) || !val.count(v.b)) continue;
        bool d = disjoint(val[v.a], val[v.b]);
        c.expect(d == (v.status == "not concordant"), v.a + " vs " + v.b + ": verdict disagrees with intervals");
        separated += v.status == "not concordant";
    }
    c.expect(separated == 3, "the three infected knots are not pairwise separated");
    if (c.out.ok) c.out.detail = "rho_1 = 0, -4/3, -8/3; 3 pairs not concordant";
    return c.out;
}

Outcome tau_table() {
    Checker c;
    auto g = heisenberg_map();
    std::vector<DepthCertificate> certs;
    certs.push_back(certify_eta(g, commutator(x, y) * t.inverse(), 0));
    certs.push_back(certify_eta(g, parse_word_expr("[[x,y] t^-1, [x^2,y] t^-2]", g.source.generators), 1));
    // depth 3 lies beyond automatic reach, so depth 2 comes with supplied evidence
    Word eta2 = commutator(commutator(x, y), conjugate(commutator(x, y), t));
    certs.push_back(certify_eta_with_evidence(eta2, 2, {eta2, 2, Membership::In, "supplied"},
                                              {eta2, 3, Membership::NotIn, "supplied"}));
    for (const auto& cert : certs) {
        const int n = cert.depth;
        for (int i = 0; i <= n + 1; ++i)
            c.expect(tau_image(cert, i) == (i <= n ? TauImage::Trivial : TauImage::InfiniteCyclic),
                     "depth " + std::to_string(n) + ", i = " + std::to_string(i));
        bool refused = false;
        try {
            tau_image(cert, n + 2);
        } catch (const DomainError&) {
            refused = true;
        }
        c.expect(refused, "i = n + 2 accepted at depth " + std::to_string(n));
    }
    if (c.out.ok) c.out.detail = "depths 0, 1 (rational series) and 2 (supplied evidence)";
    return c.out;
}

Outcome nilpotent_solver() {
    Checker c;
    std::mt19937 rng(20261017);
    const Word a = Word::letter(0), b = Word::letter(1);
    for (int trial = 0; trial < 100; ++trial) {
        const int cls = 1 + trial % 4;
        const int n = 1 + trial % 2;
        EpiOverG amb;
        amb.source = free_nilpotent_presentation("F", {"a", "b"}, cls);
        amb.target = free_group("Z", {"t"});
        amb.images = {Word::letter(0), Word{}};
        auto kernel_word = [&] {
            Word w = testing::random_word(rng, 2 + n, 3);
            switch (std::uniform_int_distribution<int>(0, 3)(rng)) {
                case 0: return conjugate(b, w);
                case 1: return conjugate(commutator(b, Word::letter(2 + std::uniform_int_distribution<int>(0, n - 1)(rng))), w);
                case 2: return conjugate(b.inverse(), w);
                default: return conjugate(commutator(a, b), w);
            }
        };
        EquationSystem sys{amb, {}, {}};
        for (int j = 0; j < n; ++j) sys.variables.push_back("x" + std::to_string(j + 1));
        for (int j = 0; j < n; ++j) {
            Word w;
            for (int k = 0; k < 3; ++k) w *= kernel_word();
            sys.right_sides.push_back(w);
        }
        if (!validate_system(sys)) {
            c.expect(false, "generated system " + std::to_string(trial) + " is invalid");
            continue;
        }
        auto s = solve_nilpotent(sys, cls);
        c.expect(s.iterations <= cls + 1, "system " + std::to_string(trial) + " needs more than class + 1 steps");
        auto nq = nilpotent_quotient(amb.source, cls);
        for (int restart = 0; restart < 5; ++restart) {
            std::vector<Word> start;
            for (int j = 0; j < n; ++j) start.push_back(conjugate(b.pow(1 + restart), testing::random_word(rng, 2, 4)));
            auto r = solve_nilpotent(sys, cls, start);
            c.expect(r.iterations <= cls + 1, "restart needs more than class + 1 steps");
            for (int j = 0; j < n; ++j)
                c.expect(nq->equal(s.values[static_cast<std::size_t>(j)], r.values[static_cast<std::size_t>(j)]),
                         "system " + std::to_string(trial) + ": restart reaches a different solution");
        }
    }
    if (c.out.ok) c.out.detail = "100 systems, classes 1..4, 5 restarts each";
    return c.out;
}

// <g_1..g_k, b, t | g_i = prod conj [g_j, B]^+-1 conj^-1> over <t>, B in the kernel.
std::pair<PiPerfectCandidate, Rewriting> random_perfect(std::mt19937& rng) {
    const int k = 1 + static_cast<int>(rng() % 2);
    GroupPresentation p;
    p.name = "P";
    for (int i = 0; i < k; ++i) p.generators.push_back("g" + std::to_string(i + 1));
    p.generators.push_back("b");
    p.generators.push_back("t");
    const Word b = Word::letter(k), tt = Word::letter(k + 1);
    auto side = [&] {
        // short word in b and t
        Word w;
        for (int l = static_cast<int>(rng() % 3); l > 0; --l) w *= (rng() % 2 ? b : tt).pow(rng() % 2 ? 1 : -1);
        return w;
    };
    auto kernel = [&] {
        int e = 1 + static_cast<int>(rng() % 2);
        switch (rng() % 3) {
            case 0: return b.pow(e);
            case 1: return conjugate(b, tt.pow(e));
            default: return commutator(b, tt);
        }
    };
    Rewriting rw(static_cast<std::size_t>(k));
    PiPerfectCandidate cand;
    for (int i = 0; i < k; ++i) {
        Word rhs;
        const int factors = 1 + static_cast<int>(rng() % 2);
        for (int f = 0; f < factors; ++f) {
            RewriteFactor rf{side(), static_cast<int>(rng() % k), kernel(), rng() % 2 ? 1 : -1};
            rw[static_cast<std::size_t>(i)].push_back(rf);
            rhs *= rf.conj * commutator(Word::letter(rf.gen), rf.b).pow(rf.sign) * rf.conj.inverse();
        }
        p.relators.push_back(Word::letter(i).inverse() * rhs);
        cand.normal_generators.push_back(Word::letter(i));
    }
    cand.ambient.source = p;
    cand.ambient.target = free_group("Z", {"t"});
    cand.ambient.images.assign(static_cast<std::size_t>(k + 2), Word{});
    cand.ambient.images[static_cast<std::size_t>(k + 1)] = Word::letter(0);
    return {cand, rw};
}

Outcome pi_perfect_round_trip() {
    Checker c;
    std::mt19937 rng(77);
    for (int trial = 0; trial < 20; ++trial) {
        auto [cand, rw] = random_perfect(rng);
        const std::string tag = "candidate " + std::to_string(trial) + ": ";
        SystemFromPiPerfect sys;
        try {
            sys = pi_perfect_to_system(cand, rw);
        } catch (const WitnessError& e) {
            c.expect(false, tag + "rewriting did not verify (" + e.what() + ")");
            continue;
        }
        c.expect(is_solution(sys.system, sys.trivial.values) == Truth::True, tag + "trivial solution fails");
        c.expect(is_solution(sys.system, sys.nontrivial.values) == Truth::True, tag + "nontrivial solution fails");
        auto back = solutions_to_pi_perfect(sys.system, sys.nontrivial, sys.trivial);
        c.expect(back.verified == Truth::True, tag + "recovered rewriting does not verify");
        auto nq = nilpotent_quotient(cand.ambient.source, 4);
        for (const auto& g : back.candidate.normal_generators)
            for (int cls = 1; cls <= 4; ++cls)
                c.expect(nq->is_trivial(g, cls), tag + "generator survives at class " + std::to_string(cls));
    }
    if (c.out.ok) c.out.detail = "20 candidates, generators trivial through class 4";
    return c.out;
}

Outcome heisenberg() {
    Checker c;
    auto g = heisenberg_map();
    Word k1 = commutator(x, y) * t.inverse();
    Word k2 = commutator(x.pow(2), y) * t.pow(-2);
    Word k3 = commutator(x, y.pow(2)) * t.pow(-2);
    c.expect(gamma_membership(g, k1).status == Membership::In, "[x,y]t^-1 not in the kernel");
    c.expect(rational_series_membership(g, k1, 1).status == Membership::NotIn, "[x,y]t^-1 not refuted at depth 1");
    const std::vector<Word> ks{k1, k2, k3, conjugate(k1, x)};
    for (std::size_t i = 0; i < ks.size(); ++i)
        for (std::size_t j = i + 1; j < ks.size(); ++j) {
            auto e = WordExpr::bracket(WordExpr::from_word(ks[i]), WordExpr::from_word(ks[j]));
            c.expect(rational_series_membership(g, e, 1).status == Membership::In,
                     "commutator of kernel generators not in depth 1");
        }
    if (c.out.ok) c.out.detail = "In ker, NotIn depth 1, 6 commutators In depth 1";
    return c.out;
}

Outcome fox_seifert() {
    Checker c;
    auto tr = trefoil_group();
    EpiOverG g{tr, free_group("Z", {"t"}), {Word::letter(0), Word::letter(0)}, nullptr};
    auto from_group = alexander_poly_from_presentation(tr, g);
    auto from_seifert = alexander_poly_from_seifert(testing::trefoil_seifert());
    const LaurentQ expected = LaurentQ::t(1) - LaurentQ(1) + LaurentQ::t(-1);
    c.expect(from_group == from_seifert, "presentation and Seifert matrix disagree");
    c.expect(from_group == expected, "not t - 1 + t^-1");
    if (c.out.ok) c.out.detail = "Delta = " + from_group.str();
    return c.out;
}

Outcome omega_checker() {
    Checker c;
    const GroupPresentation z = free_group("Z", {"t"});
    auto over_z = [&](const GroupPresentation& p, std::vector<Word> images) {
        return EpiOverG{p, z, std::move(images), nullptr};
    };
    const Word t1 = Word::letter(0);
    auto tr = over_z(trefoil_group(), {t1, t1});
    auto mer = over_z(free_group("M", {"m"}), {t1});
    auto f2 = over_z(free_group("F", {"a", "b"}), {t1, t1});
    auto f2b = over_z(free_group("F", {"a", "b"}), {t1, Word{}});
    auto z2 = over_z(free_abelian_group("Z2", {"a", "b"}), {t1, Word{}});
    auto fig8 = over_z(parse_presentation("group E\ngens x y\nrel y x^-1 y x y^-1 x y x^-1 y^-1 x^-1 y x^-1"), {t1, t1});
    const Word a = Word::letter(0), b = Word::letter(1);
    struct Case {
        std::string name;
        MorphismOverG f;
    };
    std::vector<Case> maps{
        {"id trefoil", {{a, b}, tr, tr}},
        {"meridian into trefoil", {{a}, mer, tr}},
        {"id Z", {{a}, mer, mer}},
        {"F2 onto trefoil", {{a, b}, f2, tr}},
        {"trefoil onto Z", {{a, a}, tr, mer}},
        {"conjugation of trefoil", {{a, conjugate(b, a)}, tr, tr}},
        {"F2 onto Z2", {{a, b}, f2b, z2}},
        {"Z into Z2", {{a}, mer, z2}},
        {"id F2", {{a, b}, f2b, f2b}},
        {"id figure-eight", {{a, b}, fig8, fig8}},
    };
    int cases = 0, with_unknown = 0;
    for (const auto& m : maps)
        for (int budget : {0, 40, 10000}) {
            Config cfg;
            cfg.search_budget = budget;
            auto r = omega_check(m.f, {}, cfg);
            ++cases;
            bool any_unknown = false;
            Truth conj = Truth::True;
            for (const auto& cond : r.conditions) {
                any_unknown = any_unknown || cond.status == Truth::Unknown;
                conj = conj && cond.status;
            }
            with_unknown += any_unknown;
            const std::string tag = m.name + " (budget " + std::to_string(budget) + ")";
            if (any_unknown) c.expect(r.verdict == Truth::Unknown, tag + ": verdict decided despite an Unknown");
            else c.expect(r.verdict == conj, tag + ": verdict is not the conjunction");
            if (r.verdict == Truth::True)
                for (const auto& cond : r.conditions) c.expect(cond.status == Truth::True, tag + ": false certification");
            if (m.name == "id trefoil" && budget == 10000)
                for (const auto& cond : r.conditions) c.expect(cond.status == Truth::True, "identity fails a condition");
            if (m.name == "meridian into trefoil")
                c.expect(r.conditions[3].status == Truth::False, tag + ": condition (4) not refuted");
        }
    c.expect(cases == 30, "corpus is not 30 cases");
    c.expect(with_unknown > 0, "corpus never exercises Unknown");
    if (c.out.ok)
        c.out.detail = std::to_string(cases) + " cases, " + std::to_string(with_unknown) + " with an Unknown condition";
    return c.out;
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        std::string name;
        double limit_s;  // 0: no runtime bound
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {1, "trefoil Levine-Tristram", 1, trefoil_levine_tristram},
        {2, "additivity of signature integrals", 30, additivity},
        {3, "density of the dense family on (-2, 2)", 120, density},
        {4, "ledger rho differences and verdicts", 10, ledger_reproduction},
        {5, "tau image table", 0, tau_table},
        {6, "nilpotent solver stability and uniqueness", 60, nilpotent_solver},
        {7, "Pi-perfect round trip", 0, pi_perfect_round_trip},
        {8, "Heisenberg example", 0, heisenberg},
        {9, "Fox and Seifert Alexander polynomials", 0, fox_seifert},
        {10, "Omega checker", 0, omega_checker},
    };
    int failed = 0;
    for (const auto& cr : criteria) {
        Outcome o;
        auto start = std::chrono::steady_clock::now();
        try {
            o = cr.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (cr.limit_s > 0 && secs > cr.limit_s) {
            o.ok = false;
            o.detail += "; over the " + std::to_string(static_cast<int>(cr.limit_s)) + " s limit";
        }
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.2f s", secs);
        std::cout << (o.ok ? "PASS" : "FAIL") << "  " << cr.id << ". " << cr.name << " (" << buf << "): " << o.detail
                  << std::endl;
        failed += !o.ok;
    }
    return failed == 0 ? 0 : 1;
}
