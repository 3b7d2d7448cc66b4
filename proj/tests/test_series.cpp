#include "doctest.h"

#include "ck/errors.hpp"
#include "ck/series.hpp"
#include "support.hpp"

using namespace ck;

namespace {

// F x Z -> F/F_3 with t -> [x,y]
EpiOverG heisenberg_map() {
    EpiOverG g;
    g.source = parse_presentation("group FxZ\ngens x y t\nrel [x,t]\nrel [y,t]");
    g.target = free_nilpotent_presentation("H", {"x", "y"}, 2);
    g.images = {Word::letter(0), Word::letter(1), commutator(Word::letter(0), Word::letter(1))};
    return g;
}

EpiOverG onto_z(const GroupPresentation& src) {
    EpiOverG g;
    g.source = src;
    g.target = free_group("Z", {"t"});
    g.images.assign(src.rank(), Word::letter(0));
    return g;
}

const Word x = Word::letter(0), y = Word::letter(1), t = Word::letter(2);

ExprPtr parse(const EpiOverG& g, const std::string& s) { return parse_word_expr(s, g.source.generators); }

}  // namespace

TEST_CASE("kernel membership in the Heisenberg example") {
    auto g = heisenberg_map();
    Word k = commutator(x, y) * t.inverse();
    CHECK(gamma_membership(g, k).status == Membership::In);
    CHECK(gamma_membership(g, x).status == Membership::NotIn);
    CHECK(gamma_membership(g, Word{}).status == Membership::In);
    CHECK(gamma_membership(g, commutator(x.pow(2), y) * t.pow(-2)).status == Membership::In);
}

TEST_CASE("rational derived series in the Heisenberg example") {
    auto g = heisenberg_map();
    auto k = parse(g, "[x,y] t^-1");
    CHECK(rational_series_membership(g, k, 0).status == Membership::In);
    auto r1 = rational_series_membership(g, k, 1);
    CHECK(r1.status == Membership::NotIn);
    CHECK(r1.certificate.find("Lie") != std::string::npos);

    auto br = parse(g, "[[x,y] t^-1, [x^2,y] t^-2]");
    CHECK(rational_series_membership(g, br, 1).status == Membership::In);
    CHECK(rational_series_membership(g, br, 2).status == Membership::NotIn);
    // flattened, the same element still refutes at depth 2
    CHECK(rational_series_membership(g, br->eval(), 2).status == Membership::NotIn);

    CHECK_THROWS_AS(rational_series_membership(g, x, 1), PreconditionError);
    CHECK(rational_series_membership(g, x, 0).status == Membership::NotIn);
}

TEST_CASE("depth one over Z is decided through the Alexander module") {
    auto f = free_group("F", {"x", "y"});
    auto gf = onto_z(f);
    CHECK(rational_series_membership(gf, x * y.inverse(), 1).status == Membership::NotIn);
    Word a = x * y.inverse(), b = y * x.inverse() * y * x.inverse() * x;
    CHECK(rational_series_membership(gf, commutator(a, conjugate(a, x)), 1).status == Membership::In);

    auto tr = trefoil_group();
    auto gt = onto_z(tr);
    CHECK(rational_series_membership(gt, x * y.inverse(), 1).status == Membership::NotIn);
    auto c = rational_series_membership(gt, commutator(x * y.inverse(), conjugate(x * y.inverse(), x)), 1);
    CHECK(c.status == Membership::In);
    // the longitude lies in the second derived subgroup of the trefoil group
    CHECK(rational_series_membership(gt, tr.longitude(), 1).status == Membership::In);
    (void)b;
}

TEST_CASE("beyond the automatic depth only structure counts") {
    auto f = free_group("F", {"x", "y"});
    auto gf = onto_z(f);
    auto e = parse_word_expr("[[[x y^-1, y^-1 x], x y^-1], [x y^-1, x^2 y^-2]]", f.generators);
    // inner bracket is In at depth 1, outer needs both sides at depth 2 for depth 3
    CHECK(rational_series_membership(gf, e, 2).status == Membership::In);
    CHECK(rational_series_membership(gf, e->eval(), 3).status == Membership::Unknown);
}

TEST_CASE("series filtration properties") {
    std::mt19937 rng(17);
    auto f = free_group("F", {"x", "y"});
    auto tr = trefoil_group();
    auto gf = onto_z(f), gt = onto_z(tr);
    std::vector<Word> kernel{x * y.inverse(), conjugate(x * y.inverse(), x), conjugate(y * x.inverse(), y.pow(2))};
    auto random_kernel = [&] {
        std::uniform_int_distribution<int> pick(0, static_cast<int>(kernel.size()) - 1), e(-1, 1);
        Word w;
        for (int i = 0; i < 3; ++i) w *= conjugate(kernel[pick(rng)].pow(e(rng)), ck::testing::random_word(rng, 2, 3));
        return w;
    };
    for (int trial = 0; trial < 25; ++trial) {
        Word u = random_kernel(), v = random_kernel();
        auto ue = WordExpr::from_word(u), ve = WordExpr::from_word(v);
        auto br = WordExpr::bracket(ue, ve);
        for (int n = 0; n <= 2; ++n) {
            auto m = rational_series_membership(gf, br, n + 1);
            auto below = rational_series_membership(gf, br, n);
            if (m.status == Membership::In) CHECK(below.status == Membership::In);
            // commutators of members go one step deeper
            if (rational_series_membership(gf, ue, n).status == Membership::In &&
                rational_series_membership(gf, ve, n).status == Membership::In)
                CHECK(m.status != Membership::NotIn);
        }
        // normality: conjugates of members are members
        Word g = ck::testing::random_word(rng, 2, 4);
        auto conj = WordExpr::product({WordExpr::from_word(g.inverse()), br, WordExpr::from_word(g)});
        for (int n = 0; n <= 2; ++n)
            if (rational_series_membership(gf, br, n).status == Membership::In)
                CHECK(rational_series_membership(gf, conj, n).status == Membership::In);
        // functoriality along F -> trefoil group
        for (int n = 0; n <= 1; ++n)
            if (rational_series_membership(gf, br, n).status == Membership::In)
                CHECK(rational_series_membership(gt, br, n).status != Membership::NotIn);
    }
}

TEST_CASE("PTFA certificates") {
    auto z2 = free_abelian_group("Z2", {"u", "v"});
    auto z = free_group("Z", {"s"});
    PtfaCertificate c1{{z2, z, trivial_group()}, {{Word::letter(0), Word{}}, {Word{}}}};
    auto r1 = ptfa_report(c1);
    CHECK(r1.status == Truth::True);
    CHECK(r1.sections.size() == 2);

    auto h = free_nilpotent_presentation("H", {"x", "y"}, 2);
    auto ch = lower_central_certificate(h);
    CHECK(ch.groups.size() == 3);
    CHECK(ptfa_check(ch));

    auto c3 = parse_presentation("group C3\ngens a\nrel a^3");
    PtfaCertificate bad{{c3, trivial_group()}, {{Word{}}}};
    CHECK(ptfa_report(bad).status == Truth::False);

    PtfaCertificate malformed{{z2, trivial_group()}, {}};
    CHECK_THROWS_AS(ptfa_check(malformed), DomainError);
    PtfaCertificate open_end{{z2, z}, {{Word::letter(0), Word{}}}};
    CHECK_THROWS_AS(ptfa_check(open_end), DomainError);
}
