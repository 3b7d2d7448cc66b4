#include "doctest.h"

#include "ck/errors.hpp"
#include "ck/localization.hpp"
#include "ck/nilpotent.hpp"
#include "ck/series.hpp"
#include "support.hpp"

using namespace ck;

namespace {

const Word a = Word::letter(0), b = Word::letter(1);

// A -> <t> with a -> t, b -> 1
EpiOverG a_to_t(const GroupPresentation& src) {
    EpiOverG g;
    g.source = src;
    g.target = free_group("Z", {"t"});
    g.images = {Word::letter(0), Word{}};
    return g;
}

EpiOverG abelianize2(const GroupPresentation& src) {
    EpiOverG g;
    g.source = src;
    g.target = free_abelian_group("Z2", {"u", "v"});
    g.images = {Word::letter(0), Word::letter(1)};
    return g;
}

// <a,b,t | a = [a,b], b = [b,a]> over <t>
PiPerfectCandidate perfect_pair(Rewriting& rw) {
    PiPerfectCandidate cand;
    cand.ambient.source = parse_presentation("group P\ngens a b t\nrel a^-1 [a,b]\nrel b^-1 [b,a]");
    cand.ambient.target = free_group("Z", {"t"});
    cand.ambient.images = {Word{}, Word{}, Word::letter(0)};
    cand.normal_generators = {a, b};
    rw = {{RewriteFactor{Word{}, 0, b, 1}}, {RewriteFactor{Word{}, 1, a, 1}}};
    return cand;
}

}  // namespace

TEST_CASE("system parsing") {
    auto amb = a_to_t(free_nilpotent_presentation("F4", {"a", "b"}, 3));
    auto sys = parse_system("var x ; eq x = [a,b][x,b]", amb);
    REQUIRE(sys.size() == 1);
    CHECK(sys.right_sides[0] == commutator(a, b) * commutator(Word::letter(2), b));
    auto two = parse_system("var x1 x2\neq x2 = x1 b x1^-1 # comment\neq x1 = b", amb);
    CHECK(two.right_sides[0] == b);
    CHECK_THROWS_AS(parse_system("var a", amb), ParseError);
    CHECK_THROWS_AS(parse_system("eq x = a", amb), ParseError);
    CHECK_THROWS_AS(parse_system("var x ; eq x = a ; eq x = b", amb), ParseError);
    CHECK_THROWS_AS(parse_system("var x y ; eq x = a", amb), ParseError);
    CHECK_THROWS_AS(parse_system("var x ; eq x = z", amb), ParseError);
    CHECK(parse_system(sys.str(), amb).right_sides == sys.right_sides);
}

TEST_CASE("kernel condition") {
    auto amb = a_to_t(free_nilpotent_presentation("F4", {"a", "b"}, 3));
    CHECK(validate_system(parse_system("var x ; eq x = [a,b][x,b]", amb)));
    CHECK_FALSE(validate_system(parse_system("var x ; eq x = a", amb)));
    CHECK(validate_system(parse_system("var x ; eq x = x x^-1", amb)));
    CHECK_FALSE(validate_system(parse_system("var x ; eq x = x", amb)));
    CHECK_FALSE(validate_system(parse_system("var x ; eq x = [x,a]", amb)));
    CHECK(validate_system(parse_system("var x y ; eq x = [y,b] ; eq y = x b x^-1 b^-1", amb)));
    CHECK(validate_system(EquationSystem{amb, {}, {}}));

    // the factors rebuild the word
    auto sys = parse_system("var x ; eq x = a [x,b] a^-1 b", amb);
    auto dec = kernel_decomposition(sys.right_sides[0], amb, 1);
    REQUIRE(dec.status == Truth::True);
    Word rebuilt;
    for (const auto& f : dec.factors) rebuilt *= f.prefix * f.core * f.prefix.inverse();
    CHECK(rebuilt == sys.right_sides[0]);
}

TEST_CASE("nilpotent solving") {
    auto heis = abelianize2(free_nilpotent_presentation("H", {"a", "b"}, 2));
    auto s1 = solve_nilpotent(parse_system("var x ; eq x = [a,b][x,[a,b]]", heis), 2);
    CHECK(s1.iterations == 2);
    CHECK(nilpotent_quotient(heis.source, 2)->equal(s1.values[0], commutator(a, b)));

    auto f4 = a_to_t(free_nilpotent_presentation("F4", {"a", "b"}, 3));
    auto sys = parse_system("var x ; eq x = [a,b][x,b]", f4);
    auto s2 = solve_nilpotent(sys, 3);
    CHECK(s2.iterations == 3);
    CHECK(nilpotent_quotient(f4.source, 3)
              ->equal(s2.values[0], commutator(a, b) * commutator(commutator(a, b), b)));
    CHECK(is_solution(sys, s2.values) == Truth::True);
    CHECK(s2.trace.size() == 4);

    auto empty = solve_nilpotent(EquationSystem{f4, {}, {}}, 3);
    CHECK(empty.values.empty());
    CHECK_THROWS_AS(solve_nilpotent(parse_system("var x ; eq x = a", f4), 3), PreconditionError);
}

TEST_CASE("random systems settle and the solution is unique") {
    std::mt19937 rng(20261017);
    auto kernel_word = [&](int n) {
        // b-powers, conjugates and [a,b]-type words all map to 1
        std::uniform_int_distribution<int> pick(0, 3);
        Word x = testing::random_word(rng, 2 + n, 3);
        switch (pick(rng)) {
            case 0: return conjugate(b, x);
            case 1: return conjugate(commutator(b, Word::letter(2 + std::uniform_int_distribution<int>(0, n - 1)(rng))), x);
            case 2: return conjugate(b.inverse(), x);
            default: return conjugate(commutator(a, b), x);
        }
    };
    int checked = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const int c = 2 + trial % 3;
        const int n = 1 + trial % 2;
        auto amb = a_to_t(free_nilpotent_presentation("F", {"a", "b"}, c));
        EquationSystem sys{amb, {}, {}};
        for (int j = 0; j < n; ++j) sys.variables.push_back("x" + std::to_string(j + 1));
        for (int j = 0; j < n; ++j) {
            Word w;
            for (int k = 0; k < 3; ++k) w *= kernel_word(n);
            sys.right_sides.push_back(w);
        }
        REQUIRE(validate_system(sys));
        auto s = solve_nilpotent(sys, c);
        CHECK(s.iterations <= c + 1);
        for (const auto& v : s.values) CHECK(gamma_membership(amb, v).status == Membership::In);
        std::vector<Word> start;
        for (int j = 0; j < n; ++j) start.push_back(conjugate(b, testing::random_word(rng, 2, 4)));
        auto r = solve_nilpotent(sys, c, start);
        CHECK(r.iterations <= c + 1);
        auto nq = nilpotent_quotient(amb.source, c);
        for (int j = 0; j < n; ++j) CHECK(nq->equal(s.values[j], r.values[j]));
        ++checked;
    }
    CHECK(checked == 100);
}

TEST_CASE("kernel condition is invariant under renaming and kernel conjugation") {
    std::mt19937 rng(7);
    auto amb = a_to_t(free_group("F", {"a", "b"}));
    for (int trial = 0; trial < 60; ++trial) {
        Word w = testing::random_word(rng, 3, 6);
        EquationSystem s1{amb, {"x"}, {w}};
        EquationSystem s2{amb, {"renamed"}, {w}};
        Truth t = system_kernel_status(s1);
        CHECK(system_kernel_status(s2) == t);
        Word k = conjugate(b, testing::random_word(rng, 3, 3));
        EquationSystem s3{amb, {"x"}, {conjugate(w, k)}};
        CHECK(system_kernel_status(s3) == t);
    }
}

TEST_CASE("Pi-perfect conversions") {
    Rewriting rw;
    auto cand = perfect_pair(rw);
    CHECK(verify_rewriting(cand, rw) == Truth::True);
    auto sys = pi_perfect_to_system(cand, rw);
    CHECK(sys.system.size() == 2);
    CHECK(validate_system(sys.system));
    CHECK(is_solution(sys.system, sys.trivial.values) == Truth::True);
    CHECK(is_solution(sys.system, sys.nontrivial.values) == Truth::True);

    auto back = solutions_to_pi_perfect(sys.system, sys.nontrivial, sys.trivial);
    CHECK(back.verified == Truth::True);
    CHECK(back.candidate.normal_generators == cand.normal_generators);
    auto again = pi_perfect_to_system(back.candidate, back.rewriting);
    CHECK(is_solution(again.system, again.nontrivial.values) == Truth::True);
    CHECK(is_solution(again.system, again.trivial.values) == Truth::True);
    CHECK_FALSE(rewriting_str(back.candidate, back.rewriting).empty());

    auto same = solutions_to_pi_perfect(sys.system, sys.nontrivial, sys.nontrivial);
    for (const auto& g : same.candidate.normal_generators) CHECK(g.empty());

    SolutionSet bogus{{a, a}, 0, {}};
    CHECK_THROWS_AS(solutions_to_pi_perfect(sys.system, bogus, sys.trivial), PreconditionError);

    Rewriting bad = rw;
    bad[0][0].b = Word::letter(2);  // t is not in the kernel
    CHECK(verify_rewriting(cand, bad) == Truth::False);
    CHECK_THROWS_AS(pi_perfect_to_system(cand, bad), WitnessError);

    // a single generator g = [g, b] transcribes to x = [x, b]
    PiPerfectCandidate one{cand.ambient, {a}};
    Rewriting r1{{RewriteFactor{Word{}, 0, b, 1}}};
    auto s1 = pi_perfect_to_system(one, r1);
    CHECK(s1.system.right_sides[0] == commutator(Word::letter(3), b));

    PiPerfectCandidate none{cand.ambient, {}};
    auto s0 = pi_perfect_to_system(none, {});
    CHECK(s0.system.size() == 0);
}

TEST_CASE("Pi-perfect file grammar") {
    Rewriting rw;
    auto cand = perfect_pair(rw);
    auto in = parse_pi_perfect("gen m = a\ngen n = b  # second\nrw m = [m, b]\nrw n = [a, n]^-1", cand.ambient);
    CHECK(in.symbols == std::vector<std::string>{"m", "n"});
    CHECK(in.candidate.normal_generators == cand.normal_generators);
    REQUIRE(in.rewriting);
    CHECK(verify_rewriting(in.candidate, *in.rewriting) == Truth::True);
    CHECK((*in.rewriting)[1][0].gen == 1);
    CHECK((*in.rewriting)[1][0].sign == 1);

    // conjugators come from the words between commutators
    auto conj = parse_pi_perfect("gen m = a ; rw m = t [m, b] t^-1", cand.ambient);
    CHECK((*conj.rewriting)[0][0].conj == Word::letter(2));

    auto plain = parse_pi_perfect("gen m = a b", cand.ambient);
    CHECK_FALSE(plain.rewriting);
    CHECK_THROWS_AS(parse_pi_perfect("gen a = b", cand.ambient), ParseError);
    CHECK_THROWS_AS(parse_pi_perfect("gen m = a ; rw m = t [m, b]", cand.ambient), ParseError);
    CHECK_THROWS_AS(parse_pi_perfect("gen m = a ; rw m = m b", cand.ambient), ParseError);
    CHECK_THROWS_AS(parse_pi_perfect("gen m = a ; gen n = b ; rw m = [m, b]", cand.ambient), ParseError);
    CHECK_THROWS_AS(parse_pi_perfect("rw q = [a, b]", cand.ambient), ParseError);
}

TEST_CASE("Pi-perfect check") {
    Rewriting rw;
    auto cand = perfect_pair(rw);
    auto v = pi_perfect_check(cand, 3, rw);
    CHECK(v.status == PiPerfectStatus::Certified);
    CHECK(pi_perfect_check(cand, 3).status == PiPerfectStatus::Unknown);

    PiPerfectCandidate comm{abelianize2(free_group("F", {"x", "y"})), {commutator(a, b)}};
    auto r = pi_perfect_check(comm, 3);
    CHECK(r.status == PiPerfectStatus::Refuted);
    CHECK(r.refuted_at_class == 2);

    PiPerfectCandidate empty{comm.ambient, {}};
    CHECK(pi_perfect_check(empty, 3).status == PiPerfectStatus::Certified);

    // never both certified and refuted
    std::mt19937 rng(3);
    for (int trial = 0; trial < 40; ++trial) {
        PiPerfectCandidate c{cand.ambient, {testing::random_word(rng, 3, 4)}};
        Rewriting guess{{RewriteFactor{Word{}, 0, b, 1}}};
        auto cert = pi_perfect_check(c, 3, guess);
        if (cert.status == PiPerfectStatus::Certified) {
            auto nq = nilpotent_quotient(c.ambient.source, 3);
            CHECK(nq->is_trivial(c.normal_generators[0]));
        }
    }
}

TEST_CASE("Omega conditions") {
    auto tr = trefoil_group();
    EpiOverG g{tr, free_group("Z", {"t"}), {Word::letter(0), Word::letter(0)}};
    MorphismOverG id{{Word::letter(0), Word::letter(1)}, g, g};
    auto rep = omega_check(id);
    for (const auto& c : rep.conditions) CHECK(c.status == Truth::True);
    CHECK(rep.verdict == Truth::True);

    EpiOverG z{free_group("U", {"m"}), free_group("Z", {"t"}), {Word::letter(0)}};
    MorphismOverG incl{{Word::letter(0)}, z, g};
    auto r2 = omega_check(incl);
    CHECK(r2.conditions[0].status == Truth::True);
    CHECK(r2.conditions[3].status == Truth::False);
    CHECK(r2.verdict == Truth::False);

    Config tiny;
    tiny.search_budget = 0;
    MorphismOverG sq{{Word::letter(0), Word::letter(1)}, g, g};
    auto r3 = omega_check(sq, {}, tiny);
    CHECK(r3.conditions[2].status == Truth::Unknown);
    CHECK(r3.verdict == Truth::Unknown);
}
