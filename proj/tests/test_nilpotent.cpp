#include "doctest.h"

#include "ck/errors.hpp"
#include "ck/nilpotent.hpp"

#include <random>

using namespace ck;

namespace {

std::vector<int> ranks(const NilpotentQuotient& q) {
    std::vector<int> out;
    for (const auto& s : q.lower_central_sections()) out.push_back(s.rank);
    return out;
}

Word random_word(std::mt19937& rng, int gens, int len) {
    std::vector<Syllable> raw;
    for (int i = 0; i < len; ++i) raw.push_back({static_cast<int>(rng() % gens), rng() % 2 ? 1 : -1});
    return free_reduce(raw);
}

}  // namespace

TEST_CASE("Witt numbers") {
    CHECK(witt_number(2, 1) == 2);
    CHECK(witt_number(2, 2) == 1);
    CHECK(witt_number(2, 3) == 2);
    CHECK(witt_number(2, 4) == 3);
    CHECK(witt_number(3, 3) == 8);
    CHECK(witt_number(2, 5) == 6);
}

TEST_CASE("free nilpotent quotients have Witt section ranks") {
    auto f2 = free_group("F", {"x", "y"});
    CHECK(ranks(*nilpotent_quotient(f2, 2)) == std::vector<int>{2, 1});
    CHECK(ranks(*nilpotent_quotient(f2, 3)) == std::vector<int>{2, 1, 2});
    for (int r = 1; r <= 3; ++r) {
        std::vector<std::string> names;
        for (int i = 0; i < r; ++i) names.push_back("g" + std::to_string(i));
        auto q = nilpotent_quotient(free_group("F", names), 4);
        auto rk = ranks(*q);
        for (int k = 1; k <= 4; ++k) CHECK(rk[k - 1] == witt_number(r, k));
    }
}

TEST_CASE("torsion appears in abelian sections") {
    auto z2 = parse_presentation("group C\ngens a\nrel a^2");
    auto s = nilpotent_quotient(z2, 1)->lower_central_sections();
    CHECK(s[0].rank == 0);
    REQUIRE(s[0].torsion.size() == 1);
    CHECK(s[0].torsion[0] == 2);
    auto dinf = parse_presentation("group D\ngens a b\nrel a^2\nrel b^2");
    auto sd = nilpotent_quotient(dinf, 2)->lower_central_sections();
    CHECK(sd[0].rank == 0);
    CHECK(sd[0].torsion == std::vector<Integer>{2, 2});
    CHECK(sd[1].rank == 0);
    CHECK(sd[1].torsion == std::vector<Integer>{2});
}

TEST_CASE("group identities hold in free nilpotent quotients") {
    auto f3 = free_group("F", {"x", "y", "z"});
    auto q = nilpotent_quotient(f3, 4);
    std::mt19937 rng(11);
    for (int t = 0; t < 30; ++t) {
        Word a = random_word(rng, 3, 5), b = random_word(rng, 3, 5), c = random_word(rng, 3, 4);
        // Hall-Witt: [[a,b^-1],c]^b [[b,c^-1],a]^c [[c,a^-1],b]^a = 1
        Word hw = conjugate(commutator(commutator(a, b.inverse()), c), b) *
                  conjugate(commutator(commutator(b, c.inverse()), a), c) *
                  conjugate(commutator(commutator(c, a.inverse()), b), a);
        CHECK(q->is_trivial(hw));
        // [ab, c] = [a,c]^b [b,c]
        CHECK(q->equal(commutator(a * b, c), conjugate(commutator(a, c), b) * commutator(b, c)));
        // weight-5 commutators vanish at class 4
        CHECK(q->is_trivial(left_normed({a, b, c, a, b})));
    }
    Word xy = commutator(Word::letter(0), Word::letter(1));
    CHECK_FALSE(q->is_trivial(xy));
    CHECK(q->is_trivial(xy, 1));
    CHECK(q->first_nontrivial_class(xy) == 2);
}

TEST_CASE("Heisenberg group as a presented quotient") {
    auto h = free_nilpotent_presentation("H", {"x", "y"}, 2);
    auto q = nilpotent_quotient(h, 4);
    CHECK(ranks(*q) == std::vector<int>{2, 1, 0, 0});
    Word x = Word::letter(0), y = Word::letter(1);
    CHECK(q->is_trivial(commutator(commutator(x, y), y.pow(3))));
    CHECK(q->equal(commutator(x.pow(2), y.pow(3)), commutator(x, y).pow(6)));
    CHECK(q->hirsch_length() == 3);
    CHECK(q->subgroup_hirsch_length({commutator(x, y)}) == 1);
    CHECK(q->subgroup_hirsch_length({x, y}) == 3);
    // normal forms are canonical
    CHECK(q->normal_form(x * y) == q->normal_form(y * x * commutator(x, y)));
}

TEST_CASE("trefoil and abelian quotients") {
    auto t = parse_presentation("group T\ngens x y\nrel x y x y^-1 x^-1 y^-1");
    auto q = nilpotent_quotient(t, 3);
    CHECK(ranks(*q) == std::vector<int>{1, 0, 0});
    CHECK(q->is_trivial(Word::letter(0) * Word::letter(1, -1)));
    auto z2 = free_abelian_group("Z2", {"m", "l"});
    CHECK(ranks(*nilpotent_quotient(z2, 3)) == std::vector<int>{2, 0, 0});
    CHECK_THROWS_AS(nilpotent_quotient(t, 6), ClassBoundExceeded);
}

TEST_CASE("trivial group quotient") {
    auto q = nilpotent_quotient(trivial_group(), 2);
    CHECK(q->hirsch_length() == 0);
    CHECK(q->is_trivial(Word{}));
}
