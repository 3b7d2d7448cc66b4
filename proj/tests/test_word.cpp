#include "doctest.h"

#include "ck/errors.hpp"
#include "ck/presentation.hpp"

#include <random>

using namespace ck;

namespace {
const std::vector<std::string> XY = {"x", "y"};
}

TEST_CASE("free_reduce cancels adjacent inverse letters") {
    CHECK(parse_word("x y y^-1 x", XY) == parse_word("x^2", XY));
    CHECK(free_reduce(std::vector<Syllable>{}).empty());
    CHECK(parse_word("[x,x]", XY).empty());
}

TEST_CASE("commutator sugar expands to a^-1 b^-1 a b") {
    CHECK(parse_word("[x,y]", XY) == parse_word("x^-1 y^-1 x y", XY));
    CHECK(parse_word("[x,y]^-1", XY) == parse_word("[y,x]", XY));
    CHECK(parse_word("(x y)^2", XY) == parse_word("x y x y", XY));
    CHECK(parse_word("1", XY).empty());
}

TEST_CASE("free_reduce is idempotent and length non-increasing on random words") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 500; ++trial) {
        std::vector<Syllable> raw;
        int n = rng() % 20;
        for (int i = 0; i < n; ++i) raw.push_back({static_cast<int>(rng() % 3), static_cast<std::int64_t>(rng() % 5) - 2});
        Word w = free_reduce(raw);
        std::int64_t raw_len = 0;
        for (auto& s : raw) raw_len += std::abs(s.exp);
        CHECK(w.length() <= raw_len);
        CHECK(free_reduce(w.syllables()) == w);
        for (std::size_t i = 1; i < w.syllables().size(); ++i) CHECK(w.syllables()[i].gen != w.syllables()[i - 1].gen);
        CHECK((w * w.inverse()).empty());
    }
}

TEST_CASE("parse trefoil presentation") {
    auto p = parse_presentation("group T\ngens x y\nrel x y x y^-1 x^-1 y^-1");
    CHECK(p.name == "T");
    CHECK(p.rank() == 2);
    REQUIRE(p.relators.size() == 1);
    // xyx = yxy rewritten as xyx (yxy)^-1
    CHECK(p.relators[0] == parse_word("x y x", XY) * parse_word("y x y", XY).inverse());
}

TEST_CASE("parse free group and errors") {
    auto z = parse_presentation("group Z\ngens t");
    CHECK(z.rank() == 1);
    CHECK(z.relators.empty());
    CHECK_THROWS_AS(parse_presentation("group B\ngens x\nrel x z"), ParseError);
    CHECK_THROWS_AS(parse_presentation("group B\ngens\n"), ParseError);
    CHECK_THROWS_AS(parse_presentation("group B\nrel x\n"), ParseError);
    try {
        parse_presentation("group B\ngens x y\n\nrel x [y, q]\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 4);
        CHECK(e.column() == 11);
    }
}

TEST_CASE("documents resolve epis and maps after parsing") {
    auto doc = parse_document(
        "group A  # source\n"
        "gens x y\n"
        "rel [x,y]\n"
        "mark meridian x\n"
        "epi Z : x -> t, y -> 1\n"
        "group Z\n"
        "gens t\n"
        "map f : Z -> A : t -> x y\n");
    auto e = doc.epi("A");
    CHECK(e.target.name == "Z");
    CHECK(e.images[0] == Word::letter(0));
    CHECK(e.images[1].empty());
    CHECK(doc.maps.at("f").images[0] == parse_word("x y", XY));
    CHECK(doc.group("A").meridian() == Word::letter(0));
}

TEST_CASE("cyclic equivalence detects rotations and inverses") {
    Word r = parse_word("x y x y^-1 x^-1 y^-1", XY);
    Word rot = parse_word("y x y^-1 x^-1 y^-1 x", XY);
    CHECK(cyclically_equivalent(r, rot));
    CHECK(cyclically_equivalent(r, rot.inverse()));
    CHECK_FALSE(cyclically_equivalent(r, parse_word("x y", XY)));
    CHECK(cyclic_core(parse_word("y x^2 y^-1", XY)) == parse_word("x^2", XY));
}
