#include "chiral/error.hpp"
#include "chiral/fock.hpp"

#include <doctest.h>

#include <set>

#include "oracles.hpp"

using namespace chiral;
using oracle::brute_force;
using oracle::weil_table;

TEST_CASE("W(abelian1) small pieces") {
    auto t = weil_table({"t"});
    auto g = t.find(Family::Gamma, "t'");
    auto b0 = enumerate_basis(t, 2, 0);
    REQUIRE(b0.size() == 1);
    CHECK(b0[0] == Monomial{{make_symbol(g, 0)}});
    // d gamma, c dc, beta gamma^2, b gamma c
    CHECK(enumerate_basis(t, 2, 1).size() == 4);
    CHECK(enumerate_basis(t, 0, 0).size() == 1);
    CHECK(enumerate_basis(t, 0, -1).empty());
}

TEST_CASE("enumeration agrees with brute force") {
    auto t = weil_table({"t"});
    for (int p = -3; p <= 4; ++p)
        for (int n = 0; n <= 3; ++n) {
            auto got = enumerate_basis(t, p, n);
            std::set<Monomial> s(got.begin(), got.end());
            CHECK(s.size() == got.size());
            CHECK(s == brute_force(t, p, n, 0, 6));
        }
    auto t2 = weil_table({"x", "y"});
    for (int p = -2; p <= 3; ++p)
        for (int n = 0; n <= 2; ++n) {
            auto got = enumerate_basis(t2, p, n);
            CHECK(std::set<Monomial>(got.begin(), got.end()) == brute_force(t2, p, n, 0, 5));
        }
}

TEST_CASE("enumeration agrees with brute force on W(sl2)") {
    auto t = weil_table({"e", "h", "f"});
    for (int n = 0; n <= 3; ++n) {
        // gamma count <= (8 + 2n + n) / 2 < 10 on these pieces
        auto oracle_pieces = oracle::brute_force_by_degree(t, n, 0, 10);
        for (int p = -8; p <= 8; ++p) {
            auto got = enumerate_basis(t, p, n);
            std::set<Monomial> s(got.begin(), got.end());
            CHECK(s.size() == got.size());
            CHECK(s == oracle_pieces[{p, n}]);
        }
    }
}

TEST_CASE("charge grading keeps polynomial pieces finite") {
    GeneratorTable t;
    t.add_system({"x"}, {"x'"}, 0, 0, -1, 1, 1);
    for (int charge = -1; charge <= 2; ++charge)
        for (int n = 0; n <= 2; ++n) {
            auto got = enumerate_basis(t, 0, n, charge);
            CHECK(std::set<Monomial>(got.begin(), got.end()) == brute_force(t, 0, n, charge, 5));
        }
    GeneratorTable flat;
    flat.add_system({"x"}, {"x'"}, 0, 0, -1, 1, 0);
    CHECK_THROWS_AS(enumerate_basis(flat, 0, 0), TruncationOverflow);
    CHECK_THROWS_AS(enumerate_basis(weil_table({"a", "b", "c"}), 0, 6, 0, 10), TruncationOverflow);
}

TEST_CASE("canonical order and Koszul signs") {
    auto t = weil_table({"x", "y"});
    Symbol cx = make_symbol(t.find(Family::C, "x'"), 0);
    Symbol cy = make_symbol(t.find(Family::C, "y'"), 0);
    Symbol gx = make_symbol(t.find(Family::Gamma, "x'"), 0);
    auto a = canonicalize(t, {cy, cx});
    REQUIRE(a);
    CHECK(a->second == -1);
    CHECK(a->first.symbols == std::vector<Symbol>{cx, cy});
    auto b = canonicalize(t, {cy, gx, cx});
    REQUIRE(b);
    CHECK(b->second == -1);
    CHECK_FALSE(canonicalize(t, {cx, gx, cx}));
    auto c = canonicalize(t, {gx, gx});
    REQUIRE(c);
    CHECK(c->second == 1);

    auto prod = multiply(t, Monomial{{cy}}, Monomial{{cx}});
    REQUIRE(prod);
    CHECK(prod->second == -1);
}

TEST_CASE("text round trip") {
    auto t = weil_table({"e", "h", "f"});
    State s = parse_state(t, "2 B{e} c{e'} - 1/2 g{h'} + 1");
    CHECK(s.size() == 3);
    CHECK(s.coefficient(Monomial{}) == 1);
    CHECK(parse_state(t, to_text(t, s)) == s);
    CHECK(parse_state(t, "c{f'} c{e'}") == -parse_state(t, "c{e'} c{f'}"));
    CHECK(parse_state(t, "c{e'} c{e'}").is_zero());
    CHECK(parse_state(t, "-1/2 d2g{h'}").coefficient(Monomial{{make_symbol(t.find(Family::Gamma, "h'"), 2)}}) ==
          Rational(-1, 2));
    CHECK(parse_state(t, "0").is_zero());
    CHECK_THROWS_AS(parse_state(t, "q{e}"), ParseError);
    CHECK_THROWS_AS(parse_state(t, "B{nope}"), ParseError);
}

TEST_CASE("basis cache is consistent") {
    auto t = weil_table({"x"});
    BasisCache cache(t);
    auto a = cache.get(1, 2);
    auto b = cache.get(1, 2);
    CHECK(a.get() == b.get());
    CHECK(*a == enumerate_basis(t, 1, 2));
}
