#include "chiral/error.hpp"
#include "chiral/weil.hpp"

#include <doctest.h>

using namespace chiral;

namespace {

const WeilComplex& weil_sl2() {
    static const WeilComplex w = build_weil(sl2());
    return w;
}

State S(const WeilComplex& w, const char* text) { return parse_state(w.complex.table, text); }

}  // namespace

TEST_CASE("pinning suite passes on the built-in algebras") {
    CHECK_NOTHROW(build_weil(abelian(1)));
    CHECK_NOTHROW(build_weil(abelian(2)));
    CHECK_NOTHROW(weil_sl2());
    PinningOptions small;
    small.range = PieceRange{-3, 3, 1, 0};
    CHECK_NOTHROW(build_weil(sl2_sum_sl2(), small));
    CHECK_NOTHROW(build_weil(sl3(), small));
}

TEST_CASE("differential on W(abelian1)") {
    auto w = build_weil(abelian(1));
    const auto& c = w.complex;
    CHECK(c.d(S(w, "c{t1'}")) == S(w, "g{t1'}"));
    CHECK(c.d(S(w, "g{t1'}")).is_zero());
    CHECK(c.d(S(w, "B{t1}")) == S(w, "-b{t1}"));
    CHECK(c.d(S(w, "b{t1}")).is_zero());
    CHECK(c.d(S(w, "d1c{t1'}")) == S(w, "d1g{t1'}"));
    CHECK(w.chevalley.is_zero());
    CHECK(theta_S(w, 0).is_zero());
}

TEST_CASE("Lie derivative on W(sl2) is the coadjoint action") {
    const auto& w = weil_sl2();
    const auto& c = w.complex;
    const std::size_t h = 1;
    State ge = S(w, "g{e'}");
    CHECK(c.lie_mode(h, 0, ge) == S(w, "-2 g{e'}"));
    CHECK(c.d(c.iota_mode(h, 0, ge)) + c.iota_mode(h, 0, c.d(ge)) == S(w, "-2 g{e'}"));
    // against the coadjoint matrices of lie-core, on every gamma and c
    const auto& g = w.algebra;
    for (std::size_t i = 0; i < 3; ++i) {
        Matrix coad = g.coad(i);
        for (std::size_t a = 0; a < 3; ++a)
            for (const char* letter : {"g", "c"}) {
                auto state = [&](std::size_t k) {
                    return parse_state(c.table, std::string(letter) + "{" + g.basis_labels()[k] + "'}");
                };
                State want;
                for (std::size_t b = 0; b < 3; ++b)
                    if (coad(b, a) != 0) want.add(state(b), coad(b, a));
                CHECK(c.lie_mode(i, 0, state(a)) == want);
            }
    }
}

TEST_CASE("weight-zero differential is the classical Weil differential") {
    const auto& w = weil_sl2();
    for (const char* text : {"c{e'}", "g{h'}", "c{e'} c{f'}", "g{e'} c{h'} g{f'}", "c{e'} c{h'} c{f'}"}) {
        State s = S(w, text);
        CHECK(w.complex.d(s) == classical_weil_differential(w, s));
    }
    CHECK_THROWS_AS(classical_weil_differential(w, S(w, "B{e}")), ConfigError);
}

TEST_CASE("contracting element") {
    const auto& w = weil_sl2();
    State e = contracting_element(w);
    CHECK(e == S(w, "B{e} d1c{e'} + B{h} d1c{h'} + B{f} d1c{f'}"));
    CHECK(w.complex.d(e) == *w.complex.conformal);
    const auto& t = w.complex.table;
    // iota_e o_n e: the beta^e term at n = 1, nothing else
    CHECK(circle(t, w.complex.iota[0], 1, e) == S(w, "B{e}"));
    CHECK(circle(t, w.complex.iota[0], 0, e).is_zero());
    CHECK(circle(t, w.complex.iota[0], 2, e).is_zero());
    auto bd = homogeneous_bidegree(t, e);
    REQUIRE(bd);
    CHECK(bd->degree == -1);
    CHECK(bd->weight == 2);
    CHECK(contracting_element(build_weil(abelian(1))) == parse_state(build_weil(abelian(1)).complex.table,
                                                                     "B{t1} d1c{t1'}"));
}

TEST_CASE("theta_S pairs with the currents") {
    const auto& w = weil_sl2();
    const auto& t = w.complex.table;
    for (std::size_t i = 0; i < 3; ++i) {
        State theta = theta_S(w, i);
        for (std::size_t k = 0; k < 3; ++k)
            CHECK(circle(t, w.complex.lie[k], 1, theta) == (i == k ? -State::vacuum() : State()));
    }
}

TEST_CASE("L o_1 on beta b c") {
    const auto& w = weil_sl2();
    const auto& t = w.complex.table;
    // <xi_k, ad*_{xi_a} xi'_e> = f_{ka}^e; e.g. k = e, a = f, e' = h' gives [e,f] = h
    CHECK(circle(t, w.complex.lie[0], 1, S(w, "B{h} b{f} c{h'}")) == S(w, "B{h}"));
    CHECK(circle(t, w.complex.lie[1], 1, S(w, "B{e} b{e} c{e'}")) == S(w, "2 B{e}"));
    CHECK(circle(t, w.complex.lie[1], 1, S(w, "B{e} b{f} c{e'}")).is_zero());
}

TEST_CASE("small Weil complex") {
    auto c = small_weil(abelian(1));
    CHECK(c.experimental);
    REQUIRE(c.table.size() == 2);
    CHECK(c.table[0].family == Family::Gamma);
    CHECK(c.table[1].family == Family::C);
    CHECK(c.d(symbol_state(1)) == symbol_state(0));
    CHECK(c.d(symbol_state(1, 2)) == symbol_state(0, 2));
    CHECK(c.rank() == 0);
    PieceRange r{-1, 6, 3, 0};
    CHECK_NOTHROW(check_d_squared(c, r));
    CHECK_THROWS_AS(small_weil(sl2()), NotAbelian);

    // rank 2 pieces are convolutions of rank 1 pieces
    auto c2 = small_weil(abelian(2));
    for (int p = 0; p <= 5; ++p)
        for (int n = 0; n <= 3; ++n) {
            std::size_t conv = 0;
            for (int p1 = 0; p1 <= p; ++p1)
                for (int n1 = 0; n1 <= n; ++n1)
                    conv += enumerate_basis(c.table, p1, n1).size() * enumerate_basis(c.table, p - p1, n - n1).size();
            CHECK(enumerate_basis(c2.table, p, n).size() == conv);
        }
}

TEST_CASE("pinning detects a wrong differential") {
    auto w = build_weil(sl2(), PinningOptions{false, {}, {}});
    w.complex.differential = w.koszul - w.chevalley;
    w.complex.finalize();
    CHECK_THROWS_AS(run_weil_pinning(w, PieceRange{-2, 2, 1, 0}), PinningSuiteFailure);
}

TEST_CASE("identity suite reports the contraction sign") {
    auto checks = identity_suite(weil_sl2());
    REQUIRE(checks.size() == 4);
    CHECK(checks[0].passed);
    // the engine's pairing gives +beta at n = 1
    CHECK_FALSE(checks[1].passed);
    CHECK(checks[1].detail == "iota_e o_1 e = B{e}, expected -B{e}");
    CHECK(checks[2].passed);
    CHECK(checks[3].passed);
}
