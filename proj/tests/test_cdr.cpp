#include "chiral/cdr.hpp"
#include "chiral/cohomology.hpp"
#include "chiral/error.hpp"

#include <doctest.h>

using namespace chiral;

namespace {

const EquivariantCDR& sl2_on_c2() {
    static const EquivariantCDR w = [] {
        auto g = sl2();
        return build_weil_q(g, sl2_fundamental(g));
    }();
    return w;
}

}  // namespace

TEST_CASE("linear chiral de Rham complex") {
    auto g = sl2();
    auto q = build_cdr(g, sl2_fundamental(g));
    const auto& t = q.complex.table;
    CHECK(t.size() == 8);
    CHECK(q.complex.d(parse_state(t, "g{x1'}")) == parse_state(t, "c{x1'}"));
    CHECK(q.complex.d(parse_state(t, "b{x2}")) == parse_state(t, "B{x2}"));
    CHECK(q.complex.d(q.g_m) == q.l_m);
    // iota^V_h on gamma: the contragredient weights -1, +1
    CHECK(q.complex.iota_mode(1, 0, parse_state(t, "g{x1'}")).is_zero());
    CHECK(q.complex.lie_mode(1, 0, parse_state(t, "g{x1'}")) == parse_state(t, "-g{x1'}"));
    CHECK(q.complex.lie_mode(1, 0, parse_state(t, "g{x2'}")) == parse_state(t, "g{x2'}"));
    CHECK(q.complex.lie_mode(1, 0, parse_state(t, "B{x1}")) == parse_state(t, "B{x1}"));
    // bilinear in the coordinates, weight 1
    for (const auto& gam : q.gamma) {
        auto bd = homogeneous_bidegree(t, gam);
        REQUIRE(bd);
        CHECK(bd->weight == 1);
        CHECK(bd->degree == 0);
    }
}

TEST_CASE("alpha satisfies the three homotopy conditions") {
    const auto& w = sl2_on_c2();
    State alpha = build_alpha(w);
    const auto& c = w.complex;
    const auto& t = c.table;
    auto bd = homogeneous_bidegree(t, alpha);
    REQUIRE(bd);
    CHECK(bd->degree == -2);
    CHECK(bd->weight == 2);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(c.lie_mode(i, 0, alpha).is_zero());
        CHECK(circle(t, c.lie[i], 1, alpha) == symbol_state(i));
        for (int k = 0; k <= 3; ++k) CHECK(circle(t, c.iota[i], k, alpha).is_zero());
    }
}

TEST_CASE("alpha is unavailable for abelian input") {
    auto g = abelian(1);
    auto v = abelian_weights(g, {{1}});
    PinningOptions off{false, {}, {}};
    auto w = build_weil_q(g, v, off);
    CHECK_THROWS_AS(build_alpha(w), HomotopyConditionsFailed);
}

TEST_CASE("omega(1) contracts L(1) on the basic subcomplex") {
    const auto& w = sl2_on_c2();
    State alpha = build_alpha(w);
    VanishingHomotopy h = vanishing_homotopy(w, alpha, PieceRange{-3, 4, 1, 1});
    const auto& c = w.complex;

    // every weight-1 basic cocycle is d of omega(1) of itself
    CohomologyEngine engine(c, EngineOptions{1});
    std::size_t witnesses = 0;
    for (int p = -2; p <= 4; ++p)
        for (const State& z : engine.basic_basis(p, 1)) {
            if (!c.d(z).is_zero()) continue;
            ++witnesses;
            State y = h.apply(z);
            CHECK(engine.is_basic_cocycle(z));
            CHECK(c.d(y) == z);
        }
    CHECK(witnesses > 0);

    // the identity holds on all of the complex, e.g. on weight-1 monomials
    const auto& t = c.table;
    for (const char* text : {"d1g{x1'}", "g{x2'} d1c{x1'}", "B{x1} g{x1'}", "B{e} c{e'}", "b{h} g{x2'}"}) {
        State x = parse_state(t, text);
        INFO(text);
        CHECK(c.d(h.apply(x)) + h.apply(c.d(x)) == x);
    }
}
