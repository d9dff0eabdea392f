#include "chiral/cdr.hpp"
#include "chiral/cohomology.hpp"
#include "chiral/error.hpp"

#include <doctest.h>

#include "oracles.hpp"

using namespace chiral;

namespace {

const PinningOptions kNoPinning{false, {}, {}};

const EquivariantCDR& sl2_on_c2() {
    static const EquivariantCDR w = [] {
        auto g = sl2();
        return build_weil_q(g, sl2_fundamental(g), kNoPinning);
    }();
    return w;
}

}  // namespace

TEST_CASE("W(abelian) cohomology is the torus character") {
    for (int rank : {1, 2}) {
        const int pmax = rank == 1 ? 10 : 6, nmax = rank == 1 ? 3 : 2;
        auto w = build_weil(abelian(static_cast<std::size_t>(rank)), kNoPinning);
        CohomologyEngine engine(w.complex);
        auto table = engine.cohomology(0, pmax, nmax);
        auto counts = oracle::torus_coefficients(rank, pmax, nmax);
        for (int n = 0; n <= nmax; ++n)
            for (int p = 0; p <= pmax; ++p) {
                INFO("rank=" << rank << " p=" << p << " n=" << n);
                auto it = counts.find({p, n});
                CHECK(table.dim(p, n) == static_cast<std::size_t>(it == counts.end() ? 0 : it->second));
            }
        CHECK(compare(character(table), torus_character(rank, pmax, nmax)).match);
    }
}

TEST_CASE("W(sl2) weight zero is the invariant polynomial ring") {
    auto w = build_weil(sl2(), kNoPinning);
    CohomologyEngine engine(w.complex);
    auto table = engine.cohomology(0, 8, 0);
    for (int p = 0; p <= 8; ++p) {
        INFO("p=" << p);
        CHECK(table.dim(p, 0) == (p % 2 ? 0 : oracle::invariant_dim(w.algebra, p / 2)));
    }
}

TEST_CASE("basic subcomplex examples") {
    auto w1 = build_weil(abelian(1), kNoPinning);
    CohomologyEngine e1(w1.complex);
    auto basis = e1.basic_basis(2, 0);
    REQUIRE(basis.size() == 1);
    CHECK(basis[0] == parse_state(w1.complex.table, "g{t1'}"));
    CHECK(e1.basic_basis(1, 0).empty());
    CHECK_FALSE(e1.is_basic_cocycle(parse_state(w1.complex.table, "c{t1'}")));

    auto w = build_weil(sl2(), kNoPinning);
    CohomologyEngine e(w.complex);
    auto casimir = e.basic_basis(4, 0);
    REQUIRE(casimir.size() == 1);
    CHECK(e.is_basic_cocycle(casimir[0]));
    // proportional to the Killing form K(x,x) = 8 (h'^2 + e'f')(x)
    const auto& t = w.complex.table;
    State c = casimir[0];
    Rational s = c.coefficient(parse_state(t, "g{h'} g{h'}").terms().begin()->first);
    REQUIRE(s != 0);
    CHECK(c == s * parse_state(t, "g{h'} g{h'} + g{e'} g{f'}"));
}

TEST_CASE("representatives, csv and json") {
    auto w = build_weil(sl2(), kNoPinning);
    CohomologyEngine engine(w.complex);
    auto table = engine.cohomology(0, 4, 2, true);
    for (const auto& e : table.entries) {
        CHECK(e.representatives.size() == e.dim);
        for (const auto& r : e.representatives) {
            CHECK(engine.is_basic_cocycle(r));
            auto bd = homogeneous_bidegree(w.complex.table, r);
            REQUIRE(bd);
            CHECK(bd->degree == e.p);
            CHECK(bd->weight == e.n);
            // a cohomology representative is not a boundary
            CHECK_FALSE(engine.primitive(r).has_value());
        }
    }
    CHECK(table.dim(0, 2) == 1);
    CHECK(table.dim(4, 1) == 1);
    CHECK(character(table).to_text() == "1 + z^4 + z^4 q + q^2 + 2 z^4 q^2 + O(z^5, q^3)");
    auto j = table.to_json();
    CHECK(j["complex"] == "W(sl2)");
    CHECK(j["trunc"]["pmax"] == 4);
    CHECK(j["entries"].size() == 15);
    CHECK(table.to_csv().rfind("p,n,dim\n0,0,1\n1,0,0\n", 0) == 0);
    CHECK_THROWS_AS(engine.primitive(parse_state(w.complex.table, "c{e'}")), NotACocycle);
}

TEST_CASE("modular ranks and thread count do not change results") {
    auto w = build_weil(sl2(), kNoPinning);
    CohomologyEngine plain(w.complex, EngineOptions{2, kDefaultBasisBudget, 1, false});
    CohomologyEngine checked(w.complex, EngineOptions{2, kDefaultBasisBudget, 3, true});
    auto a = plain.cohomology(0, 6, 2, true), b = checked.cohomology(0, 6, 2, true);
    CHECK(a.to_json() == b.to_json());
    for (std::size_t i = 0; i < a.entries.size(); ++i)
        CHECK(a.entries[i].representatives == b.entries[i].representatives);
}

TEST_CASE("equivariant cohomology of C^2 under sl2") {
    const auto& w = sl2_on_c2();
    CohomologyEngine engine(w.complex, EngineOptions{3});
    auto table = engine.cohomology(-2, 4, 2);
    for (const auto& e : table.entries) {
        INFO("p=" << e.p << " n=" << e.n);
        CHECK(e.dim == ((e.n == 0 && (e.p == 0 || e.p == 4)) ? 1u : 0u));
    }
}

TEST_CASE("Chern-Weil map kills the positive weight classes") {
    const auto& w = sl2_on_c2();
    CohomologyEngine weil(w.weil.complex), combined(w.complex, EngineOptions{3});
    auto table = weil.cohomology(0, 4, 2, true);
    std::size_t exact = 0, surviving = 0;
    for (const auto& e : table.entries)
        for (const auto& r : e.representatives) {
            INFO("p=" << e.p << " n=" << e.n);
            auto img = chern_weil(weil, combined, r);
            CHECK(img.exact == (e.n > 0));
            if (img.exact) {
                REQUIRE(img.primitive);
                CHECK(w.complex.d(*img.primitive) == img.image);
                CHECK(combined.is_basic_cocycle(img.image));
                ++exact;
            } else {
                ++surviving;
            }
        }
    CHECK(exact == 4);
    CHECK(surviving == 2);
    CHECK_THROWS_AS(chern_weil(weil, combined, parse_state(w.weil.complex.table, "c{e'}")), NotACocycle);
}
