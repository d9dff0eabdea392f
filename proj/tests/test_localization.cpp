#include "chiral/error.hpp"
#include "chiral/localization.hpp"
#include "chiral/weil.hpp"

#include <doctest.h>

#include "oracles.hpp"

using namespace chiral;

namespace {

FixedPointData circle_data(std::vector<Rational> fixed, PoincareData classical) {
    FixedPointData d;
    d.scenario = "circle";
    d.n_max = 3;
    d.p_max = 10;
    d.betti["MG"] = std::move(fixed);
    d.poincare["HG(M)"] = std::move(classical);
    return d;
}

// chi_+(S^1) coefficient from the multiset count
long chi_plus(int p, int n) {
    if (n == 0) return 0;
    auto counts = oracle::torus_coefficients(1, p, n);
    auto it = counts.find({p, n});
    return it == counts.end() ? 0 : it->second;
}

}  // namespace

TEST_CASE("hgc_character") {
    auto t1 = hgc_character(abelian(1), 10, 3);
    CHECK(t1.coefficient(2, 1) == 1);
    CHECK(t1.coefficient(4, 2) == 2);
    auto t2 = hgc_character(abelian(2), 8, 2);
    CHECK(t2 == (t1 * t1).truncated(8, 2));
    auto s = hgc_character(sl2(), 8, 1);
    for (int p = 0; p <= 8; ++p) CHECK(s.coefficient(p, 0) == (p % 4 == 0 ? 1 : 0));
    CHECK(s.coefficient(4, 1) == 1);
    CHECK(s.coefficient(8, 1) == 1);
}

TEST_CASE("circle localization on projective spaces") {
    // CP^1: two fixed points, H_{S^1}(CP^1) = (1+z^2)/(1-z^2)
    auto cp1 = circle_localization(circle_data({2}, {{1, 0, 1}, {2}}));
    CHECK(cp1.coefficient(2, 1) == 2);
    CHECK(cp1.coefficient(2, 0) == 2);
    for (int n = 1; n <= 3; ++n)
        for (int p = 0; p <= 10; ++p) CHECK(cp1.coefficient(p, n) == 2 * chi_plus(p, n));
    // CP^2: three fixed points
    auto cp2 = circle_localization(circle_data({3}, {{1, 0, 1, 0, 1}, {2}}));
    CHECK(cp2.coefficient(2, 1) == 3);
    CHECK(cp2.coefficient(4, 0) == 3);
    // no fixed points
    auto free_action = circle_localization(circle_data({}, {{1}, {}}));
    CHECK(free_action.positive_weight().is_zero());

    FixedPointData missing = circle_data({2}, {{1}, {}});
    missing.betti.clear();
    CHECK_THROWS_AS(circle_localization(missing), MissingBetti);
}

TEST_CASE("simple localization") {
    auto chi = hgc_character(sl2(), 8, 2);
    FixedPointData d;
    d.scenario = "simple";
    d.p_max = 8;
    d.n_max = 2;
    d.betti["MG"] = {1};
    CHECK(simple_localization(chi, d, chi.weight_zero()) == chi);  // M = pt
    d.betti["MG"] = {3};
    auto three = simple_localization(chi, d, chi.weight_zero());
    CHECK(three.positive_weight() == Rational(3) * chi.positive_weight());
    d.betti["MG"] = {};
    CHECK(simple_localization(chi, d, chi.weight_zero()).positive_weight().is_zero());
}

TEST_CASE("product of simple groups") {
    auto a = hgc_character(sl2(), 8, 2), b = hgc_character(abelian(1), 8, 2);
    FixedPointData d;
    d.scenario = "product-simple";
    d.p_max = 8;
    d.n_max = 2;
    // M = pt: every fixed set is a point
    d.betti["MG"] = {1};
    d.poincare["HG2(MG1)"] = {b.weight_zero().coefficient(0, 0) == 1 ? std::vector<Rational>{1} : std::vector<Rational>{}, {2}};
    d.poincare["HG1(MG2)"] = {{1}, {4}};
    auto pt = product_simple_localization(a, b, d);
    CHECK(pt == (a * b).positive_weight());
    // M^{G2} empty, M^{G1} a point
    d.betti["MG"] = {};
    d.poincare["HG1(MG2)"] = {{}, {}};
    CHECK(product_simple_localization(a, b, d) == a.positive_weight() * b.weight_zero());
    d.poincare["HG2(MG1)"] = {{}, {}};
    CHECK(product_simple_localization(a, b, d).is_zero());
}

TEST_CASE("T^2 on CP^2") {
    auto s = torus_cp2_character(10, 3);
    CHECK(s.coefficient(2, 1) == 3);
    // z^4 q: chi_+ has z^2 q + z^4 q + ..., the line series 1 + 2 z^2 + ..., so 3 (1*2 + 1*1)
    CHECK(s.coefficient(4, 1) == 9);
    // independent expansion: 3 chi_+ (1+z^2)/(1-z^2) + 3 chi_+^2
    for (int n = 1; n <= 3; ++n)
        for (int p = 0; p <= 10; ++p) {
            long first = 0, second = 0;
            for (int a = 0; a <= p; a += 2) first += chi_plus(p - a, n) * (a == 0 ? 1 : 2);
            for (int n1 = 1; n1 < n; ++n1)
                for (int p1 = 0; p1 <= p; ++p1) second += chi_plus(p1, n1) * chi_plus(p - p1, n - n1);
            CHECK(s.coefficient(p, n) == 3 * first + 3 * second);
        }
    // q^0 layer: (1 + z^2 + z^4)/(1 - z^2)^2
    CHECK(s.coefficient(0, 0) == 1);
    CHECK(s.coefficient(2, 0) == 3);
    CHECK(s.coefficient(4, 0) == 6);
    auto given = CharacterSeries::constant(7, 10, 3);
    CHECK(torus_cp2_character(10, 3, given).weight_zero() == given);
}

TEST_CASE("homogeneous spaces and Q structure") {
    auto one = CharacterSeries::constant(1, 8, 2);
    auto p = PoincareData{{1, 0, 1}, {4}}.series(8, 2);
    CHECK(q_structure_character(one, p).positive_weight().is_zero());  // K finite
    auto chi = hgc_character(sl2(), 8, 2);
    CHECK(homogeneous_character(chi, one) == chi);  // G = H
    auto s1 = torus_character(1, 8, 2);
    auto h = homogeneous_character(s1, p);
    CHECK(h == s1 * p);
    // divisibility by chi(K0): h * chi(K0)^{-1} recovers the classical factor
    CHECK(h * inverse(s1) == p);
}

TEST_CASE("sphere sequence") {
    auto chi = hgc_character(sl2(), 8, 2);
    SphereData s{3, {"minus2", "minus1"}, 4, {}};
    auto seq = sphere_sequence(s, chi);
    REQUIRE(seq.steps.size() == 3);
    CHECK(seq.steps[0].components == 3);
    CHECK(seq.steps[1].components == 4);
    CHECK(seq.steps[2].components == 7);
    CHECK(sphere_sequence(SphereData{3, {"minus1"}, 4, {}}, chi).steps[1].components == 5);

    SphereData five{3, {"minus2", "minus1", "minus1", "minus2", "minus1"}, 6, {}};
    auto run = sphere_sequence(five, chi);
    CHECK(run.increasing);
    CHECK(run.classical_equal);
    CHECK(run.chiral_distinct);
    auto pt = chi.weight_zero();
    for (const auto& step : run.steps) {
        CHECK(step.classical == pt * (CharacterSeries::constant(1, 8, 2) + CharacterSeries::monomial(1, 6, 0, 8, 2)));
        // lowest positive-weight coefficient (z^4 q) scales with c
        CHECK(step.chiral.coefficient(4, 1) == step.components);
    }
    CHECK_THROWS_AS(sphere_sequence(SphereData{2, {}, 4, {}}, chi), C0OutOfRange);
    CHECK_THROWS_AS(sphere_sequence(SphereData{7, {}, 4, {}}, chi), C0OutOfRange);
    CHECK_THROWS_AS(sphere_sequence(SphereData{3, {"minus3"}, 4, {}}, chi), ConfigError);
    // with chi_+ = 0 (finite group) the chiral series coincide
    auto finite = sphere_sequence(s, CharacterSeries::constant(1, 8, 2));
    CHECK_FALSE(finite.chiral_distinct);
}

TEST_CASE("fixed-point data JSON and scenarios") {
    auto j = nlohmann::json::parse(R"j({"scenario": "sphere-seq", "n_max": 1, "p_max": 6,
        "sphere": {"c0": 3, "branches": ["minus2", "minus1"], "dim": 4}})j");
    auto d = load_fixed_point_data(j);
    auto out = run_scenario(d);
    CHECK(out["c"] == nlohmann::json::array({3, 4, 7}));
    CHECK(out["chiral_distinct"] == true);
    CHECK(load_fixed_point_data(fixed_point_data_to_json(d)).sphere->branches == d.sphere->branches);

    auto cp1 = run_scenario(load_fixed_point_data(nlohmann::json::parse(
        R"j({"scenario": "circle", "betti": {"MG": [2]}, "poincare": {"HG(M)": {"numerator": [1, 0, 1], "denominator": [2]}}})j")));
    CHECK(cp1["series"]["text"].get<std::string>().find("2 z^2 q") != std::string::npos);

    CHECK_THROWS_AS(run_scenario(load_fixed_point_data(nlohmann::json::parse(R"j({"scenario": "circle"})j"))),
                    MissingBetti);
    CHECK_THROWS_AS(load_fixed_point_data(nlohmann::json::parse(R"j({"scenario": "torus"})j")), ConfigError);
    CHECK_THROWS_AS(load_fixed_point_data(nlohmann::json::parse(R"j({"scenario": "circle", "betti": {"MG": [-1]}})j")),
                    ConfigError);
}

TEST_CASE("cross check against the engine") {
    auto w = build_weil(abelian(1), PinningOptions{false, {}, {}});
    CohomologyEngine engine(w.complex);
    auto table = engine.cohomology(0, 8, 3);
    CHECK(cross_check(table, torus_character(1, 8, 3)).match);
    auto corrupted = table;
    corrupted.entries[3].dim += 1;
    auto r = cross_check(corrupted, torus_character(1, 8, 3));
    CHECK_FALSE(r.match);
    CHECK(r.mismatches.size() == 1);
}
