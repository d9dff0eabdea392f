#include "chiral/error.hpp"
#include "chiral/lie.hpp"

#include <doctest.h>

using namespace chiral;

namespace {

// Independent oracle: brackets of sl2 computed from 2x2 matrix commutators
// and decomposed by hand in the basis (e, h, f).
std::vector<Rational> sl2_coords(const Matrix& m) { return {m(0, 1), m(0, 0), m(1, 0)}; }

Matrix sl2_matrix(const std::vector<Rational>& x) {
    Matrix m(2, 2);
    m(0, 1) = x[0];
    m(0, 0) = x[1];
    m(1, 1) = -x[1];
    m(1, 0) = x[2];
    return m;
}

std::vector<Rational> unit(std::size_t n, std::size_t i) {
    std::vector<Rational> v(n);
    v[i] = 1;
    return v;
}

}  // namespace

TEST_CASE("abelian(1) has zero bracket") {
    auto a = abelian(1);
    CHECK(a.dim() == 1);
    CHECK(a.f(0, 0, 0) == 0);
    CHECK(a.flags().abelian);
    CHECK(killing_form(a).is_zero());
    CHECK(killing_form(abelian(3)).is_zero());
}

TEST_CASE("sl2 brackets match matrix commutators and satisfy Jacobi") {
    auto g = sl2();
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            Matrix a = sl2_matrix(unit(3, i)), b = sl2_matrix(unit(3, j));
            CHECK(g.bracket(unit(3, i), unit(3, j)) == sl2_coords(a * b - b * a));
        }
    // [h,e] = 2e, [h,f] = -2f, [e,f] = h
    CHECK(g.f(1, 0, 0) == 2);
    CHECK(g.f(1, 2, 2) == -2);
    CHECK(g.f(0, 2, 1) == 1);
    // brute force Jacobi over all basis triples
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            for (std::size_t k = 0; k < 3; ++k) {
                auto x = unit(3, i), y = unit(3, j), z = unit(3, k);
                auto s1 = g.bracket(x, g.bracket(y, z));
                auto s2 = g.bracket(y, g.bracket(z, x));
                auto s3 = g.bracket(z, g.bracket(x, y));
                for (std::size_t c = 0; c < 3; ++c) CHECK(s1[c] + s2[c] + s3[c] == 0);
            }
}

TEST_CASE("Killing forms") {
    Matrix k = killing_form(sl2());
    // trace of composed adjoint matrices: kappa(h,h) = 8, kappa(e,f) = 4
    CHECK(k(1, 1) == 8);
    CHECK(k(0, 2) == 4);
    CHECK(k(2, 0) == 4);
    CHECK(k(0, 0) == 0);
    CHECK(k(0, 1) == 0);
    CHECK(k(1, 2) == 0);
    CHECK(k(2, 2) == 0);

    Matrix kk = killing_form(sl2_sum_sl2());
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j) {
            bool same_block = (i < 3) == (j < 3);
            Rational expect = same_block ? k(i % 3, j % 3) : Rational(0);
            CHECK(kk(i, j) == expect);
        }

    // sl3: kappa(x, y) = 6 tr(xy)
    auto g3 = sl3();
    auto rep = sl3_fundamental(g3);
    CHECK(killing_form(g3) == rep.trace_form().scaled(6));
}

TEST_CASE("form-dual basis contract") {
    for (auto g : {sl2(), sl3(), sl2_sum_sl2(), abelian(2)}) {
        Matrix dual = g.form_dual_basis();
        Matrix pairing = dual * g.form();
        CHECK(pairing == Matrix::identity(g.dim()));
    }
}

TEST_CASE("JSON descriptors") {
    SUBCASE("antisymmetry violation") {
        nlohmann::json d = {{"dim", 2}, {"brackets", {{1, 0, 0, 1}, {0, 1, 0, 1}}}, {"form", {{1, 0}, {0, 1}}}};
        CHECK_THROWS_AS(load_algebra(d), AntisymmetryViolation);
    }
    SUBCASE("Jacobi violation") {
        nlohmann::json d = {{"dim", 3},
                            {"brackets", {{0, 1, 2, 1}, {1, 2, 0, 1}, {0, 2, 0, 1}}},
                            {"form", {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}}}};
        CHECK_THROWS_AS(load_algebra(d), JacobiViolation);
    }
    SUBCASE("singular form with nondegenerate flag") {
        nlohmann::json d = {{"dim", 1}, {"form", {{0}}}, {"flags", {"abelian", "nondegenerate"}}};
        CHECK_THROWS_AS(load_algebra(d), SingularFormWhenNondegenerateRequired);
    }
    SUBCASE("round trip of a built-in") {
        auto g = sl2();
        auto back = load_algebra(algebra_to_json(g));
        CHECK(back.dim() == 3);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j)
                for (std::size_t k = 0; k < 3; ++k) CHECK(back.f(i, j, k) == g.f(i, j, k));
        CHECK(back.form() == g.form());
        CHECK(back.flags().simple);
    }
    SUBCASE("form induced by a representation") {
        auto g = sl2();
        nlohmann::json d = algebra_to_json(g);
        d["form"] = {{"from_representation",
                      {{"dim", 2}, {"matrices", {{{0, 1}, {0, 0}}, {{1, 0}, {0, -1}}, {{0, 0}, {1, 0}}}}}}};
        auto with_trace = load_algebra(d);
        CHECK(with_trace.form()(1, 1) == 2);
        CHECK(with_trace.form()(0, 2) == 1);
    }
    SUBCASE("rational strings") {
        nlohmann::json d = {{"dim", 1}, {"form", {{"3/2"}}}, {"flags", {"abelian"}}};
        CHECK(load_algebra(d).form()(0, 0) == Rational(3, 2));
        nlohmann::json bad = {{"dim", 1}, {"form", {{1.5}}}};
        CHECK_THROWS_AS(load_algebra(bad), ParseError);
    }
}

TEST_CASE("representations") {
    auto g = sl2();
    auto v = sl2_fundamental(g);
    CHECK(v.dim() == 2);
    CHECK(v.is_faithful());
    Matrix t = v.trace_form();
    CHECK(t(0, 2) == 1);
    CHECK(t(1, 1) == 2);
    CHECK(t(0, 0) == 0);

    auto ms = v.matrices();
    std::swap(ms[0], ms[2]);
    CHECK_THROWS_AS(Representation(g, ms), RepresentationViolation);

    auto t2 = abelian(2);
    auto rep = abelian_weights(t2, {{1, 0}, {0, 1}});
    CHECK(rep.is_faithful());
    auto trivial = abelian_weights(t2, {{1, 0}});
    CHECK_FALSE(trivial.is_faithful());
}

TEST_CASE("subalgebras and coadjoint span") {
    auto g = sl2();
    Matrix cartan(3, 1);
    cartan(1, 0) = 1;
    Matrix borel(3, 2);
    borel(0, 0) = 1;
    borel(1, 1) = 1;
    CHECK(coadjoint_span(g, SubalgebraEmbedding(g, cartan)));
    // annihilator of the Borel is span(f'); its coadjoint orbit only reaches span(f', h')
    CHECK_FALSE(coadjoint_span(g, SubalgebraEmbedding(g, borel)));
    CHECK(coadjoint_span(g, SubalgebraEmbedding(g, Matrix(3, 0))));

    Matrix not_closed(3, 2);
    not_closed(0, 0) = 1;
    not_closed(2, 1) = 1;
    CHECK_THROWS_AS(SubalgebraEmbedding(g, not_closed), NotASubalgebra);

    auto a = abelian(1);
    CHECK_FALSE(coadjoint_span(a, SubalgebraEmbedding(a, Matrix(1, 0))));
    Matrix all(1, 1);
    all(0, 0) = 1;
    CHECK_FALSE(coadjoint_span(a, SubalgebraEmbedding(a, all)));

    auto gg = sl2_sum_sl2();
    Matrix first(6, 3);
    for (std::size_t i = 0; i < 3; ++i) first(i, i) = 1;
    CHECK_FALSE(coadjoint_span(gg, SubalgebraEmbedding(gg, first)));
    // the diagonal sl2 contains no simple summand
    Matrix diag(6, 3);
    for (std::size_t i = 0; i < 3; ++i) diag(i, i) = diag(i + 3, i) = 1;
    CHECK(coadjoint_span(gg, SubalgebraEmbedding(gg, diag)));

    auto g3 = sl3();
    Matrix cartan3(8, 2);
    cartan3(6, 0) = 1;
    cartan3(7, 1) = 1;
    CHECK(coadjoint_span(g3, SubalgebraEmbedding(g3, cartan3)));

    auto degenerate = g.with_form(Matrix(3, 3), false);
    CHECK_THROWS_AS(coadjoint_span(degenerate, SubalgebraEmbedding(g, cartan)), DegenerateForm);
}
