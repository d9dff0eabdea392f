#include "chiral/field.hpp"

#include <doctest.h>

using namespace chiral;

namespace {

GeneratorTable weil_table(std::vector<std::string> labels) {
    std::vector<std::string> dual;
    for (auto& l : labels) dual.push_back(l + "'");
    GeneratorTable t;
    t.add_system(labels, dual, -2, 2, -1, 1);
    return t;
}

State S(const GeneratorTable& t, const char* text) { return parse_state(t, text); }

// d^i/i! applied to a state.
State divided_derivative(const GeneratorTable& t, State s, int i) {
    for (int r = 1; r <= i; ++r) s = Rational(1, r) * derivative(t, s);
    return s;
}

std::vector<State> probes(const GeneratorTable& t) {
    return {State::vacuum(), S(t, "g{x'}"), S(t, "B{x} c{x'}"), S(t, "d1g{x'} c{y'}"), S(t, "b{y} g{x'} g{y'}"),
            S(t, "d2c{x'} B{y}"), S(t, "d1b{x} d1c{x'} g{y'}")};
}

}  // namespace

TEST_CASE("generator pairings") {
    auto t = weil_table({"x"});
    auto one = State::vacuum();
    CHECK(circle(t, S(t, "b{x}"), 0, S(t, "c{x'}")) == one);
    CHECK(circle(t, S(t, "c{x'}"), 0, S(t, "b{x}")) == one);
    CHECK(circle(t, S(t, "B{x}"), 0, S(t, "g{x'}")) == one);
    CHECK(circle(t, S(t, "g{x'}"), 0, S(t, "B{x}")) == -one);
    CHECK(circle(t, S(t, "B{x}"), 1, S(t, "d1g{x'}")) == one);
    CHECK(circle(t, S(t, "B{x}"), 0, S(t, "d1g{x'}")).is_zero());
    CHECK(circle(t, S(t, "B{x}"), 1, S(t, "g{x'}")).is_zero());
    CHECK(circle(t, S(t, "b{x}"), 0, S(t, "g{x'}")).is_zero());
}

TEST_CASE("vacuum and translation axioms") {
    auto t = weil_table({"x", "y"});
    for (const auto& a : probes(t)) {
        CHECK(circle(t, a, -1, State::vacuum()) == a);
        CHECK(circle(t, State::vacuum(), -1, a) == a);
        CHECK(circle(t, a, -2, State::vacuum()) == derivative(t, a));
        for (int n = 0; n < 3; ++n) CHECK(circle(t, a, n, State::vacuum()).is_zero());
        for (const auto& b : probes(t))
            for (int n = -2; n <= 2; ++n) CHECK(circle(t, derivative(t, a), n, b) == Rational(-n) * circle(t, a, n - 1, b));
    }
}

TEST_CASE("skew symmetry") {
    auto t = weil_table({"x", "y"});
    auto ps = probes(t);
    for (const auto& a : ps)
        for (const auto& b : ps) {
            bool sign_flip = is_odd(t, a.terms().begin()->first) && is_odd(t, b.terms().begin()->first);
            for (int n = -1; n <= 2; ++n) {
                State rhs;
                for (int i = 0; i <= 8; ++i) {
                    State term = divided_derivative(t, circle(t, a, n + i, b), i);
                    int e = n + i + 1 + (sign_flip ? 1 : 0);
                    rhs.add(term, e % 2 ? -1 : 1);
                }
                CHECK(circle(t, b, n, a) == rhs);
            }
        }
}

TEST_CASE("Borcherds commutator formula") {
    auto t = weil_table({"x", "y"});
    auto ps = probes(t);
    std::vector<State> fields = {S(t, "B{x} g{y'}"), S(t, "b{x} c{y'}"), S(t, "d1g{x'}"), S(t, "B{y} c{x'}"),
                                 S(t, "g{x'} b{y}"), S(t, "b{y} d1c{y'} g{x'}")};
    for (const auto& a : fields)
        for (const auto& b : fields)
            for (int m = -1; m <= 1; ++m)
                for (int k = -1; k <= 1; ++k) CHECK(borcherds_check(t, a, b, m, k, ps));
}

TEST_CASE("conformal vectors") {
    // beta-gamma with weights (1, 0) has central charge 2, b-c has -2.
    auto t = weil_table({"x"});
    State lbg = S(t, "B{x} d1g{x'}");
    State lbc = S(t, "- b{x} d1c{x'}");
    State l = lbg + lbc;
    CHECK(circle(t, lbg, 3, lbg) == State::vacuum());
    CHECK(circle(t, lbc, 3, lbc) == -State::vacuum());
    CHECK(circle(t, l, 3, l).is_zero());
    CHECK(circle(t, l, 2, l).is_zero());
    CHECK(circle(t, l, 1, l) == Rational(2) * l);
    CHECK(circle(t, l, 0, l) == derivative(t, l));
    auto one_var = weil_table({"x"});
    for (const char* s : {"g{x'}", "B{x}", "b{x} c{x'}", "d2g{x'} B{x}", "d1c{x'}"}) {
        State a = S(one_var, s);
        auto bd = homogeneous_bidegree(one_var, a);
        REQUIRE(bd);
        CHECK(circle(one_var, l, 1, a) == Rational(bd->weight) * a);
        CHECK(circle(one_var, l, 0, a) == derivative(one_var, a));
    }
}
