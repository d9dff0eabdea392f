#include "chiral/weil.hpp"

#include "chiral/error.hpp"

namespace chiral {

namespace {

struct WeilIndex {
    std::size_t d;
    std::size_t beta(std::size_t i) const { return i; }
    std::size_t gamma(std::size_t i) const { return d + i; }
    std::size_t b(std::size_t i) const { return 2 * d + i; }
    std::size_t c(std::size_t i) const { return 3 * d + i; }
};

State pair(const GeneratorTable& t, std::size_t u, unsigned ku, std::size_t v, unsigned kv) {
    return multiply(t, symbol_state(u, ku), symbol_state(v, kv));
}

std::vector<std::string> primed(const std::vector<std::string>& labels) {
    std::vector<std::string> out;
    for (const auto& l : labels) out.push_back(l + "'");
    return out;
}

void fail(const WeilComplex& w, const std::string& what) { throw PinningSuiteFailure(w.complex.id + ": " + what); }

}  // namespace

WeilComplex build_weil(const LieAlgebra& algebra, const PinningOptions& options) {
    const std::size_t d = algebra.dim();
    const WeilIndex ix{d};
    WeilComplex w{algebra, {}, {}, {}, {}, {}};
    auto& c = w.complex;
    c.id = "W(" + algebra.name() + ")";
    c.table.add_system(algebra.basis_labels(), primed(algebra.basis_labels()), -2, 2, -1, 1);
    const auto& t = c.table;

    // theta_S_i = -sum f_{ik}^j :beta^j gamma^k:,  theta_Lambda_i = sum f_{ik}^j :b^j c^k:
    for (std::size_t i = 0; i < d; ++i) {
        State ts, tl;
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t k = 0; k < d; ++k) {
                const Rational& f = algebra.f(i, k, j);
                if (f == 0) continue;
                ts.add(pair(t, ix.beta(j), 0, ix.gamma(k), 0), -f);
                tl.add(pair(t, ix.b(j), 0, ix.c(k), 0), f);
            }
        w.theta_s.push_back(ts);
        w.theta_lambda.push_back(tl);
    }
    for (std::size_t i = 0; i < d; ++i) {
        w.koszul.add(pair(t, ix.gamma(i), 0, ix.b(i), 0), 1);
        State inner = w.theta_s[i] + Rational(1, 2) * w.theta_lambda[i];
        w.chevalley += normal_product(t, inner, symbol_state(ix.c(i)));
    }
    c.differential = w.chevalley + w.koszul;
    State conformal;
    for (std::size_t i = 0; i < d; ++i) {
        c.iota.push_back(symbol_state(ix.b(i)));
        c.lie.push_back(w.theta_s[i] + w.theta_lambda[i]);
        conformal.add(pair(t, ix.beta(i), 0, ix.gamma(i), 1), 1);
        conformal.add(pair(t, ix.b(i), 0, ix.c(i), 1), -1);
    }
    c.conformal = conformal;
    HorizontalFrame frame;
    for (std::size_t i = 0; i < d; ++i) frame.weil_c.push_back(ix.c(i));
    c.frame = frame;
    c.finalize();

    if (options.enabled) run_weil_pinning(w, options.range);
    return w;
}

State classical_weil_differential(const WeilComplex& w, const State& weight_zero) {
    const std::size_t d = w.algebra.dim();
    const WeilIndex ix{d};
    const auto& t = w.complex.table;
    std::vector<State> images(t.size());
    for (std::size_t a = 0; a < d; ++a) {
        State dc = symbol_state(ix.gamma(a)), dg;
        for (std::size_t b = 0; b < d; ++b)
            for (std::size_t e = 0; e < d; ++e) {
                const Rational& f = w.algebra.f(b, e, a);
                if (f == 0) continue;
                dc.add(pair(t, ix.c(b), 0, ix.c(e), 0), Rational(-f / 2));
                dg.add(pair(t, ix.c(b), 0, ix.gamma(e), 0), Rational(-f));
            }
        images[ix.c(a)] = dc;
        images[ix.gamma(a)] = dg;
    }
    for (const auto& [m, coeff] : weight_zero.terms())
        if (bidegree(t, m).weight != 0) throw ConfigError("classical Weil differential needs weight-zero input");
    return apply_derivation(t, images, weight_zero);
}

void run_weil_pinning(const WeilComplex& w, const PieceRange& range) {
    const auto& c = w.complex;
    const auto& t = c.table;
    const auto& g = w.algebra;
    const std::size_t d = g.dim();
    const WeilIndex ix{d};

    State e = contracting_element(w);
    if (d > 0) {
        auto bd = homogeneous_bidegree(t, e);
        auto dbd = homogeneous_bidegree(t, c.d(e));
        if (!bd || bd->degree != -1 || bd->weight != 2 || !dbd || dbd->degree != 0)
            fail(w, "contracting element has the wrong bidegree");
    }

    for (std::size_t i = 0; i < d; ++i)
        if (!(c.d(c.iota[i]) == c.lie[i])) fail(w, "L_" + g.basis_labels()[i] + " != d o_0 b");

    check_d_squared(c, range);
    check_osg_relations(c, range);

    PieceRange zero = range;
    zero.n_max = 0;
    for_each_piece(t, zero, [&](int, int, int, const std::vector<Monomial>& basis) {
        for (const auto& m : basis) {
            State s(m, 1);
            if (!(c.d(s) == classical_weil_differential(w, s)))
                fail(w, "weight-zero differential differs from the classical Weil differential on '" + to_text(t, m) +
                            "'");
        }
    });

    // L_{xi_k} o_1 :beta^z b^a c^e: = <xi_k, ad*_{xi_a} xi'_e> beta^z = f_{ka}^e beta^z
    for (std::size_t k = 0; k < d; ++k)
        for (std::size_t z = 0; z < d; ++z)
            for (std::size_t a = 0; a < d; ++a)
                for (std::size_t ee = 0; ee < d; ++ee) {
                    State probe = multiply(t, pair(t, ix.beta(z), 0, ix.b(a), 0), symbol_state(ix.c(ee)));
                    State want = g.f(k, a, ee) * symbol_state(ix.beta(z));
                    if (!(circle(t, c.lie[k], 1, probe) == want))
                        fail(w, "L o_1 (beta b c) identity fails on '" + to_text(t, probe) + "'");
                }

    check_conformal(c, range);
    check_currents_primary(c);
}

State contracting_element(const WeilComplex& w) {
    const auto& c = w.complex;
    const auto& t = c.table;
    const std::size_t d = w.algebra.dim();
    const WeilIndex ix{d};
    State e;
    for (std::size_t i = 0; i < d; ++i) e.add(pair(t, ix.beta(i), 0, ix.c(i), 1), 1);
    if (!(c.d(e) == *c.conformal)) fail(w, "d(beta dc) != L^W");
    for (std::size_t i = 0; i < d; ++i)
        for (int n = 0; n <= 3; ++n) {
            State want = n == 1 ? symbol_state(ix.beta(i)) : State();
            if (!(circle(t, c.iota[i], n, e) == want))
                fail(w, "iota o_" + std::to_string(n) + " (beta dc) != delta_{n,1} beta");
        }
    return e;
}

FieldExpression theta_S(const WeilComplex& w, std::size_t i) {
    const auto& g = w.algebra;
    if (g.flags().abelian) return {};
    Matrix dual = killing_form(g).inverse();
    FieldExpression theta;
    for (std::size_t j = 0; j < g.dim(); ++j)
        if (dual(i, j) != 0) theta.add(w.theta_s[j], dual(i, j));
    for (std::size_t k = 0; k < g.dim(); ++k) {
        State want = k == i ? -State::vacuum() : State();
        if (!(circle(w.complex.table, w.complex.lie[k], 1, theta) == want))
            fail(w, "L_k o_1 theta_S != -delta_ik");
    }
    return theta;
}

ComplexDescriptor small_weil(const LieAlgebra& algebra) {
    if (!algebra.flags().abelian) throw NotAbelian("the small Weil complex needs an abelian algebra");
    ComplexDescriptor c;
    c.id = "C(" + algebra.name() + ")";
    c.table.add_gamma_c(primed(algebra.basis_labels()), 2, 1);
    const std::size_t r = algebra.dim();
    c.derivation.assign(c.table.size(), State());
    for (std::size_t i = 0; i < r; ++i) c.derivation[r + i] = symbol_state(i);
    c.experimental = true;
    c.finalize();
    return c;
}

std::vector<IdentityCheck> identity_suite(const WeilComplex& w) {
    const auto& c = w.complex;
    const auto& t = c.table;
    const auto& g = w.algebra;
    const std::size_t d = g.dim();
    const WeilIndex ix{d};
    std::vector<IdentityCheck> out;

    State e;
    for (std::size_t i = 0; i < d; ++i) e.add(pair(t, ix.beta(i), 0, ix.c(i), 1), 1);

    IdentityCheck de{"d(beta dc) = L^W", c.d(e) == *c.conformal, ""};
    if (!de.passed) de.detail = "d e = " + to_text(t, c.d(e));
    out.push_back(de);

    IdentityCheck contraction{"iota o_n (beta dc) = -delta_{n,1} beta", true, ""};
    for (std::size_t i = 0; i < d && contraction.passed; ++i)
        for (int n = 0; n <= 3 && contraction.passed; ++n) {
            State want = n == 1 ? -symbol_state(ix.beta(i)) : State();
            State got = circle(t, c.iota[i], n, e);
            if (!(got == want)) {
                contraction.passed = false;
                contraction.detail = "iota_" + g.basis_labels()[i] + " o_" + std::to_string(n) + " e = " +
                                     to_text(t, got) + ", expected " + to_text(t, want);
            }
        }
    out.push_back(contraction);

    IdentityCheck theta{"L_k o_1 theta_S^i = -delta_{ik}", true, ""};
    for (std::size_t i = 0; i < d && theta.passed && !g.flags().abelian; ++i) {
        State th = theta_S(w, i);
        for (std::size_t k = 0; k < d && theta.passed; ++k) {
            State got = circle(t, c.lie[k], 1, th);
            State want = i == k ? -State::vacuum() : State();
            if (!(got == want)) {
                theta.passed = false;
                theta.detail = "k=" + g.basis_labels()[k] + ", i=" + g.basis_labels()[i] + ": " + to_text(t, got);
            }
        }
    }
    out.push_back(theta);

    IdentityCheck bbc{"L_k o_1 (beta b c) = <xi_k, ad* eta'> beta", true, ""};
    for (std::size_t k = 0; k < d && bbc.passed; ++k)
        for (std::size_t z = 0; z < d && bbc.passed; ++z)
            for (std::size_t a = 0; a < d && bbc.passed; ++a)
                for (std::size_t ee = 0; ee < d && bbc.passed; ++ee) {
                    State probe = multiply(t, pair(t, ix.beta(z), 0, ix.b(a), 0), symbol_state(ix.c(ee)));
                    State want = g.f(k, a, ee) * symbol_state(ix.beta(z));
                    State got = circle(t, c.lie[k], 1, probe);
                    if (!(got == want)) {
                        bbc.passed = false;
                        bbc.detail = "on '" + to_text(t, probe) + "': " + to_text(t, got);
                    }
                }
    out.push_back(bbc);
    return out;
}

}  // namespace chiral
