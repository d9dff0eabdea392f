#include "chiral/cdr.hpp"

#include "chiral/error.hpp"

namespace chiral {

namespace {

struct QIndex {
    std::size_t m;
    std::size_t beta(std::size_t k) const { return k; }
    std::size_t gamma(std::size_t k) const { return m + k; }
    std::size_t b(std::size_t k) const { return 2 * m + k; }
    std::size_t c(std::size_t k) const { return 3 * m + k; }
};

State pair(const GeneratorTable& t, std::size_t u, unsigned ku, std::size_t v, unsigned kv) {
    return multiply(t, symbol_state(u, ku), symbol_state(v, kv));
}

std::vector<std::string> primed(const std::vector<std::string>& labels) {
    std::vector<std::string> out;
    for (const auto& l : labels) out.push_back(l + "'");
    return out;
}

void fail(const std::string& id, const std::string& what) { throw PinningSuiteFailure(id + ": " + what); }

State shift(const State& s, std::size_t by) {
    State out;
    for (const auto& [m, c] : s.terms()) {
        Monomial moved = m;
        for (Symbol& sym : moved.symbols) sym = make_symbol(symbol_gen(sym) + by, symbol_order(sym));
        out.add(moved, c);
    }
    return out;
}

}  // namespace

LinearCDR build_cdr(const LieAlgebra& algebra, const Representation& rep, const PinningOptions& options) {
    const std::size_t m = rep.dim();
    const QIndex ix{m};
    LinearCDR q{algebra, rep, {}, {}, {}, {}};
    auto& c = q.complex;
    c.id = "Q(" + algebra.name() + "," + std::to_string(m) + ")";
    c.table.add_system(rep.labels(), primed(rep.labels()), 0, 0, -1, 1, 1);
    const auto& t = c.table;

    for (std::size_t k = 0; k < m; ++k) {
        c.differential.add(pair(t, ix.beta(k), 0, ix.c(k), 0), 1);
        q.g_m.add(pair(t, ix.b(k), 0, ix.gamma(k), 1), 1);
        q.l_m.add(pair(t, ix.beta(k), 0, ix.gamma(k), 1), 1);
        q.l_m.add(pair(t, ix.b(k), 0, ix.c(k), 1), -1);
    }
    // iota^V_xi = -sum rho(xi)_{kl} :gamma^l b^k:  (contraction with the
    // vector field of xi acting contragrediently on the coordinates)
    for (std::size_t i = 0; i < algebra.dim(); ++i) {
        const Matrix& r = rep.rho(i);
        State iota, gamma;
        for (std::size_t k = 0; k < m; ++k)
            for (std::size_t l = 0; l < m; ++l) {
                if (r(k, l) != 0) iota.add(pair(t, ix.gamma(l), 0, ix.b(k), 0), Rational(-r(k, l)));
                if (r(l, k) != 0) gamma.add(pair(t, ix.beta(l), 0, ix.gamma(k), 0), r(l, k));
            }
        c.iota.push_back(iota);
        q.gamma.push_back(gamma);
    }
    c.finalize();
    for (std::size_t i = 0; i < algebra.dim(); ++i) c.lie.push_back(circle(t, c.differential, 0, c.iota[i]));
    c.conformal = q.l_m;
    c.finalize();

    if (options.enabled) run_cdr_pinning(q, options.range);
    return q;
}

void run_cdr_pinning(const LinearCDR& q, const PieceRange& range) {
    const auto& c = q.complex;
    const auto& t = c.table;
    const std::size_t m = q.rep.dim();
    const QIndex ix{m};
    for (std::size_t k = 0; k < m; ++k) {
        if (!(c.d(symbol_state(ix.gamma(k))) == symbol_state(ix.c(k)))) fail(c.id, "d gamma != c");
        if (!(c.d(symbol_state(ix.b(k))) == symbol_state(ix.beta(k)))) fail(c.id, "d b != beta");
        if (!c.d(symbol_state(ix.c(k))).is_zero()) fail(c.id, "d c != 0");
        if (!c.d(symbol_state(ix.beta(k))).is_zero()) fail(c.id, "d beta != 0");
        State dg = symbol_state(ix.gamma(k), 1);
        if (!(circle(t, q.l_m, 1, dg) == dg)) fail(c.id, "L^M o_1 d gamma != d gamma");
    }
    if (!(c.d(q.g_m) == q.l_m)) fail(c.id, "d g^M != L^M");

    // L^V_xi o_0 Gamma^eta = Gamma^[xi,eta]
    const auto& g = q.algebra;
    for (std::size_t i = 0; i < g.dim(); ++i)
        for (std::size_t j = 0; j < g.dim(); ++j) {
            State want;
            for (std::size_t k = 0; k < g.dim(); ++k)
                if (g.f(i, j, k) != 0) want.add(q.gamma[k], g.f(i, j, k));
            if (!(circle(t, c.lie[i], 0, q.gamma[j]) == want)) fail(c.id, "L^V o_0 Gamma is not the bracket");
        }

    check_d_squared(c, range);
    check_osg_relations(c, range);
    check_conformal(c, range);
    check_currents_primary(c);
}

State EquivariantCDR::lift_q(const State& s) const { return shift(s, weil.complex.table.size()); }

EquivariantCDR build_weil_q(const LieAlgebra& algebra, const Representation& rep, const PinningOptions& options) {
    PinningOptions factor = options;
    EquivariantCDR w{build_weil(algebra, factor), build_cdr(algebra, rep, factor), {}};
    w.complex = tensor(w.weil.complex, w.cdr.complex, "W(" + algebra.name() + ")xQ(" + std::to_string(rep.dim()) + ")");
    if (options.enabled) {
        const auto& c = w.complex;
        check_d_squared(c, options.tensor_range);
        check_osg_relations(c, options.tensor_range);
        check_horizontal_frame(c, options.tensor_range);
        check_conformal(c, options.tensor_range);
        check_currents_primary(c);
    }
    return w;
}

State build_alpha(const EquivariantCDR& w) {
    const auto& g = w.weil.algebra;
    const auto& c = w.complex;
    const auto& t = c.table;
    const std::size_t d = g.dim();
    if (g.flags().abelian)
        throw HomotopyConditionsFailed("abelian algebra: the currents L^W vanish, so L o_1 alpha = beta is unreachable");
    Matrix form = w.cdr.rep.trace_form();
    if (form.rank() != d) throw HomotopyConditionsFailed("trace form of the representation is degenerate");
    Matrix dual = form.inverse();

    // Gamma^{xi~^i} for the trace-form dual vectors xi~^i.
    std::vector<State> gamma_dual(d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t l = 0; l < d; ++l)
            if (dual(i, l) != 0) gamma_dual[i].add(w.lift_q(w.cdr.gamma[l]), dual(i, l));

    // alpha = sum_i beta^{xi_i} Gamma^{xi~^i} - sum_{ij} :beta^{xi_i} c^{xi'_j}: (iota^V_j o_0 Gamma^{xi~^i})
    State alpha;
    for (std::size_t i = 0; i < d; ++i) {
        State beta = symbol_state(i);
        alpha += multiply(t, beta, gamma_dual[i]);
        for (std::size_t j = 0; j < d; ++j) {
            State inner = circle(t, w.lift_q(w.cdr.complex.iota[j]), 0, gamma_dual[i]);
            if (inner.is_zero()) continue;
            alpha -= multiply(t, multiply(t, beta, symbol_state(3 * d + j)), inner);
        }
    }

    auto bd = homogeneous_bidegree(t, alpha);
    if (!bd || bd->degree != -2 || bd->weight != 2)
        throw HomotopyConditionsFailed("alpha is not homogeneous of degree -2 and weight 2");
    // Overall sign fixed by the normalisation condition.
    if (circle(t, c.lie[0], 1, alpha) == -symbol_state(0)) alpha = -alpha;

    for (std::size_t i = 0; i < d; ++i) {
        const std::string name = g.basis_labels()[i];
        if (!c.lie_mode(i, 0, alpha).is_zero())
            throw HomotopyConditionsFailed("alpha is not invariant: L_" + name + "(0) alpha != 0");
        for (int k = 0; k <= 3; ++k)
            if (!circle(t, c.iota[i], k, alpha).is_zero())
                throw HomotopyConditionsFailed("alpha is not chiral horizontal: iota_" + name + " o_" +
                                               std::to_string(k) + " alpha != 0");
        if (!(circle(t, c.lie[i], 1, alpha) == symbol_state(i)))
            throw HomotopyConditionsFailed("L_" + name + " o_1 alpha != beta^" + name);
    }
    return alpha;
}

VanishingHomotopy vanishing_homotopy(const EquivariantCDR& w, const State& alpha, const PieceRange& range) {
    const auto& c = w.complex;
    const auto& t = c.table;
    const std::size_t d = w.weil.algebra.dim();
    State e;
    for (std::size_t i = 0; i < d; ++i) e.add(pair(t, i, 0, 3 * d + i, 1), 1);
    // iota o_1 e = beta and iota o_1 d alpha = L o_1 alpha = beta, so the
    // horizontal combination takes d alpha with a minus sign.
    State omega = e - c.d(alpha) + w.lift_q(w.cdr.g_m);

    for (std::size_t i = 0; i < d; ++i) {
        for (int k = 0; k <= 3; ++k)
            if (!circle(t, c.iota[i], k, omega).is_zero())
                throw HomotopyIdentityFailed("omega is not chiral horizontal at iota o_" + std::to_string(k));
        if (!c.lie_mode(i, 0, omega).is_zero()) throw HomotopyIdentityFailed("omega is not invariant");
    }

    VanishingHomotopy h{omega, CompiledField(t, omega)};
    // omega(1) lowers the degree by one and keeps the weight; both operators
    // are cached per degree along the sweep.
    const Rational one = 1;
    for (int n = 0; n <= range.n_max; ++n)
        for (int charge : charge_window(t, n, range.charge_max)) {
            ColumnCache dc(t, [&c, &one](const Monomial& m, Accumulator& out) { c.d(m, one, out); });
            ColumnCache wc(t, [&h, &one](const Monomial& m, Accumulator& out) { h.mode.apply(1, m, one, out); });
            for (int p = range.p_min; p <= range.p_max; ++p) {
                for (const auto& m : enumerate_basis(t, p, n, charge, range.budget)) {
                    Accumulator acc;
                    for (const auto& [mm, q] : wc.get(m)) dc.apply(mm, q, acc);
                    for (const auto& [mm, q] : dc.get(m)) wc.apply(mm, q, acc);
                    acc[m] -= Rational(n);
                    for (const auto& [mm, q] : acc)
                        if (q != 0)
                            throw HomotopyIdentityFailed("[d, omega(1)] != L(1) on '" + to_text(t, m) +
                                                         "' at (p,n,charge)=(" + std::to_string(p) + "," +
                                                         std::to_string(n) + "," + std::to_string(charge) + ")");
                }
                dc.drop_below(p - 1);
                wc.drop_below(p);
            }
        }
    return h;
}

}  // namespace chiral
