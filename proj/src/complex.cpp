#include "chiral/complex.hpp"

#include "chiral/error.hpp"

namespace chiral {

State apply_derivation(const GeneratorTable& table, const std::vector<State>& images, const State& s) {
    State out;
    for (const auto& [m, c] : s.terms()) {
        const auto& syms = m.symbols;
        int odd_before = 0;
        for (std::size_t i = 0; i < syms.size(); ++i) {
            const std::size_t g = symbol_gen(syms[i]);
            State image = images[g];
            for (unsigned k = 0; k < symbol_order(syms[i]); ++k) image = derivative(table, image);
            if (!image.is_zero()) {
                Monomial left{{syms.begin(), syms.begin() + static_cast<std::ptrdiff_t>(i)}};
                Monomial right{{syms.begin() + static_cast<std::ptrdiff_t>(i) + 1, syms.end()}};
                State piece = multiply(table, multiply(table, State(left, 1), image), State(right, 1));
                out.add(piece, odd_before % 2 ? Rational(-c) : c);
            }
            if (table[g].odd) ++odd_before;
        }
    }
    return out;
}

namespace {

std::string probe_text(const GeneratorTable& t, const Monomial& m) { return "'" + to_text(t, m) + "'"; }

}  // namespace

void ComplexDescriptor::finalize() {
    auto c = std::make_shared<Compiled>();
    c->d = CompiledField(table, differential);
    for (const auto& f : iota) c->iota.emplace_back(table, f);
    for (const auto& f : lie) c->lie.emplace_back(table, f);
    if (frame && !frame->kalkman.is_zero()) c->kalkman.emplace(table, frame->kalkman);
    compiled_ = std::move(c);
}

std::shared_ptr<const ComplexDescriptor::Compiled> ComplexDescriptor::compiled() const {
    if (compiled_) return compiled_;
    ComplexDescriptor copy = *this;
    copy.finalize();
    return copy.compiled_;
}

State ComplexDescriptor::d(const State& s) const {
    if (!derivation.empty()) return apply_derivation(table, derivation, s);
    return compiled()->d.apply(0, s);
}

State ComplexDescriptor::iota_mode(std::size_t i, int k, const State& s) const {
    return compiled()->iota[i].apply(k, s);
}

State ComplexDescriptor::lie_mode(std::size_t i, int k, const State& s) const { return compiled()->lie[i].apply(k, s); }

void ComplexDescriptor::d(const Monomial& m, const Rational& scale, Accumulator& out) const {
    if (!derivation.empty()) {
        const State image = apply_derivation(table, derivation, State(m, scale));
        for (const auto& [mm, c] : image.terms()) {
            auto [it, inserted] = out.try_emplace(mm, c);
            if (!inserted) it->second += c;
        }
        return;
    }
    compiled()->d.apply(0, m, scale, out);
}

void ComplexDescriptor::iota_mode(std::size_t i, int k, const Monomial& m, const Rational& scale,
                                  Accumulator& out) const {
    compiled()->iota[i].apply(k, m, scale, out);
}

void ComplexDescriptor::lie_mode(std::size_t i, int k, const Monomial& m, const Rational& scale,
                                 Accumulator& out) const {
    compiled()->lie[i].apply(k, m, scale, out);
}

State ComplexDescriptor::frame_twist(const State& s, int sign) const {
    auto comp = compiled();
    if (!comp->kalkman) return s;
    // X(0) raises (#c - #b) of the Weil factor by one, so the series stops.
    State out = s, term = s;
    for (int m = 1; !term.is_zero(); ++m) {
        term = Rational(sign, m) * comp->kalkman->apply(0, term);
        out += term;
    }
    return out;
}

ComplexDescriptor tensor(const ComplexDescriptor& a, const ComplexDescriptor& b, std::string id) {
    if (a.rank() != b.rank()) throw ConfigError("tensor factors carry different Lie algebra ranks");
    if (!a.derivation.empty() || !b.derivation.empty())
        throw ConfigError("tensor products of derivation-only complexes are not supported");
    ComplexDescriptor t;
    t.id = std::move(id);
    t.table = GeneratorTable::tensor(a.table, b.table);
    // Generator indices of `b` shift by a.table.size(); the shift is monotone,
    // so canonical order inside each state is preserved.
    const std::size_t shift = a.table.size();
    auto lift = [&](const GeneratorTable& from, const State& s) {
        if (&from == &a.table) return s;
        State out;
        for (const auto& [m, c] : s.terms()) {
            Monomial moved = m;
            for (Symbol& sym : moved.symbols) sym = make_symbol(symbol_gen(sym) + shift, symbol_order(sym));
            out.add(moved, c);
        }
        return out;
    };
    t.differential = lift(a.table, a.differential) + lift(b.table, b.differential);
    for (std::size_t i = 0; i < a.rank(); ++i) {
        t.iota.push_back(lift(a.table, a.iota[i]) + lift(b.table, b.iota[i]));
        t.lie.push_back(lift(a.table, a.lie[i]) + lift(b.table, b.lie[i]));
    }
    if (a.conformal && b.conformal) t.conformal = lift(a.table, *a.conformal) + lift(b.table, *b.conformal);
    if (a.frame && !b.frame) {
        HorizontalFrame f = *a.frame;
        for (std::size_t i = 0; i < a.rank(); ++i)
            f.kalkman += normal_product(t.table, symbol_state(f.weil_c[i]), lift(b.table, b.iota[i]));
        t.frame = std::move(f);
    }
    t.experimental = a.experimental || b.experimental;
    t.finalize();
    return t;
}

bool has_charge(const GeneratorTable& table) {
    for (const auto& g : table.generators())
        if (g.charge != 0) return true;
    return false;
}

std::vector<int> charge_window(const GeneratorTable& table, int n, int charge_max) {
    if (!has_charge(table)) return {0};
    std::vector<int> out;
    for (int c = -n; c <= charge_max; ++c) out.push_back(c);
    return out;
}

const ColumnCache::Column& ColumnCache::get(const Monomial& m) {
    auto& bucket = by_degree_[bidegree(*table_, m).degree];
    auto it = bucket.find(m);
    if (it != bucket.end()) return it->second;
    Accumulator acc;
    op_(m, acc);
    Column col;
    col.reserve(acc.size());
    for (auto& [mm, q] : acc)
        if (q != 0) col.emplace_back(mm, std::move(q));
    return bucket.emplace(m, std::move(col)).first->second;
}

void ColumnCache::apply(const Monomial& m, const Rational& scale, Accumulator& out) {
    for (const auto& [mm, q] : get(m)) {
        auto it = out.find(mm);
        if (it == out.end())
            out.emplace(mm, scale * q);
        else
            it->second += scale * q;
    }
}

void ColumnCache::drop_below(int degree) { by_degree_.erase(by_degree_.begin(), by_degree_.lower_bound(degree)); }

namespace {

bool all_zero(const Accumulator& acc) {
    for (const auto& [m, q] : acc)
        if (q != 0) return false;
    return true;
}

ColumnCache d_cache(const ComplexDescriptor& c) {
    return ColumnCache(c.table, [&c](const Monomial& m, Accumulator& out) { c.d(m, Rational(1), out); });
}

}  // namespace

void check_d_squared(const ComplexDescriptor& c, const PieceRange& range) {
    for (int n = 0; n <= range.n_max; ++n)
        for (int charge : charge_window(c.table, n, range.charge_max)) {
            ColumnCache d = d_cache(c);
            for (int p = range.p_min; p <= range.p_max; ++p) {
                for (const auto& m : enumerate_basis(c.table, p, n, charge, range.budget)) {
                    Accumulator acc;
                    for (const auto& [mm, q] : d.get(m)) d.apply(mm, q, acc);
                    if (!all_zero(acc))
                        throw PinningSuiteFailure(c.id + ": d^2 != 0 on " + probe_text(c.table, m) + " at (p,n)=(" +
                                                  std::to_string(p) + "," + std::to_string(n) + ")");
                }
                d.drop_below(p + 1);
            }
        }
}

void check_osg_relations(const ComplexDescriptor& c, const PieceRange& range, int max_mode) {
    const auto& t = c.table;
    const bool charged = has_charge(t);
    const int charge_min = charged ? -range.n_max : 0, charge_max = charged ? range.charge_max : 0;
    const Rational one = 1;
    for (int charge = charge_min; charge <= charge_max; ++charge) {
        // d columns per weight; iota preserves the charge and lowers the weight.
        std::vector<ColumnCache> d;
        for (int n = 0; n <= range.n_max; ++n) d.push_back(d_cache(c));
        for (int p = range.p_min; p <= range.p_max; ++p) {
            for (int n = std::max(0, -charge); n <= range.n_max; ++n) {
                if (charged && charge < -n) continue;
                for (const auto& m : enumerate_basis(t, p, n, charge, range.budget)) {
                    const auto& ds = d[static_cast<std::size_t>(n)].get(m);
                    for (std::size_t i = 0; i < c.rank(); ++i)
                        for (int k = 0; k <= std::min(max_mode, n); ++k) {
                            Accumulator lhs, iota_m;
                            c.iota_mode(i, k, m, one, iota_m);
                            for (const auto& [mm, q] : iota_m)
                                if (q != 0) d[static_cast<std::size_t>(n - k)].apply(mm, q, lhs);
                            for (const auto& [mm, q] : ds) c.iota_mode(i, k, mm, q, lhs);
                            c.lie_mode(i, k, m, Rational(-1), lhs);
                            if (!all_zero(lhs))
                                throw PinningSuiteFailure(c.id + ": [d, iota_" + std::to_string(i) + "(" +
                                                          std::to_string(k) + ")] != L(" + std::to_string(k) +
                                                          ") on " + probe_text(t, m));
                        }
                }
            }
            for (auto& cache : d) cache.drop_below(p - 1);
        }
    }
}

void check_conformal(const ComplexDescriptor& c, const PieceRange& range) {
    if (!c.conformal) return;
    for_each_piece(c.table, range, [&](int, int n, int, const std::vector<Monomial>& basis) {
        for (const auto& m : basis) {
            State s(m, 1);
            if (!(circle(c.table, *c.conformal, 0, s) == derivative(c.table, s)))
                throw PinningSuiteFailure(c.id + ": L o_0 != d/dz on " + probe_text(c.table, m));
            if (!(circle(c.table, *c.conformal, 1, s) == Rational(n) * s))
                throw PinningSuiteFailure(c.id + ": L o_1 != weight on " + probe_text(c.table, m));
        }
    });
}

void check_currents_primary(const ComplexDescriptor& c) {
    if (!c.conformal) return;
    auto check = [&](const FieldExpression& j, const std::string& name) {
        if (!circle(c.table, *c.conformal, 2, j).is_zero())
            throw PinningSuiteFailure(c.id + ": current " + name + " is not primary");
        if (!(circle(c.table, *c.conformal, 1, j) == j))
            throw PinningSuiteFailure(c.id + ": current " + name + " does not have weight one");
    };
    for (std::size_t i = 0; i < c.rank(); ++i) {
        check(c.iota[i], "iota_" + std::to_string(i));
        check(c.lie[i], "L_" + std::to_string(i));
    }
}

void check_horizontal_frame(const ComplexDescriptor& c, const PieceRange& range) {
    if (!c.frame) return;
    const auto& t = c.table;
    for_each_piece(t, range, [&](int, int n, int, const std::vector<Monomial>& basis) {
        for (const auto& m : basis) {
            State s(m, 1);
            State twisted = c.frame_twist(s, 1);
            for (std::size_t i = 0; i < c.rank(); ++i)
                for (int k = 0; k <= n; ++k) {
                    std::size_t bgen = t[c.frame->weil_c[i]].partner;
                    State lhs = c.frame_twist(circle(t, symbol_state(bgen), k, twisted), -1);
                    if (!(lhs == c.iota_mode(i, k, s)))
                        throw PinningSuiteFailure(c.id + ": horizontal frame does not conjugate b(" + std::to_string(k) +
                                                  ") to iota on " + probe_text(t, m));
                }
        }
    });
}

}  // namespace chiral
