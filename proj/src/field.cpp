#include "chiral/field.hpp"

#include "chiral/error.hpp"

#include <algorithm>
#include <array>

namespace chiral {

namespace {

// Left multiplication of a canonical symbol list by one symbol.
// Returns false when the product vanishes (repeated odd symbol).
bool left_multiply(const GeneratorTable& table, std::vector<Symbol>& syms, Symbol s, int& sign) {
    auto pos = std::lower_bound(syms.begin(), syms.end(), s);
    if (table[symbol_gen(s)].odd) {
        if (pos != syms.end() && *pos == s) return false;
        int odd_before = 0;
        for (auto it = syms.begin(); it != pos; ++it) odd_before += table[symbol_gen(*it)].odd ? 1 : 0;
        if (odd_before % 2) sign = -sign;
    }
    syms.insert(pos, s);
    return true;
}

using Wide = __int128;

Wide checked_mul(Wide a, Wide b) {
    Wide r;
    if (__builtin_mul_overflow(a, b, &r)) throw TruncationOverflow("coefficient overflow in mode expansion");
    return r;
}

Wide small_factorial(unsigned k) {
    Wide r = 1;
    for (unsigned i = 2; i <= k; ++i) r = checked_mul(r, i);
    return r;
}

Rational to_rational(Wide num, Wide den) {
    constexpr Wide lim = static_cast<Wide>(1) << 62;
    if (den != 1) {
        Wide a = num < 0 ? -num : num, b = den;
        while (b != 0) {
            Wide r = a % b;
            a = b;
            b = r;
        }
        if (a > 1) {
            num /= a;
            den /= a;
        }
    }
    if (num < lim && num > -lim && den < lim) {
        Rational r;
        mpq_set_si(r.get_mpq_t(), static_cast<long>(num), static_cast<unsigned long>(den));
        return r;
    }
    auto to_mpz = [](Wide v) {
        bool neg = v < 0;
        unsigned __int128 u = neg ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
        Integer z = static_cast<unsigned long>(u >> 64);
        z <<= 64;
        z += static_cast<unsigned long>(u & 0xffffffffffffffffull);
        return neg ? Integer(-z) : z;
    };
    Rational r(to_mpz(num), to_mpz(den));
    r.canonicalize();
    return r;
}

struct ModeApplier {
    const GeneratorTable& table;
    const CompiledField::Term& term;
    const CompiledField::Plan* plan = nullptr;
    int total;  // required sum of factor modes
    Rational scale;
    Accumulator& out;
    bool small_scale = false;  // scale == scale_num / scale_den in machine integers
    Wide scale_num = 0, scale_den = 1;
    std::vector<std::vector<Symbol>> levels;  // reusable per-depth buffers
    std::vector<int> t;
    std::vector<Symbol> scratch;

    void creators_phase(const std::vector<Symbol>& syms, Wide num, int msum) {
        const int count = static_cast<int>(plan->creators.size());
        const int budget = msum - total - count;  // sum of the t's
        if (budget < 0) return;
        if (count == 0) {
            if (budget == 0) emit(syms, num, 1);
            return;
        }
        t.assign(plan->creators.size(), 0);
        distribute(0, budget, syms, num);
    }

    void distribute(std::size_t idx, int left, const std::vector<Symbol>& syms, Wide num) {
        if (idx + 1 == plan->creators.size()) {
            t[idx] = left;
            finish_creators(syms, num);
            return;
        }
        for (int v = 0; v <= left; ++v) {
            t[idx] = v;
            distribute(idx + 1, left - v, syms, num);
        }
    }

    void finish_creators(const std::vector<Symbol>& syms, Wide num) {
        scratch.assign(syms.begin(), syms.end());
        int sign = 1;
        Wide denom = 1;
        // C_1 C_2 ... C_a X: apply the rightmost creator first.
        for (std::size_t c = plan->creators.size(); c-- > 0;) {
            const auto& f = term.factors[plan->creators[c]];
            unsigned k = f.order + static_cast<unsigned>(t[c]);
            if (k > kMaxDerivative) throw TruncationOverflow("derivative order exceeds symbol range");
            if (!left_multiply(table, scratch, make_symbol(f.gen, k), sign)) return;
            denom = checked_mul(denom, small_factorial(static_cast<unsigned>(t[c])));
        }
        emit(scratch, sign < 0 ? -num : num, denom);
    }

    void emit(const std::vector<Symbol>& syms, Wide num, Wide den) {
        Rational c;
        Wide n2, d2;
        if (small_scale && !__builtin_mul_overflow(num, scale_num, &n2) && !__builtin_mul_overflow(den, scale_den, &d2))
            c = to_rational(n2, d2);
        else
            c = scale * to_rational(num, den);
        auto it = out.find(Monomial{syms});
        if (it == out.end())
            out.emplace(Monomial{syms}, std::move(c));
        else
            it->second += c;
    }

    void annihilator_phase(std::size_t pos, const std::vector<Symbol>& syms, Wide num, int msum) {
        if (pos == plan->annihilators.size()) {
            creators_phase(syms, num, msum);
            return;
        }
        const auto& f = term.factors[plan->annihilators[pos]];
        if (f.partner == GeneratorTable::npos) return;
        const Symbol lo = make_symbol(f.partner, 0);
        const Symbol hi = make_symbol(f.partner + 1, 0);
        auto first = std::lower_bound(syms.begin(), syms.end(), lo);
        if (first == syms.end() || *first >= hi) return;
        int odd_before = 0;
        for (auto it = syms.begin(); it != first; ++it) odd_before += table[symbol_gen(*it)].odd ? 1 : 0;
        auto& next = levels[pos];
        for (auto it = first; it != syms.end() && *it < hi;) {
            const Symbol s = *it;
            auto run_end = it;
            while (run_end != syms.end() && *run_end == s) ++run_end;
            const long multiplicity = run_end - it;
            const unsigned j = symbol_order(s);
            // (-1)^k (j+k)! pairing * multiplicity * Koszul sign
            Wide c = checked_mul(checked_mul(num, small_factorial(j + f.order)), f.pairing * multiplicity);
            if ((f.order % 2) == 1) c = -c;
            if (f.odd && (odd_before % 2) == 1) c = -c;
            next.assign(syms.begin(), it);
            next.insert(next.end(), it + 1, syms.end());
            annihilator_phase(pos + 1, next, c, msum + static_cast<int>(j + f.order));
            if (f.odd) ++odd_before;
            it = run_end;
        }
    }
};

}  // namespace

State to_state(const Accumulator& acc) {
    State s;
    for (const auto& [m, c] : acc) s.add(m, c);
    return s;
}

CompiledField::CompiledField(const GeneratorTable& table, const FieldExpression& field)
    : table_(std::make_shared<const GeneratorTable>(table)), expression_(field) {
    for (const auto& [mon, coeff] : field.terms()) {
        Term term;
        term.coeff = coeff;
        term.weight = bidegree(table, mon).weight;
        const std::size_t r = mon.symbols.size();
        if (r > 16) throw TruncationOverflow("field monomial has too many factors");
        for (Symbol s : mon.symbols) {
            std::size_t g = symbol_gen(s);
            term.factors.push_back({g, symbol_order(s), table[g].odd, table[g].partner, table.pairing(g)});
        }
        for (unsigned mask = 0; mask < (1u << r); ++mask) {
            Plan plan;
            plan.sign = 1;
            bool possible = true;
            for (std::size_t i = 0; i < r; ++i)
                if (!(mask & (1u << i))) plan.creators.push_back(i);
            for (std::size_t i = r; i-- > 0;)
                if (mask & (1u << i)) {
                    plan.annihilators.push_back(i);
                    if (term.factors[i].partner == GeneratorTable::npos) possible = false;
                }
            if (!possible) continue;
            // Moving creators left past annihilators that precede them.
            for (std::size_t i = 0; i < r; ++i) {
                if (!(mask & (1u << i)) || !term.factors[i].odd) continue;
                for (std::size_t j = i + 1; j < r; ++j)
                    if (!(mask & (1u << j)) && term.factors[j].odd) plan.sign = -plan.sign;
            }
            term.plans.push_back(std::move(plan));
        }
        terms_.push_back(std::move(term));
    }
}

void CompiledField::apply(int n, const Monomial& target, const Rational& scale, Accumulator& out) const {
    const int target_weight = bidegree(*table_, target).weight;
    for (const auto& term : terms_) {
        const int r = static_cast<int>(term.factors.size());
        if (r == 0) {
            if (n == -1) {
                auto [it, inserted] = out.try_emplace(target, scale * term.coeff);
                if (!inserted) it->second += scale * term.coeff;
            }
            continue;
        }
        if (term.weight + target_weight - n - 1 < 0) continue;
        ModeApplier applier{*table_, term, nullptr, n + 1 - r, scale * term.coeff, out, {}, {}, {}};
        applier.levels.resize(term.factors.size());
        if (mpz_sizeinbase(applier.scale.get_num_mpz_t(), 2) < 60 &&
            mpz_sizeinbase(applier.scale.get_den_mpz_t(), 2) < 60) {
            applier.small_scale = true;
            applier.scale_num = applier.scale.get_num().get_si();
            applier.scale_den = applier.scale.get_den().get_si();
        }
        for (const auto& plan : term.plans) {
            applier.plan = &plan;
            applier.annihilator_phase(0, target.symbols, plan.sign, 0);
        }
    }
}

State CompiledField::apply(int n, const State& s) const {
    Accumulator acc;
    for (const auto& [m, c] : s.terms()) apply(n, m, c, acc);
    return to_state(acc);
}

void apply_mode(const GeneratorTable& table, const Monomial& field, int n, const Monomial& target,
                const Rational& scale, State& out) {
    Accumulator acc;
    CompiledField(table, State(field, 1)).apply(n, target, scale, acc);
    for (const auto& [m, c] : acc) out.add(m, c);
}

State circle(const GeneratorTable& table, const FieldExpression& a, int n, const State& b) {
    return CompiledField(table, a).apply(n, b);
}

State derivative(const GeneratorTable& table, const State& a) {
    State out;
    for (const auto& [m, c] : a.terms()) {
        const auto& syms = m.symbols;
        int odd_before = 0;
        for (std::size_t p = 0; p < syms.size();) {
            std::size_t run_end = p;
            while (run_end < syms.size() && syms[run_end] == syms[p]) ++run_end;
            const Symbol s = syms[p];
            const bool odd = table[symbol_gen(s)].odd;
            if (symbol_order(s) >= kMaxDerivative) throw TruncationOverflow("derivative order exceeds symbol range");
            std::vector<Symbol> rest;
            rest.reserve(syms.size());
            rest.insert(rest.end(), syms.begin(), syms.begin() + static_cast<std::ptrdiff_t>(p));
            rest.insert(rest.end(), syms.begin() + static_cast<std::ptrdiff_t>(p) + 1, syms.end());
            int sign = (odd && odd_before % 2) ? -1 : 1;
            if (left_multiply(table, rest, s + 1, sign))
                out.add(Monomial{std::move(rest)}, c * static_cast<long>(run_end - p) * sign);
            if (odd) ++odd_before;
            p = run_end;
        }
    }
    return out;
}

bool field_parity(const GeneratorTable& table, const FieldExpression& a) {
    std::optional<bool> parity;
    for (const auto& [m, c] : a.terms()) {
        bool odd = is_odd(table, m);
        if (parity && *parity != odd) throw MixedComplex("field mixes even and odd terms");
        parity = odd;
    }
    return parity.value_or(false);
}

State apply(const GeneratorTable& table, const ModeOp& op, const State& s) { return circle(table, op.field, op.mode, s); }

State supercommutator(const GeneratorTable& table, const ModeOp& x, const ModeOp& y, const State& s) {
    State xy = apply(table, x, apply(table, y, s));
    State yx = apply(table, y, apply(table, x, s));
    bool both_odd = field_parity(table, x.field) && field_parity(table, y.field);
    return both_odd ? xy + yx : xy - yx;
}

Rational binomial(int m, int i) {
    if (i < 0) return 0;
    Rational num = 1;
    for (int t = 0; t < i; ++t) num *= (m - t);
    Integer den = 1;
    for (int t = 2; t <= i; ++t) den *= t;
    return num / Rational(den);
}

bool borcherds_check(const GeneratorTable& table, const FieldExpression& a, const FieldExpression& b, int m, int k,
                     const std::vector<State>& probes) {
    int max_weight = 0;
    for (const auto* x : {&a, &b})
        for (const auto& [mon, c] : x->terms()) max_weight = std::max(max_weight, bidegree(table, mon).weight);
    // a o_i b vanishes once wt a + wt b - i - 1 < 0.
    std::vector<State> products;
    for (int i = 0; i <= 2 * max_weight; ++i) products.push_back(circle(table, a, i, b));
    for (const auto& s : probes) {
        State lhs = supercommutator(table, {a, m}, {b, k}, s);
        State rhs;
        for (int i = 0; i < static_cast<int>(products.size()); ++i) {
            if (products[static_cast<std::size_t>(i)].is_zero()) continue;
            rhs.add(circle(table, products[static_cast<std::size_t>(i)], m + k - i, s), binomial(m, i));
        }
        if (!(lhs == rhs)) return false;
    }
    return true;
}

}  // namespace chiral
