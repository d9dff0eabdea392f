#pragma once

// Test-side oracles, written independently of the library's algorithms.

#include "chiral/fock.hpp"
#include "chiral/lie.hpp"

#include <map>
#include <set>
#include <vector>

namespace oracle {

using chiral::GeneratorTable;
using chiral::Monomial;
using chiral::Rational;

inline GeneratorTable weil_table(std::vector<std::string> labels) {
    std::vector<std::string> dual;
    for (auto& l : labels) dual.push_back(l + "'");
    GeneratorTable t;
    t.add_system(labels, dual, -2, 2, -1, 1);
    return t;
}

// All multisets of symbols d^k u with k <= n, at most `cap` copies of an
// even symbol, filtered by (degree, weight, charge).
inline std::set<Monomial> brute_force(const GeneratorTable& t, int p, int n, int charge, int cap) {
    std::vector<chiral::Symbol> syms;
    for (std::size_t g = 0; g < t.size(); ++g)
        for (int k = 0; k <= n; ++k) syms.push_back(chiral::make_symbol(g, static_cast<unsigned>(k)));
    std::set<Monomial> found;
    std::vector<chiral::Symbol> cur;
    auto rec = [&](auto&& self, std::size_t idx, int weight) -> void {
        if (weight > n) return;
        if (idx == syms.size()) {
            Monomial m{cur};
            auto b = chiral::bidegree(t, m);
            if (b.degree == p && b.weight == n && b.charge == charge) found.insert(m);
            return;
        }
        const auto& g = t[chiral::symbol_gen(syms[idx])];
        int max = g.odd ? 1 : cap;
        int w = g.weight + static_cast<int>(chiral::symbol_order(syms[idx]));
        for (int r = 0; r <= max; ++r) {
            for (int i = 0; i < r; ++i) cur.push_back(syms[idx]);
            self(self, idx + 1, weight + r * w);
            cur.resize(cur.size() - static_cast<std::size_t>(r));
        }
    };
    rec(rec, 0, 0);
    return found;
}

// Same result as brute_force, organised for larger tables: the weight-zero
// factor is precomputed and bucketed by (degree, charge), the positive
// weight factor is enumerated per target.
inline std::map<std::pair<int, int>, std::set<Monomial>> brute_force_by_degree(const GeneratorTable& t, int n,
                                                                               int charge, int cap) {
    std::vector<chiral::Symbol> zero, positive;
    for (std::size_t g = 0; g < t.size(); ++g)
        for (int k = 0; k <= n; ++k) {
            auto s = chiral::make_symbol(g, static_cast<unsigned>(k));
            (t[g].weight + k == 0 ? zero : positive).push_back(s);
        }
    std::map<std::pair<int, int>, std::vector<std::vector<chiral::Symbol>>> zero_parts;
    std::vector<chiral::Symbol> cur;
    auto rec0 = [&](auto&& self, std::size_t idx) -> void {
        if (idx == zero.size()) {
            auto b = chiral::bidegree(t, Monomial{cur});
            zero_parts[{b.degree, b.charge}].push_back(cur);
            return;
        }
        int max = t[chiral::symbol_gen(zero[idx])].odd ? 1 : cap;
        for (int r = 0; r <= max; ++r) {
            for (int i = 0; i < r; ++i) cur.push_back(zero[idx]);
            self(self, idx + 1);
            cur.resize(cur.size() - static_cast<std::size_t>(r));
        }
    };
    rec0(rec0, 0);
    std::map<std::pair<int, int>, std::set<Monomial>> out;  // (p, n) -> monomials
    cur.clear();
    auto rec = [&](auto&& self, std::size_t idx, int weight) -> void {
        if (weight > n) return;
        if (idx == positive.size()) {
            if (weight != n) return;
            auto b = chiral::bidegree(t, Monomial{cur});
            for (const auto& [key, parts] : zero_parts) {
                if (b.charge + key.second != charge) continue;
                for (const auto& z : parts) {
                    std::vector<chiral::Symbol> all = cur;
                    all.insert(all.end(), z.begin(), z.end());
                    auto canon = chiral::canonicalize(t, all);
                    if (canon) out[{b.degree + key.first, n}].insert(canon->first);
                }
            }
            return;
        }
        const auto& g = t[chiral::symbol_gen(positive[idx])];
        int w = g.weight + static_cast<int>(chiral::symbol_order(positive[idx]));
        int max = g.odd ? 1 : n;
        for (int r = 0; r <= max && weight + r * w <= n; ++r) {
            for (int i = 0; i < r; ++i) cur.push_back(positive[idx]);
            self(self, idx + 1, weight + r * w);
            cur.resize(cur.size() - static_cast<std::size_t>(r));
        }
    };
    rec(rec, 0, 0);
    return out;
}

// Exponent vectors of degree k in `vars` variables.
inline std::vector<std::vector<int>> exponents(std::size_t vars, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> e(vars, 0);
    auto rec = [&](auto&& self, std::size_t i, int left) -> void {
        if (i + 1 == vars) {
            e[i] = left;
            out.push_back(e);
            return;
        }
        for (int a = left; a >= 0; --a) {
            e[i] = a;
            self(self, i + 1, left - a);
        }
    };
    if (vars == 0) {
        if (k == 0) out.push_back({});
        return out;
    }
    rec(rec, 0, k);
    return out;
}

// dim of the g-invariants in S^k(g*), by solving the linear system
// X . P = 0 for the coadjoint derivations X = ad*_{xi_i} on polynomials in
// the dual coordinates.
inline std::size_t invariant_dim(const chiral::LieAlgebra& g, int k) {
    const std::size_t d = g.dim();
    auto mons = exponents(d, k);
    std::map<std::vector<int>, std::size_t> index;
    for (std::size_t i = 0; i < mons.size(); ++i) index[mons[i]] = i;
    std::vector<std::vector<Rational>> rows;  // one row per (i, output monomial)
    for (std::size_t i = 0; i < d; ++i) {
        chiral::Matrix coad = g.coad(i);  // column a: ad*_{xi_i} xi'_a
        std::map<std::vector<int>, std::vector<Rational>> out;
        for (std::size_t col = 0; col < mons.size(); ++col) {
            const auto& m = mons[col];
            for (std::size_t a = 0; a < d; ++a) {
                if (m[a] == 0) continue;
                for (std::size_t b = 0; b < d; ++b) {
                    if (coad(b, a) == 0) continue;
                    auto m2 = m;
                    --m2[a];
                    ++m2[b];
                    auto& row = out[m2];
                    row.resize(mons.size());
                    row[col] += Rational(m[a]) * coad(b, a);
                }
            }
        }
        for (auto& [unused, row] : out) rows.push_back(row);
    }
    if (rows.empty()) return mons.size();
    chiral::Matrix m(rows.size(), mons.size());
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < mons.size(); ++c) m(r, c) = rows[r][c];
    return mons.size() - m.rank();
}

// Coefficients of prod_{k>=0} (1 - z^2 q^k)^{-rank} up to z^pmax q^nmax,
// by counting multisets of pairs (k, colour) with weight sum n.
inline std::map<std::pair<int, int>, long> torus_coefficients(int rank, int pmax, int nmax) {
    std::map<std::pair<int, int>, long> out;  // (p, n)
    std::vector<std::pair<int, int>> parts;   // (k, colour)
    for (int k = 0; k <= nmax; ++k)
        for (int c = 0; c < rank; ++c) parts.emplace_back(k, c);
    auto rec = [&](auto&& self, std::size_t i, int p, int n) -> void {
        if (p > pmax || n > nmax) return;
        if (i == parts.size()) {
            ++out[{p, n}];
            return;
        }
        for (int r = 0; p + 2 * r <= pmax && n + r * parts[i].first <= nmax; ++r) self(self, i + 1, p + 2 * r, n + r * parts[i].first);
    };
    rec(rec, 0, 0, 0);
    return out;
}

}  // namespace oracle
