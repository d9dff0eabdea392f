#pragma once

#include "chiral/field.hpp"

#include <functional>
#include <map>
#include <memory>
#include <unordered_map>
#include <optional>
#include <string>
#include <vector>

namespace chiral {

/// A free-field complex with its O(sg) operator families.
///
/// The differential is the zero mode of `differential`, unless `derivation`
/// is non-empty: then d is the odd derivation of the (supercommutative)
/// generator algebra with d(d^k u) = d^k derivation[u].
/// Data that makes chiral horizontality cheap on complexes W(g) (x) A.
/// With X = sum_i :c^{xi'_i} iota^A_i: one has exp(-X(0)) b(k) exp(X(0))
/// = iota(k), so the horizontal subspace is exp(-X(0)) applied to the span
/// of monomials free of the Weil c generators. X(0) commutes with every
/// L(k) because X is invariant and L o_1 iota = 0.
struct HorizontalFrame {
    std::vector<std::size_t> weil_c;  // generator index of c^{xi'_i}, one per basis vector
    FieldExpression kalkman;          // X; zero for W(g) alone
};

struct ComplexDescriptor {
    std::string id;
    GeneratorTable table;
    FieldExpression differential;
    std::vector<State> derivation;
    std::vector<FieldExpression> iota;  // odd weight-one currents, one per basis vector of g
    std::vector<FieldExpression> lie;   // even weight-one currents
    std::optional<FieldExpression> conformal;
    std::optional<HorizontalFrame> frame;
    bool experimental = false;

    std::size_t rank() const { return iota.size(); }

    /// Precompiles the operator fields. Must be called again after any
    /// field is modified; operator methods fall back to on-the-fly
    /// compilation when it has not been called.
    void finalize();

    State d(const State& s) const;
    State iota_mode(std::size_t i, int k, const State& s) const;
    State lie_mode(std::size_t i, int k, const State& s) const;

    /// Hot-path variants accumulating scale * op(m) into `out`.
    void d(const Monomial& m, const Rational& scale, Accumulator& out) const;
    void iota_mode(std::size_t i, int k, const Monomial& m, const Rational& scale, Accumulator& out) const;
    void lie_mode(std::size_t i, int k, const Monomial& m, const Rational& scale, Accumulator& out) const;

    /// exp(sign * X(0)) s for the frame's X (identity without a frame).
    State frame_twist(const State& s, int sign) const;

private:
    struct Compiled {
        CompiledField d;
        std::vector<CompiledField> iota, lie;
        std::optional<CompiledField> kalkman;
    };
    std::shared_ptr<const Compiled> compiled_;
    std::shared_ptr<const Compiled> compiled() const;
};

/// Applies the odd derivation with generator images `images` (extended by
/// d(d^k u) = d^k images[u]) to a state. Only valid on tables without
/// partner pairs, or on states where no contraction can occur.
State apply_derivation(const GeneratorTable& table, const std::vector<State>& images, const State& s);

/// Union of two complexes. Generators of `a` come first; currents and the
/// differential field add (x (x) 1 + 1 (x) y), which is exactly the tensor
/// product structure since the two generator sets supercommute.
ComplexDescriptor tensor(const ComplexDescriptor& a, const ComplexDescriptor& b, std::string id);

/// Range of pieces swept by identity checks.
struct PieceRange {
    int p_min = -6;
    int p_max = 6;
    int n_max = 3;
    /// Charge window [-n - charge_slack ... charge_max] for complexes with
    /// polynomial generators; ignored when the table carries no charge.
    int charge_max = 2;
    std::size_t budget = kDefaultBasisBudget;
};

bool has_charge(const GeneratorTable& table);

/// Charges to visit for weight n; {0} when the table carries no charge.
std::vector<int> charge_window(const GeneratorTable& table, int n, int charge_max);

/// Calls fn(p, n, charge, basis) for every nonempty piece in range.
template <class Fn>
void for_each_piece(const GeneratorTable& table, const PieceRange& range, Fn&& fn) {
    for (int n = 0; n <= range.n_max; ++n)
        for (int charge : charge_window(table, n, range.charge_max))
            for (int p = range.p_min; p <= range.p_max; ++p) {
                auto basis = enumerate_basis(table, p, n, charge, range.budget);
                if (!basis.empty()) fn(p, n, charge, basis);
            }
}

/// Lazily computed operator columns op(m) for basis monomials, grouped by
/// degree so that a sweep over increasing p can drop finished degrees.
class ColumnCache {
public:
    using Column = std::vector<std::pair<Monomial, Rational>>;
    using Op = std::function<void(const Monomial&, Accumulator&)>;

    ColumnCache(const GeneratorTable& table, Op op) : table_(&table), op_(std::move(op)) {}

    const Column& get(const Monomial& m);
    /// out += scale * op(m), using the cached column.
    void apply(const Monomial& m, const Rational& scale, Accumulator& out);
    void drop_below(int degree);

private:
    const GeneratorTable* table_;
    Op op_;
    std::map<int, std::unordered_map<Monomial, Column, MonomialHash>> by_degree_;
};

/// Identity checks shared by the pinning suites. Each throws
/// PinningSuiteFailure naming the identity and the failing probe.
void check_d_squared(const ComplexDescriptor& c, const PieceRange& range);
void check_osg_relations(const ComplexDescriptor& c, const PieceRange& range, int max_mode = 3);
void check_conformal(const ComplexDescriptor& c, const PieceRange& range);
void check_currents_primary(const ComplexDescriptor& c);
/// exp(-X(0)) b_i(k) exp(X(0)) == iota_i(k) on every basis state, k <= n.
void check_horizontal_frame(const ComplexDescriptor& c, const PieceRange& range);

}  // namespace chiral
