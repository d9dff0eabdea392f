#pragma once

#include "chiral/fock.hpp"

#include <unordered_map>
#include <vector>

namespace chiral {

/// A vertex operator, stored as the state it corresponds to under the
/// state-field correspondence. For free fields the field of a canonical
/// monomial :d^{k1}u1 ... d^{kr}ur: is the Wick-ordered product of the
/// derivative fields, and its modes are assembled from generator modes:
///
///   (d^k u)_(m) = (-1)^k m(m-1)...(m-k+1) u_(m-k)
///   u_(j), j <  0 : multiplication by the symbol d^{-j-1}u / (-j-1)!
///   u_(j), j >= 0 : pairing(u) * j! * (super)derivative w.r.t. d^j partner(u)
using FieldExpression = State;

/// Unordered accumulator used on hot paths; convert with to_state().
using Accumulator = std::unordered_map<Monomial, Rational, MonomialHash>;
State to_state(const Accumulator& acc);

/// A field with its factor data and normal-ordering plans precomputed, so
/// that mode actions on many states avoid re-deriving them.
class CompiledField {
public:
    CompiledField() = default;
    CompiledField(const GeneratorTable& table, const FieldExpression& field);

    /// Adds scale * F_(n) target into `out`.
    void apply(int n, const Monomial& target, const Rational& scale, Accumulator& out) const;
    State apply(int n, const State& s) const;
    const FieldExpression& expression() const { return expression_; }

    struct Factor {
        std::size_t gen;
        unsigned order;
        bool odd;
        std::size_t partner;
        int pairing;
    };
    struct Plan {
        std::vector<std::size_t> annihilators;  // descending factor indices
        std::vector<std::size_t> creators;      // ascending factor indices
        int sign;
    };
    struct Term {
        std::vector<Factor> factors;
        Rational coeff;
        int weight;
        std::vector<Plan> plans;
    };

private:
    std::shared_ptr<const GeneratorTable> table_;  // own copy, so moving the owner is safe
    FieldExpression expression_;
    std::vector<Term> terms_;
};

/// Accumulates scale * F_(n) s into `out` for one field monomial F and one
/// state monomial s.
void apply_mode(const GeneratorTable& table, const Monomial& field, int n, const Monomial& target,
                const Rational& scale, State& out);

/// a_(n) b, i.e. the circle product a o_n b.
State circle(const GeneratorTable& table, const FieldExpression& a, int n, const State& b);

/// Translation operator d (Leibniz rule on symbols).
State derivative(const GeneratorTable& table, const State& a);

/// Normally ordered product :a b: = a o_{-1} b.
inline State normal_product(const GeneratorTable& table, const State& a, const State& b) {
    return circle(table, a, -1, b);
}

/// Supercommutator [x, y] of two odd/even-homogeneous linear operators given
/// as mode pairs, evaluated on a state: x y s - (-1)^{|x||y|} y x s.
struct ModeOp {
    FieldExpression field;
    int mode;
};
State apply(const GeneratorTable& table, const ModeOp& op, const State& s);
State supercommutator(const GeneratorTable& table, const ModeOp& x, const ModeOp& y, const State& s);

/// Parity of a homogeneous field (true = odd). Throws MixedComplex if the
/// field mixes parities.
bool field_parity(const GeneratorTable& table, const FieldExpression& a);

/// Checks [a_(m), b_(k)] s = sum_{i>=0} binom(m,i) (a o_i b)_(m+k-i) s on
/// every probe, exactly.
bool borcherds_check(const GeneratorTable& table, const FieldExpression& a, const FieldExpression& b, int m, int k,
                     const std::vector<State>& probes);

/// Generalised binomial coefficient binom(m, i) for integer m, i >= 0.
Rational binomial(int m, int i);

}  // namespace chiral
