#pragma once

#include "chiral/complex.hpp"
#include "chiral/lie.hpp"

namespace chiral {

/// How much of the pinning suite runs before a complex is handed out.
struct PinningOptions {
    bool enabled = true;
    PieceRange range{-6, 6, 3, 2};
    /// Checks that only concern a tensor product (its d^2, O(sg) and
    /// frame); the factors are pinned on `range`.
    PieceRange tensor_range{-6, 6, 1, 2};
};

/// The semi-infinite Weil complex of g with its named fields.
/// Generators: beta^{xi_i}, b^{xi_i} labelled by the basis labels of g,
/// gamma^{xi'_i}, c^{xi'_i} labelled with a trailing prime.
struct WeilComplex {
    LieAlgebra algebra;
    ComplexDescriptor complex;
    std::vector<FieldExpression> theta_s;       // beta-gamma part of L_{xi_i}
    std::vector<FieldExpression> theta_lambda;  // b-c part of L_{xi_i}
    FieldExpression koszul;                     // K
    FieldExpression chevalley;                  // J
};

WeilComplex build_weil(const LieAlgebra& algebra, const PinningOptions& options = {});

/// Runs every Weil identity on `w` (see README for the list). Throws
/// PinningSuiteFailure on the first failure.
void run_weil_pinning(const WeilComplex& w, const PieceRange& range);

/// e = sum_i :beta^{xi_i} dc^{xi'_i}:, checked against d e = L^W and the
/// contraction identity iota_xi o_n e = delta_{n,1} beta^xi.
State contracting_element(const WeilComplex& w);

/// theta_S for the Killing-dual vector xi~^i, normalised so that
/// L^W_{xi_k} o_1 theta = -delta_{ik}. Zero for abelian g.
FieldExpression theta_S(const WeilComplex& w, std::size_t i);

/// Independent classical Weil differential on weight-zero monomials:
///   d c^a = gamma^a - 1/2 f^a_{bc} c^b c^c,   d gamma^a = -f^a_{bc} c^b gamma^c.
State classical_weil_differential(const WeilComplex& w, const State& weight_zero);

struct IdentityCheck {
    std::string name;
    bool passed = false;
    std::string detail;  // first failing instance, if any
};

/// The contracting-element, theta_S and (beta b c) identities, each taken
/// with the sign it is usually stated with:
///   d e = L^W,  iota_xi o_n e = -delta_{n,1} beta^xi (0 <= n <= 3),
///   L_{xi_k} o_1 theta_S^i = -delta_{ik},
///   L_{xi_k} o_1 :beta^z b^a c^e: = <xi_k, ad*_{xi_a} xi'_e> beta^z.
/// Never throws on a failed identity.
std::vector<IdentityCheck> identity_suite(const WeilComplex& w);

/// Subalgebra <gamma, c> of W(t) for abelian t with differential c -> gamma.
/// Experimental: without further basic-type conditions it is acyclic.
ComplexDescriptor small_weil(const LieAlgebra& algebra);

}  // namespace chiral
