#pragma once

#include "chiral/weil.hpp"

namespace chiral {

/// Polynomial chiral de Rham complex Q_poly(V) of a linear representation.
/// Generators beta^{x_k}, b^{x_k} (labels of V) and gamma^{x'_k}, c^{x'_k};
/// gamma/c carry charge +1, beta/b charge -1.
struct LinearCDR {
    LieAlgebra algebra;
    Representation rep;
    ComplexDescriptor complex;
    FieldExpression g_m;                 // sum :b^k d gamma^k:
    FieldExpression l_m;                 // sum :beta^k d gamma^k: - :b^k d c^k:
    std::vector<FieldExpression> gamma;  // Gamma^{xi_i} = sum rho(xi_i)_{lk} :beta^l gamma^k:
};

LinearCDR build_cdr(const LieAlgebra& algebra, const Representation& rep, const PinningOptions& options = {});
void run_cdr_pinning(const LinearCDR& q, const PieceRange& range);

/// W(g) (x) Q_poly(V) with both factors kept for their named fields.
struct EquivariantCDR {
    WeilComplex weil;
    LinearCDR cdr;
    ComplexDescriptor complex;

    /// Index of a generator of the Q_poly(V) factor inside `complex`.
    std::size_t q_index(std::size_t q_generator) const { return weil.complex.table.size() + q_generator; }
    State lift_q(const State& s) const;
};

/// Pinning on the tensor complex covers d^2, O(sg), the horizontal frame
/// and the conformal vector L^W + L^M.
EquivariantCDR build_weil_q(const LieAlgebra& algebra, const Representation& rep,
                            const PinningOptions& options = {});

/// The element alpha of the linear vanishing argument, checked for
/// L^tot(0) alpha = 0, iota^tot o_k alpha = 0 (k <= 3) and
/// L^tot_xi o_1 alpha = beta^xi. Throws HomotopyConditionsFailed.
State build_alpha(const EquivariantCDR& w);

/// omega = e - d alpha + g^M, whose mode omega(1) contracts L^tot(1) on
/// the basic subcomplex.
struct VanishingHomotopy {
    FieldExpression omega;
    CompiledField mode;
    State apply(const State& s) const { return mode.apply(1, s); }
};

/// Checks omega is basic (iota o_k omega = 0, L(0) omega = 0) and that
/// [d, omega(1)] = L^tot(1) on every piece in range. Throws
/// HomotopyIdentityFailed.
VanishingHomotopy vanishing_homotopy(const EquivariantCDR& w, const State& alpha, const PieceRange& range);

}  // namespace chiral
