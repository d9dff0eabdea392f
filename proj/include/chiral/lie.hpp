#pragma once

#include "chiral/rational.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace chiral {

struct LieFlags {
    bool abelian = false;
    bool simple = false;
    bool semisimple = false;
    /// The stored form must have full rank (needed for form-dual bases).
    bool nondegenerate = false;
};

/// A finite-dimensional complex Lie algebra over Q in a fixed basis
/// xi_0..xi_{d-1}, with [xi_i, xi_j] = sum_k f(i,j,k) xi_k and a symmetric
/// ad-invariant bilinear form. Validated on construction, immutable after.
class LieAlgebra {
public:
    /// `structure` has size dim^3 indexed (i*dim + j)*dim + k.
    LieAlgebra(std::string name, std::vector<std::string> basis_labels, std::vector<Rational> structure,
               Matrix form, LieFlags flags);

    const std::string& name() const { return name_; }
    std::size_t dim() const { return labels_.size(); }
    const std::vector<std::string>& basis_labels() const { return labels_; }
    const LieFlags& flags() const { return flags_; }

    const Rational& f(std::size_t i, std::size_t j, std::size_t k) const {
        return structure_[(i * dim() + j) * dim() + k];
    }
    /// Coordinates of [x, y] for coordinate vectors x, y.
    std::vector<Rational> bracket(const std::vector<Rational>& x, const std::vector<Rational>& y) const;

    /// Matrix of ad_{xi_i}: column j holds the coordinates of [xi_i, xi_j].
    Matrix ad(std::size_t i) const;
    /// Matrix of ad*_{xi_i} on g* in the dual basis xi'_0..: column k holds
    /// the coordinates of ad*_{xi_i} xi'_k, where (ad*_x phi)(y) = -phi([x,y]).
    Matrix coad(std::size_t i) const;

    const Matrix& form() const { return form_; }
    /// Row i holds the coordinates of the form-dual vector xi~^i, i.e.
    /// form(xi~^i, xi_j) = delta_ij. Throws DegenerateForm if the form is singular.
    Matrix form_dual_basis() const;

    /// Returns a copy that carries a different invariant form.
    LieAlgebra with_form(Matrix form, bool nondegenerate) const;

private:
    std::string name_;
    std::vector<std::string> labels_;
    std::vector<Rational> structure_;
    Matrix form_;
    LieFlags flags_;
};

/// Linear representation rho: g -> End(V) given by matrices rho(xi_i).
/// Matrix convention: rho(xi) x_k = sum_l rho(xi)(l,k) x_l.
class Representation {
public:
    Representation(const LieAlgebra& algebra, std::vector<Matrix> matrices, std::vector<std::string> labels = {},
                   bool claim_faithful = false);

    std::size_t dim() const { return labels_.size(); }
    const std::vector<Matrix>& matrices() const { return matrices_; }
    const Matrix& rho(std::size_t i) const { return matrices_[i]; }
    const std::vector<std::string>& labels() const { return labels_; }

    /// <xi_i, xi_j> = Tr(rho(xi_i) rho(xi_j)).
    Matrix trace_form() const;
    bool is_faithful() const;

private:
    std::vector<Matrix> matrices_;
    std::vector<std::string> labels_;
};

/// Subalgebra h of g given by the columns of `inclusion` (dim g x dim h).
class SubalgebraEmbedding {
public:
    SubalgebraEmbedding(const LieAlgebra& ambient, Matrix inclusion);
    const Matrix& inclusion() const { return inclusion_; }
    std::size_t dim() const { return inclusion_.cols(); }

private:
    Matrix inclusion_;
};

Matrix killing_form(const LieAlgebra& algebra);

/// True iff { ad*_xi(eta') : xi in g, eta' in (g/h)^* } spans g^*.
/// (g/h)^* is realised as the annihilator of h inside g^*.
bool coadjoint_span(const LieAlgebra& algebra, const SubalgebraEmbedding& sub);

// Built-in algebras. sl2 uses the basis (e, h, f); sl3 the Chevalley-type
// basis (E12, E13, E23, E21, E31, E32, H1, H2). Nonabelian built-ins carry
// their Killing form; abelian(n) carries the identity form.
LieAlgebra abelian(std::size_t n);
LieAlgebra sl2();
LieAlgebra sl3();
LieAlgebra direct_sum(const LieAlgebra& a, const LieAlgebra& b);
LieAlgebra sl2_sum_sl2();
/// Looks up "abelian<N>", "sl2", "sl2+sl2", "sl3".
std::optional<LieAlgebra> builtin_algebra(const std::string& name);

/// Builds an algebra from a basis of matrices closed under commutator.
LieAlgebra from_matrix_basis(std::string name, std::vector<std::string> labels, const std::vector<Matrix>& basis,
                             LieFlags flags);

/// Defining 2-dimensional representation of sl2 in the basis (e, h, f).
Representation sl2_fundamental(const LieAlgebra& sl2_algebra);
/// Defining 3-dimensional representation of sl3.
Representation sl3_fundamental(const LieAlgebra& sl3_algebra);
/// Representation on R^n where abelian(n) acts diagonally by basis weights.
Representation abelian_weights(const LieAlgebra& algebra, const std::vector<std::vector<Rational>>& weights);

/// Algebra JSON:
///   {"name", "dim", "basis": [...], "brackets": [[i,j,k,value], ...],
///    "form": [[...]] | {"from_representation": <rep JSON>} | "killing",
///    "flags": ["abelian"|"simple"|"semisimple"|"nondegenerate", ...]}
/// Indices are 0-based; a missing [j,i,k] entry is implied by antisymmetry.
/// Values are JSON numbers or rational strings like "-1/2".
LieAlgebra load_algebra(const nlohmann::json& descriptor);
/// Representation JSON: {"dim", "matrices": [[[...]]], "labels": [...], "faithful": bool}.
Representation load_representation(const LieAlgebra& algebra, const nlohmann::json& descriptor);

nlohmann::json algebra_to_json(const LieAlgebra& algebra);

}  // namespace chiral
