#pragma once

#include "chiral/cohomology.hpp"
#include "chiral/lie.hpp"
#include "chiral/series.hpp"

#include <json.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace chiral {

/// A classical Poincare series given as numerator / prod (1 - z^d).
struct PoincareData {
    std::vector<Rational> numerator;  // coefficient of z^j at index j
    std::vector<int> denominator;     // degrees d of the factors (1 - z^d)

    CharacterSeries series(int z_max, int q_max) const;
    static PoincareData polynomial(std::vector<Rational> coefficients) { return {std::move(coefficients), {}}; }
};

struct SphereData {
    int c0 = 3;
    std::vector<std::string> branches;  // "minus2" | "minus1"
    int dim = 4;
    /// Betti numbers of a fixed-set component beyond H^0; zero unless given.
    std::vector<Rational> higher_betti;
};

/// Classical input of a localization scenario. Betti vectors and Poincare
/// series are keyed by the space they describe, e.g. "MG", "MG1", "HG(M)",
/// "HG2(MG1)".
struct FixedPointData {
    std::string scenario;  // simple circle product-simple torus-cp2 homogeneous q-structure sphere-seq
    int n_max = 3;
    int p_max = 12;
    std::string algebra;   // G (simple, sphere-seq), K0 (homogeneous, q-structure)
    std::string algebra2;  // G2 (product-simple)
    std::map<std::string, std::vector<Rational>> betti;
    std::map<std::string, PoincareData> poincare;
    std::optional<SphereData> sphere;

    /// Betti data as z-polynomial; throws MissingBetti.
    CharacterSeries betti_series(const std::string& key) const;
    /// Poincare data; throws MissingBetti.
    CharacterSeries poincare_series(const std::string& key) const;
};

FixedPointData load_fixed_point_data(const nlohmann::json& j);
nlohmann::json fixed_point_data_to_json(const FixedPointData& d);

/// chi(G) = character of H_G(C), truncated at z^z_max q^n_max. Abelian
/// algebras use prod_k (1 - z^2 q^k)^{-r}; otherwise the engine runs on W(g).
CharacterSeries hgc_character(const LieAlgebra& g, int z_max, int n_max, const EngineOptions& options = {});

/// classical + chi_+(G) * P(M^G), with P(M^G) from betti["MG"].
CharacterSeries simple_localization(const CharacterSeries& chi_g, const FixedPointData& data,
                                    const CharacterSeries& classical);
/// Same with chi(S^1); classical from poincare["HG(M)"].
CharacterSeries circle_localization(const FixedPointData& data);
/// chi_+(G1) P(H_G2(M^G1)) + chi_+(G2) P(H_G1(M^G2)) + chi_+(G1) chi_+(G2) P(M^G), plus
/// the classical layer poincare["HG(M)"] when present.
CharacterSeries product_simple_localization(const CharacterSeries& chi1, const CharacterSeries& chi2,
                                            const FixedPointData& data);
/// T^2 acting on CP^2 with three isolated fixed points.
CharacterSeries torus_cp2_character(int z_max, int n_max, const std::optional<CharacterSeries>& classical = {});
/// chi(K0) * P_{G'}(G/H).
CharacterSeries homogeneous_character(const CharacterSeries& chi_k0, const CharacterSeries& classical);
/// chi(K0) * P_{G'}(M).
CharacterSeries q_structure_character(const CharacterSeries& chi_k0, const CharacterSeries& classical);

struct SphereStep {
    int components = 0;
    CharacterSeries chiral;
    CharacterSeries classical;
};

struct SphereSequence {
    std::vector<SphereStep> steps;
    bool increasing = true;
    bool classical_equal = true;
    bool chiral_distinct = true;
};

/// Component counts c_i of the fixed sets of a sequence of G-spheres and the
/// resulting series. Throws C0OutOfRange, ConfigError on an unknown branch.
SphereSequence sphere_sequence(const SphereData& sphere, const CharacterSeries& chi_g);

/// Coefficientwise comparison of an engine table with a formula.
SeriesComparison cross_check(const CohomologyTable& table, const CharacterSeries& formula);

/// Evaluates a scenario end to end. For sphere-seq the JSON lists the steps.
nlohmann::json run_scenario(const FixedPointData& data, const EngineOptions& options = {});

}  // namespace chiral
