#include "chiral/localization.hpp"

#include "chiral/error.hpp"
#include "chiral/json_util.hpp"
#include "chiral/weil.hpp"

#include <set>

namespace chiral {

CharacterSeries PoincareData::series(int z_max, int q_max) const {
    CharacterSeries out = poincare_polynomial(numerator, z_max, q_max);
    for (int d : denominator) {
        if (d <= 0) throw ConfigError("Poincare denominator degrees must be positive");
        out = out * polynomial_ring(d, z_max, q_max);
    }
    return out;
}

CharacterSeries FixedPointData::betti_series(const std::string& key) const {
    auto it = betti.find(key);
    if (it == betti.end()) throw MissingBetti("scenario " + scenario + " needs betti[\"" + key + "\"]");
    return poincare_polynomial(it->second, p_max, n_max);
}

CharacterSeries FixedPointData::poincare_series(const std::string& key) const {
    auto it = poincare.find(key);
    if (it == poincare.end()) throw MissingBetti("scenario " + scenario + " needs poincare[\"" + key + "\"]");
    return it->second.series(p_max, n_max);
}

namespace {

const std::set<std::string> kScenarios = {"simple",      "circle",      "product-simple", "torus-cp2",
                                          "homogeneous", "q-structure", "sphere-seq"};

std::vector<Rational> rationals(const nlohmann::json& j) {
    if (!j.is_array()) throw ConfigError("expected an array of numbers");
    std::vector<Rational> out;
    for (const auto& x : j) {
        Rational q = rational_from_json(x);
        if (q < 0 || q.get_den() != 1) throw ConfigError("Betti numbers and Poincare coefficients must be nonnegative integers");
        out.push_back(q);
    }
    return out;
}

nlohmann::json rationals_json(const std::vector<Rational>& v) {
    auto out = nlohmann::json::array();
    for (const auto& q : v) out.push_back(rational_to_json(q));
    return out;
}

void require_nonnegative(const CharacterSeries& s, const std::string& what) {
    if (!s.has_nonnegative_integer_coefficients())
        throw ConfigError(what + " has coefficients that are not nonnegative integers");
}

CharacterSeries chi_of(const std::string& name, int z_max, int n_max, const EngineOptions& options) {
    if (name == "trivial") return CharacterSeries::constant(1, z_max, n_max);
    auto g = builtin_algebra(name);
    if (!g) throw ConfigError("unknown algebra '" + name + "'");
    return hgc_character(*g, z_max, n_max, options);
}

}  // namespace

FixedPointData load_fixed_point_data(const nlohmann::json& j) {
    FixedPointData d;
    try {
        d.scenario = j.at("scenario").get<std::string>();
        if (!kScenarios.count(d.scenario)) throw ConfigError("unknown scenario '" + d.scenario + "'");
        d.n_max = j.value("n_max", 3);
        d.p_max = j.value("p_max", 12);
        if (d.n_max < 0 || d.p_max < 0) throw ConfigError("n_max and p_max must be nonnegative");
        d.algebra = j.value("algebra", std::string());
        d.algebra2 = j.value("algebra2", std::string());
        if (j.contains("betti"))
            for (const auto& [key, v] : j.at("betti").items()) d.betti[key] = rationals(v);
        if (j.contains("poincare"))
            for (const auto& [key, v] : j.at("poincare").items()) {
                PoincareData p;
                if (v.is_array()) {
                    p.numerator = rationals(v);
                } else {
                    p.numerator = rationals(v.at("numerator"));
                    if (v.contains("denominator")) p.denominator = v.at("denominator").get<std::vector<int>>();
                }
                d.poincare[key] = std::move(p);
            }
        if (j.contains("sphere")) {
            const auto& s = j.at("sphere");
            SphereData sp;
            sp.c0 = s.value("c0", 3);
            sp.branches = s.value("branches", std::vector<std::string>{});
            sp.dim = s.value("dim", 4);
            if (s.contains("higher_betti")) sp.higher_betti = rationals(s.at("higher_betti"));
            d.sphere = sp;
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("fixed-point data: ") + e.what());
    }
    return d;
}

nlohmann::json fixed_point_data_to_json(const FixedPointData& d) {
    nlohmann::json j{{"scenario", d.scenario}, {"n_max", d.n_max}, {"p_max", d.p_max}};
    if (!d.algebra.empty()) j["algebra"] = d.algebra;
    if (!d.algebra2.empty()) j["algebra2"] = d.algebra2;
    j["betti"] = nlohmann::json::object();
    for (const auto& [k, v] : d.betti) j["betti"][k] = rationals_json(v);
    j["poincare"] = nlohmann::json::object();
    for (const auto& [k, p] : d.poincare)
        j["poincare"][k] = {{"numerator", rationals_json(p.numerator)}, {"denominator", p.denominator}};
    if (d.sphere)
        j["sphere"] = {{"c0", d.sphere->c0},
                       {"branches", d.sphere->branches},
                       {"dim", d.sphere->dim},
                       {"higher_betti", rationals_json(d.sphere->higher_betti)}};
    return j;
}

CharacterSeries hgc_character(const LieAlgebra& g, int z_max, int n_max, const EngineOptions& options) {
    if (g.flags().abelian) return torus_character(static_cast<int>(g.dim()), z_max, n_max);
    auto w = build_weil(g, PinningOptions{false, {}, {}});
    CohomologyEngine engine(w.complex, options);
    return character(engine.cohomology(0, z_max, n_max)).truncated(z_max, n_max);
}

CharacterSeries simple_localization(const CharacterSeries& chi_g, const FixedPointData& data,
                                    const CharacterSeries& classical) {
    CharacterSeries fixed = data.betti_series("MG");
    return classical.weight_zero() + chi_g.positive_weight() * fixed;
}

CharacterSeries circle_localization(const FixedPointData& data) {
    CharacterSeries chi = torus_character(1, data.p_max, data.n_max);
    return simple_localization(chi, data, data.poincare_series("HG(M)"));
}

CharacterSeries product_simple_localization(const CharacterSeries& chi1, const CharacterSeries& chi2,
                                            const FixedPointData& data) {
    CharacterSeries a = chi1.positive_weight(), b = chi2.positive_weight();
    CharacterSeries out = a * data.poincare_series("HG2(MG1)") + b * data.poincare_series("HG1(MG2)") +
                          a * b * data.betti_series("MG");
    if (data.poincare.count("HG(M)")) out = out + data.poincare_series("HG(M)").weight_zero();
    return out;
}

CharacterSeries torus_cp2_character(int z_max, int n_max, const std::optional<CharacterSeries>& classical) {
    CharacterSeries chi = torus_character(1, z_max, n_max).positive_weight();
    // H_{S^1}(CP^1) for the circle fixing a projective line: (1 + z^2)/(1 - z^2)
    CharacterSeries line = PoincareData{{1, 0, 1}, {2}}.series(z_max, n_max);
    CharacterSeries out = Rational(3) * (chi * line) + Rational(3) * (chi * chi);
    // H_T(CP^2) = H(CP^2) (x) H(BT^2) by equivariant formality
    CharacterSeries base = classical ? *classical : PoincareData{{1, 0, 1, 0, 1}, {2, 2}}.series(z_max, n_max);
    return out + base.weight_zero();
}

CharacterSeries homogeneous_character(const CharacterSeries& chi_k0, const CharacterSeries& classical) {
    return chi_k0 * classical;
}

CharacterSeries q_structure_character(const CharacterSeries& chi_k0, const CharacterSeries& classical) {
    return chi_k0 * classical;
}

SphereSequence sphere_sequence(const SphereData& sphere, const CharacterSeries& chi_g) {
    if (sphere.c0 < 3 || sphere.c0 > 6)
        throw C0OutOfRange("c0 = " + std::to_string(sphere.c0) + " is outside [3, 6]");
    if (sphere.dim < 1) throw ConfigError("sphere dimension must be positive");
    const int zm = chi_g.z_max(), qm = chi_g.q_max();
    CharacterSeries classical = chi_g.weight_zero() * (CharacterSeries::constant(1, zm, qm) +
                                                       CharacterSeries::monomial(1, sphere.dim, 0, zm, qm));
    CharacterSeries chi_plus = chi_g.positive_weight();

    std::vector<int> counts{sphere.c0};
    for (const auto& b : sphere.branches) {
        const int prev = counts.back();
        if (b == "minus2")
            counts.push_back(2 * prev - 2);
        else if (b == "minus1")
            counts.push_back(2 * prev - 1);
        else
            throw ConfigError("unknown branch '" + b + "' (expected minus2 or minus1)");
    }

    SphereSequence out;
    for (int c : counts) {
        CharacterSeries fixed = CharacterSeries::constant(c, zm, qm);
        for (std::size_t j = 0; j < sphere.higher_betti.size(); ++j)
            fixed.add(static_cast<int>(j) + 1, 0, sphere.higher_betti[j]);
        out.steps.push_back({c, classical + chi_plus * fixed, classical});
    }
    for (std::size_t i = 0; i < out.steps.size(); ++i) {
        if (i > 0 && out.steps[i].components <= out.steps[i - 1].components) out.increasing = false;
        if (!(out.steps[i].classical == out.steps[0].classical)) out.classical_equal = false;
        for (std::size_t k = 0; k < i; ++k)
            if (out.steps[i].chiral == out.steps[k].chiral) out.chiral_distinct = false;
    }
    return out;
}

SeriesComparison cross_check(const CohomologyTable& table, const CharacterSeries& formula) {
    return compare(character(table), formula);
}

nlohmann::json run_scenario(const FixedPointData& d, const EngineOptions& options) {
    nlohmann::json out{{"scenario", d.scenario}};
    auto algebra_or = [](const std::string& name, const char* fallback) { return name.empty() ? fallback : name; };
    CharacterSeries result;
    if (d.scenario == "simple") {
        auto g = algebra_or(d.algebra, "sl2");
        out["algebra"] = g;
        result = simple_localization(chi_of(g, d.p_max, d.n_max, options), d, d.poincare_series("HG(M)"));
    } else if (d.scenario == "circle") {
        result = circle_localization(d);
    } else if (d.scenario == "product-simple") {
        auto g1 = algebra_or(d.algebra, "sl2"), g2 = algebra_or(d.algebra2, "sl2");
        out["algebra"] = g1;
        out["algebra2"] = g2;
        result = product_simple_localization(chi_of(g1, d.p_max, d.n_max, options),
                                             chi_of(g2, d.p_max, d.n_max, options), d);
    } else if (d.scenario == "torus-cp2") {
        std::optional<CharacterSeries> classical;
        if (d.poincare.count("HG(M)")) classical = d.poincare_series("HG(M)");
        result = torus_cp2_character(d.p_max, d.n_max, classical);
    } else if (d.scenario == "homogeneous" || d.scenario == "q-structure") {
        auto k0 = algebra_or(d.algebra, "trivial");
        out["k0"] = k0;
        const char* key = d.scenario == "homogeneous" ? "HG'(G/H)" : "HG'(M)";
        auto chi = chi_of(k0, d.p_max, d.n_max, options);
        auto classical = d.poincare_series(key);
        result = d.scenario == "homogeneous" ? homogeneous_character(chi, classical)
                                             : q_structure_character(chi, classical);
    } else if (d.scenario == "sphere-seq") {
        if (!d.sphere) throw MissingBetti("scenario sphere-seq needs sphere data");
        auto g = algebra_or(d.algebra, "sl2");
        out["algebra"] = g;
        auto seq = sphere_sequence(*d.sphere, chi_of(g, d.p_max, d.n_max, options));
        auto c = nlohmann::json::array();
        auto steps = nlohmann::json::array();
        for (const auto& s : seq.steps) {
            require_nonnegative(s.chiral, "chiral series");
            c.push_back(s.components);
            steps.push_back({{"c", s.components}, {"chiral", s.chiral.to_json()}, {"classical", s.classical.to_json()}});
        }
        out["c"] = c;
        out["steps"] = steps;
        out["increasing"] = seq.increasing;
        out["classical_equal"] = seq.classical_equal;
        out["chiral_distinct"] = seq.chiral_distinct;
        return out;
    } else {
        throw ConfigError("unknown scenario '" + d.scenario + "'");
    }
    require_nonnegative(result, "result series");
    out["series"] = result.to_json();
    return out;
}

}  // namespace chiral
