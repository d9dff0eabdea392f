// Command-line front end: cohomology tables, localization scenarios,
// verification suites, series utilities and cross-checks.

#include "chiral/cdr.hpp"
#include "chiral/cohomology.hpp"
#include "chiral/error.hpp"
#include "chiral/localization.hpp"
#include "chiral/weil.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <set>
#include <sstream>

using namespace chiral;
using nlohmann::json;

namespace {

constexpr unsigned kDefaultSeed = 20261015;

enum Exit { kOk = 0, kVerificationFailed = 1, kConfig = 2, kBudget = 3 };

struct Common {
    std::string algebra = "sl2";
    std::string rep = "fundamental";
    std::string complex = "weil";
    int p_min = 0;
    int p_max = 8;
    int n_max = 2;
    int charge_max = 2;
    std::string format = "text";
    unsigned threads = 0;
    std::size_t budget = kDefaultBasisBudget;
};

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
}

LieAlgebra resolve_algebra(const std::string& spec) {
    if (auto g = builtin_algebra(spec)) return *g;
    return load_algebra(read_json_file(spec));
}

Representation resolve_rep(const LieAlgebra& g, const std::string& spec) {
    if (spec == "fundamental") {
        if (g.name() == "sl2") return sl2_fundamental(g);
        if (g.name() == "sl3") return sl3_fundamental(g);
        if (g.flags().abelian) {
            // one coordinate per basis element, weight 1 under it
            std::vector<std::vector<Rational>> weights(g.dim(), std::vector<Rational>(g.dim()));
            for (std::size_t k = 0; k < g.dim(); ++k) weights[k][k] = 1;
            return abelian_weights(g, weights);
        }
        throw ConfigError("no built-in fundamental representation for " + g.name() + "; pass --rep FILE");
    }
    return load_representation(g, read_json_file(spec));
}

void check_truncation(const Common& c) {
    if (c.p_min > c.p_max) throw ConfigError("--pmin must not exceed --pmax");
    if (c.n_max < 0) throw ConfigError("--nmax must be nonnegative");
    if (c.format != "json" && c.format != "csv" && c.format != "text")
        throw ConfigError("--format must be json, csv or text");
}

EngineOptions engine_options(const Common& c, bool modular = false) {
    return EngineOptions{c.charge_max, c.budget, c.threads, modular};
}

const PinningOptions kNoPinning{false, {}, {}};

// Complexes are built once per invocation; the descriptors referenced by an
// engine live here.
struct Built {
    std::optional<WeilComplex> weil;
    std::optional<LinearCDR> cdr;
    std::optional<EquivariantCDR> equivariant;
    std::optional<ComplexDescriptor> small;
    const ComplexDescriptor* complex = nullptr;
};

Built build_complex(const Common& c) {
    Built b;
    auto g = resolve_algebra(c.algebra);
    if (c.complex == "weil") {
        b.weil = build_weil(g, kNoPinning);
        b.complex = &b.weil->complex;
    } else if (c.complex == "weil-q") {
        b.cdr = build_cdr(g, resolve_rep(g, c.rep), kNoPinning);
        b.complex = &b.cdr->complex;
    } else if (c.complex == "tensor") {
        b.equivariant = build_weil_q(g, resolve_rep(g, c.rep), kNoPinning);
        b.complex = &b.equivariant->complex;
    } else if (c.complex == "small-weil") {
        b.small = small_weil(g);
        b.complex = &*b.small;
    } else {
        throw ConfigError("--complex must be weil, weil-q, tensor or small-weil");
    }
    return b;
}

void print_series(const CharacterSeries& s, const std::string& format) {
    if (format == "json")
        std::cout << s.to_json().dump(2) << "\n";
    else if (format == "csv")
        std::cout << s.to_csv();
    else
        std::cout << s.to_text() << "\n";
}

// ---- cohomology -----------------------------------------------------------

int run_cohomology(const Common& c, bool representatives, bool modular) {
    check_truncation(c);
    Built b = build_complex(c);
    CohomologyEngine engine(*b.complex, engine_options(c, modular));
    auto table = engine.cohomology(c.p_min, c.p_max, c.n_max, representatives);
    if (b.complex->experimental) std::cerr << "note: " << b.complex->id << " is experimental\n";
    if (c.format == "csv") {
        std::cout << table.to_csv();
    } else if (c.format == "json") {
        json j = table.to_json();
        if (representatives)
            for (std::size_t i = 0; i < table.entries.size(); ++i) {
                auto reps = json::array();
                for (const auto& r : table.entries[i].representatives) reps.push_back(to_text(b.complex->table, r));
                j["entries"][i]["representatives"] = reps;
            }
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "complex " << table.complex << "  p in [" << c.p_min << "," << c.p_max << "]  n <= " << c.n_max
                  << "\n";
        for (const auto& e : table.entries) {
            if (e.dim == 0) continue;
            std::cout << "H^" << e.p << "[" << e.n << "] = " << e.dim << "\n";
            for (const auto& r : e.representatives) std::cout << "    " << to_text(b.complex->table, r) << "\n";
        }
        std::cout << "series " << character(table).to_text() << "\n";
    }
    return kOk;
}

// ---- verify ---------------------------------------------------------------

struct SuiteReport {
    std::vector<std::pair<std::string, std::string>> lines;  // name, "pass" or failure
    bool ok = true;

    void record(const std::string& name, const std::function<void()>& fn) {
        try {
            fn();
            lines.emplace_back(name, "pass");
        } catch (const Error& e) {
            if (e.kind() == "TruncationOverflow" || e.kind() == "ConfigError") throw;
            ok = false;
            lines.emplace_back(name, std::string("FAIL ") + e.what());
        }
    }
    void record(const std::string& name, bool passed, const std::string& detail) {
        ok = ok && passed;
        lines.emplace_back(name, passed ? "pass" : "FAIL " + detail);
    }
};

// Borcherds identity on seeded random probes of W(g).
void borcherds_suite(const WeilComplex& w, unsigned seed, SuiteReport& report) {
    const auto& c = w.complex;
    const auto& t = c.table;
    std::mt19937 rng(seed);
    std::vector<State> probes;
    for (int n = 0; n <= 2; ++n)
        for (int p = -2; p <= 2; ++p) {
            auto basis = enumerate_basis(t, p, n);
            if (basis.empty()) continue;
            std::uniform_int_distribution<std::size_t> pick(0, basis.size() - 1);
            probes.emplace_back(basis[pick(rng)], 1);
        }
    std::vector<std::pair<std::string, FieldExpression>> fields;
    for (std::size_t i = 0; i < c.rank(); ++i) {
        fields.emplace_back("b_" + w.algebra.basis_labels()[i], c.iota[i]);
        fields.emplace_back("L_" + w.algebra.basis_labels()[i], c.lie[i]);
    }
    fields.emplace_back("d", c.differential);
    if (c.conformal) fields.emplace_back("L^W", *c.conformal);
    std::uniform_int_distribution<std::size_t> which(0, fields.size() - 1);
    std::uniform_int_distribution<int> mode(-1, 2);
    for (int trial = 0; trial < 12; ++trial) {
        const auto& [na, a] = fields[which(rng)];
        const auto& [nb, b] = fields[which(rng)];
        const int m = mode(rng), k = mode(rng);
        const std::string name = "borcherds [" + na + "(" + std::to_string(m) + "), " + nb + "(" + std::to_string(k) + ")]";
        report.record(name, borcherds_check(t, a, b, m, k, probes), "identity fails on a probe");
    }
}

int run_verify(const Common& c, const std::string& suite, unsigned seed) {
    check_truncation(c);
    auto g = resolve_algebra(c.algebra);
    const PieceRange range{c.p_min, c.p_max, c.n_max, c.charge_max, c.budget};
    SuiteReport report;
    const bool all = suite == "all";
    static const std::set<std::string> known = {"all", "pinning", "identities", "borcherds", "d2", "homotopy"};
    if (!known.count(suite)) throw ConfigError("unknown suite '" + suite + "'");

    auto w = build_weil(g, kNoPinning);
    if (all || suite == "pinning") report.record("weil pinning " + w.complex.id, [&] { run_weil_pinning(w, range); });
    if (all || suite == "identities")
        for (const auto& check : identity_suite(w)) report.record(check.name, check.passed, check.detail);
    if (all || suite == "borcherds") borcherds_suite(w, seed, report);
    if (all || suite == "d2") {
        if (c.complex == "tensor") {
            auto e = build_weil_q(g, resolve_rep(g, c.rep), kNoPinning);
            report.record("d^2 = 0 on " + e.complex.id, [&] { check_d_squared(e.complex, range); });
        } else {
            report.record("d^2 = 0 on " + w.complex.id, [&] { check_d_squared(w.complex, range); });
        }
    }
    if (all || suite == "homotopy") {
        auto e = build_weil_q(g, resolve_rep(g, c.rep), kNoPinning);
        std::optional<State> alpha;
        report.record("alpha conditions", [&] { alpha = build_alpha(e); });
        if (alpha)
            report.record("[d, omega(1)] = L(1) on " + e.complex.id, [&] { vanishing_homotopy(e, *alpha, range); });
    }

    if (c.format == "json") {
        json j{{"seed", seed}, {"algebra", g.name()}, {"suite", suite}, {"ok", report.ok}};
        j["checks"] = json::array();
        for (const auto& [name, result] : report.lines) j["checks"].push_back({{"name", name}, {"result", result}});
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "seed " << seed << "\n";
        for (const auto& [name, result] : report.lines) std::cout << (result == "pass" ? "pass  " : "FAIL  ") << name
                                                                  << (result == "pass" ? "" : "  " + result.substr(5))
                                                                  << "\n";
    }
    return report.ok ? kOk : kVerificationFailed;
}

// ---- character ------------------------------------------------------------

std::vector<Rational> parse_list(const std::string& text) {
    std::vector<Rational> out;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ',');)
        if (!item.empty()) out.push_back(parse_rational(item));
    return out;
}

int run_character(const Common& c, int torus_rank, const std::string& numerator, const std::string& denominator,
                  const std::string& part) {
    check_truncation(c);
    CharacterSeries s = torus_rank > 0 ? torus_character(torus_rank, c.p_max, c.n_max)
                                       : hgc_character(resolve_algebra(c.algebra), c.p_max, c.n_max, engine_options(c));
    if (!numerator.empty() || !denominator.empty()) {
        PoincareData p{parse_list(numerator.empty() ? "1" : numerator), {}};
        for (const auto& d : parse_list(denominator)) {
            if (d.get_den() != 1) throw ConfigError("denominator degrees must be integers");
            p.denominator.push_back(static_cast<int>(d.get_num().get_si()));
        }
        s = s * p.series(c.p_max, c.n_max);
    }
    if (part == "positive")
        s = s.positive_weight();
    else if (part == "zero")
        s = s.weight_zero();
    else if (part != "all")
        throw ConfigError("--part must be all, positive or zero");
    print_series(s, c.format);
    return kOk;
}

// ---- localize -------------------------------------------------------------

struct LocalizeArgs {
    std::string scenario;
    std::string data;
    int c0 = 3;
    std::string branches;
    int dim = 4;
    int fixed_points = -1;
    std::string algebra2;
    bool algebra_given = false;
};

int run_localize(const Common& c, const LocalizeArgs& a) {
    check_truncation(c);
    FixedPointData d;
    if (!a.data.empty()) {
        d = load_fixed_point_data(read_json_file(a.data));
        if (!a.scenario.empty() && a.scenario != d.scenario)
            throw ConfigError("--scenario disagrees with the data file");
    } else {
        if (a.scenario.empty()) throw ConfigError("localize needs --scenario or --data");
        d = load_fixed_point_data(json{{"scenario", a.scenario}, {"n_max", c.n_max}, {"p_max", c.p_max}});
        if (a.scenario == "sphere-seq") {
            SphereData s;
            s.c0 = a.c0;
            s.dim = a.dim;
            std::stringstream ss(a.branches);
            for (std::string item; std::getline(ss, item, ',');)
                if (!item.empty()) s.branches.push_back(item);
            d.sphere = s;
        }
    }
    if (a.algebra_given) d.algebra = c.algebra;
    if (!a.algebra2.empty()) d.algebra2 = a.algebra2;
    if (a.fixed_points >= 0) d.betti["MG"] = {Rational(a.fixed_points)};

    json out = run_scenario(d, engine_options(c));
    if (c.format == "json") {
        std::cout << out.dump(2) << "\n";
    } else if (c.format == "csv") {
        if (out.contains("steps")) {
            std::cout << "step,c,p,n,coeff\n";
            for (std::size_t i = 0; i < out["steps"].size(); ++i)
                for (const auto& term : out["steps"][i]["chiral"]["terms"])
                    std::cout << i << "," << out["steps"][i]["c"] << "," << term["p"] << "," << term["n"] << ","
                              << term["coeff"].get<std::string>() << "\n";
        } else {
            std::cout << "p,n,coeff\n";
            for (const auto& term : out["series"]["terms"])
                std::cout << term["p"] << "," << term["n"] << "," << term["coeff"].get<std::string>() << "\n";
        }
    } else if (out.contains("steps")) {
        std::cout << "c = [";
        for (std::size_t i = 0; i < out["c"].size(); ++i) std::cout << (i ? ", " : "") << out["c"][i];
        std::cout << "]\n";
        for (const auto& s : out["steps"])
            std::cout << "c=" << s["c"] << "  chiral " << s["chiral"]["text"].get<std::string>() << "\n";
        std::cout << "classical " << out["steps"][0]["classical"]["text"].get<std::string>() << "\n";
        std::cout << "increasing " << out["increasing"] << ", classical equal " << out["classical_equal"]
                  << ", chiral distinct " << out["chiral_distinct"] << "\n";
    } else {
        std::cout << out["series"]["text"].get<std::string>() << "\n";
    }
    return kOk;
}

// ---- crosscheck -----------------------------------------------------------

CohomologyTable table_from_json(const json& j) {
    try {
        CohomologyTable t;
        t.complex = j.at("complex").get<std::string>();
        t.p_min = j.at("trunc").at("pmin").get<int>();
        t.p_max = j.at("trunc").at("pmax").get<int>();
        t.n_max = j.at("trunc").at("nmax").get<int>();
        for (const auto& e : j.at("entries"))
            t.entries.push_back({e.at("p").get<int>(), e.at("n").get<int>(), e.at("dim").get<std::size_t>(), {}});
        return t;
    } catch (const json::exception& e) {
        throw ParseError(std::string("cohomology table: ") + e.what());
    }
}

int run_crosscheck(const Common& c, const std::string& table_path) {
    check_truncation(c);
    auto g = resolve_algebra(c.algebra);
    CohomologyTable table;
    if (!table_path.empty()) {
        table = table_from_json(read_json_file(table_path));
    } else {
        Built b = build_complex(c);
        CohomologyEngine engine(*b.complex, engine_options(c));
        table = engine.cohomology(c.p_min, c.p_max, c.n_max);
    }
    CharacterSeries formula(table.p_max, table.n_max);
    std::string what;
    if (c.complex == "weil") {
        if (!g.flags().abelian) throw ConfigError("no closed formula for W(" + g.name() + "); use an abelian algebra");
        formula = torus_character(static_cast<int>(g.dim()), table.p_max, table.n_max);
        what = "engine vs prod_k (1 - z^2 q^k)^-" + std::to_string(g.dim());
    } else if (c.complex == "tensor") {
        // the positive-weight part vanishes
        std::vector<CohomologyEntry> kept;
        for (auto& e : table.entries)
            if (e.n > 0) kept.push_back(e);
        table.entries = kept;
        what = "engine positive weight vs 0";
    } else {
        throw ConfigError("crosscheck supports --complex weil or tensor");
    }
    auto report = cross_check(table, formula);
    if (c.format == "json") {
        std::cout << json{{"check", what}, {"match", report.match}, {"mismatches", report.mismatches}}.dump(2) << "\n";
    } else {
        std::cout << what << ": " << (report.match ? "match" : "MISMATCH") << "\n";
        for (const auto& m : report.mismatches) std::cout << "  " << m << "\n";
    }
    return report.match ? kOk : kVerificationFailed;
}

void add_common(CLI::App* app, Common& c, bool with_complex) {
    app->add_option("--algebra", c.algebra, "built-in name (abelianN, sl2, sl3, sl2+sl2) or JSON file");
    app->add_option("--nmax", c.n_max, "largest weight n");
    app->add_option("--pmin", c.p_min, "smallest degree p");
    app->add_option("--pmax", c.p_max, "largest degree p");
    app->add_option("--format", c.format, "json, csv or text");
    app->add_option("--threads", c.threads, "worker threads (default: CHIRAL_THREADS or 1)");
    app->add_option("--charge-max", c.charge_max, "upper end of the charge window");
    app->add_option("--budget", c.budget, "largest basis enumerated per piece");
    if (with_complex) {
        app->add_option("--complex", c.complex, "weil, weil-q, tensor or small-weil");
        app->add_option("--rep", c.rep, "'fundamental' or representation JSON file");
    }
}

int exit_code(const Error& e) {
    const std::string& k = e.kind();
    if (k == "TruncationOverflow") return kBudget;
    if (k == "ConfigError" || k == "ParseError" || k == "MissingBetti" || k == "C0OutOfRange" || k == "NotAbelian" ||
        k == "DegenerateForm" || k == "SingularFormWhenNondegenerateRequired" || k == "NotASubalgebra" ||
        k == "RepresentationViolation" || k == "JacobiViolation" || k == "AntisymmetryViolation" ||
        k == "FormNotInvariant")
        return kConfig;
    return kVerificationFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Chiral equivariant cohomology engine"};
    app.require_subcommand(1);
    Common common;

    bool representatives = false, modular = false;
    auto* coh = app.add_subcommand("cohomology", "cohomology table of a complex");
    add_common(coh, common, true);
    coh->add_flag("--representatives", representatives, "list basic cocycle representatives");
    coh->add_flag("--modular-check", modular, "cross-check ranks modulo two primes");

    std::string suite = "all";
    unsigned seed = kDefaultSeed;
    auto* ver = app.add_subcommand("verify", "run verification suites; exit 1 on failure");
    add_common(ver, common, true);
    ver->add_option("--suite", suite, "all, pinning, identities, borcherds, d2 or homotopy");
    ver->add_option("--seed", seed, "seed for probe sampling");

    int torus_rank = 0;
    std::string numerator, denominator, part = "all";
    auto* chr = app.add_subcommand("character", "character series utilities");
    add_common(chr, common, false);
    chr->add_option("--torus", torus_rank, "use prod_k (1 - z^2 q^k)^-rank instead of an algebra");
    chr->add_option("--times-numerator", numerator, "multiply by a Poincare series: numerator coefficients");
    chr->add_option("--times-denominator", denominator, "degrees d of the factors 1/(1 - z^d)");
    chr->add_option("--part", part, "all, positive or zero");

    LocalizeArgs loc;
    auto* lz = app.add_subcommand("localize", "localization scenarios");
    add_common(lz, common, false);
    lz->add_option("--scenario", loc.scenario,
                   "simple, circle, product-simple, torus-cp2, homogeneous, q-structure or sphere-seq");
    lz->add_option("--data", loc.data, "fixed-point data JSON");
    lz->add_option("--c0", loc.c0, "components of the first fixed set (sphere-seq)");
    lz->add_option("--branches", loc.branches, "comma list of minus2/minus1 (sphere-seq)");
    lz->add_option("--dim", loc.dim, "sphere dimension (sphere-seq)");
    lz->add_option("--fixed-points", loc.fixed_points, "sets the fixed set to this many points");
    lz->add_option("--algebra2", loc.algebra2, "second factor (product-simple)");

    std::string table_path;
    auto* cc = app.add_subcommand("crosscheck", "compare engine tables with closed formulas");
    add_common(cc, common, true);
    cc->add_option("--table", table_path, "cohomology table JSON instead of running the engine");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kConfig;
    }

    try {
        if (*coh) return run_cohomology(common, representatives, modular);
        if (*ver) return run_verify(common, suite, seed);
        if (*chr) return run_character(common, torus_rank, numerator, denominator, part);
        if (*lz) {
            loc.algebra_given = lz->count("--algebra") > 0;
            return run_localize(common, loc);
        }
        if (*cc) return run_crosscheck(common, table_path);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code(e);
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kVerificationFailed;
    }
    return kOk;
}
