#pragma once

#include "chiral/rational.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace chiral {

/// The four free-field families. beta/gamma are even, b/c odd.
enum class Family : std::uint8_t { Beta = 0, Gamma = 1, B = 2, C = 3 };

const char* family_letter(Family f);  // "B", "g", "b", "c"

struct Generator {
    std::string label;
    Family family;
    bool odd;
    int degree;
    int weight;  // conformal weight of the field: 1 for beta/b, 0 for gamma/c
    int charge;  // auxiliary grading, nonzero only on polynomial (Q_poly) generators
    std::size_t partner;
};

/// Ordered list of free-field generators. The index of a generator in the
/// table is its rank in the global symbol order, so the order in which
/// generators are added fixes every sign convention downstream.
///
/// Nonzero brackets are between a generator u and its partner v:
///   [beta_(m), gamma_(n)] = delta_{m+n,-1},  [gamma_(m), beta_(n)] = -delta_{m+n,-1},
///   [b_(m), c_(n)]        = delta_{m+n,-1},  [c_(m), b_(n)]        =  delta_{m+n,-1}.
class GeneratorTable {
public:
    /// Appends beta^{x}, gamma^{x'}, b^{x}, c^{x'} for every label x (family
    /// blocks in that order). Degrees are given per family; gamma/c get
    /// charge `charge`, beta/b get -`charge`.
    void add_system(const std::vector<std::string>& labels, const std::vector<std::string>& dual_labels,
                    int beta_degree, int gamma_degree, int b_degree, int c_degree, int charge = 0);
    /// Appends only gamma^{x'} and c^{x'} (no partners present).
    void add_gamma_c(const std::vector<std::string>& dual_labels, int gamma_degree, int c_degree);

    std::size_t size() const { return gens_.size(); }
    const Generator& operator[](std::size_t i) const { return gens_[i]; }
    const std::vector<Generator>& generators() const { return gens_; }
    bool has_partner(std::size_t i) const { return gens_[i].partner != npos; }

    /// Index of the generator with this family and label; throws if absent.
    std::size_t find(Family family, const std::string& label) const;
    std::optional<std::size_t> try_find(Family family, const std::string& label) const;

    /// Scalar s with [u_(m), partner_(n)] = s delta_{m+n,-1}.
    int pairing(std::size_t u) const;

    /// Generators of `a` followed by those of `b`; labels must not collide.
    static GeneratorTable tensor(const GeneratorTable& a, const GeneratorTable& b);

    bool operator==(const GeneratorTable& other) const;

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

private:
    std::size_t push(Generator g);
    std::vector<Generator> gens_;
};

/// A creation symbol d^k u, packed as (generator index << 8) | k. Sorting
/// symbols by this value gives the global order (generator rank, then
/// derivative order).
using Symbol = std::uint32_t;
constexpr Symbol make_symbol(std::size_t gen, unsigned k) { return static_cast<Symbol>((gen << 8) | k); }
constexpr std::size_t symbol_gen(Symbol s) { return s >> 8; }
constexpr unsigned symbol_order(Symbol s) { return s & 0xffu; }
constexpr unsigned kMaxDerivative = 255;

/// Canonical normally ordered monomial: symbols sorted ascending; even
/// symbols may repeat, odd symbols appear at most once. The empty
/// monomial is the vacuum.
struct Monomial {
    std::vector<Symbol> symbols;

    bool empty() const { return symbols.empty(); }
    auto operator<=>(const Monomial&) const = default;
    bool operator==(const Monomial&) const = default;
};

struct MonomialHash {
    std::size_t operator()(const Monomial& m) const noexcept {
        std::size_t h = 1469598103934665603ull;
        for (Symbol s : m.symbols) {
            h ^= s;
            h *= 1099511628211ull;
        }
        return h;
    }
};

struct Bidegree {
    int degree = 0;
    int weight = 0;
    int charge = 0;
    auto operator<=>(const Bidegree&) const = default;
};

Bidegree bidegree(const GeneratorTable& table, const Monomial& m);
bool is_odd(const GeneratorTable& table, const Monomial& m);

/// Brings an arbitrary symbol sequence into canonical order with the Koszul
/// sign. Returns nullopt when an odd symbol repeats (the product is zero).
std::optional<std::pair<Monomial, int>> canonicalize(const GeneratorTable& table, std::vector<Symbol> raw);

/// Sparse exact linear combination of monomials. Never stores zeros.
class State {
public:
    State() = default;
    static State vacuum() { return State(Monomial{}, 1); }
    State(Monomial m, Rational c) { add(std::move(m), c); }

    void add(const Monomial& m, const Rational& c);
    void add(const State& other, const Rational& scale = 1);

    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    const std::map<Monomial, Rational>& terms() const { return terms_; }
    Rational coefficient(const Monomial& m) const;

    State operator+(const State& o) const;
    State operator-(const State& o) const;
    State operator-() const;
    State& operator+=(const State& o);
    State& operator-=(const State& o);
    friend State operator*(const Rational& s, const State& x);
    bool operator==(const State& o) const { return terms_ == o.terms_; }

private:
    std::map<Monomial, Rational> terms_;
};

/// (degree, weight, charge) of a homogeneous state; nullopt if the state is
/// zero or inhomogeneous.
std::optional<Bidegree> homogeneous_bidegree(const GeneratorTable& table, const State& s);

/// Product :a b: of two monomials with the Koszul sign (free generators
/// supercommute, so this is the normally ordered product of the states).
std::optional<std::pair<Monomial, int>> multiply(const GeneratorTable& table, const Monomial& a, const Monomial& b);
State multiply(const GeneratorTable& table, const State& a, const State& b);

/// Single-symbol state d^k u.
State symbol_state(std::size_t gen, unsigned k = 0);

constexpr std::size_t kDefaultBasisBudget = 2'000'000;

/// Canonical monomials of degree p, weight n and charge `charge`, sorted
/// ascending. Returns an empty list for n < 0. Throws TruncationOverflow
/// when more than `budget` monomials would be produced.
std::vector<Monomial> enumerate_basis(const GeneratorTable& table, int p, int n, int charge = 0,
                                      std::size_t budget = kDefaultBasisBudget);

/// Thread-safe memo of enumerate_basis; each piece is computed once.
class BasisCache {
public:
    explicit BasisCache(const GeneratorTable& table, std::size_t budget = kDefaultBasisBudget)
        : table_(&table), budget_(budget) {}

    std::shared_ptr<const std::vector<Monomial>> get(int p, int n, int charge = 0);

private:
    struct Entry {
        std::once_flag once;
        std::shared_ptr<const std::vector<Monomial>> basis;
    };
    const GeneratorTable* table_;
    std::size_t budget_;
    std::mutex mutex_;
    std::map<std::tuple<int, int, int>, std::shared_ptr<Entry>> entries_;
};

// Text syntax (see README): a symbol is [d<k>]<letter>{<label>} with letter
// B (beta), g (gamma), b, c; a monomial is a space-separated symbol list,
// the vacuum is "1"; a state is a signed sum of "[coeff] monomial" terms,
// e.g. "2 B{e} c{e'} - 1/2 g{h'} + 1".
std::string to_text(const GeneratorTable& table, const Monomial& m);
std::string to_text(const GeneratorTable& table, const State& s);
State parse_state(const GeneratorTable& table, const std::string& text);

}  // namespace chiral
