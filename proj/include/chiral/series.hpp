#pragma once

#include "chiral/rational.hpp"

#include <json.hpp>

#include <map>
#include <string>
#include <utility>

namespace chiral {

/// Truncated bivariate series sum c(p,n) z^p q^n. Coefficients are known
/// exactly for p <= z_max and n <= q_max; nothing is stored beyond that.
class CharacterSeries {
public:
    CharacterSeries() = default;
    CharacterSeries(int z_max, int q_max) : z_max_(z_max), q_max_(q_max) {}

    static CharacterSeries constant(const Rational& c, int z_max, int q_max);
    static CharacterSeries monomial(const Rational& c, int p, int n, int z_max, int q_max);

    int z_max() const { return z_max_; }
    int q_max() const { return q_max_; }
    Rational coefficient(int p, int n) const;
    void set(int p, int n, const Rational& c);
    void add(int p, int n, const Rational& c);
    const std::map<std::pair<int, int>, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    /// Same series with the tighter truncation.
    CharacterSeries truncated(int z_max, int q_max) const;
    /// Terms with n > 0, and the q^0 layer.
    CharacterSeries positive_weight() const;
    CharacterSeries weight_zero() const;

    CharacterSeries operator+(const CharacterSeries& o) const;
    CharacterSeries operator-(const CharacterSeries& o) const;
    /// Product truncated to the smaller of the operand truncations.
    /// Requires nonnegative exponents.
    CharacterSeries operator*(const CharacterSeries& o) const;
    friend CharacterSeries operator*(const Rational& s, const CharacterSeries& x);
    /// Exact equality of coefficients and truncation.
    bool operator==(const CharacterSeries& o) const = default;

    bool has_nonnegative_integer_coefficients() const;

    /// e.g. "1 + z^2 + z^2 q + O(z^7, q^3)".
    std::string to_text() const;
    nlohmann::json to_json() const;
    /// Columns p,n,coeff.
    std::string to_csv() const;

private:
    int z_max_ = 0;
    int q_max_ = 0;
    std::map<std::pair<int, int>, Rational> terms_;  // key (n, p): weight-major order
};

/// Inverse of a series with constant term 1.
CharacterSeries inverse(const CharacterSeries& s);

/// prod_{k >= 0} (1 - z^2 q^k)^{-rank}: the character of a rank-r torus.
CharacterSeries torus_character(int rank, int z_max, int q_max);
/// 1 / (1 - z^degree), the Poincare series of a polynomial ring on one
/// generator of that degree.
CharacterSeries polynomial_ring(int degree, int z_max, int q_max);
/// Sum b_j z^j (weight zero).
CharacterSeries poincare_polynomial(const std::vector<Rational>& betti, int z_max, int q_max);

struct SeriesComparison {
    bool match = true;
    std::vector<std::string> mismatches;  // "p=..,n=..: a vs b"
};

/// Coefficientwise comparison on the overlapping truncation.
SeriesComparison compare(const CharacterSeries& a, const CharacterSeries& b);

}  // namespace chiral
