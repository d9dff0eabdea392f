#include "chiral/series.hpp"

#include "chiral/error.hpp"

#include <algorithm>
#include <sstream>

namespace chiral {

CharacterSeries CharacterSeries::constant(const Rational& c, int z_max, int q_max) {
    return monomial(c, 0, 0, z_max, q_max);
}

CharacterSeries CharacterSeries::monomial(const Rational& c, int p, int n, int z_max, int q_max) {
    CharacterSeries s(z_max, q_max);
    s.add(p, n, c);
    return s;
}

Rational CharacterSeries::coefficient(int p, int n) const {
    auto it = terms_.find({n, p});
    return it == terms_.end() ? Rational(0) : it->second;
}

void CharacterSeries::set(int p, int n, const Rational& c) {
    if (p > z_max_ || n > q_max_) return;
    if (c == 0)
        terms_.erase({n, p});
    else
        terms_[{n, p}] = c;
}

void CharacterSeries::add(int p, int n, const Rational& c) { set(p, n, coefficient(p, n) + c); }

CharacterSeries CharacterSeries::truncated(int z_max, int q_max) const {
    CharacterSeries out(std::min(z_max, z_max_), std::min(q_max, q_max_));
    for (const auto& [k, c] : terms_) out.set(k.second, k.first, c);
    return out;
}

CharacterSeries CharacterSeries::positive_weight() const {
    CharacterSeries out(z_max_, q_max_);
    for (const auto& [k, c] : terms_)
        if (k.first > 0) out.set(k.second, k.first, c);
    return out;
}

CharacterSeries CharacterSeries::weight_zero() const {
    CharacterSeries out(z_max_, q_max_);
    for (const auto& [k, c] : terms_)
        if (k.first == 0) out.set(k.second, k.first, c);
    return out;
}

CharacterSeries CharacterSeries::operator+(const CharacterSeries& o) const {
    CharacterSeries out = truncated(o.z_max_, o.q_max_);
    for (const auto& [k, c] : o.terms_) out.add(k.second, k.first, c);
    return out;
}

CharacterSeries CharacterSeries::operator-(const CharacterSeries& o) const { return *this + Rational(-1) * o; }

CharacterSeries CharacterSeries::operator*(const CharacterSeries& o) const {
    CharacterSeries out(std::min(z_max_, o.z_max_), std::min(q_max_, o.q_max_));
    for (const auto& [ka, a] : terms_) {
        if (ka.second < 0 || ka.first < 0) throw ConfigError("series product needs nonnegative exponents");
        for (const auto& [kb, b] : o.terms_) {
            if (kb.second < 0 || kb.first < 0) throw ConfigError("series product needs nonnegative exponents");
            out.add(ka.second + kb.second, ka.first + kb.first, a * b);
        }
    }
    return out;
}

CharacterSeries operator*(const Rational& s, const CharacterSeries& x) {
    CharacterSeries out(x.z_max_, x.q_max_);
    if (s == 0) return out;
    for (const auto& [k, c] : x.terms_) out.set(k.second, k.first, s * c);
    return out;
}

bool CharacterSeries::has_nonnegative_integer_coefficients() const {
    for (const auto& [k, c] : terms_)
        if (c < 0 || c.get_den() != 1) return false;
    return true;
}

std::string CharacterSeries::to_text() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : terms_) {
        const auto [n, p] = k;
        Rational mag = abs(c);
        if (first)
            os << (c < 0 ? "-" : "");
        else
            os << (c < 0 ? " - " : " + ");
        first = false;
        bool unit = mag == 1 && (p != 0 || n != 0);
        if (!unit) os << mag.get_str();
        if (p != 0) os << (unit ? "" : " ") << "z" << (p != 1 ? "^" + std::to_string(p) : "");
        if (n != 0) os << (unit && p == 0 ? "" : " ") << "q" << (n != 1 ? "^" + std::to_string(n) : "");
    }
    if (first) os << "0";
    os << " + O(z^" << z_max_ + 1 << ", q^" << q_max_ + 1 << ")";
    return os.str();
}

nlohmann::json CharacterSeries::to_json() const {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [k, c] : terms_) terms.push_back({{"p", k.second}, {"n", k.first}, {"coeff", c.get_str()}});
    return {{"trunc", {{"zmax", z_max_}, {"qmax", q_max_}}}, {"terms", terms}, {"text", to_text()}};
}

std::string CharacterSeries::to_csv() const {
    std::ostringstream os;
    os << "p,n,coeff\n";
    for (const auto& [k, c] : terms_) os << k.second << "," << k.first << "," << c.get_str() << "\n";
    return os.str();
}

CharacterSeries inverse(const CharacterSeries& s) {
    if (s.coefficient(0, 0) != 1) throw ConfigError("series inverse needs constant term 1");
    CharacterSeries out(s.z_max(), s.q_max());
    out.set(0, 0, 1);
    // out = 1 - (s - 1) out, solved in increasing (n, p)
    for (int n = 0; n <= s.q_max(); ++n)
        for (int p = 0; p <= s.z_max(); ++p) {
            if (n == 0 && p == 0) continue;
            Rational acc = 0;
            for (const auto& [k, c] : s.terms()) {
                const auto [kn, kp] = k;
                if ((kn == 0 && kp == 0) || kn > n || kp > p) continue;
                acc -= c * out.coefficient(p - kp, n - kn);
            }
            out.set(p, n, acc);
        }
    return out;
}

CharacterSeries torus_character(int rank, int z_max, int q_max) {
    CharacterSeries out = CharacterSeries::constant(1, z_max, q_max);
    for (int k = 0; k <= q_max; ++k) {
        CharacterSeries factor = CharacterSeries::constant(1, z_max, q_max);
        factor.add(2, k, -1);
        CharacterSeries inv = inverse(factor);
        for (int r = 0; r < rank; ++r) out = out * inv;
    }
    return out;
}

CharacterSeries polynomial_ring(int degree, int z_max, int q_max) {
    CharacterSeries f = CharacterSeries::constant(1, z_max, q_max);
    f.add(degree, 0, -1);
    return inverse(f);
}

CharacterSeries poincare_polynomial(const std::vector<Rational>& betti, int z_max, int q_max) {
    CharacterSeries out(z_max, q_max);
    for (std::size_t j = 0; j < betti.size(); ++j) out.add(static_cast<int>(j), 0, betti[j]);
    return out;
}

SeriesComparison compare(const CharacterSeries& a, const CharacterSeries& b) {
    SeriesComparison r;
    const int zm = std::min(a.z_max(), b.z_max()), qm = std::min(a.q_max(), b.q_max());
    std::map<std::pair<int, int>, bool> keys;
    for (const auto& [k, c] : a.terms()) keys[k] = true;
    for (const auto& [k, c] : b.terms()) keys[k] = true;
    for (const auto& [k, unused] : keys) {
        const auto [n, p] = k;
        if (p > zm || n > qm) continue;
        Rational x = a.coefficient(p, n), y = b.coefficient(p, n);
        if (x != y) {
            r.match = false;
            r.mismatches.push_back("p=" + std::to_string(p) + ",n=" + std::to_string(n) + ": " + x.get_str() +
                                   " vs " + y.get_str());
        }
    }
    return r;
}

}  // namespace chiral
