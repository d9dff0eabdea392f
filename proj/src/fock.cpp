#include "chiral/fock.hpp"

#include "chiral/error.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace chiral {

const char* family_letter(Family f) {
    switch (f) {
        case Family::Beta: return "B";
        case Family::Gamma: return "g";
        case Family::B: return "b";
        case Family::C: return "c";
    }
    return "?";
}

std::size_t GeneratorTable::push(Generator g) {
    for (const auto& existing : gens_)
        if (existing.family == g.family && existing.label == g.label)
            throw ConfigError(std::string("duplicate generator ") + family_letter(g.family) + "{" + g.label + "}");
    gens_.push_back(std::move(g));
    return gens_.size() - 1;
}

void GeneratorTable::add_system(const std::vector<std::string>& labels, const std::vector<std::string>& dual_labels,
                                int beta_degree, int gamma_degree, int b_degree, int c_degree, int charge) {
    const std::size_t n = labels.size();
    const std::size_t base = gens_.size();
    // Block layout: beta[0..n), gamma[n..2n), b[2n..3n), c[3n..4n).
    for (std::size_t i = 0; i < n; ++i) push({labels[i], Family::Beta, false, beta_degree, 1, -charge, base + n + i});
    for (std::size_t i = 0; i < n; ++i) push({dual_labels[i], Family::Gamma, false, gamma_degree, 0, charge, base + i});
    for (std::size_t i = 0; i < n; ++i) push({labels[i], Family::B, true, b_degree, 1, -charge, base + 3 * n + i});
    for (std::size_t i = 0; i < n; ++i) push({dual_labels[i], Family::C, true, c_degree, 0, charge, base + 2 * n + i});
}

void GeneratorTable::add_gamma_c(const std::vector<std::string>& dual_labels, int gamma_degree, int c_degree) {
    for (const auto& l : dual_labels) push({l, Family::Gamma, false, gamma_degree, 0, 0, npos});
    for (const auto& l : dual_labels) push({l, Family::C, true, c_degree, 0, 0, npos});
}

std::optional<std::size_t> GeneratorTable::try_find(Family family, const std::string& label) const {
    for (std::size_t i = 0; i < gens_.size(); ++i)
        if (gens_[i].family == family && gens_[i].label == label) return i;
    return std::nullopt;
}

std::size_t GeneratorTable::find(Family family, const std::string& label) const {
    auto i = try_find(family, label);
    if (!i) throw ParseError(std::string("unknown generator ") + family_letter(family) + "{" + label + "}");
    return *i;
}

int GeneratorTable::pairing(std::size_t u) const { return gens_[u].family == Family::Gamma ? -1 : 1; }

GeneratorTable GeneratorTable::tensor(const GeneratorTable& a, const GeneratorTable& b) {
    GeneratorTable out = a;
    const std::size_t shift = a.size();
    for (Generator g : b.gens_) {
        if (g.partner != npos) g.partner += shift;
        out.push(std::move(g));
    }
    return out;
}

bool GeneratorTable::operator==(const GeneratorTable& other) const {
    if (gens_.size() != other.gens_.size()) return false;
    for (std::size_t i = 0; i < gens_.size(); ++i) {
        const auto &x = gens_[i], &y = other.gens_[i];
        if (x.label != y.label || x.family != y.family || x.degree != y.degree || x.weight != y.weight ||
            x.charge != y.charge || x.partner != y.partner)
            return false;
    }
    return true;
}

Bidegree bidegree(const GeneratorTable& table, const Monomial& m) {
    Bidegree b;
    for (Symbol s : m.symbols) {
        const auto& g = table[symbol_gen(s)];
        b.degree += g.degree;
        b.weight += g.weight + static_cast<int>(symbol_order(s));
        b.charge += g.charge;
    }
    return b;
}

bool is_odd(const GeneratorTable& table, const Monomial& m) {
    bool odd = false;
    for (Symbol s : m.symbols) odd ^= table[symbol_gen(s)].odd;
    return odd;
}

std::optional<std::pair<Monomial, int>> canonicalize(const GeneratorTable& table, std::vector<Symbol> raw) {
    int sign = 1;
    // Insertion sort; every transposition of two odd symbols flips the sign.
    for (std::size_t i = 1; i < raw.size(); ++i) {
        std::size_t j = i;
        while (j > 0 && raw[j - 1] > raw[j]) {
            if (table[symbol_gen(raw[j - 1])].odd && table[symbol_gen(raw[j])].odd) sign = -sign;
            std::swap(raw[j - 1], raw[j]);
            --j;
        }
    }
    for (std::size_t i = 1; i < raw.size(); ++i)
        if (raw[i] == raw[i - 1] && table[symbol_gen(raw[i])].odd) return std::nullopt;
    return std::make_pair(Monomial{std::move(raw)}, sign);
}

std::optional<std::pair<Monomial, int>> multiply(const GeneratorTable& table, const Monomial& a, const Monomial& b) {
    Monomial out;
    out.symbols.reserve(a.symbols.size() + b.symbols.size());
    int odd_left_in_a = 0;
    for (Symbol s : a.symbols) odd_left_in_a += table[symbol_gen(s)].odd ? 1 : 0;
    int sign = 1;
    std::size_t i = 0, j = 0;
    while (i < a.symbols.size() || j < b.symbols.size()) {
        bool take_b = i == a.symbols.size() || (j < b.symbols.size() && b.symbols[j] < a.symbols[i]);
        if (take_b) {
            Symbol s = b.symbols[j++];
            if (table[symbol_gen(s)].odd) {
                if (odd_left_in_a % 2) sign = -sign;
                if (!out.symbols.empty() && out.symbols.back() == s) return std::nullopt;
                if (i < a.symbols.size() && a.symbols[i] == s) return std::nullopt;
            }
            out.symbols.push_back(s);
        } else {
            Symbol s = a.symbols[i++];
            if (table[symbol_gen(s)].odd) {
                --odd_left_in_a;
                if (!out.symbols.empty() && out.symbols.back() == s) return std::nullopt;
            }
            out.symbols.push_back(s);
        }
    }
    return std::make_pair(std::move(out), sign);
}

State multiply(const GeneratorTable& table, const State& a, const State& b) {
    State out;
    for (const auto& [ma, ca] : a.terms())
        for (const auto& [mb, cb] : b.terms()) {
            auto prod = multiply(table, ma, mb);
            if (!prod) continue;
            out.add(prod->first, prod->second * ca * cb);
        }
    return out;
}

State symbol_state(std::size_t gen, unsigned k) { return State(Monomial{{make_symbol(gen, k)}}, 1); }

void State::add(const Monomial& m, const Rational& c) {
    if (sgn(c) == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (sgn(it->second) == 0) terms_.erase(it);
    }
}

void State::add(const State& other, const Rational& scale) {
    if (sgn(scale) == 0) return;
    for (const auto& [m, c] : other.terms_) add(m, c * scale);
}

Rational State::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

State State::operator+(const State& o) const {
    State r = *this;
    r.add(o);
    return r;
}

State State::operator-(const State& o) const {
    State r = *this;
    r.add(o, -1);
    return r;
}

State State::operator-() const {
    State r;
    r.add(*this, -1);
    return r;
}

State& State::operator+=(const State& o) {
    add(o);
    return *this;
}

State& State::operator-=(const State& o) {
    add(o, -1);
    return *this;
}

State operator*(const Rational& s, const State& x) {
    State r;
    r.add(x, s);
    return r;
}

std::optional<Bidegree> homogeneous_bidegree(const GeneratorTable& table, const State& s) {
    if (s.is_zero()) return std::nullopt;
    std::optional<Bidegree> result;
    for (const auto& [m, c] : s.terms()) {
        Bidegree b = bidegree(table, m);
        if (result && *result != b) return std::nullopt;
        result = b;
    }
    return result;
}

namespace {

struct Enumerator {
    const GeneratorTable& table;
    std::size_t budget;
    std::vector<Symbol> positive;  // symbols of weight >= 1
    std::vector<Symbol> zero;      // weight-0 symbols
    std::vector<Symbol> current;
    std::vector<Monomial> out;

    int sym_weight(Symbol s) const { return table[symbol_gen(s)].weight + static_cast<int>(symbol_order(s)); }

    void emit() {
        if (out.size() >= budget)
            throw TruncationOverflow("piece exceeds the basis budget of " + std::to_string(budget) + " monomials");
        Monomial m{current};
        std::sort(m.symbols.begin(), m.symbols.end());
        out.push_back(std::move(m));
    }

    void zero_phase(std::size_t idx, int degree_left, int charge_left) {
        if (idx == zero.size()) {
            if (degree_left == 0 && charge_left == 0) emit();
            return;
        }
        const auto& g = table[symbol_gen(zero[idx])];
        int max_mult = g.odd ? 1 : 1 << 30;
        if (g.degree > 0) max_mult = std::min(max_mult, degree_left / g.degree);
        if (g.charge > 0) max_mult = std::min(max_mult, charge_left / g.charge);
        for (int mult = 0; mult <= max_mult; ++mult) {
            int d = degree_left - mult * g.degree, c = charge_left - mult * g.charge;
            if (d < 0 || c < 0) break;
            for (int r = 0; r < mult; ++r) current.push_back(zero[idx]);
            zero_phase(idx + 1, d, c);
            current.resize(current.size() - static_cast<std::size_t>(mult));
        }
    }

    void positive_phase(std::size_t idx, int weight_left, int degree_left, int charge_left) {
        if (weight_left == 0) {
            if (degree_left >= 0 && charge_left >= 0) zero_phase(0, degree_left, charge_left);
            return;
        }
        if (idx == positive.size()) return;
        const Symbol s = positive[idx];
        const auto& g = table[symbol_gen(s)];
        const int w = sym_weight(s);
        const int max_mult = g.odd ? 1 : weight_left / w;
        for (int mult = 0; mult <= max_mult && mult * w <= weight_left; ++mult) {
            for (int r = 0; r < mult; ++r) current.push_back(s);
            positive_phase(idx + 1, weight_left - mult * w, degree_left - mult * g.degree, charge_left - mult * g.charge);
            current.resize(current.size() - static_cast<std::size_t>(mult));
        }
    }
};

}  // namespace

std::vector<Monomial> enumerate_basis(const GeneratorTable& table, int p, int n, int charge, std::size_t budget) {
    if (n < 0) return {};
    Enumerator e{table, budget, {}, {}, {}, {}};
    for (std::size_t g = 0; g < table.size(); ++g) {
        const auto& gen = table[g];
        if (gen.weight == 0) {
            if (gen.degree < 0 || gen.charge < 0 || (gen.degree == 0 && gen.charge == 0))
                throw TruncationOverflow("generator " + std::string(family_letter(gen.family)) + "{" + gen.label +
                                         "} makes (degree, weight, charge) pieces infinite");
            e.zero.push_back(make_symbol(g, 0));
        }
        for (int k = (gen.weight == 0 ? 1 : 0); gen.weight + k <= n; ++k)
            e.positive.push_back(make_symbol(g, static_cast<unsigned>(k)));
    }
    e.positive_phase(0, n, p, charge);
    std::sort(e.out.begin(), e.out.end());
    return std::move(e.out);
}

std::shared_ptr<const std::vector<Monomial>> BasisCache::get(int p, int n, int charge) {
    std::shared_ptr<Entry> entry;
    {
        std::lock_guard lock(mutex_);
        auto& slot = entries_[{p, n, charge}];
        if (!slot) slot = std::make_shared<Entry>();
        entry = slot;
    }
    std::call_once(entry->once, [&] {
        entry->basis = std::make_shared<const std::vector<Monomial>>(enumerate_basis(*table_, p, n, charge, budget_));
    });
    return entry->basis;
}

std::string to_text(const GeneratorTable& table, const Monomial& m) {
    if (m.empty()) return "1";
    std::string out;
    for (Symbol s : m.symbols) {
        if (!out.empty()) out += ' ';
        const auto& g = table[symbol_gen(s)];
        if (symbol_order(s) > 0) out += "d" + std::to_string(symbol_order(s));
        out += family_letter(g.family);
        out += "{" + g.label + "}";
    }
    return out;
}

std::string to_text(const GeneratorTable& table, const State& s) {
    if (s.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : s.terms()) {
        Rational mag = abs(c);
        if (first) out += sgn(c) < 0 ? "-" : "";
        else out += sgn(c) < 0 ? " - " : " + ";
        first = false;
        if (m.empty()) {
            out += mag.get_str();
        } else {
            if (mag != 1) out += mag.get_str() + " ";
            out += to_text(table, m);
        }
    }
    return out;
}

namespace {

bool looks_rational(const std::string& tok) {
    if (tok.empty()) return false;
    for (char ch : tok)
        if (!std::isdigit(static_cast<unsigned char>(ch)) && ch != '/') return false;
    return true;
}

Symbol parse_symbol(const GeneratorTable& table, const std::string& tok) {
    std::size_t pos = 0;
    unsigned k = 0;
    if (tok.size() > 1 && tok[0] == 'd' && std::isdigit(static_cast<unsigned char>(tok[1]))) {
        pos = 1;
        while (pos < tok.size() && std::isdigit(static_cast<unsigned char>(tok[pos]))) k = k * 10 + (tok[pos++] - '0');
        if (k > kMaxDerivative) throw ParseError("derivative order too large in '" + tok + "'");
    }
    if (pos >= tok.size()) throw ParseError("malformed symbol '" + tok + "'");
    Family fam;
    switch (tok[pos]) {
        case 'B': fam = Family::Beta; break;
        case 'g': fam = Family::Gamma; break;
        case 'b': fam = Family::B; break;
        case 'c': fam = Family::C; break;
        default: throw ParseError("unknown family letter in '" + tok + "'");
    }
    ++pos;
    if (pos >= tok.size() || tok[pos] != '{' || tok.back() != '}') throw ParseError("malformed symbol '" + tok + "'");
    std::string label = tok.substr(pos + 1, tok.size() - pos - 2);
    return make_symbol(table.find(fam, label), k);
}

}  // namespace

State parse_state(const GeneratorTable& table, const std::string& text) {
    std::istringstream in(text);
    std::vector<std::string> toks;
    for (std::string t; in >> t;) {
        if (t.size() > 1 && (t[0] == '-' || t[0] == '+')) {
            toks.push_back(t.substr(0, 1));
            t.erase(0, 1);
        }
        toks.push_back(t);
    }
    State out;
    std::size_t i = 0;
    if (toks.size() == 1 && toks[0] == "0") return out;
    while (i < toks.size()) {
        Rational coeff = 1;
        if (toks[i] == "+" || toks[i] == "-") {
            if (toks[i] == "-") coeff = -1;
            ++i;
        } else if (i != 0) {
            throw ParseError("expected '+' or '-' between terms in '" + text + "'");
        }
        bool has_coeff = false;
        if (i < toks.size() && looks_rational(toks[i])) {
            coeff *= parse_rational(toks[i]);
            has_coeff = true;
            ++i;
        }
        std::vector<Symbol> raw;
        while (i < toks.size() && toks[i] != "+" && toks[i] != "-") raw.push_back(parse_symbol(table, toks[i++]));
        if (raw.empty() && !has_coeff) throw ParseError("empty term in '" + text + "'");
        auto canon = canonicalize(table, std::move(raw));
        if (canon) out.add(canon->first, coeff * canon->second);
    }
    return out;
}

}  // namespace chiral
