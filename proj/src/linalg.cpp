#include "chiral/linalg.hpp"

#include "chiral/error.hpp"

#include <algorithm>

namespace chiral {

namespace {

// x*v + y*r, merged by index.
SparseVector combine(const Integer& x, const SparseVector& v, const Integer& y, const SparseVector& r) {
    SparseVector out;
    out.reserve(v.size() + r.size());
    std::size_t i = 0, j = 0;
    Integer t;
    while (i < v.size() || j < r.size()) {
        if (j == r.size() || (i < v.size() && v[i].first < r[j].first)) {
            out.emplace_back(v[i].first, x * v[i].second);
            ++i;
        } else if (i == v.size() || r[j].first < v[i].first) {
            out.emplace_back(r[j].first, y * r[j].second);
            ++j;
        } else {
            t = x * v[i].second + y * r[j].second;
            if (t != 0) out.emplace_back(v[i].first, t);
            ++i;
            ++j;
        }
    }
    return out;
}

void divide_content(SparseVector& v) {
    if (v.empty()) return;
    Integer g = abs(v.front().second);
    for (std::size_t i = 1; i < v.size() && g != 1; ++i) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v[i].second.get_mpz_t());
    bool negate = v.front().second < 0;
    if (g == 1 && !negate) return;
    if (negate) g = -g;
    for (auto& [idx, c] : v) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
}

}  // namespace

Rational make_primitive(const std::vector<std::pair<std::uint64_t, Rational>>& in, SparseVector& out) {
    out.clear();
    if (in.empty()) return 1;
    Integer l = 1;
    for (const auto& [idx, c] : in) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    out.reserve(in.size());
    for (const auto& [idx, c] : in) {
        Integer v = c.get_num() * (l / c.get_den());
        out.emplace_back(idx, std::move(v));
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    Integer g = abs(out.front().second);
    for (std::size_t i = 1; i < out.size(); ++i) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), out[i].second.get_mpz_t());
    if (out.front().second < 0) g = -g;
    for (auto& [idx, c] : out) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
    return Rational(g) / Rational(l);
}

bool Echelon::reduce(SparseVector& v) const {
    Integer g, a, b;
    while (!v.empty()) {
        auto it = pivot_.find(v.front().first);
        if (it == pivot_.end()) {
            divide_content(v);
            return false;
        }
        const SparseVector& r = rows_[it->second];
        mpz_gcd(g.get_mpz_t(), v.front().second.get_mpz_t(), r.front().second.get_mpz_t());
        mpz_divexact(a.get_mpz_t(), r.front().second.get_mpz_t(), g.get_mpz_t());
        mpz_divexact(b.get_mpz_t(), v.front().second.get_mpz_t(), g.get_mpz_t());
        v = combine(a, v, -b, r);
        divide_content(v);
    }
    return true;
}

bool Echelon::insert(SparseVector v) {
    if (reduce(v)) return false;
    pivot_.emplace(v.front().first, rows_.size());
    rows_.push_back(std::move(v));
    return true;
}

std::vector<SparseVector> kernel(const std::vector<SparseVector>& images) {
    Echelon e;
    std::vector<SparseVector> out;
    for (std::size_t j = 0; j < images.size(); ++j) {
        SparseVector v = images[j];
        v.emplace_back(kTrackBase + j, 1);
        if (e.reduce(v)) throw std::logic_error("kernel: tracked vector vanished");
        if (v.front().first >= kTrackBase) {
            SparseVector k;
            k.reserve(v.size());
            for (auto& [idx, c] : v) k.emplace_back(idx - kTrackBase, std::move(c));
            out.push_back(std::move(k));
        } else {
            e.insert(std::move(v));
        }
    }
    return out;
}

std::size_t rank(const std::vector<SparseVector>& vectors) {
    Echelon e;
    for (const auto& v : vectors) e.insert(v);
    return e.rank();
}

std::optional<std::vector<std::pair<std::size_t, Rational>>> solve(const std::vector<SparseVector>& images,
                                                                  const SparseVector& target) {
    Echelon e;
    for (std::size_t j = 0; j < images.size(); ++j) {
        SparseVector v = images[j];
        v.emplace_back(kTrackBase + j, 1);
        if (!e.reduce(v) && v.front().first < kTrackBase) e.insert(std::move(v));
    }
    const std::uint64_t special = kTrackBase + images.size();
    SparseVector v = target;
    v.emplace_back(special, 1);
    e.reduce(v);
    if (v.empty() || v.front().first < kTrackBase) return std::nullopt;
    // lambda * target + sum t_j images_j = 0
    Integer lambda = 0;
    for (const auto& [idx, c] : v)
        if (idx == special) lambda = c;
    if (lambda == 0) return std::nullopt;
    std::vector<std::pair<std::size_t, Rational>> x;
    for (const auto& [idx, c] : v)
        if (idx != special) x.emplace_back(static_cast<std::size_t>(idx - kTrackBase), Rational(-c, lambda));
    for (auto& [j, q] : x) q.canonicalize();
    return x;
}

std::size_t modular_rank(const std::vector<SparseVector>& vectors, std::uint32_t prime) {
    using Row = std::vector<std::pair<std::uint64_t, std::uint64_t>>;
    const std::uint64_t p = prime;
    auto inv = [p](std::uint64_t a) {
        std::uint64_t r = 1, e = p - 2;
        while (e) {
            if (e & 1) r = r * a % p;
            a = a * a % p;
            e >>= 1;
        }
        return r;
    };
    std::vector<Row> rows;
    std::unordered_map<std::uint64_t, std::size_t> pivot;
    for (const auto& v : vectors) {
        Row r;
        for (const auto& [idx, c] : v) {
            Integer m = c % Integer(prime);
            if (m < 0) m += prime;
            if (m != 0) r.emplace_back(idx, m.get_ui());
        }
        while (!r.empty()) {
            auto it = pivot.find(r.front().first);
            if (it == pivot.end()) break;
            const Row& q = rows[it->second];  // monic
            std::uint64_t f = r.front().second;
            Row out;
            std::size_t i = 0, j = 0;
            while (i < r.size() || j < q.size()) {
                if (j == q.size() || (i < r.size() && r[i].first < q[j].first)) {
                    out.push_back(r[i++]);
                } else if (i == r.size() || q[j].first < r[i].first) {
                    out.emplace_back(q[j].first, (p - f * q[j].second % p) % p);
                    ++j;
                } else {
                    std::uint64_t c = (r[i].second + p - f * q[j].second % p) % p;
                    if (c) out.emplace_back(r[i].first, c);
                    ++i;
                    ++j;
                }
            }
            r = std::move(out);
        }
        if (r.empty()) continue;
        std::uint64_t s = inv(r.front().second);
        for (auto& [idx, c] : r) c = c * s % p;
        pivot.emplace(r.front().first, rows.size());
        rows.push_back(std::move(r));
    }
    return rows.size();
}

MonomialIndex::MonomialIndex(const std::vector<Monomial>& basis) {
    for (const auto& m : basis) index(m);
}

std::uint64_t MonomialIndex::index(const Monomial& m) {
    auto [it, inserted] = map_.try_emplace(m, monomials_.size());
    if (inserted) monomials_.push_back(m);
    return it->second;
}

std::optional<std::uint64_t> MonomialIndex::find(const Monomial& m) const {
    auto it = map_.find(m);
    if (it == map_.end()) return std::nullopt;
    return it->second;
}

SparseVector coordinates(const State& s, MonomialIndex& index, Rational* factor) {
    std::vector<std::pair<std::uint64_t, Rational>> in;
    in.reserve(s.size());
    for (const auto& [m, c] : s.terms()) in.emplace_back(index.index(m), c);
    SparseVector out;
    Rational f = make_primitive(in, out);
    if (factor) *factor = f;
    return out;
}

State from_coordinates(const SparseVector& v, const MonomialIndex& index) {
    State s;
    for (const auto& [idx, c] : v)
        if (idx < kTrackBase) s.add(index.monomial(idx), Rational(c));
    return s;
}

}  // namespace chiral
