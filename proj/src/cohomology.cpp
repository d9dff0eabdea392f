#include "chiral/cohomology.hpp"

#include "chiral/error.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <sstream>
#include <thread>

namespace chiral {

std::size_t CohomologyTable::dim(int p, int n) const {
    for (const auto& e : entries)
        if (e.p == p && e.n == n) return e.dim;
    return 0;
}

CharacterSeries character(const CohomologyTable& table) {
    CharacterSeries s(table.p_max, table.n_max);
    for (const auto& e : table.entries)
        if (e.dim != 0) s.add(e.p, e.n, Rational(static_cast<long>(e.dim)));
    return s;
}

nlohmann::json CohomologyTable::to_json() const {
    nlohmann::json entries_json = nlohmann::json::array();
    for (const auto& e : entries) entries_json.push_back({{"p", e.p}, {"n", e.n}, {"dim", e.dim}});
    return {{"complex", complex},
            {"trunc", {{"pmin", p_min}, {"pmax", p_max}, {"nmax", n_max}}},
            {"entries", entries_json},
            {"series", character(*this).to_text()}};
}

std::string CohomologyTable::to_csv() const {
    std::ostringstream os;
    os << "p,n,dim\n";
    for (const auto& e : entries) os << e.p << "," << e.n << "," << e.dim << "\n";
    return os.str();
}

unsigned resolve_threads(unsigned requested) {
    if (requested != 0) return requested;
    if (const char* env = std::getenv("CHIRAL_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
        throw ConfigError(std::string("CHIRAL_THREADS must be a positive integer, got '") + env + "'");
    }
    return 1;
}

namespace {

// Runs fn(i) for i < count on `threads` workers.
template <class Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
    if (threads <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error) error = std::current_exception();
                }
            }
        });
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

constexpr std::uint32_t kPrimes[] = {2147483629u, 2147483587u};

}  // namespace

CohomologyEngine::CohomologyEngine(const ComplexDescriptor& complex, EngineOptions options)
    : complex_(&complex), options_(options) {
    options_.threads = resolve_threads(options_.threads);
    const auto& t = complex.table;
    weil_c_.assign(t.size(), false);
    if (complex.frame)
        for (std::size_t g : complex.frame->weil_c) weil_c_[g] = true;
    for (std::size_t i = 0; i < complex.lie.size(); ++i) {
        std::vector<Rational> w(t.size());
        bool diagonal = true;
        for (std::size_t g = 0; g < t.size() && diagonal; ++g) {
            State u = symbol_state(g);
            State image = complex.lie_mode(i, 0, u);
            if (image.is_zero()) continue;
            w[g] = image.coefficient(u.terms().begin()->first);
            diagonal = image == w[g] * u;
        }
        if (diagonal) {
            torus_.push_back(i);
            torus_weight_.push_back(std::move(w));
        }
    }
}

std::vector<int> CohomologyEngine::charges(int n) const { return charge_window(complex_->table, n, options_.charge_max); }

bool CohomologyEngine::candidate_ok(const Monomial& m) const {
    for (Symbol s : m.symbols)
        if (weil_c_[symbol_gen(s)]) return false;
    for (const auto& w : torus_weight_) {
        Rational total = 0;
        for (Symbol s : m.symbols) total += w[symbol_gen(s)];
        if (total != 0) return false;
    }
    return true;
}

std::vector<Monomial> CohomologyEngine::candidates(int p, int n, int charge) const {
    std::vector<Monomial> out;
    for (auto& m : enumerate_basis(complex_->table, p, n, charge, options_.budget))
        if (candidate_ok(m)) out.push_back(std::move(m));
    return out;
}

State CohomologyEngine::twist(const State& s) const { return complex_->frame_twist(s, -1); }
State CohomologyEngine::untwist(const State& s) const { return complex_->frame_twist(s, 1); }

State CohomologyEngine::untwisted_state(const Piece& piece, const SparseVector& v) const {
    return from_coordinates(v, piece.candidates);
}

void CohomologyEngine::check_rank(const std::vector<SparseVector>& vectors, std::size_t exact) const {
    if (!options_.modular_check) return;
    for (std::uint32_t prime : kPrimes)
        if (modular_rank(vectors, prime) != exact)
            throw std::logic_error("modular rank disagrees with the exact rank (unlucky prime or a bug)");
}

std::shared_ptr<CohomologyEngine::Piece> CohomologyEngine::compute_piece(int p, int n, int charge) const {
    const auto& c = *complex_;
    auto piece = std::make_shared<Piece>();
    auto cands = candidates(p, n, charge);
    piece->candidates = MonomialIndex(cands);

    struct Op {
        bool iota;
        std::size_t i;
        int k;
    };
    std::vector<Op> ops;
    for (std::size_t i = 0; i < c.rank(); ++i)
        for (int k = 0; k <= n; ++k) {
            bool torus = std::find(torus_.begin(), torus_.end(), i) != torus_.end();
            if (!(torus && k == 0)) ops.push_back({false, i, k});
            if (!c.frame) ops.push_back({true, i, k});
        }

    std::vector<MonomialIndex> targets(ops.size());
    std::vector<SparseVector> columns(cands.size());
    std::vector<Rational> factors(cands.size(), 1);
    const Rational one = 1;
    for (std::size_t j = 0; j < cands.size(); ++j) {
        std::vector<std::pair<std::uint64_t, Rational>> col;
        for (std::size_t o = 0; o < ops.size(); ++o) {
            Accumulator acc;
            if (ops[o].iota)
                c.iota_mode(ops[o].i, ops[o].k, cands[j], one, acc);
            else
                c.lie_mode(ops[o].i, ops[o].k, cands[j], one, acc);
            for (auto& [m, q] : acc) {
                if (q == 0) continue;
                if (c.frame && !ops[o].iota) {
                    // L(k) preserves the untwisted frame
                    for (Symbol s : m.symbols)
                        if (weil_c_[symbol_gen(s)])
                            throw BasicNotClosed(c.id + ": L(" + std::to_string(ops[o].k) +
                                                 ") leaves the horizontal frame on '" + to_text(c.table, cands[j]) +
                                                 "'");
                }
                col.emplace_back((static_cast<std::uint64_t>(o) << 40) | targets[o].index(m), q);
            }
        }
        factors[j] = make_primitive(col, columns[j]);
    }
    // Modes above n vanish on weight n.
    if (!cands.empty())
        for (std::size_t i = 0; i < c.rank(); ++i)
            if (!c.lie_mode(i, n + 1, State(cands.front(), 1)).is_zero() ||
                !c.iota_mode(i, n + 1, State(cands.front(), 1)).is_zero())
                throw std::logic_error("mode above the weight acts nontrivially");

    for (const auto& k : kernel(columns)) {
        std::vector<std::pair<std::uint64_t, Rational>> x;
        for (const auto& [j, q] : k) x.emplace_back(j, Rational(q) / factors[j]);
        SparseVector v;
        make_primitive(x, v);
        piece->kernel.push_back(std::move(v));
    }
    if (options_.modular_check) {
        std::size_t r = cands.size() - piece->kernel.size();
        check_rank(columns, r);
    }
    return piece;
}

std::shared_ptr<CohomologyEngine::Piece> CohomologyEngine::piece(int p, int n, int charge) {
    Key key{p, n, charge};
    {
        std::lock_guard lock(mutex_);
        auto it = pieces_.find(key);
        if (it != pieces_.end()) return it->second;
    }
    auto computed = compute_piece(p, n, charge);
    std::lock_guard lock(mutex_);
    return pieces_.try_emplace(key, computed).first->second;
}

CohomologyEngine::Piece& CohomologyEngine::with_images(int p, int n, int charge) {
    auto self = piece(p, n, charge);
    {
        std::lock_guard lock(mutex_);
        if (self->images) return *self;
    }
    auto next = piece(p + 1, n, charge);
    const auto& c = *complex_;
    Echelon basic_next;
    for (const auto& v : next->kernel) basic_next.insert(v);

    std::vector<SparseVector> images;
    std::vector<Rational> factors;
    images.reserve(self->kernel.size());
    for (const auto& v : self->kernel) {
        State y = untwist(c.d(twist(untwisted_state(*self, v))));
        std::vector<std::pair<std::uint64_t, Rational>> coords;
        for (const auto& [m, q] : y.terms()) {
            auto idx = next->candidates.find(m);
            if (!idx)
                throw BasicNotClosed(c.id + ": d leaves the basic subcomplex at (p,n)=(" + std::to_string(p) + "," +
                                     std::to_string(n) + ") via '" + to_text(c.table, m) + "'");
            coords.emplace_back(*idx, q);
        }
        SparseVector w;
        factors.push_back(make_primitive(coords, w));
        SparseVector probe = w;
        if (!basic_next.reduce(probe))
            throw BasicNotClosed(c.id + ": d of a basic vector is not basic at (p,n)=(" + std::to_string(p) + "," +
                                 std::to_string(n) + ")");
        images.push_back(std::move(w));
    }
    std::size_t r = rank(images);
    check_rank(images, r);
    std::lock_guard lock(mutex_);
    if (!self->images) {
        self->images = std::move(images);
        self->image_factors = std::move(factors);
        self->image_rank = r;
    }
    return *self;
}

std::vector<State> CohomologyEngine::basic_basis(int p, int n) {
    std::vector<State> out;
    for (int charge : charges(n)) {
        auto pc = piece(p, n, charge);
        for (const auto& v : pc->kernel) out.push_back(twist(untwisted_state(*pc, v)));
    }
    return out;
}

std::size_t CohomologyEngine::basic_dim(int p, int n, int charge) { return piece(p, n, charge)->kernel.size(); }

CohomologyTable CohomologyEngine::cohomology(int p_min, int p_max, int n_max, bool want_representatives) {
    if (p_min > p_max || n_max < 0) throw ConfigError("empty truncation");
    CohomologyTable table{complex_->id, p_min, p_max, n_max, {}};

    std::vector<Key> keys;
    for (int n = 0; n <= n_max; ++n)
        for (int charge : charges(n))
            for (int p = p_min - 1; p <= p_max + 1; ++p) keys.emplace_back(p, n, charge);
    // Pieces first, then differentials; both phases are order-independent.
    std::vector<std::shared_ptr<Piece>> computed(keys.size());
    parallel_for(keys.size(), options_.threads, [&](std::size_t i) {
        auto [p, n, charge] = keys[i];
        computed[i] = piece(p, n, charge);
    });
    parallel_for(keys.size(), options_.threads, [&](std::size_t i) {
        auto [p, n, charge] = keys[i];
        if (p <= p_max) with_images(p, n, charge);
    });

    for (int n = 0; n <= n_max; ++n)
        for (int p = p_min; p <= p_max; ++p) {
            CohomologyEntry e{p, n, 0, {}};
            for (int charge : charges(n)) {
                auto& cur = with_images(p, n, charge);
                auto& prev = with_images(p - 1, n, charge);
                const std::size_t dim = cur.kernel.size() - *cur.image_rank - *prev.image_rank;
                e.dim += dim;
                if (!want_representatives || dim == 0) continue;
                // cocycles of this piece reduced modulo boundaries
                Echelon boundaries;
                for (const auto& b : *prev.images) boundaries.insert(b);
                std::size_t found = 0;
                for (const auto& z : kernel(*cur.images)) {
                    std::vector<std::pair<std::uint64_t, Rational>> acc_entries;
                    std::map<std::uint64_t, Rational> acc;
                    for (const auto& [j, q] : z) {
                        const Rational s = Rational(q) / cur.image_factors[j];
                        for (const auto& [idx, c] : cur.kernel[j]) acc[idx] += s * Rational(c);
                    }
                    for (auto& [idx, c] : acc)
                        if (c != 0) acc_entries.emplace_back(idx, c);
                    SparseVector v;
                    make_primitive(acc_entries, v);
                    if (boundaries.insert(v)) {
                        e.representatives.push_back(twist(untwisted_state(cur, v)));
                        ++found;
                    }
                }
                if (found != dim) throw std::logic_error("representative count disagrees with the rank count");
            }
            table.entries.push_back(std::move(e));
        }
    return table;
}

bool CohomologyEngine::is_basic_cocycle(const State& s) {
    if (!complex_->d(s).is_zero()) return false;
    State u = untwist(s);
    std::map<int, std::vector<std::pair<std::uint64_t, Rational>>> by_charge;
    std::map<int, Bidegree> degrees;
    for (const auto& [m, q] : u.terms()) {
        if (!candidate_ok(m)) return false;
        Bidegree b = bidegree(complex_->table, m);
        auto pc = piece(b.degree, b.weight, b.charge);
        auto idx = pc->candidates.find(m);
        if (!idx) return false;
        degrees[b.charge] = b;
        by_charge[b.charge].emplace_back(*idx, q);
    }
    for (auto& [charge, coords] : by_charge) {
        const Bidegree b = degrees[charge];
        auto pc = piece(b.degree, b.weight, b.charge);
        Echelon e;
        for (const auto& v : pc->kernel) e.insert(v);
        SparseVector v;
        make_primitive(coords, v);
        if (!e.reduce(v)) return false;
    }
    return true;
}

std::optional<State> CohomologyEngine::primitive(const State& target) {
    const auto& c = *complex_;
    if (target.is_zero()) return State();
    auto bd = homogeneous_bidegree(c.table, target);
    if (!bd) {
        // split by charge; degree and weight must still be homogeneous
        std::map<int, State> parts;
        for (const auto& [m, q] : target.terms()) parts[bidegree(c.table, m).charge].add(m, q);
        State total;
        for (auto& [charge, part] : parts) {
            auto y = primitive(part);
            if (!y) return std::nullopt;
            total += *y;
        }
        return total;
    }
    if (!is_basic_cocycle(target)) throw NotACocycle(c.id + ": target is not a basic cocycle");
    const int p = bd->degree, n = bd->weight, charge = bd->charge;
    auto& prev = with_images(p - 1, n, charge);
    auto cur = piece(p, n, charge);
    std::vector<std::pair<std::uint64_t, Rational>> coords;
    const State frame_target = untwist(target);
    for (const auto& [m, q] : frame_target.terms()) {
        auto idx = cur->candidates.find(m);
        if (!idx) throw NotACocycle(c.id + ": target leaves the horizontal frame");
        coords.emplace_back(*idx, q);
    }
    SparseVector t;
    Rational factor = make_primitive(coords, t);
    auto x = solve(*prev.images, t);
    if (!x) return std::nullopt;
    auto prev_piece = piece(p - 1, n, charge);
    State y;
    for (const auto& [j, q] : *x) y.add(untwisted_state(*prev_piece, prev_piece->kernel[j]), q * factor / prev.image_factors[j]);
    y = twist(y);
    if (!(c.d(y) == target)) throw std::logic_error("primitive does not reproduce the target");
    return y;
}

ChernWeilImage chern_weil(CohomologyEngine& weil, CohomologyEngine& combined, const State& cls) {
    if (!weil.is_basic_cocycle(cls)) throw NotACocycle("class is not a basic cocycle of " + weil.complex().id);
    if (weil.complex().table.size() > combined.complex().table.size())
        throw ConfigError("combined complex must extend the Weil complex");
    for (std::size_t g = 0; g < weil.complex().table.size(); ++g)
        if (weil.complex().table[g].label != combined.complex().table[g].label ||
            weil.complex().table[g].family != combined.complex().table[g].family)
            throw ConfigError("combined complex does not start with the Weil generators");
    ChernWeilImage out;
    out.image = cls;
    if (!combined.is_basic_cocycle(out.image))
        throw NotACocycle("image is not a basic cocycle of " + combined.complex().id);
    out.primitive = combined.primitive(out.image);
    out.exact = out.primitive.has_value();
    return out;
}

}  // namespace chiral
