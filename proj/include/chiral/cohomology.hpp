#pragma once

#include "chiral/complex.hpp"
#include "chiral/linalg.hpp"
#include "chiral/series.hpp"

#include <json.hpp>

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace chiral {

struct EngineOptions {
    /// Charge window [-n, charge_max] for complexes with polynomial
    /// generators. Cohomology entries sum over the window.
    int charge_max = 2;
    std::size_t budget = kDefaultBasisBudget;
    /// Worker threads for independent pieces; 0 reads CHIRAL_THREADS
    /// (default 1). Results do not depend on it.
    unsigned threads = 0;
    /// Cross-check every exact rank against ranks modulo two primes.
    bool modular_check = false;
};

struct CohomologyEntry {
    int p = 0;
    int n = 0;
    std::size_t dim = 0;
    std::vector<State> representatives;  // basic cocycles, when requested
};

struct CohomologyTable {
    std::string complex;
    int p_min = 0;
    int p_max = 0;
    int n_max = 0;
    std::vector<CohomologyEntry> entries;  // ordered by (n, p)

    std::size_t dim(int p, int n) const;
    nlohmann::json to_json() const;
    std::string to_csv() const;
};

CharacterSeries character(const CohomologyTable& table);

/// Basic subcomplex and cohomology of one complex. Pieces are cached, so a
/// single engine should serve all queries on a complex.
///
/// The basic piece is the joint kernel of iota_xi(k), L_xi(k), 0 <= k <= n.
/// With a horizontal frame the iota conditions are solved by the frame
/// (monomials without Weil c, twisted by exp(-X(0))); torus elements whose
/// L(0) acts diagonally on generators cut the candidates down to weight 0.
class CohomologyEngine {
public:
    CohomologyEngine(const ComplexDescriptor& complex, EngineOptions options = {});

    const ComplexDescriptor& complex() const { return *complex_; }
    const EngineOptions& options() const { return options_; }

    /// Basis of the basic (p, n) piece, summed over the charge window.
    std::vector<State> basic_basis(int p, int n);
    std::size_t basic_dim(int p, int n, int charge);

    CohomologyTable cohomology(int p_min, int p_max, int n_max, bool want_representatives = false);

    /// y basic with d y = target, or nullopt if target is not a basic
    /// boundary. Throws NotACocycle if target is not a basic cocycle.
    std::optional<State> primitive(const State& target);

    /// Whether a basic state is closed and lies in the basic subcomplex.
    bool is_basic_cocycle(const State& s);

private:
    struct Piece {
        // Candidates of the untwisted frame and their index.
        MonomialIndex candidates;
        // Kernel vectors over candidate indices (exact integer rows).
        std::vector<SparseVector> kernel;
        // d' = exp(X) d exp(-X) of each kernel vector, in the candidate
        // coordinates of (p+1, n, charge); filled on demand.
        std::optional<std::vector<SparseVector>> images;
        // images are stored primitive: d'(kernel[j]) = image_factors[j] * images[j]
        std::vector<Rational> image_factors;
        std::optional<std::size_t> image_rank;
    };
    using Key = std::tuple<int, int, int>;

    std::shared_ptr<Piece> piece(int p, int n, int charge);
    Piece& with_images(int p, int n, int charge);
    std::shared_ptr<Piece> compute_piece(int p, int n, int charge) const;
    std::vector<Monomial> candidates(int p, int n, int charge) const;
    State untwisted_state(const Piece& piece, const SparseVector& v) const;
    State twist(const State& s) const;    // exp(-X(0)): frame -> horizontal
    State untwist(const State& s) const;  // exp(+X(0))
    bool candidate_ok(const Monomial& m) const;
    std::vector<int> charges(int n) const;
    void check_rank(const std::vector<SparseVector>& vectors, std::size_t exact) const;

    const ComplexDescriptor* complex_;
    EngineOptions options_;
    std::vector<bool> weil_c_;                        // generator is a Weil c
    std::vector<std::size_t> torus_;                  // lie indices acting diagonally
    std::vector<std::vector<Rational>> torus_weight_; // [torus][generator]
    std::mutex mutex_;
    std::map<Key, std::shared_ptr<Piece>> pieces_;
};

/// Resolves EngineOptions::threads.
unsigned resolve_threads(unsigned requested);

/// Result of pushing a class of W(g) into W(g) (x) A.
struct ChernWeilImage {
    State image;                     // a (x) 1
    bool exact = false;
    std::optional<State> primitive;  // basic y with d y = image when exact
};

/// Maps a basic cocycle of `weil` (a complex whose generators form the
/// leading block of `combined`) to the combined complex and decides
/// whether its class vanishes. Throws NotACocycle.
ChernWeilImage chern_weil(CohomologyEngine& weil, CohomologyEngine& combined, const State& cls);

}  // namespace chiral
