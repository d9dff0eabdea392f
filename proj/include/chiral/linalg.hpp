#pragma once

#include "chiral/fock.hpp"
#include "chiral/rational.hpp"

#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

namespace chiral {

/// Sparse integer vector, entries sorted by index, no zeros.
using SparseVector = std::vector<std::pair<std::uint64_t, Integer>>;

/// Clears denominators and divides out the content; the sign is normalised
/// so that the leading entry is positive. Returns the rational factor f
/// with  input = f * output.
Rational make_primitive(const std::vector<std::pair<std::uint64_t, Rational>>& in, SparseVector& out);

/// Incremental fraction-free row echelon form over Z. Rows are kept
/// primitive; each row's pivot is its smallest index. Reduction only
/// eliminates pivot positions (semi-echelon), which is all rank, kernel and
/// membership queries need.
class Echelon {
public:
    /// Reduces v against the rows; returns true when v becomes zero.
    /// Otherwise v holds the reduced primitive remainder.
    bool reduce(SparseVector& v) const;
    /// Inserts v if it is independent of the rows; returns whether it was.
    bool insert(SparseVector v);

    std::size_t rank() const { return rows_.size(); }
    const std::vector<SparseVector>& rows() const { return rows_; }

private:
    std::vector<SparseVector> rows_;
    std::unordered_map<std::uint64_t, std::size_t> pivot_;
};

/// Indices at or above this value tag the bookkeeping coordinates appended
/// to a vector (kernel tracking). They never become pivots while a vector
/// still has ordinary coordinates.
constexpr std::uint64_t kTrackBase = std::uint64_t{1} << 62;

/// Kernel of the linear map sending domain basis vector j to images[j].
/// Returned vectors are sparse over domain indices.
std::vector<SparseVector> kernel(const std::vector<SparseVector>& images);

/// Rank of a set of vectors.
std::size_t rank(const std::vector<SparseVector>& vectors);

/// Finds x with sum_j x_j images[j] = target. Returns nullopt if target is
/// not in the span.
std::optional<std::vector<std::pair<std::size_t, Rational>>> solve(const std::vector<SparseVector>& images,
                                                                  const SparseVector& target);

/// Rank modulo a prime below 2^31 (optional cross-check of the exact path).
std::size_t modular_rank(const std::vector<SparseVector>& vectors, std::uint32_t prime);

/// Assigns consecutive indices to monomials in first-seen order.
class MonomialIndex {
public:
    MonomialIndex() = default;
    explicit MonomialIndex(const std::vector<Monomial>& basis);

    std::uint64_t index(const Monomial& m);  // inserts when missing
    std::optional<std::uint64_t> find(const Monomial& m) const;
    const Monomial& monomial(std::uint64_t i) const { return monomials_[i]; }
    std::size_t size() const { return monomials_.size(); }

private:
    std::unordered_map<Monomial, std::uint64_t, MonomialHash> map_;
    std::vector<Monomial> monomials_;
};

/// Coordinates of a state in the index (monomials are added as needed).
SparseVector coordinates(const State& s, MonomialIndex& index, Rational* factor = nullptr);
/// Inverse of `coordinates` for indices below kTrackBase.
State from_coordinates(const SparseVector& v, const MonomialIndex& index);

}  // namespace chiral
