#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace chiral {

using Rational = mpq_class;
using Integer = mpz_class;

inline std::string to_string(const Rational& q) { return q.get_str(); }

/// Parses "a", "-a" or "a/b". Throws ParseError on malformed input.
Rational parse_rational(const std::string& text);

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

/// Dense row-major rational matrix. Used for the small classical data
/// (structure constants, forms, representation matrices); the large
/// operators of the vertex-algebra layer use SparseMatrix instead.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static Matrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    Matrix operator*(const Matrix& other) const;
    Matrix operator+(const Matrix& other) const;
    Matrix operator-(const Matrix& other) const;
    Matrix scaled(const Rational& s) const;
    Matrix transpose() const;
    bool operator==(const Matrix& other) const;
    bool is_zero() const;
    bool is_symmetric() const;

    Rational trace() const;
    std::size_t rank() const;
    /// Inverse of a square nonsingular matrix; throws DegenerateForm otherwise.
    Matrix inverse() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

/// Rank of a list of dense rational vectors of equal length.
std::size_t rank_of_vectors(const std::vector<std::vector<Rational>>& vectors);

/// Basis of { v : m v = 0 }.
std::vector<std::vector<Rational>> nullspace(const Matrix& m);

/// Some solution of m x = b, or nullopt when the system is inconsistent.
std::optional<std::vector<Rational>> solve_linear(const Matrix& m, const std::vector<Rational>& b);

}  // namespace chiral
