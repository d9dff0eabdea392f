#include "chiral/rational.hpp"

#include "chiral/error.hpp"

#include <cctype>
#include <utility>

namespace chiral {

Rational parse_rational(const std::string& text) {
    std::string t;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) t.push_back(ch);
    if (t.empty()) throw ParseError("empty rational");
    if (t.front() == '+') t.erase(t.begin());
    std::size_t start = (t.front() == '-') ? 1 : 0;
    std::size_t slash = t.find('/');
    auto digits = [&](std::size_t from, std::size_t to) {
        if (from >= to) return false;
        for (std::size_t i = from; i < to; ++i)
            if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
        return true;
    };
    bool ok = (slash == std::string::npos) ? digits(start, t.size())
                                            : digits(start, slash) && digits(slash + 1, t.size());
    if (!ok) throw ParseError("malformed rational '" + text + "'");
    Rational q(t, 10);
    if (slash != std::string::npos && sgn(q.get_den()) == 0) throw ParseError("zero denominator in '" + text + "'");
    q.canonicalize();
    return q;
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Matrix Matrix::operator*(const Matrix& other) const {
    Matrix out(rows_, other.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Rational& a = (*this)(i, k);
            if (sgn(a) == 0) continue;
            for (std::size_t j = 0; j < other.cols_; ++j) out(i, j) += a * other(k, j);
        }
    return out;
}

Matrix Matrix::operator+(const Matrix& other) const {
    Matrix out = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] += other.data_[i];
    return out;
}

Matrix Matrix::operator-(const Matrix& other) const {
    Matrix out = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] -= other.data_[i];
    return out;
}

Matrix Matrix::scaled(const Rational& s) const {
    Matrix out = *this;
    for (auto& x : out.data_) x *= s;
    return out;
}

Matrix Matrix::transpose() const {
    Matrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    return out;
}

bool Matrix::operator==(const Matrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
}

bool Matrix::is_zero() const {
    for (const auto& x : data_)
        if (sgn(x) != 0) return false;
    return true;
}

bool Matrix::is_symmetric() const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i + 1; j < cols_; ++j)
            if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
}

Rational Matrix::trace() const {
    Rational t = 0;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
}

std::size_t Matrix::rank() const {
    std::vector<std::vector<Rational>> rows(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        rows[i].assign(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                       data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
    return rank_of_vectors(rows);
}

Matrix Matrix::inverse() const {
    if (rows_ != cols_) throw DegenerateForm("inverse of a non-square matrix");
    const std::size_t n = rows_;
    Matrix a = *this;
    Matrix inv = identity(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && sgn(a(piv, col)) == 0) ++piv;
        if (piv == n) throw DegenerateForm("matrix is singular");
        if (piv != col)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a(piv, j), a(col, j));
                std::swap(inv(piv, j), inv(col, j));
            }
        Rational s = 1 / a(col, col);
        for (std::size_t j = 0; j < n; ++j) {
            a(col, j) *= s;
            inv(col, j) *= s;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || sgn(a(r, col)) == 0) continue;
            Rational f = a(r, col);
            for (std::size_t j = 0; j < n; ++j) {
                a(r, j) -= f * a(col, j);
                inv(r, j) -= f * inv(col, j);
            }
        }
    }
    return inv;
}

std::size_t rank_of_vectors(const std::vector<std::vector<Rational>>& vectors) {
    std::vector<std::vector<Rational>> m = vectors;
    if (m.empty()) return 0;
    const std::size_t cols = m.front().size();
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < m.size(); ++col) {
        std::size_t piv = rank;
        while (piv < m.size() && sgn(m[piv][col]) == 0) ++piv;
        if (piv == m.size()) continue;
        std::swap(m[piv], m[rank]);
        for (std::size_t r = rank + 1; r < m.size(); ++r) {
            if (sgn(m[r][col]) == 0) continue;
            Rational f = m[r][col] / m[rank][col];
            for (std::size_t j = col; j < cols; ++j) m[r][j] -= f * m[rank][j];
        }
        ++rank;
    }
    return rank;
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(std::vector<std::vector<Rational>>& m, std::size_t cols) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
        std::size_t piv = row;
        while (piv < m.size() && sgn(m[piv][col]) == 0) ++piv;
        if (piv == m.size()) continue;
        std::swap(m[piv], m[row]);
        Rational s = 1 / m[row][col];
        for (auto& x : m[row]) x *= s;
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == row || sgn(m[r][col]) == 0) continue;
            Rational f = m[r][col];
            for (std::size_t j = 0; j < m[r].size(); ++j) m[r][j] -= f * m[row][j];
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

}  // namespace

std::vector<std::vector<Rational>> nullspace(const Matrix& m) {
    std::vector<std::vector<Rational>> rows(m.rows(), std::vector<Rational>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) rows[i][j] = m(i, j);
    auto pivots = rref(rows, m.cols());
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<std::vector<Rational>> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        std::vector<Rational> v(m.cols());
        v[free] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -rows[r][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<std::vector<Rational>> solve_linear(const Matrix& m, const std::vector<Rational>& b) {
    const std::size_t n = m.cols();
    std::vector<std::vector<Rational>> rows(m.rows(), std::vector<Rational>(n + 1));
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < n; ++j) rows[i][j] = m(i, j);
        rows[i][n] = b[i];
    }
    auto pivots = rref(rows, n + 1);
    if (!pivots.empty() && pivots.back() == n) return std::nullopt;
    std::vector<Rational> x(n);
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = rows[r][n];
    return x;
}

}  // namespace chiral
