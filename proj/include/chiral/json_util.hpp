#pragma once

#include "chiral/error.hpp"
#include "chiral/rational.hpp"

#include <json.hpp>

namespace chiral {

/// Accepts integers and rational strings ("3", "-1/2"). Floating-point
/// values are rejected: every input to the engine is exact.
inline Rational rational_from_json(const nlohmann::json& value) {
    if (value.is_number_integer()) return Rational(value.get<long>());
    if (value.is_string()) return parse_rational(value.get<std::string>());
    throw ParseError("expected an integer or a rational string, got " + value.dump());
}

inline nlohmann::json rational_to_json(const Rational& q) {
    if (q.get_den() == 1 && q.get_num().fits_slong_p()) return q.get_num().get_si();
    return q.get_str();
}

inline Matrix matrix_from_json(const nlohmann::json& rows) {
    if (!rows.is_array() || rows.empty()) throw ParseError("expected a non-empty matrix");
    const std::size_t n_rows = rows.size();
    const std::size_t n_cols = rows[0].size();
    Matrix m(n_rows, n_cols);
    for (std::size_t i = 0; i < n_rows; ++i) {
        if (!rows[i].is_array() || rows[i].size() != n_cols) throw ParseError("ragged matrix");
        for (std::size_t j = 0; j < n_cols; ++j) m(i, j) = rational_from_json(rows[i][j]);
    }
    return m;
}

inline nlohmann::json matrix_to_json(const Matrix& m) {
    auto rows = nlohmann::json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        auto row = nlohmann::json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(rational_to_json(m(i, j)));
        rows.push_back(row);
    }
    return rows;
}

}  // namespace chiral
