#pragma once

#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "nnspectra/errors.hpp"
#include "nnspectra/matrix.hpp"

namespace nnspectra {

enum class MatrixFormat { json, csv };

namespace detail {

inline Rational cell_from_json(const nlohmann::json& cell) {
    Rational value;
    if (cell.is_string()) {
        value = Rational::parse(cell.get<std::string>());
    } else if (cell.is_number_integer()) {
        value = Rational(static_cast<long long>(cell.get<std::int64_t>()));
    } else {
        throw ParseError("matrix cell must be an integer or a \"p/q\" string");
    }
    if (value.is_negative()) throw DomainError("negative entry in matrix input");
    return value;
}

}  // namespace detail

// {"rows": m, "cols": n, "entries": [[cell, ...], ...]} with cells given
// as integers or "p/q" strings.
inline NonnegativeMatrix parse_matrix_json(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad matrix JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("rows") || !doc.contains("cols") || !doc.contains("entries")) {
        throw ParseError("matrix JSON needs rows, cols and entries");
    }
    if (!doc["rows"].is_number_integer() || !doc["cols"].is_number_integer() ||
        doc["rows"].get<std::int64_t>() < 1 || doc["cols"].get<std::int64_t>() < 1) {
        throw ParseError("rows and cols must be positive integers");
    }
    const auto m = doc["rows"].get<std::size_t>();
    const auto n = doc["cols"].get<std::size_t>();
    const auto& grid = doc["entries"];
    if (!grid.is_array() || grid.size() != m) throw ParseError("entries must hold exactly rows rows");
    std::vector<Rational> flat;
    flat.reserve(m * n);
    for (const auto& row : grid) {
        if (!row.is_array() || row.size() != n) throw ParseError("ragged row in matrix entries");
        for (const auto& cell : row) flat.push_back(detail::cell_from_json(cell));
    }
    return NonnegativeMatrix(m, n, std::move(flat));
}

// One row per line, comma-separated cells, same cell grammar as JSON.
inline NonnegativeMatrix parse_matrix_csv(std::string_view text) {
    std::vector<std::vector<Rational>> grid;
    std::string line;
    std::istringstream stream{std::string(text)};
    while (std::getline(stream, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        std::vector<Rational> row;
        std::size_t start = 0;
        while (true) {
            std::size_t comma = line.find(',', start);
            std::string cell = line.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
            Rational value = Rational::parse(cell);
            if (value.is_negative()) throw DomainError("negative entry in matrix input");
            row.push_back(std::move(value));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        grid.push_back(std::move(row));
    }
    if (grid.empty()) throw ParseError("empty CSV matrix");
    std::size_t n = grid.front().size();
    for (const auto& row : grid) {
        if (row.size() != n) throw ParseError("ragged rows in CSV matrix");
    }
    return NonnegativeMatrix::from_rows(grid);
}

inline NonnegativeMatrix parse_matrix(std::string_view text, MatrixFormat format) {
    return format == MatrixFormat::json ? parse_matrix_json(text) : parse_matrix_csv(text);
}

// Serialization always re-emits reduced "p/q" (or bare integer) strings,
// so parse -> serialize -> parse is the identity.
inline nlohmann::json matrix_to_json(const NonnegativeMatrix& a) {
    nlohmann::json grid = nlohmann::json::array();
    for (std::size_t i = 0; i < a.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t j = 0; j < a.cols(); ++j) row.push_back(a(i, j).to_string());
        grid.push_back(std::move(row));
    }
    return nlohmann::json{{"rows", a.rows()}, {"cols", a.cols()}, {"entries", std::move(grid)}};
}

inline std::string matrix_to_csv(const NonnegativeMatrix& a) {
    std::string out;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (j != 0) out += ',';
            out += a(i, j).to_string();
        }
        out += '\n';
    }
    return out;
}

}  // namespace nnspectra
