#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "nnspectra/errors.hpp"
#include "nnspectra/matrix.hpp"

namespace nnspectra {

// Monochromatic rectangle: row_set x col_set lies entirely inside the
// support of its source matrix. Both sets are sorted and nonempty.
struct Rectangle {
    std::vector<std::size_t> row_set;
    std::vector<std::size_t> col_set;

    bool contains(std::size_t i, std::size_t j) const {
        return std::binary_search(row_set.begin(), row_set.end(), i) &&
               std::binary_search(col_set.begin(), col_set.end(), j);
    }

    friend bool operator==(const Rectangle& a, const Rectangle& b) {
        return a.row_set == b.row_set && a.col_set == b.col_set;
    }
    friend bool operator<(const Rectangle& a, const Rectangle& b) {
        if (a.row_set != b.row_set) return a.row_set < b.row_set;
        return a.col_set < b.col_set;
    }
};

inline constexpr std::uint64_t kDefaultRectangleBudget = 100'000;

/*
 * All inclusion-maximal monochromatic rectangles, each exactly once,
 * sorted lexicographically. Maximal rectangles are the formal concepts
 * of the support relation; they are walked with Ganter's next-closure
 * over row sets, which visits every closed row set once in lectic order.
 */
inline std::vector<Rectangle> enumerate_maximal_rectangles(
    const SupportPattern& s, std::uint64_t max_count = kDefaultRectangleBudget) {
    const std::size_t m = s.rows();
    const std::size_t n = s.cols();
    std::vector<Rectangle> out;
    if (s.count() == 0) return out;

    auto common_cols = [&](const std::vector<char>& rows) {
        std::vector<char> cols(n, 1);
        for (std::size_t i = 0; i < m; ++i) {
            if (!rows[i]) continue;
            for (std::size_t j = 0; j < n; ++j) {
                if (cols[j] && !s.contains(i, j)) cols[j] = 0;
            }
        }
        return cols;
    };
    auto common_rows = [&](const std::vector<char>& cols) {
        std::vector<char> rows(m, 1);
        for (std::size_t j = 0; j < n; ++j) {
            if (!cols[j]) continue;
            for (std::size_t i = 0; i < m; ++i) {
                if (rows[i] && !s.contains(i, j)) rows[i] = 0;
            }
        }
        return rows;
    };
    auto closure = [&](const std::vector<char>& rows) { return common_rows(common_cols(rows)); };
    auto emit = [&](const std::vector<char>& rows) {
        std::vector<char> cols = common_cols(rows);
        Rectangle r;
        for (std::size_t i = 0; i < m; ++i)
            if (rows[i]) r.row_set.push_back(i);
        for (std::size_t j = 0; j < n; ++j)
            if (cols[j]) r.col_set.push_back(j);
        if (r.row_set.empty() || r.col_set.empty()) return;
        if (out.size() >= max_count) throw BudgetError("maximal rectangle enumeration budget exceeded");
        out.push_back(std::move(r));
    };

    std::vector<char> current = closure(std::vector<char>(m, 0));
    emit(current);
    while (true) {
        bool advanced = false;
        for (std::size_t i = m; i-- > 0;) {
            if (current[i]) {
                current[i] = 0;
                continue;
            }
            std::vector<char> probe = current;
            probe[i] = 1;
            std::vector<char> next = closure(probe);
            // Lectic condition: nothing below i may be new.
            bool canonical = true;
            for (std::size_t k = 0; k < i; ++k) {
                if (next[k] && !current[k]) { canonical = false; break; }
            }
            if (canonical) {
                current = std::move(next);
                advanced = true;
                break;
            }
        }
        if (!advanced) break;
        emit(current);
    }

    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace nnspectra
