#pragma once

// Test-only reference implementations, kept independent of the library's
// algorithm choices so they can serve as oracles.

#include <algorithm>
#include <cstddef>
#include <vector>

#include "nnspectra/matrix.hpp"
#include "nnspectra/rectangles.hpp"
#include "nnspectra/simplex.hpp"

namespace oracles {

// Every monochromatic rectangle (not only the maximal ones) by direct
// enumeration of nonempty row and column subsets. Exponential; only for
// tiny patterns.
inline std::vector<nnspectra::Rectangle> all_rectangles(const nnspectra::SupportPattern& s) {
    std::vector<nnspectra::Rectangle> out;
    const std::size_t m = s.rows(), n = s.cols();
    for (std::size_t rmask = 1; rmask < (std::size_t(1) << m); ++rmask) {
        for (std::size_t cmask = 1; cmask < (std::size_t(1) << n); ++cmask) {
            bool mono = true;
            for (std::size_t i = 0; i < m && mono; ++i) {
                if (!(rmask >> i & 1)) continue;
                for (std::size_t j = 0; j < n && mono; ++j) {
                    if ((cmask >> j & 1) && !s.contains(i, j)) mono = false;
                }
            }
            if (!mono) continue;
            nnspectra::Rectangle r;
            for (std::size_t i = 0; i < m; ++i)
                if (rmask >> i & 1) r.row_set.push_back(i);
            for (std::size_t j = 0; j < n; ++j)
                if (cmask >> j & 1) r.col_set.push_back(j);
            out.push_back(std::move(r));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Keep only the inclusion-maximal rectangles of a list.
inline std::vector<nnspectra::Rectangle> maximal_filter(std::vector<nnspectra::Rectangle> rects) {
    auto subset = [](const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
        return std::includes(b.begin(), b.end(), a.begin(), a.end());
    };
    std::vector<nnspectra::Rectangle> out;
    for (const auto& r : rects) {
        bool dominated = false;
        for (const auto& other : rects) {
            if (&other == &r) continue;
            if (subset(r.row_set, other.row_set) && subset(r.col_set, other.col_set) &&
                !(other.row_set == r.row_set && other.col_set == r.col_set)) {
                dominated = true;
                break;
            }
        }
        if (!dominated) out.push_back(r);
    }
    return out;
}

// The covering LP over an explicit rectangle list.
inline nnspectra::Rational cover_lp_value(const nnspectra::SupportPattern& s,
                                          const std::vector<nnspectra::Rectangle>& rects) {
    nnspectra::LinearProgram lp;
    lp.maximize = false;
    lp.objective.assign(rects.size(), nnspectra::Rational(1));
    for (const auto& [i, j] : s.cells()) {
        nnspectra::LpConstraint row;
        row.coeffs.assign(rects.size(), nnspectra::Rational(0));
        for (std::size_t r = 0; r < rects.size(); ++r) {
            if (rects[r].contains(i, j)) row.coeffs[r] = nnspectra::Rational(1);
        }
        row.sense = nnspectra::Sense::ge;
        row.rhs = nnspectra::Rational(1);
        lp.rows.push_back(std::move(row));
    }
    auto sol = nnspectra::solve_lp_exact(lp);
    if (sol.status != nnspectra::LpStatus::optimal) throw std::logic_error("oracle LP failed");
    return sol.objective_value;
}

// Minimum number of rectangles from `rects` covering all support cells,
// by depth-first search over the cells. Tiny instances only.
inline std::size_t exact_cover_number(const nnspectra::SupportPattern& s,
                                      const std::vector<nnspectra::Rectangle>& rects) {
    auto cells = s.cells();
    std::size_t best = cells.size() + 1;
    std::vector<std::size_t> chosen;
    auto covered = [&](const std::pair<std::size_t, std::size_t>& cell) {
        for (std::size_t r : chosen) {
            if (rects[r].contains(cell.first, cell.second)) return true;
        }
        return false;
    };
    auto recurse = [&](auto&& self) -> void {
        if (chosen.size() >= best) return;
        std::size_t open = cells.size();
        for (std::size_t c = 0; c < cells.size(); ++c) {
            if (!covered(cells[c])) { open = c; break; }
        }
        if (open == cells.size()) {
            best = chosen.size();
            return;
        }
        for (std::size_t r = 0; r < rects.size(); ++r) {
            if (!rects[r].contains(cells[open].first, cells[open].second)) continue;
            chosen.push_back(r);
            self(self);
            chosen.pop_back();
        }
    };
    recurse(recurse);
    return best;
}

}  // namespace oracles
