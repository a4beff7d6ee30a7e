#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "nnspectra/errors.hpp"
#include "nnspectra/matrix.hpp"
#include "nnspectra/rectangles.hpp"
#include "nnspectra/simplex.hpp"

namespace nnspectra {

enum class CoverMode { fractional, integer_tfold };

/*
 * A rectangle covering certificate. In fractional mode the primal
 * weights tau solve the covering LP over maximal rectangles and the dual
 * weights mu certify optimality with the exactly equal objective. In
 * integer mode tau holds multiplicities of a minimum t-fold covering and
 * mu is empty.
 */
struct CoverSolution {
    CoverMode mode = CoverMode::fractional;
    unsigned fold = 1;  // coverage threshold t (1 in fractional mode)
    Rational value;
    std::vector<Rectangle> rectangles;
    std::vector<Rational> primal_weights;                  // aligned with rectangles
    std::vector<std::pair<std::size_t, std::size_t>> cells;  // supp(A), row-major
    std::vector<Rational> dual_weights;                    // aligned with cells

    // Exact feasibility + strong-duality audit; throws on violation.
    void verify() const {
        Rational primal_total(0);
        for (std::size_t r = 0; r < rectangles.size(); ++r) {
            const Rational& w = primal_weights[r];
            if (w.is_negative() || w > Rational(static_cast<long long>(fold))) {
                throw std::logic_error("primal weight out of range");
            }
            primal_total += w;
        }
        if (primal_total != value) throw std::logic_error("primal objective mismatch");
        for (const auto& [i, j] : cells) {
            Rational covered(0);
            for (std::size_t r = 0; r < rectangles.size(); ++r) {
                if (rectangles[r].contains(i, j)) covered += primal_weights[r];
            }
            if (covered < Rational(static_cast<long long>(fold))) {
                throw std::logic_error("support cell not covered to the fold threshold");
            }
        }
        if (mode == CoverMode::fractional) {
            Rational dual_total(0);
            for (const Rational& w : dual_weights) {
                if (w.is_negative() || w > Rational(1)) throw std::logic_error("dual weight out of range");
                dual_total += w;
            }
            if (dual_total != value) throw std::logic_error("strong duality violated");
            for (const auto& rect : rectangles) {
                Rational load(0);
                for (std::size_t c = 0; c < cells.size(); ++c) {
                    if (rect.contains(cells[c].first, cells[c].second)) load += dual_weights[c];
                }
                if (load > Rational(1)) throw std::logic_error("dual constraint violated");
            }
        }
    }
};

namespace detail {

struct CoverInstance {
    std::vector<Rectangle> rectangles;
    std::vector<std::pair<std::size_t, std::size_t>> cells;
    // incidence[c] lists the rectangles containing cell c
    std::vector<std::vector<std::size_t>> incidence;
};

inline CoverInstance build_cover_instance(const NonnegativeMatrix& a, std::uint64_t rectangle_budget) {
    CoverInstance inst;
    SupportPattern s = support(a);
    inst.rectangles = enumerate_maximal_rectangles(s, rectangle_budget);
    inst.cells = s.cells();
    inst.incidence.resize(inst.cells.size());
    for (std::size_t c = 0; c < inst.cells.size(); ++c) {
        for (std::size_t r = 0; r < inst.rectangles.size(); ++r) {
            if (inst.rectangles[r].contains(inst.cells[c].first, inst.cells[c].second)) {
                inst.incidence[c].push_back(r);
            }
        }
    }
    return inst;
}

// min sum(tau) with coverage >= fold; extra per-variable bounds for the
// branch-and-bound nodes ride along as explicit rows.
inline LinearProgram covering_lp(const CoverInstance& inst, unsigned fold,
                                 const std::vector<std::pair<Rational, Rational>>* var_bounds = nullptr) {
    LinearProgram lp;
    lp.maximize = false;
    lp.objective.assign(inst.rectangles.size(), Rational(1));
    for (std::size_t c = 0; c < inst.cells.size(); ++c) {
        LpConstraint row;
        row.coeffs.assign(inst.rectangles.size(), Rational(0));
        for (std::size_t r : inst.incidence[c]) row.coeffs[r] = Rational(1);
        row.sense = Sense::ge;
        row.rhs = Rational(static_cast<long long>(fold));
        lp.rows.push_back(std::move(row));
    }
    if (var_bounds != nullptr) {
        for (std::size_t r = 0; r < inst.rectangles.size(); ++r) {
            const auto& [lo, hi] = (*var_bounds)[r];
            if (lo.is_positive()) {
                LpConstraint row;
                row.coeffs.assign(inst.rectangles.size(), Rational(0));
                row.coeffs[r] = Rational(1);
                row.sense = Sense::ge;
                row.rhs = lo;
                lp.rows.push_back(std::move(row));
            }
            if (hi < Rational(static_cast<long long>(fold))) {
                LpConstraint row;
                row.coeffs.assign(inst.rectangles.size(), Rational(0));
                row.coeffs[r] = Rational(1);
                row.sense = Sense::le;
                row.rhs = hi;
                lp.rows.push_back(std::move(row));
            }
        }
    }
    return lp;
}

inline LinearProgram covering_dual_lp(const CoverInstance& inst) {
    LinearProgram lp;
    lp.maximize = true;
    lp.objective.assign(inst.cells.size(), Rational(1));
    for (std::size_t r = 0; r < inst.rectangles.size(); ++r) {
        LpConstraint row;
        row.coeffs.assign(inst.cells.size(), Rational(0));
        for (std::size_t c = 0; c < inst.cells.size(); ++c) {
            if (inst.rectangles[r].contains(inst.cells[c].first, inst.cells[c].second)) {
                row.coeffs[c] = Rational(1);
            }
        }
        row.sense = Sense::le;
        row.rhs = Rational(1);
        lp.rows.push_back(std::move(row));
    }
    return lp;
}

}  // namespace detail

/*
 * Fractional cover number F(A): exact optimum of the covering LP over
 * the maximal rectangles, certified by a separately solved dual whose
 * objective must match the primal exactly. Restricting the LP to
 * maximal rectangles loses nothing: any rectangle's weight can move to
 * a maximal superset without breaking feasibility or the objective.
 */
inline CoverSolution fractional_cover(const NonnegativeMatrix& a,
                                      std::uint64_t rectangle_budget = kDefaultRectangleBudget) {
    CoverSolution sol;
    sol.mode = CoverMode::fractional;
    sol.value = Rational(0);
    if (a.is_zero()) return sol;

    detail::CoverInstance inst = detail::build_cover_instance(a, rectangle_budget);
    LpSolution primal = solve_lp_exact(detail::covering_lp(inst, 1));
    LpSolution dual = solve_lp_exact(detail::covering_dual_lp(inst));
    if (primal.status != LpStatus::optimal || dual.status != LpStatus::optimal) {
        throw std::logic_error("covering LP must be feasible and bounded");
    }
    if (primal.objective_value != dual.objective_value) {
        throw std::logic_error("primal/dual optima disagree");
    }
    sol.value = primal.objective_value;
    sol.rectangles = std::move(inst.rectangles);
    sol.cells = std::move(inst.cells);
    sol.primal_weights = std::move(primal.x);
    sol.dual_weights = std::move(dual.x);
    return sol;
}

struct TfoldOptions {
    std::uint64_t rectangle_budget = kDefaultRectangleBudget;
    std::uint64_t node_budget = 100'000;
};

/*
 * t-fold covering number F_t(A): branch and bound over rectangle
 * multiplicities. Nodes solve the LP relaxation under the branching
 * bounds; branching picks the fractional variable with the largest
 * value, taking the rounded-up child first. The root relaxation equals
 * t*F(A), and multiplicities never need to exceed t.
 */
inline CoverSolution tfold_cover(const NonnegativeMatrix& a, unsigned fold,
                                 const TfoldOptions& options = {}) {
    if (fold < 1) throw DomainError("fold must be positive");
    CoverSolution sol;
    sol.mode = CoverMode::integer_tfold;
    sol.fold = fold;
    sol.value = Rational(0);
    if (a.is_zero()) return sol;

    detail::CoverInstance inst = detail::build_cover_instance(a, options.rectangle_budget);
    const std::size_t nrect = inst.rectangles.size();
    const Rational fold_r(static_cast<long long>(fold));

    using Bounds = std::vector<std::pair<Rational, Rational>>;
    Bounds root_bounds(nrect, {Rational(0), fold_r});

    LpSolution root = solve_lp_exact(detail::covering_lp(inst, fold, &root_bounds));
    if (root.status != LpStatus::optimal) throw std::logic_error("root covering LP must solve");

    // Rounding the root relaxation up is always a feasible multiset.
    std::vector<Rational> incumbent(nrect);
    Rational incumbent_value(0);
    for (std::size_t r = 0; r < nrect; ++r) {
        Integer up = root.x[r].numerator() / root.x[r].denominator();
        if (Rational(up) < root.x[r]) up += 1;
        incumbent[r] = Rational(up);
        incumbent_value += incumbent[r];
    }

    std::uint64_t nodes = 0;
    auto explore = [&](auto&& self, Bounds bounds) -> void {
        if (++nodes > options.node_budget) throw BudgetError("t-fold cover search budget exceeded");
        LpSolution relax = solve_lp_exact(detail::covering_lp(inst, fold, &bounds));
        if (relax.status != LpStatus::optimal) return;  // branching made it infeasible
        // Integer objective: prune unless the ceiling can still beat the incumbent.
        Rational bound = relax.objective_value;
        Integer ceil_bound = bound.numerator() / bound.denominator();
        if (Rational(ceil_bound) < bound) ceil_bound += 1;
        if (Rational(ceil_bound) >= incumbent_value) return;

        std::size_t branch_var = nrect;
        for (std::size_t r = 0; r < nrect; ++r) {
            if (!relax.x[r].is_integer()) {
                if (branch_var == nrect || relax.x[r] > relax.x[branch_var]) branch_var = r;
            }
        }
        if (branch_var == nrect) {
            incumbent = relax.x;
            incumbent_value = relax.objective_value;
            return;
        }
        Integer floor_part = relax.x[branch_var].numerator() / relax.x[branch_var].denominator();
        Bounds up = bounds;
        up[branch_var].first = Rational(floor_part) + Rational(1);
        self(self, std::move(up));
        Bounds down = bounds;
        down[branch_var].second = Rational(floor_part);
        self(self, std::move(down));
    };
    explore(explore, root_bounds);

    sol.value = incumbent_value;
    sol.rectangles = std::move(inst.rectangles);
    sol.cells = std::move(inst.cells);
    sol.primal_weights = std::move(incumbent);
    return sol;
}

struct FstarEstimate {
    Rational fractional_floor;                       // certified F(A)
    std::vector<std::pair<unsigned, Rational>> ratios;  // (t, F_t / t)
};

// The sequence F_t(A)/t for t = 1..t_max together with its certified
// limit F(A); every term is >= the floor and the infimum equals it.
inline FstarEstimate fstar_estimate(const NonnegativeMatrix& a, unsigned t_max,
                                    const TfoldOptions& options = {}) {
    if (t_max < 1) throw DomainError("t_max must be positive");
    FstarEstimate est;
    est.fractional_floor = fractional_cover(a, options.rectangle_budget).value;
    for (unsigned t = 1; t <= t_max; ++t) {
        Rational ft = tfold_cover(a, t, options).value;
        Rational ratio = ft / Rational(static_cast<long long>(t));
        if (ratio < est.fractional_floor) {
            throw std::logic_error("t-fold ratio dropped below the fractional optimum");
        }
        est.ratios.emplace_back(t, std::move(ratio));
    }
    return est;
}

}  // namespace nnspectra
