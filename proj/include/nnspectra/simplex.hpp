#pragma once

#include <cstddef>
#include <vector>

#include "nnspectra/errors.hpp"
#include "nnspectra/rational.hpp"

namespace nnspectra {

enum class Sense { le, ge, eq };

struct LpConstraint {
    std::vector<Rational> coeffs;
    Sense sense = Sense::le;
    Rational rhs;
};

// min/max c^T x subject to the rows, x >= 0, all data rational.
struct LinearProgram {
    std::vector<Rational> objective;
    bool maximize = false;
    std::vector<LpConstraint> rows;
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpSolution {
    LpStatus status = LpStatus::optimal;
    Rational objective_value;
    std::vector<Rational> x;
};

/*
 * Exact two-phase tableau simplex with Bland's anti-cycling rule: the
 * entering column is the lowest-index one with a negative reduced cost,
 * and ratio-test ties go to the row whose basic variable has the lowest
 * index. Everything is rational; the optimum is a basic solution and is
 * fully deterministic.
 */
class ExactSimplex {
public:
    explicit ExactSimplex(const LinearProgram& lp) : n_(lp.objective.size()) {
        cost_ = lp.objective;
        if (lp.maximize) {
            for (Rational& c : cost_) c = -c;
        }
        rows_.reserve(lp.rows.size());
        for (const LpConstraint& row : lp.rows) {
            if (row.coeffs.size() != n_) throw DomainError("constraint width does not match objective");
            LpConstraint r = row;
            if (r.rhs.is_negative()) {
                for (Rational& c : r.coeffs) c = -c;
                r.rhs = -r.rhs;
                if (r.sense == Sense::le) r.sense = Sense::ge;
                else if (r.sense == Sense::ge) r.sense = Sense::le;
            }
            rows_.push_back(std::move(r));
        }
        maximized_ = lp.maximize;
    }

    LpSolution solve() {
        build_tableau();
        if (!phase_one()) return LpSolution{LpStatus::infeasible, Rational(0), {}};
        if (!phase_two()) return LpSolution{LpStatus::unbounded, Rational(0), {}};

        LpSolution sol;
        sol.status = LpStatus::optimal;
        sol.x.assign(n_, Rational(0));
        for (std::size_t i = 0; i < basis_.size(); ++i) {
            if (basis_[i] < n_) sol.x[basis_[i]] = tableau_[i].back();
        }
        Rational value(0);
        for (std::size_t j = 0; j < n_; ++j) value += cost_[j] * sol.x[j];
        sol.objective_value = maximized_ ? -value : value;
        return sol;
    }

private:
    void build_tableau() {
        const std::size_t m = rows_.size();
        std::size_t slack_count = 0;
        for (const auto& r : rows_) {
            if (r.sense != Sense::eq) ++slack_count;
        }
        std::size_t artificial_count = 0;
        for (const auto& r : rows_) {
            if (r.sense != Sense::le) ++artificial_count;
        }
        total_ = n_ + slack_count + artificial_count;
        first_artificial_ = n_ + slack_count;

        tableau_.assign(m, std::vector<Rational>(total_ + 1));
        basis_.assign(m, 0);
        std::size_t slack_at = n_;
        std::size_t art_at = first_artificial_;
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < n_; ++j) tableau_[i][j] = rows_[i].coeffs[j];
            tableau_[i][total_] = rows_[i].rhs;
            switch (rows_[i].sense) {
                case Sense::le:
                    tableau_[i][slack_at] = Rational(1);
                    basis_[i] = slack_at++;
                    break;
                case Sense::ge:
                    tableau_[i][slack_at] = Rational(-1);
                    ++slack_at;
                    tableau_[i][art_at] = Rational(1);
                    basis_[i] = art_at++;
                    break;
                case Sense::eq:
                    tableau_[i][art_at] = Rational(1);
                    basis_[i] = art_at++;
                    break;
            }
        }
    }

    // Price out the current basis from a fresh cost row.
    std::vector<Rational> reduced_costs(const std::vector<Rational>& full_cost) const {
        std::vector<Rational> z = full_cost;
        z.push_back(Rational(0));
        for (std::size_t i = 0; i < basis_.size(); ++i) {
            const Rational cb = full_cost[basis_[i]];
            if (cb.is_zero()) continue;
            for (std::size_t j = 0; j <= total_; ++j) z[j] -= cb * tableau_[i][j];
        }
        return z;
    }

    void pivot(std::size_t row, std::size_t col, std::vector<Rational>& obj) {
        const Rational inv = tableau_[row][col].reciprocal();
        for (Rational& v : tableau_[row]) v *= inv;
        for (std::size_t i = 0; i < tableau_.size(); ++i) {
            if (i == row || tableau_[i][col].is_zero()) continue;
            const Rational f = tableau_[i][col];
            for (std::size_t j = 0; j <= total_; ++j) tableau_[i][j] -= f * tableau_[row][j];
        }
        if (!obj[col].is_zero()) {
            const Rational f = obj[col];
            for (std::size_t j = 0; j <= total_; ++j) obj[j] -= f * tableau_[row][j];
        }
        basis_[row] = col;
    }

    // Returns false on unboundedness.
    bool iterate(std::vector<Rational>& obj, std::size_t column_limit) {
        while (true) {
            std::size_t entering = total_;
            for (std::size_t j = 0; j < column_limit; ++j) {
                if (obj[j].is_negative()) { entering = j; break; }
            }
            if (entering == total_) return true;

            std::size_t leaving = tableau_.size();
            Rational best_ratio;
            for (std::size_t i = 0; i < tableau_.size(); ++i) {
                if (!tableau_[i][entering].is_positive()) continue;
                Rational ratio = tableau_[i][total_] / tableau_[i][entering];
                if (leaving == tableau_.size() || ratio < best_ratio ||
                    (ratio == best_ratio && basis_[i] < basis_[leaving])) {
                    leaving = i;
                    best_ratio = ratio;
                }
            }
            if (leaving == tableau_.size()) return false;
            pivot(leaving, entering, obj);
        }
    }

    bool phase_one() {
        if (first_artificial_ == total_) return true;  // no artificials needed
        std::vector<Rational> art_cost(total_, Rational(0));
        for (std::size_t j = first_artificial_; j < total_; ++j) art_cost[j] = Rational(1);
        std::vector<Rational> obj = reduced_costs(art_cost);
        if (!iterate(obj, total_)) throw std::logic_error("phase one cannot be unbounded");
        if (!obj[total_].is_zero()) return false;  // obj row holds -objective

        // Drive leftover artificials out of the basis; rows that cannot
        // pivot on a structural/slack column are redundant and harmless.
        for (std::size_t i = 0; i < basis_.size(); ++i) {
            if (basis_[i] < first_artificial_) continue;
            for (std::size_t j = 0; j < first_artificial_; ++j) {
                if (!tableau_[i][j].is_zero()) {
                    pivot(i, j, obj);
                    break;
                }
            }
        }
        return true;
    }

    bool phase_two() {
        std::vector<Rational> full_cost(total_, Rational(0));
        for (std::size_t j = 0; j < n_; ++j) full_cost[j] = cost_[j];
        std::vector<Rational> obj = reduced_costs(full_cost);
        // Artificial columns are barred from re-entering.
        return iterate(obj, first_artificial_);
    }

    std::size_t n_;
    bool maximized_ = false;
    std::vector<Rational> cost_;
    std::vector<LpConstraint> rows_;

    std::vector<std::vector<Rational>> tableau_;
    std::vector<std::size_t> basis_;
    std::size_t total_ = 0;
    std::size_t first_artificial_ = 0;
};

inline LpSolution solve_lp_exact(const LinearProgram& lp) { return ExactSimplex(lp).solve(); }

}  // namespace nnspectra
