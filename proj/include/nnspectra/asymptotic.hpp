#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "nnspectra/cover.hpp"
#include "nnspectra/errors.hpp"
#include "nnspectra/induced_matching.hpp"
#include "nnspectra/matrix.hpp"
#include "nnspectra/nnrank.hpp"
#include "nnspectra/rank.hpp"
#include "nnspectra/triangular.hpp"

namespace nnspectra {

// Largest p/q with (p/q)^n <= v, over denominators fixed to q.
inline Rational nth_root_lower(const Rational& v, std::size_t n, const Integer& q = Integer(1'000'000)) {
    if (v.is_negative()) throw DomainError("root of a negative value");
    if (v.is_zero() || n == 0) return Rational(0);
    const Integer target_num = v.numerator() * integer_pow(q, n);
    const Integer target_den = v.denominator();
    auto below = [&](const Integer& p) { return integer_pow(p, n) * target_den <= target_num; };
    Integer lo = 0, hi = 1;
    while (below(hi)) hi <<= 1;
    while (lo + 1 < hi) {
        Integer mid = (lo + hi) >> 1;
        if (below(mid)) lo = mid;
        else hi = mid;
    }
    return Rational(lo, q);
}

// Smallest p/q with (p/q)^n >= v.
inline Rational nth_root_upper(const Rational& v, std::size_t n, const Integer& q = Integer(1'000'000)) {
    if (v.is_negative()) throw DomainError("root of a negative value");
    if (v.is_zero() || n == 0) return Rational(0);
    Rational lower = nth_root_lower(v, n, q);
    if (rational_pow(lower, n) == v) return lower;
    return lower + Rational(Integer(1), q);
}

struct PowerSample {
    std::size_t power = 1;
    Integer subrank_value;     // exact gamma, or a certified lower bound when !subrank_exact
    bool subrank_exact = true;
    Integer nnrank_upper;      // best upper bound at this power
    bool nnrank_certified = true;
    double subrank_root = 0.0;  // display only
    double nnrank_root = 0.0;   // display only
};

/*
 * Two-sided interval estimates for the asymptotic nonnegative rank and
 * subrank. The spectral points rank and F pin the inner bounds (max for
 * the rank side, min for the subrank side); Kronecker powers push the
 * outer bounds via subrank lower roots and certified nonnegative-rank
 * upper roots. All four interval ends are rationals certified against
 * the exact integer quantities; per-power roots are floats for display.
 */
struct AsymptoticSandwich {
    Rational asynrank_lower;
    Rational asynrank_upper;
    Rational asympsubrank_lower;
    Rational asympsubrank_upper;
    std::size_t rank_value = 0;
    Rational cover_value;
    std::vector<PowerSample> per_power;
    bool triangular_collapse = false;  // positive-diagonal triangular shortcut applied
};

struct AsymptoticOptions {
    std::uint64_t cell_budget = kDefaultCellBudget;
    SubrankOptions subrank = {};
    NnrankOptions nnrank = {};
    Integer root_denominator = Integer(1'000'000);
    std::uint64_t certificate_budget = kDefaultCertificateBudget;
};

inline AsymptoticSandwich asymptotic_report(const NonnegativeMatrix& a, std::size_t max_power,
                                            const AsymptoticOptions& options = {}) {
    if (max_power < 1) throw DomainError("max_power must be at least 1");
    AsymptoticSandwich report;
    if (a.is_zero()) return report;

    report.rank_value = rank(a).rank;
    report.cover_value = fractional_cover(a, options.nnrank.rectangle_budget).value;
    const Rational rank_r(report.rank_value);
    report.asynrank_lower = std::max(rank_r, report.cover_value);
    report.asympsubrank_upper = std::min(rank_r, report.cover_value);

    std::vector<std::vector<IndexPair>> matchings(max_power + 1);
    std::vector<Integer> subrank_at(max_power + 1, Integer(0));
    // Best upper bound of any kind (display) and best certified one
    // (feeds the rigorous interval); the latter always exists because
    // the zero-line-stripped selector factorization certifies
    // min(#nonzero rows, #nonzero cols) at every power.
    std::vector<Integer> upper_display(max_power + 1, Integer(0));
    std::vector<Integer> upper_certified(max_power + 1, Integer(0));

    for (std::size_t n = 1; n <= max_power; ++n) {
        NonnegativeMatrix power = kron_power(a, n, options.cell_budget);

        SubrankOptions sub_opts = options.subrank;
        for (std::size_t split = 1; split + split <= n; ++split) {
            auto composed = tensor_matching(matchings[split], matchings[n - split],
                                            integer_pow(Integer(a.rows()), n - split).convert_to<std::size_t>(),
                                            integer_pow(Integer(a.cols()), n - split).convert_to<std::size_t>());
            if (composed.size() > sub_opts.initial_matching.size()) {
                sub_opts.initial_matching = std::move(composed);
            }
        }
        MatchingResult match = subrank(power, sub_opts);
        matchings[n] = match.matching;
        subrank_at[n] = Integer(match.size);

        StripResult strip = strip_zero_lines(power);
        Integer trivial(std::min(strip.kept_rows.size(), strip.kept_cols.size()));
        Integer cert_upper = trivial;
        Integer disp_upper = trivial;
        // The full bound machinery (cover ILP, factorization probes)
        // runs at the base power; higher powers combine certified
        // factorizations of smaller powers instead of re-searching.
        if (n == 1) {
            NnrankBounds bounds = nnrank_bounds(power, options.nnrank);
            Integer direct(bounds.upper);
            if (bounds.upper_certified) cert_upper = std::min(cert_upper, direct);
            disp_upper = std::min(disp_upper, direct);
        }
        for (std::size_t split = 1; split + split <= n; ++split) {
            cert_upper = std::min(cert_upper, Integer(upper_certified[split] * upper_certified[n - split]));
            disp_upper = std::min(disp_upper, Integer(upper_display[split] * upper_display[n - split]));
        }
        upper_certified[n] = cert_upper;
        upper_display[n] = disp_upper;

        PowerSample sample;
        sample.power = n;
        sample.subrank_value = subrank_at[n];
        sample.subrank_exact = match.exact;
        sample.nnrank_upper = disp_upper;
        sample.nnrank_certified = disp_upper == cert_upper;
        sample.subrank_root = std::pow(subrank_at[n].convert_to<double>(), 1.0 / static_cast<double>(n));
        sample.nnrank_root = std::pow(disp_upper.convert_to<double>(), 1.0 / static_cast<double>(n));
        report.per_power.push_back(sample);
    }

    // Even a budget-truncated subrank is a valid lower witness, and a
    // certified nonnegative-rank upper bound upper-bounds the limit.
    Rational sub_lower(0);
    Rational rank_upper = nth_root_upper(Rational(upper_certified[1]), 1, options.root_denominator);
    for (std::size_t n = 1; n <= max_power; ++n) {
        sub_lower = std::max(sub_lower,
                             nth_root_lower(Rational(subrank_at[n]), n, options.root_denominator));
        rank_upper = std::min(rank_upper,
                              nth_root_upper(Rational(upper_certified[n]), n, options.root_denominator));
    }

    if (is_lower_triangular(a)) {
        auto v = positive_diagonal(a);
        if (!v.empty()) {
            // Sanity-run the construction at the smallest admissible
            // power when it fits the budget; the limit bound |V| only
            // needs the (machine-checked) triangular hypothesis.
            try {
                triangular_certificate(a, v.size(), options.certificate_budget);
            } catch (const BudgetError&) {
            }
            sub_lower = std::max(sub_lower, Rational(v.size()));
            report.triangular_collapse = v.size() == std::min(a.rows(), a.cols());
        }
    }

    report.asympsubrank_lower = sub_lower;
    report.asynrank_upper = rank_upper;

    if (report.asympsubrank_lower > report.asympsubrank_upper ||
        report.asympsubrank_upper > report.asynrank_lower ||
        report.asynrank_lower > report.asynrank_upper) {
        throw std::logic_error("sandwich ordering violated");
    }
    return report;
}

}  // namespace nnspectra
