#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <set>
#include <utility>
#include <vector>

#include "nnspectra/errors.hpp"
#include "nnspectra/matrix.hpp"

namespace nnspectra {

using IndexPair = std::pair<std::size_t, std::size_t>;

/*
 * An induced matching of A with the derived subrank certificate:
 * X (size x rows) and Y (size x cols) with X * A * Y^T = I_size.
 * `exact` is false when the search stopped on its node budget, in which
 * case `size` is only a certified lower bound.
 */
struct MatchingResult {
    std::size_t size = 0;
    std::vector<IndexPair> matching;  // row-major sorted
    NonnegativeMatrix certificate_left;
    NonnegativeMatrix certificate_right;
    bool exact = true;
};

// True iff phi is a subset of supp(A) whose pairs are totally pairwise
// independent: distinct rows, distinct columns, and all cross entries
// A[a][d], A[c][b] exactly zero.
inline bool is_induced_matching(const NonnegativeMatrix& a, const std::vector<IndexPair>& phi) {
    for (const auto& [i, j] : phi) {
        if (i >= a.rows() || j >= a.cols()) throw DomainError("matching cell out of range");
        if (!a(i, j).is_positive()) return false;
    }
    for (std::size_t p = 0; p < phi.size(); ++p) {
        for (std::size_t q = p + 1; q < phi.size(); ++q) {
            const auto& [pa, pb] = phi[p];
            const auto& [qa, qb] = phi[q];
            if (pa == qa || pb == qb) return false;
            if (!a(pa, qb).is_zero() || !a(qa, pb).is_zero()) return false;
        }
    }
    return true;
}

struct SubrankOptions {
    std::uint64_t node_budget = 200'000;
    // Above this support size the quadratic conflict graph is not built;
    // the result degrades to a greedy extension of the warm start.
    std::size_t max_conflict_cells = 2'048;
    // Warm-start incumbent; must itself be an induced matching of A.
    std::vector<IndexPair> initial_matching;
};

namespace detail {

struct ConflictGraph {
    std::vector<IndexPair> cells;               // row-major sorted
    std::vector<std::vector<char>> conflicts;   // symmetric adjacency
    std::vector<std::size_t> degree;
};

inline ConflictGraph build_conflict_graph(const NonnegativeMatrix& a) {
    ConflictGraph g;
    g.cells = support(a).cells();
    const std::size_t s = g.cells.size();
    g.conflicts.assign(s, std::vector<char>(s, 0));
    g.degree.assign(s, 0);
    for (std::size_t u = 0; u < s; ++u) {
        for (std::size_t v = u + 1; v < s; ++v) {
            const auto& [ua, ub] = g.cells[u];
            const auto& [va, vb] = g.cells[v];
            bool clash = ua == va || ub == vb || !a(ua, vb).is_zero() || !a(va, ub).is_zero();
            if (clash) {
                g.conflicts[u][v] = g.conflicts[v][u] = 1;
                ++g.degree[u];
                ++g.degree[v];
            }
        }
    }
    return g;
}

// Maximum independent set in one conflict component, depth-first with an
// include/exclude split on the first candidate. The bound adds
// min(#distinct rows, #distinct cols) over the open candidates, since a
// matching spends one row and one column per cell.
class MatchingSearch {
public:
    MatchingSearch(const ConflictGraph& g, std::uint64_t node_budget)
        : g_(g), budget_(node_budget) {}

    // `order` lists the component's vertices, already sorted by ascending
    // conflict degree (ties row-major). Any incumbent installed through
    // seed_incumbent survives as the floor of the search.
    std::vector<std::size_t> solve(const std::vector<std::size_t>& order, bool& exact) {
        exhausted_ = false;
        // Greedy seed in search order.
        std::vector<std::size_t> seed;
        for (std::size_t v : order) {
            bool ok = true;
            for (std::size_t u : seed) {
                if (g_.conflicts[u][v]) { ok = false; break; }
            }
            if (ok) seed.push_back(v);
        }
        if (seed.size() > best_.size()) best_ = seed;
        std::vector<std::size_t> chosen;
        explore(order, chosen);
        exact = !exhausted_;
        return best_;
    }

    void seed_incumbent(const std::vector<std::size_t>& incumbent) {
        if (incumbent.size() > best_.size()) best_ = incumbent;
    }

private:
    std::size_t candidate_bound(const std::vector<std::size_t>& candidates) const {
        std::set<std::size_t> rows_seen, cols_seen;
        for (std::size_t v : candidates) {
            rows_seen.insert(g_.cells[v].first);
            cols_seen.insert(g_.cells[v].second);
        }
        return std::min(rows_seen.size(), cols_seen.size());
    }

    void explore(const std::vector<std::size_t>& candidates, std::vector<std::size_t>& chosen) {
        if (exhausted_) return;
        if (++nodes_ > budget_) { exhausted_ = true; return; }
        if (chosen.size() > best_.size()) best_ = chosen;
        if (candidates.empty()) return;
        if (chosen.size() + std::min(candidates.size(), candidate_bound(candidates)) <= best_.size()) return;

        const std::size_t v = candidates.front();

        // Include v.
        std::vector<std::size_t> rest;
        rest.reserve(candidates.size());
        for (std::size_t k = 1; k < candidates.size(); ++k) {
            if (!g_.conflicts[v][candidates[k]]) rest.push_back(candidates[k]);
        }
        chosen.push_back(v);
        explore(rest, chosen);
        chosen.pop_back();

        // Exclude v.
        std::vector<std::size_t> without(candidates.begin() + 1, candidates.end());
        explore(without, chosen);
    }

    const ConflictGraph& g_;
    std::uint64_t budget_;
    std::uint64_t nodes_ = 0;
    bool exhausted_ = false;
    std::vector<std::size_t> best_;
};

inline NonnegativeMatrix left_certificate(const NonnegativeMatrix& a, const std::vector<IndexPair>& phi) {
    std::vector<Rational> entries(phi.size() * a.rows());
    for (std::size_t k = 0; k < phi.size(); ++k) {
        entries[k * a.rows() + phi[k].first] = a(phi[k].first, phi[k].second).reciprocal();
    }
    return NonnegativeMatrix(phi.size(), a.rows(), std::move(entries));
}

inline NonnegativeMatrix right_certificate(const NonnegativeMatrix& a, const std::vector<IndexPair>& phi) {
    std::vector<Rational> entries(phi.size() * a.cols());
    for (std::size_t k = 0; k < phi.size(); ++k) {
        entries[k * a.cols() + phi[k].second] = Rational(1);
    }
    return NonnegativeMatrix(phi.size(), a.cols(), std::move(entries));
}

}  // namespace detail

/*
 * Nonnegative subrank: the maximum induced matching of supp(A), found by
 * branch and bound over the conflict graph of support cells. The
 * conflict graph splits into connected components that are solved
 * independently; this makes the value additive over direct summands by
 * construction. Certificates place the matched entries' reciprocals on
 * the left so that certificate_left * A * certificate_right^T = I_size
 * stays inside the rationals.
 */
inline MatchingResult subrank(const NonnegativeMatrix& a, const SubrankOptions& options = {}) {
    MatchingResult result;
    if (!options.initial_matching.empty() && !is_induced_matching(a, options.initial_matching)) {
        throw DomainError("initial_matching is not an induced matching");
    }

    // Supports too large for the quadratic conflict graph get a greedy
    // extension of the warm start over a capped prefix of the cells;
    // still a valid matching, flagged as a lower bound only.
    const auto all_cells = support(a).cells();
    if (all_cells.size() > options.max_conflict_cells) {
        result.matching = options.initial_matching;
        std::sort(result.matching.begin(), result.matching.end());
        auto compatible = [&](const IndexPair& u, const IndexPair& v) {
            return u.first != v.first && u.second != v.second &&
                   a(u.first, v.second).is_zero() && a(v.first, u.second).is_zero();
        };
        for (std::size_t k = 0; k < std::min(all_cells.size(), options.max_conflict_cells); ++k) {
            bool ok = true;
            for (const auto& c : result.matching) {
                if (!compatible(c, all_cells[k])) { ok = false; break; }
            }
            if (ok) result.matching.push_back(all_cells[k]);
        }
        std::sort(result.matching.begin(), result.matching.end());
        result.size = result.matching.size();
        result.exact = false;
        result.certificate_left = detail::left_certificate(a, result.matching);
        result.certificate_right = detail::right_certificate(a, result.matching);
        return result;
    }

    detail::ConflictGraph g = detail::build_conflict_graph(a);
    const std::size_t s = g.cells.size();

    // Connected components of the conflict graph.
    std::vector<int> component(s, -1);
    std::vector<std::vector<std::size_t>> members;
    for (std::size_t v = 0; v < s; ++v) {
        if (component[v] != -1) continue;
        std::vector<std::size_t> stack{v};
        component[v] = static_cast<int>(members.size());
        members.emplace_back();
        while (!stack.empty()) {
            std::size_t u = stack.back();
            stack.pop_back();
            members.back().push_back(u);
            for (std::size_t w = 0; w < s; ++w) {
                if (g.conflicts[u][w] && component[w] == -1) {
                    component[w] = component[u];
                    stack.push_back(w);
                }
            }
        }
    }

    // Map the warm start onto components.
    std::vector<std::vector<std::size_t>> warm(members.size());
    for (const auto& cell : options.initial_matching) {
        auto it = std::lower_bound(g.cells.begin(), g.cells.end(), cell);
        if (it == g.cells.end() || *it != cell) continue;
        std::size_t v = static_cast<std::size_t>(it - g.cells.begin());
        warm[static_cast<std::size_t>(component[v])].push_back(v);
    }

    std::vector<std::size_t> picked;
    bool exact = true;
    for (std::size_t c = 0; c < members.size(); ++c) {
        std::vector<std::size_t> order = members[c];
        std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
            if (g.degree[x] != g.degree[y]) return g.degree[x] < g.degree[y];
            return x < y;
        });
        detail::MatchingSearch search(g, options.node_budget);
        search.seed_incumbent(warm[c]);
        bool comp_exact = true;
        auto comp_best = search.solve(order, comp_exact);
        exact = exact && comp_exact;
        picked.insert(picked.end(), comp_best.begin(), comp_best.end());
    }

    for (std::size_t v : picked) result.matching.push_back(g.cells[v]);
    std::sort(result.matching.begin(), result.matching.end());
    result.size = result.matching.size();
    result.exact = exact;
    result.certificate_left = detail::left_certificate(a, result.matching);
    result.certificate_right = detail::right_certificate(a, result.matching);
    return result;
}

/*
 * Exhaustive oracle: walks every subset of supp(A) that is an induced
 * matching (the property is hereditary, so depth-first extension visits
 * each one exactly once) and returns the largest size seen. Guarded by a
 * hard support cap; no bounds, no ordering heuristics.
 */
inline std::size_t subrank_bruteforce(const NonnegativeMatrix& a, std::size_t max_support = 22) {
    const auto cells = support(a).cells();
    if (cells.size() > max_support) {
        throw BudgetError("support too large for exhaustive subrank search");
    }
    std::size_t best = 0;
    std::vector<IndexPair> chosen;
    auto compatible = [&](const IndexPair& u, const IndexPair& v) {
        return u.first != v.first && u.second != v.second &&
               a(u.first, v.second).is_zero() && a(v.first, u.second).is_zero();
    };
    auto recurse = [&](auto&& self, std::size_t next) -> void {
        best = std::max(best, chosen.size());
        for (std::size_t k = next; k < cells.size(); ++k) {
            bool ok = true;
            for (const auto& c : chosen) {
                if (!compatible(c, cells[k])) { ok = false; break; }
            }
            if (!ok) continue;
            chosen.push_back(cells[k]);
            self(self, k + 1);
            chosen.pop_back();
        }
    };
    recurse(recurse, 0);
    return best;
}

// Tensor composition of induced matchings: matchings of A and B combine
// cellwise into one of kronecker(A, B).
inline std::vector<IndexPair> tensor_matching(const std::vector<IndexPair>& phi_a,
                                              const std::vector<IndexPair>& phi_b,
                                              std::size_t rows_b, std::size_t cols_b) {
    std::vector<IndexPair> out;
    out.reserve(phi_a.size() * phi_b.size());
    for (const auto& [ra, ca] : phi_a) {
        for (const auto& [rb, cb] : phi_b) {
            out.emplace_back(ra * rows_b + rb, ca * cols_b + cb);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace nnspectra
