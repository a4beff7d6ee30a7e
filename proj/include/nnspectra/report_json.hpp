#pragma once

#include <json.hpp>

#include "nnspectra/asymptotic.hpp"
#include "nnspectra/congruence.hpp"
#include "nnspectra/cover.hpp"
#include "nnspectra/induced_matching.hpp"
#include "nnspectra/laws.hpp"
#include "nnspectra/matrix_io.hpp"
#include "nnspectra/monomial.hpp"
#include "nnspectra/nnrank.hpp"
#include "nnspectra/triangular.hpp"

namespace nnspectra {

// Exact values serialize as reduced "p/q" strings; floats appear only
// under keys that name them as such (roots, residuals).

inline nlohmann::json rectangle_to_json(const Rectangle& r) {
    return nlohmann::json{{"rows", r.row_set}, {"cols", r.col_set}};
}

inline nlohmann::json cover_to_json(const CoverSolution& sol) {
    nlohmann::json out;
    out["mode"] = sol.mode == CoverMode::fractional ? "fractional" : "integer_tfold";
    out["fold"] = sol.fold;
    out["value"] = sol.value.to_string();
    nlohmann::json primal = nlohmann::json::array();
    for (std::size_t r = 0; r < sol.rectangles.size(); ++r) {
        if (sol.primal_weights[r].is_zero()) continue;
        nlohmann::json item = rectangle_to_json(sol.rectangles[r]);
        item["weight"] = sol.primal_weights[r].to_string();
        primal.push_back(std::move(item));
    }
    out["primal"] = std::move(primal);
    if (sol.mode == CoverMode::fractional) {
        nlohmann::json dual = nlohmann::json::array();
        for (std::size_t c = 0; c < sol.cells.size(); ++c) {
            if (sol.dual_weights[c].is_zero()) continue;
            dual.push_back(nlohmann::json{{"cell", {sol.cells[c].first, sol.cells[c].second}},
                                          {"weight", sol.dual_weights[c].to_string()}});
        }
        out["dual"] = std::move(dual);
    }
    return out;
}

inline nlohmann::json matching_to_json(const MatchingResult& m) {
    nlohmann::json pairs = nlohmann::json::array();
    for (const auto& [i, j] : m.matching) pairs.push_back({i, j});
    return nlohmann::json{{"size", m.size},
                          {"exact", m.exact},
                          {"pairs", std::move(pairs)},
                          {"certificate_left", matrix_to_json(m.certificate_left)},
                          {"certificate_right", matrix_to_json(m.certificate_right)}};
}

inline nlohmann::json nnrank_to_json(const NnrankBounds& b) {
    nlohmann::json out{{"lower", b.lower}, {"upper", b.upper}, {"certified", b.upper_certified},
                       {"lower_sources", b.lower_sources}};
    if (b.certified_factors) {
        out["factors"] = nlohmann::json{{"w", matrix_to_json(b.certified_factors->w)},
                                        {"h", matrix_to_json(b.certified_factors->h)}};
    } else if (b.factorization) {
        out["residual"] = b.factorization->residual;
    }
    return out;
}

inline nlohmann::json monomial_to_json(const MonomialTransform& t) {
    nlohmann::json scales = nlohmann::json::array();
    for (const auto& s : t.scales) scales.push_back(s.to_string());
    return nlohmann::json{{"permutation", t.permutation}, {"scales", std::move(scales)}};
}

inline nlohmann::json sandwich_to_json(const AsymptoticSandwich& s) {
    nlohmann::json per_power = nlohmann::json::array();
    for (const PowerSample& p : s.per_power) {
        per_power.push_back(nlohmann::json{{"n", p.power},
                                           {"subrank", p.subrank_value.str()},
                                           {"subrank_exact", p.subrank_exact},
                                           {"subrank_root", p.subrank_root},
                                           {"nnrank_upper", p.nnrank_upper.str()},
                                           {"nnrank_certified", p.nnrank_certified},
                                           {"nnrank_root", p.nnrank_root}});
    }
    return nlohmann::json{
        {"asynrank", {{"lower", s.asynrank_lower.to_string()}, {"upper", s.asynrank_upper.to_string()}}},
        {"asympsubrank",
         {{"lower", s.asympsubrank_lower.to_string()}, {"upper", s.asympsubrank_upper.to_string()}}},
        {"per_power", std::move(per_power)},
        {"certificates",
         {{"rank", s.rank_value},
          {"fractional_cover", s.cover_value.to_string()},
          {"triangular_collapse", s.triangular_collapse}}}};
}

inline nlohmann::json triangular_to_json(const TriangularCertificate& c) {
    return nlohmann::json{{"diagonal_support", c.diagonal_support},
                          {"d", c.d},
                          {"power", c.power},
                          {"count", c.count.str()},
                          {"members", c.digits}};
}

inline nlohmann::json law_report_to_json(const LawReport& r) {
    return nlohmann::json{{"trials", r.trials},
                          {"checks", r.checks},
                          {"skipped", r.skipped},
                          {"violations", r.violations},
                          {"ok", r.ok()}};
}

}  // namespace nnspectra
