#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "nnspectra/nnspectra.hpp"

using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitInput = 2;
constexpr int kExitBudget = 3;
constexpr int kExitUnknown = 4;

struct GlobalOptions {
    std::string format = "json";
    std::string output;
    bool pretty = false;
    std::uint64_t seed = 1;
    std::uint64_t budget = 0;  // 0 keeps the library defaults
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw nnspectra::ParseError("cannot read file: " + path);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

nnspectra::NonnegativeMatrix parse_input(const std::string& raw, const GlobalOptions& opts) {
    return nnspectra::parse_matrix(
        raw, opts.format == "csv" ? nnspectra::MatrixFormat::csv : nnspectra::MatrixFormat::json);
}

nnspectra::SubrankOptions subrank_options(const GlobalOptions& opts) {
    nnspectra::SubrankOptions s;
    if (opts.budget > 0) s.node_budget = opts.budget;
    return s;
}

nnspectra::NnrankOptions nnrank_options(const GlobalOptions& opts) {
    nnspectra::NnrankOptions n;
    if (opts.budget > 0) {
        n.rectangle_budget = opts.budget;
        n.cover_options.rectangle_budget = opts.budget;
        n.cover_options.node_budget = opts.budget;
    }
    return n;
}

int emit(json envelope, const GlobalOptions& opts, int code) {
    std::string text = opts.pretty ? envelope.dump(2) : envelope.dump();
    text += "\n";
    if (!opts.output.empty()) {
        std::ofstream out(opts.output, std::ios::binary);
        out << text;
    } else {
        std::cout << text;
    }
    return code;
}

json envelope_for(const std::string& command, const std::string& digest, json parameters) {
    return json{{"command", command},
                {"input_digest", digest},
                {"parameters", std::move(parameters)},
                {"results", json::object()},
                {"warnings", json::array()}};
}

int run_param(const GlobalOptions& opts, const std::string& file, double tol,
              std::vector<std::uint64_t> seeds) {
    std::string raw = read_file(file);
    json params{{"file", file}, {"format", opts.format}, {"tol", tol}, {"seeds", seeds}};
    json env = envelope_for("param", fnv1a_hex(raw), params);

    auto a = parse_input(raw, opts);

    env["results"]["rank"] = nnspectra::rank(a).rank;

    auto matching = nnspectra::subrank(a, subrank_options(opts));
    env["results"]["subrank"] = nnspectra::matching_to_json(matching);
    if (!matching.exact) env["warnings"].push_back("subrank search budget exhausted; size is a lower bound");

    auto cover = nnspectra::fractional_cover(a, nnrank_options(opts).rectangle_budget);
    env["results"]["F"] = cover.value.to_string();
    env["results"]["cover"] = nnspectra::cover_to_json(cover);

    auto nnopts = nnrank_options(opts);
    nnopts.tol = tol;
    if (!seeds.empty()) nnopts.seeds = seeds;
    auto bounds = nnspectra::nnrank_bounds(a, nnopts);
    env["results"]["nnrank"] = nnspectra::nnrank_to_json(bounds);
    if (!bounds.upper_certified) env["warnings"].push_back("nnrank upper bound not certified");

    return emit(std::move(env), opts, kExitOk);
}

int run_asymptotic(const GlobalOptions& opts, const std::string& file, std::size_t max_power) {
    std::string raw = read_file(file);
    json params{{"file", file}, {"format", opts.format}, {"max_power", max_power}};
    json env = envelope_for("asymptotic", fnv1a_hex(raw), params);

    auto a = parse_input(raw, opts);

    nnspectra::AsymptoticOptions aopts;
    aopts.subrank = subrank_options(opts);
    aopts.nnrank = nnrank_options(opts);
    if (opts.budget > 0) aopts.cell_budget = opts.budget;
    auto sandwich = nnspectra::asymptotic_report(a, max_power, aopts);
    env["results"] = nnspectra::sandwich_to_json(sandwich);
    for (const auto& p : sandwich.per_power) {
        if (!p.subrank_exact) {
            env["warnings"].push_back("subrank at power " + std::to_string(p.power) +
                                      " hit the search budget; root is a lower bound");
        }
    }
    return emit(std::move(env), opts, kExitOk);
}

int run_pair_decider(const GlobalOptions& opts, const std::string& command, const std::string& file_a,
                     const std::string& file_b) {
    std::string raw_a = read_file(file_a);
    std::string raw_b = read_file(file_b);
    json params{{"file_a", file_a}, {"file_b", file_b}, {"format", opts.format}};
    json env = envelope_for(command, fnv1a_hex(raw_a + "\n--\n" + raw_b), params);

    auto a = parse_input(raw_a, opts);
    auto b = parse_input(raw_b, opts);

    nnspectra::CongruenceOptions copts;
    if (opts.budget > 0) copts.node_budget = opts.budget;
    auto result = command == "congruent" ? nnspectra::is_congruent(a, b, copts)
                                         : nnspectra::is_equivalent(a, b, copts);

    int code = kExitOk;
    switch (result.status) {
        case nnspectra::CongruenceStatus::congruent:
            env["results"]["status"] = "true";
            env["results"][command] = true;
            env["results"]["row_transform"] = nnspectra::monomial_to_json(*result.row_transform);
            env["results"]["col_transform"] = nnspectra::monomial_to_json(*result.col_transform);
            break;
        case nnspectra::CongruenceStatus::not_congruent:
            env["results"]["status"] = "false";
            env["results"][command] = false;
            break;
        case nnspectra::CongruenceStatus::unknown:
            env["results"]["status"] = "unknown";
            env["warnings"].push_back("search budget exhausted before a decision");
            code = kExitUnknown;
            break;
    }
    return emit(std::move(env), opts, code);
}

int run_cover(const GlobalOptions& opts, const std::string& file, unsigned fold) {
    std::string raw = read_file(file);
    json params{{"file", file}, {"format", opts.format}, {"t", fold}};
    json env = envelope_for("cover", fnv1a_hex(raw), params);

    auto a = parse_input(raw, opts);

    nnspectra::TfoldOptions topts;
    if (opts.budget > 0) {
        topts.rectangle_budget = opts.budget;
        topts.node_budget = opts.budget;
    }
    auto fractional = nnspectra::fractional_cover(a, topts.rectangle_budget);
    auto tfold = nnspectra::tfold_cover(a, fold, topts);
    env["results"]["F"] = fractional.value.to_string();
    env["results"]["F_t"] = tfold.value.to_string();
    env["results"]["ratio"] = (tfold.value / nnspectra::Rational(static_cast<long long>(fold))).to_string();
    env["results"]["certificate"] = nnspectra::cover_to_json(tfold);
    return emit(std::move(env), opts, kExitOk);
}

int run_triangular(const GlobalOptions& opts, const std::string& file, std::size_t power) {
    std::string raw = read_file(file);
    json params{{"file", file}, {"format", opts.format}, {"power", power}};
    json env = envelope_for("triangular", fnv1a_hex(raw), params);

    auto a = parse_input(raw, opts);
    auto cert = nnspectra::triangular_certificate(a, power);
    env["results"] = nnspectra::triangular_to_json(cert);
    return emit(std::move(env), opts, kExitOk);
}

int run_propcheck(const GlobalOptions& opts, const std::string& point, unsigned trials,
                  std::size_t max_dim) {
    json params{{"point", point}, {"trials", trials}, {"seed", opts.seed}, {"max_dim", max_dim}};
    json env = envelope_for("propcheck", fnv1a_hex(params.dump()), params);

    nnspectra::LawReport report;
    if (point == "rank") {
        report = nnspectra::spectral_point_check(nnspectra::SpectralPoint::rank, trials, opts.seed, max_dim);
    } else if (point == "fractional_cover") {
        report = nnspectra::spectral_point_check(nnspectra::SpectralPoint::fractional_cover, trials,
                                                 opts.seed, max_dim);
    } else {
        report = nnspectra::strassen_axiom_check(trials, opts.seed, max_dim);
    }
    env["results"] = nnspectra::law_report_to_json(report);
    return emit(std::move(env), opts, report.ok() ? kExitOk : kExitViolation);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact matrix parameters of the asymptotic spectrum of nonnegative matrices"};
    app.require_subcommand(1);

    GlobalOptions opts;
    if (const char* env_budget = std::getenv("NNSPECTRA_BUDGET")) {
        opts.budget = std::strtoull(env_budget, nullptr, 10);
    }
    app.add_option("--format", opts.format, "Matrix input format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    app.add_option("--output", opts.output, "Write the report to a file instead of stdout");
    app.add_flag("--pretty", opts.pretty, "Indent the JSON report");
    app.add_option("--seed", opts.seed, "Seed for randomized harnesses")->capture_default_str();
    app.add_option("--budget", opts.budget, "Uniform override for search/enumeration budgets");

    std::string file, file_b;
    double tol = 1e-9;
    std::vector<std::uint64_t> seeds;
    std::size_t max_power = 2;
    unsigned fold = 1;
    std::size_t cert_power = 2;
    std::string point = "rank";
    unsigned trials = 100;
    std::size_t max_dim = 3;

    auto* cmd_param = app.add_subcommand("param", "Rank, subrank, F and nnrank bounds of one matrix");
    cmd_param->add_option("file", file)->required();
    cmd_param->add_option("--tol", tol, "NMF acceptance tolerance")->capture_default_str();
    cmd_param->add_option("--seeds", seeds, "NMF restart seeds");

    auto* cmd_asym = app.add_subcommand("asymptotic", "Sandwich estimates under Kronecker powering");
    cmd_asym->add_option("file", file)->required();
    cmd_asym->add_option("--max-power", max_power, "Largest Kronecker power")->capture_default_str();

    auto* cmd_cong = app.add_subcommand("congruent", "Decide equality up to monomial transforms");
    cmd_cong->add_option("file_a", file)->required();
    cmd_cong->add_option("file_b", file_b)->required();

    auto* cmd_equiv = app.add_subcommand("equivalent", "Decide equality up to monomial transforms and zero padding");
    cmd_equiv->add_option("file_a", file)->required();
    cmd_equiv->add_option("file_b", file_b)->required();

    auto* cmd_cover = app.add_subcommand("cover", "t-fold covering number with certificates");
    cmd_cover->add_option("file", file)->required();
    cmd_cover->add_option("--t", fold, "Coverage threshold")->capture_default_str();

    auto* cmd_tri = app.add_subcommand("triangular", "Diagonal certificate family for triangular matrices");
    cmd_tri->add_option("file", file)->required();
    cmd_tri->add_option("--power", cert_power, "Kronecker power (multiple of the diagonal support)")
        ->capture_default_str();

    auto* cmd_prop = app.add_subcommand("propcheck", "Run a property harness");
    cmd_prop->add_option("--point", point, "Which harness to run")
        ->check(CLI::IsMember({"rank", "fractional_cover", "strassen"}))
        ->capture_default_str();
    cmd_prop->add_option("--trials", trials)->capture_default_str();
    cmd_prop->add_option("--max-dim", max_dim)->capture_default_str();

    // Global flags (--seed, --budget, --format, ...) may also appear
    // after the subcommand name.
    for (CLI::App* sub : {cmd_param, cmd_asym, cmd_cong, cmd_equiv, cmd_cover, cmd_tri, cmd_prop}) {
        sub->fallthrough();
    }

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_param->parsed()) return run_param(opts, file, tol, seeds);
        if (cmd_asym->parsed()) return run_asymptotic(opts, file, max_power);
        if (cmd_cong->parsed()) return run_pair_decider(opts, "congruent", file, file_b);
        if (cmd_equiv->parsed()) return run_pair_decider(opts, "equivalent", file, file_b);
        if (cmd_cover->parsed()) return run_cover(opts, file, fold);
        if (cmd_tri->parsed()) return run_triangular(opts, file, cert_power);
        if (cmd_prop->parsed()) return run_propcheck(opts, point, trials, max_dim);
    } catch (const nnspectra::BudgetError& e) {
        json env{{"error", e.what()}, {"kind", "budget"}};
        return emit(std::move(env), opts, kExitBudget);
    } catch (const nnspectra::ParseError& e) {
        json env{{"error", e.what()}, {"kind", "input"}};
        return emit(std::move(env), opts, kExitInput);
    } catch (const nnspectra::DomainError& e) {
        json env{{"error", e.what()}, {"kind", "input"}};
        return emit(std::move(env), opts, kExitInput);
    }
    return kExitOk;
}
