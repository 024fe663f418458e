#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "qwalk/cli/angle_expr.hpp"
#include "qwalk/cli/commands.hpp"

namespace qwalk::cli {
namespace {

struct Common {
    ModelArgs model;
    std::string out;
    std::string json;
};

void add_model_flags(CLI::App* sub, Common& c)
{
    sub->add_option("--model", c.model.model,
                    "wojcik | one-defect | two-phase-defect | complete-two-phase | hadamard");
    sub->add_option("--phi", c.model.phi, "Wojcik phase, in (0, 1)");
    sub->add_option("--xi", c.model.xi, "one-defect angle, radians (pi literals allowed)");
    sub->add_option("--sigma", c.model.sigma, "single two-phase sigma, radians");
    sub->add_option("--sigma-plus", c.model.sigma_plus, "explicit sigma+ (needs --sigma-minus)");
    sub->add_option("--sigma-minus", c.model.sigma_minus, "explicit sigma-");
    sub->add_option("--spec", c.model.spec, "flat model text, e.g. \"kind=wojcik;phi=0.5\"");
}

void add_output_flags(CLI::App* sub, Common& c)
{
    sub->add_option("--out", c.out, "CSV destination (default stdout)");
    sub->add_option("--json", c.json, "also write a JSON mirror to this path");
}

std::pair<double, double> default_range(ModelKind kind)
{
    switch (kind) {
    case ModelKind::Wojcik:
        return {0.01, 0.99};
    case ModelKind::OneDefect:
        return {0.0, kPi / 2};
    default:
        return {0.0, 2.0 * kPi};
    }
}

void emit(const Report& report, const Common& c, std::ostream& out)
{
    if (c.out.empty() || c.out == "-") {
        write_csv(out, report.table);
    } else {
        std::ofstream f(c.out);
        if (!f)
            throw DomainError("cannot open " + c.out);
        write_csv(f, report.table);
    }
    if (!c.json.empty()) {
        std::ofstream f(c.json);
        if (!f)
            throw DomainError("cannot open " + c.json);
        f << to_json(report.table);
    }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Two-state quantum walks on the line: closed-form point spectra, numeric checks, evolution"};
    app.name("qwalk");
    app.set_version_flag("--version", kToolVersion);
    app.require_subcommand(1);

    Common common;
    std::string branch = "all";
    std::string range;
    int steps = -1;
    double tol = -1.0;
    int grid = 4096;
    int oracle_n = -1;
    double participation = 0.05;
    bool verify = false;
    int samples = 20;
    std::string initial = "symmetric";
    int bins = 256;

    auto* sweep = app.add_subcommand("sweep", "closed-form eigenvalues along a parameter grid");
    add_model_flags(sweep, common);
    add_output_flags(sweep, common);
    sweep->add_option("--branch", branch, "all, +i, -i, or 1..4 (comma list)");
    sweep->add_option("--range", range, "lo:hi, e.g. 0:5pi/4");
    sweep->add_option("--steps", steps, "grid points including both ends (default 100)");
    sweep->add_flag("--verify", verify, "cross-check every value with the numeric root search");
    sweep->add_option("--tol", tol, "disagreement threshold on the circle (default 1e-6)");
    sweep->add_option("--grid", grid, "root-search grid size (>= 256)");

    auto* verify_cmd = app.add_subcommand("verify", "closed forms against the numeric solver");
    add_model_flags(verify_cmd, common);
    add_output_flags(verify_cmd, common);
    verify_cmd->add_option("--branch", branch, "all, +i, -i, or 1..4 (comma list)");
    verify_cmd->add_option("--samples", samples, "points per branch region when no parameter is given");
    verify_cmd->add_option("--tol", tol, "angle tolerance (default 1e-8)");
    verify_cmd->add_option("--grid", grid, "root-search grid size (>= 256)");
    verify_cmd->add_option("--oracle-n", oracle_n, "also diagonalize the periodic truncation on [-N, N]");
    verify_cmd->add_option("--participation", participation, "oracle participation threshold");

    auto* evolve = app.add_subcommand("evolve", "origin probability over time");
    add_model_flags(evolve, common);
    add_output_flags(evolve, common);
    evolve->add_option("--steps", steps, "number of time steps T (default 2000)");
    evolve->add_option("--initial", initial, "symmetric, left, right, or L,R complex amplitudes");

    auto* spectrum = app.add_subcommand("spectrum", "localized eigenvalues of the truncated operator");
    add_model_flags(spectrum, common);
    add_output_flags(spectrum, common);
    spectrum->add_option("--oracle-n", oracle_n, "half width N of the window (default 150)");
    spectrum->add_option("--participation", participation, "inverse participation ratio threshold");

    auto* coverage = app.add_subcommand("coverage", "how much of the off-band circle the eigenvalues sweep");
    std::vector<std::string> models;
    coverage->add_option("--model", models, "model kinds (default all four)")->delimiter(',');
    add_output_flags(coverage, common);
    coverage->add_option("--branch", branch, "all, or a branch list for a single model");
    coverage->add_option("--steps", steps, "parameter points per branch (default 2000)");
    coverage->add_option("--bins", bins, "arc bins over the full circle (>= 64)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        SearchOptions search;
        search.grid_size = grid;
        Report report;
        if (*sweep) {
            const ModelSelection sel = resolve_model(common.model);
            if (sel.hadamard)
                throw ParseError("sweep needs a model with a closed form");
            if (sel.has_point())
                throw ParseError("sweep takes --range, not a fixed parameter");
            SweepOptions o;
            o.kind = sel.kind;
            o.branches = parse_branches(sel.kind, branch);
            if (range.empty()) {
                const auto [lo, hi] = default_range(sel.kind);
                o.range = {lo, hi};
            } else {
                o.range = parse_range(range);
            }
            o.steps = steps < 0 ? 100 : steps;
            o.verify = verify;
            o.tol = tol < 0 ? 1e-6 : tol;
            o.search = search;
            report = cmd_sweep(o);
        } else if (*verify_cmd) {
            VerifyOptions o;
            o.model = resolve_model(common.model);
            if (!o.model.hadamard)
                o.branches = parse_branches(o.model.kind, branch);
            o.samples = samples;
            o.tol = tol < 0 ? 1e-8 : tol;
            o.oracle_n = oracle_n < 0 ? 0 : oracle_n;
            o.participation = participation;
            o.search = search;
            report = cmd_verify(o);
        } else if (*evolve) {
            const ModelSelection sel = resolve_model(common.model);
            EvolveOptions o;
            o.spec = sel.spec();
            o.steps = steps < 0 ? 2000 : steps;
            const auto psi = parse_initial(initial);
            o.left = psi[0];
            o.right = psi[1];
            o.initial_label = initial;
            report = cmd_evolve(o);
        } else if (*spectrum) {
            const ModelSelection sel = resolve_model(common.model);
            SpectrumOptions o;
            o.spec = sel.spec();
            o.half_width = oracle_n < 0 ? 150 : oracle_n;
            o.participation = participation;
            report = cmd_spectrum(o);
        } else {
            CoverageOptions o;
            for (const auto& m : models)
                o.kinds.push_back(parse_model_kind(m));
            if (o.kinds.empty())
                o.kinds = {ModelKind::Wojcik, ModelKind::OneDefect, ModelKind::TwoPhaseDefect,
                           ModelKind::CompleteTwoPhase};
            if (branch != "all") {
                if (o.kinds.size() != 1)
                    throw ParseError("--branch needs exactly one --model");
                o.branches = parse_branches(o.kinds.front(), branch);
            }
            o.steps = steps < 0 ? 2000 : steps;
            o.bins = bins;
            report = cmd_coverage(o);
        }
        emit(report, common, out);
        return report.exit_code;
    } catch (const ParseError& e) {
        err << "qwalk: " << e.what() << '\n';
        return kExitUsage;
    } catch (const DomainError& e) {
        err << "qwalk: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        err << "qwalk: solver failure: " << e.what() << '\n';
        return kExitSolver;
    }
}

}  // namespace qwalk::cli
