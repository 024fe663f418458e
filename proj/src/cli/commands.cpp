#include "qwalk/cli/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <sstream>
#include <thread>

#include "qwalk/cli/angle_expr.hpp"
#include "qwalk/measure.hpp"

namespace qwalk::cli {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Runs body(0..n-1) on a few threads; results go to caller-owned slots so
// the output order never depends on scheduling. The exception of the lowest
// failing index is rethrown.
template <class Body>
void parallel_for(std::size_t n, Body body)
{
    const std::size_t workers = std::min<std::size_t>(n, std::max(1u, std::thread::hardware_concurrency()));
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};
    const auto work = [&] {
        for (std::size_t k; (k = next.fetch_add(1)) < n;) {
            try {
                body(k);
            } catch (...) {
                errors[k] = std::current_exception();
            }
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w)
            pool.emplace_back(work);
    }
    for (auto& e : errors)
        if (e)
            std::rethrow_exception(e);
}

std::string join_branches(const std::vector<BranchLabel>& branches)
{
    std::string out;
    for (const auto& b : branches)
        out += (out.empty() ? "" : ",") + b.name();
    return out;
}

bool is_two_phase(ModelKind kind)
{
    return kind == ModelKind::TwoPhaseDefect || kind == ModelKind::CompleteTwoPhase;
}

std::string convention(ModelKind kind)
{
    if (kind == ModelKind::TwoPhaseDefect)
        return "sigma_plus=sigma;sigma_minus=-sigma";
    if (kind == ModelKind::CompleteTwoPhase)
        return "sigma_plus=2*sigma;sigma_minus=-2*sigma";
    return "none";
}

void common_meta(Table& t, const std::string& command)
{
    t.add_meta("tool", "qwalk");
    t.add_meta("version", kToolVersion);
    t.add_meta("command", command);
}

// Decay moduli and eigen-equation residual of the tail construction at lambda.
struct TailCheck {
    double decay_right = kNaN;
    double decay_left = kNaN;
    double residual = kNaN;
    std::string error;
};

TailCheck check_tails(const CoinField& field, const UnimodularValue& lambda)
{
    TailCheck c;
    try {
        const auto cand = build_eigencandidate(field, lambda);
        c.decay_right = cand.decay_right;
        c.decay_left = cand.decay_left;
        c.residual = cand.matching_residual;
    } catch (const NoContraction&) {
        // on the band: no decaying tail, nothing to report
    } catch (const Error& e) {
        c.error = e.what();
    }
    return c;
}

struct Nearest {
    const EigenCandidate* root = nullptr;
    double distance = kNaN;
};

Nearest nearest_root(const std::vector<EigenCandidate>& roots, const UnimodularValue& lambda)
{
    Nearest best;
    for (const auto& r : roots) {
        const double d = circle_distance(r.lambda, lambda);
        if (!best.root || d < best.distance)
            best = {&r, d};
    }
    return best;
}

void check_domain(ModelKind kind, double lo, double hi)
{
    if (kind == ModelKind::Wojcik && !(lo > 0.0 && hi < 1.0))
        throw DomainError("phi range must lie inside (0, 1)");
    if (kind == ModelKind::OneDefect && !(lo >= 0.0 && hi <= kPi / 2))
        throw DomainError("xi range must lie inside [0, pi/2]");
}

std::vector<BranchLabel> canonical(ModelKind kind, const std::vector<BranchLabel>& branches)
{
    if (branches.empty())
        return all_branches(kind);
    std::vector<BranchLabel> out;
    for (const auto& b : all_branches(kind))
        if (std::find(branches.begin(), branches.end(), b) != branches.end())
            out.push_back(b);
    return out;
}

Cell real_or_empty(const std::optional<double>& v)
{
    return v ? Cell(*v) : Cell();
}

}  // namespace

// ---------------------------------------------------------------------------

ModelSpec ModelSelection::spec() const
{
    if (hadamard)
        return ModelSpec::complete_two_phase(0.0, 0.0);
    if (param)
        return spec_for_parameter(kind, *param);
    if (sigma_pair) {
        const auto [sp, sm] = *sigma_pair;
        return kind == ModelKind::TwoPhaseDefect ? ModelSpec::two_phase_defect(sp, sm)
                                                 : ModelSpec::complete_two_phase(sp, sm);
    }
    throw DomainError("model " + name() + " needs a parameter value");
}

std::string ModelSelection::name() const
{
    return hadamard ? "hadamard" : std::string(to_string(kind));
}

ModelSelection resolve_model(const ModelArgs& args)
{
    ModelSelection sel;
    if (args.spec) {
        if (!args.model.empty() || args.phi || args.xi || args.sigma || args.sigma_plus || args.sigma_minus)
            throw ParseError("--spec cannot be combined with other model flags");
        const ModelSpec spec = ModelSpec::parse(*args.spec);
        spec.validate();
        sel.kind = spec.kind;
        switch (spec.kind) {
        case ModelKind::Wojcik:
            sel.param = spec.param("phi");
            break;
        case ModelKind::OneDefect:
            sel.param = spec.param("xi");
            break;
        default:
            sel.sigma_pair = {{spec.param("sigma_plus"), spec.param("sigma_minus")}};
        }
        return sel;
    }

    if (args.model.empty())
        throw ParseError("--model or --spec is required");
    if (args.model == "hadamard") {
        if (args.phi || args.xi || args.sigma || args.sigma_plus || args.sigma_minus)
            throw ParseError("hadamard takes no parameters");
        sel.kind = ModelKind::CompleteTwoPhase;
        sel.hadamard = true;
        return sel;
    }
    sel.kind = parse_model_kind(args.model);

    const auto reject = [&](const std::optional<std::string>& flag, const char* name) {
        if (flag)
            throw ParseError(std::string("--") + name + " does not apply to " + args.model);
    };
    switch (sel.kind) {
    case ModelKind::Wojcik:
        reject(args.xi, "xi");
        reject(args.sigma, "sigma");
        reject(args.sigma_plus, "sigma-plus");
        reject(args.sigma_minus, "sigma-minus");
        if (args.phi)
            sel.param = parse_angle(*args.phi);
        break;
    case ModelKind::OneDefect:
        reject(args.phi, "phi");
        reject(args.sigma, "sigma");
        reject(args.sigma_plus, "sigma-plus");
        reject(args.sigma_minus, "sigma-minus");
        if (args.xi)
            sel.param = parse_angle(*args.xi);
        break;
    default:
        reject(args.phi, "phi");
        reject(args.xi, "xi");
        if (args.sigma && (args.sigma_plus || args.sigma_minus))
            throw ParseError("--sigma excludes --sigma-plus / --sigma-minus");
        if (args.sigma)
            sel.param = parse_angle(*args.sigma);
        if (args.sigma_plus || args.sigma_minus) {
            if (!(args.sigma_plus && args.sigma_minus))
                throw ParseError("--sigma-plus and --sigma-minus go together");
            sel.sigma_pair = {{parse_angle(*args.sigma_plus), parse_angle(*args.sigma_minus)}};
        }
    }
    if (sel.has_point())
        sel.spec().validate();
    return sel;
}

std::vector<BranchLabel> parse_branches(ModelKind kind, const std::string& text)
{
    if (text.empty() || text == "all")
        return all_branches(kind);
    std::vector<BranchLabel> picked;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto b = BranchLabel::parse(kind, item);
        if (std::find(picked.begin(), picked.end(), b) == picked.end())
            picked.push_back(b);
    }
    if (picked.empty())
        throw ParseError("no branch given");
    return canonical(kind, picked);
}

// ---------------------------------------------------------------------------

Report cmd_sweep(const SweepOptions& options)
{
    if (options.steps < 2)
        throw DomainError("sweep needs --steps >= 2");
    if (options.search.grid_size < 256)
        throw DomainError("--grid must be >= 256");
    const auto [lo, hi] = options.range;
    if (!(std::isfinite(lo) && std::isfinite(hi) && lo < hi))
        throw DomainError("sweep range needs finite lo < hi");
    check_domain(options.kind, lo, hi);
    const auto branches = canonical(options.kind, options.branches);

    Report report;
    Table& t = report.table;
    common_meta(t, "sweep");
    t.add_meta("model", std::string(to_string(options.kind)));
    t.add_meta("branches", join_branches(branches));
    t.add_meta("range", format_real(lo) + ":" + format_real(hi));
    t.add_meta("steps", std::to_string(options.steps));
    t.add_meta("sigma_convention", convention(options.kind));
    t.add_meta("verify", options.verify ? "true" : "false");
    if (options.verify) {
        t.add_meta("tol", format_real(options.tol));
        t.add_meta("grid", std::to_string(options.search.grid_size));
    }

    t.columns = {"model", "branch", "index", "param", "sigma_plus", "sigma_minus", "re", "im", "theta",
                 "in_region", "on_continuous_spectrum", "decay_right", "decay_left", "matching_residual"};
    if (options.verify)
        t.columns.insert(t.columns.end(), {"numeric_re", "numeric_im", "delta_theta", "disagree"});
    t.columns.push_back("error");

    const std::size_t n = static_cast<std::size_t>(options.steps);
    std::vector<std::vector<std::vector<Cell>>> slots(n);
    parallel_for(n, [&](std::size_t k) {
        const double p = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n - 1);
        std::optional<double> sp, sm;
        if (is_two_phase(options.kind)) {
            const auto pair = sigma_pair(options.kind, p);
            sp = pair[0];
            sm = pair[1];
        }
        const auto blank = [&](const BranchLabel& b, int index, const std::string& error) {
            std::vector<Cell> row{std::string(to_string(options.kind)), b.name(), static_cast<long long>(index), p,
                                  real_or_empty(sp), real_or_empty(sm)};
            row.resize(t.columns.size() - 1);
            row.push_back(error);
            return row;
        };

        std::optional<CoinField> field;
        std::string field_error;
        try {
            field = build_field(spec_for_parameter(options.kind, p));
        } catch (const Error& e) {
            field_error = e.what();
        }
        std::vector<EigenCandidate> roots;
        if (field && options.verify) {
            try {
                roots = point_spectrum_search(*field, options.search);
            } catch (const Error& e) {
                field_error = std::string("numeric search: ") + e.what();
            }
        }

        for (const auto& b : branches) {
            const bool in_region = in_admissible_region(b, p);
            std::vector<BranchValue> values;
            std::string error = field_error;
            if (error.empty()) {
                try {
                    values = branch_eigenvalues(b, p);
                } catch (const Error& e) {
                    error = e.what();
                }
            }
            if (!error.empty() || !field) {
                for (int idx : b.eigen_indices())
                    slots[k].push_back(blank(b, idx, error));
                continue;
            }
            for (const auto& v : values) {
                const auto tails = check_tails(*field, v.value);
                std::vector<Cell> row{std::string(to_string(options.kind)),
                                      b.name(),
                                      static_cast<long long>(v.index),
                                      p,
                                      real_or_empty(sp),
                                      real_or_empty(sm),
                                      v.value.value().real(),
                                      v.value.value().imag(),
                                      v.value.angle(),
                                      in_region,
                                      continuous_spectrum_contains(v.value),
                                      tails.decay_right,
                                      tails.decay_left,
                                      tails.residual};
                if (options.verify) {
                    const auto near = nearest_root(roots, v.value);
                    const bool disagree = !(near.distance <= options.tol);
                    row.push_back(near.root ? Cell(near.root->lambda.value().real()) : Cell());
                    row.push_back(near.root ? Cell(near.root->lambda.value().imag()) : Cell());
                    row.push_back(near.root ? Cell(near.distance) : Cell());
                    row.push_back(disagree ? Cell(std::string("DISAGREE")) : Cell(std::string()));
                }
                row.push_back(tails.error);
                slots[k].push_back(std::move(row));
            }
        }
    });

    long long records = 0, in_region = 0, disagreements = 0, errors = 0;
    const std::size_t region_col = t.column("in_region");
    const std::size_t error_col = t.column("error");
    for (auto& slot : slots) {
        for (auto& row : slot) {
            ++records;
            const bool inside = std::holds_alternative<bool>(row[region_col]) && std::get<bool>(row[region_col]);
            in_region += inside;
            errors += !std::get<std::string>(row[error_col]).empty();
            if (options.verify) {
                const auto& flag = row[t.column("disagree")];
                if (std::holds_alternative<std::string>(flag) && !std::get<std::string>(flag).empty() && inside)
                    ++disagreements;
            }
            t.add_row(std::move(row));
        }
    }
    t.add_summary("records", std::to_string(records));
    t.add_summary("in_region_records", std::to_string(in_region));
    t.add_summary("error_records", std::to_string(errors));
    if (options.verify) {
        t.add_summary("in_region_disagreements", std::to_string(disagreements));
        if (disagreements > 0)
            report.exit_code = kExitVerification;
    }
    return report;
}

// ---------------------------------------------------------------------------

namespace {

struct VerifyRow {
    std::string branch;
    std::optional<int> index;
    std::optional<double> param;
    std::optional<UnimodularValue> closed;
    std::optional<bool> in_region;
    std::optional<bool> expect_root;
    Nearest near;
    TailCheck tails;
    std::string status;
};

std::vector<Cell> to_cells(const std::string& model, const VerifyRow& r)
{
    const auto opt_bool = [](const std::optional<bool>& b) { return b ? Cell(*b) : Cell(); };
    return {model,
            r.branch,
            r.index ? Cell(static_cast<long long>(*r.index)) : Cell(),
            real_or_empty(r.param),
            r.closed ? Cell(r.closed->value().real()) : Cell(),
            r.closed ? Cell(r.closed->value().imag()) : Cell(),
            opt_bool(r.in_region),
            opt_bool(r.expect_root),
            r.near.root ? Cell(r.near.root->lambda.value().real()) : Cell(),
            r.near.root ? Cell(r.near.root->lambda.value().imag()) : Cell(),
            r.near.root ? Cell(r.near.distance) : Cell(),
            r.near.root ? Cell(r.near.root->matching_residual) : Cell(),
            r.near.root ? Cell(r.near.root->decay_right) : Cell(r.tails.decay_right),
            r.near.root ? Cell(r.near.root->decay_left) : Cell(r.tails.decay_left),
            r.status};
}

}  // namespace

Report cmd_verify(const VerifyOptions& options)
{
    if (options.samples < 1)
        throw DomainError("verify needs --samples >= 1");
    if (options.search.grid_size < 256)
        throw DomainError("--grid must be >= 256");
    if (options.oracle_n != 0 && options.oracle_n < 50)
        throw DomainError("--oracle-n must be 0 (off) or >= 50");
    const ModelSelection& sel = options.model;
    const ModelKind kind = sel.kind;
    const auto branches = sel.hadamard ? std::vector<BranchLabel>{} : canonical(kind, options.branches);
    const double tol = options.tol;
    const double rtol = options.residual_tol;

    Report report;
    Table& t = report.table;
    common_meta(t, "verify");
    t.add_meta("model", sel.name());
    t.add_meta("branches", sel.hadamard ? "none" : join_branches(branches));
    t.add_meta("sigma_convention", sel.hadamard ? "none" : convention(kind));
    t.add_meta("tol", format_real(tol));
    t.add_meta("residual_tol", format_real(rtol));
    t.add_meta("grid", std::to_string(options.search.grid_size));
    t.columns = {"model", "branch", "index", "param", "closed_re", "closed_im", "in_region", "expect_root",
                 "numeric_re", "numeric_im", "delta_theta", "residual", "decay_right", "decay_left", "status"};

    const auto matched = [&](const Nearest& n) {
        return n.root && n.distance < tol && n.root->matching_residual < rtol;
    };
    long long failures = 0;

    if (!sel.has_point()) {
        t.add_meta("mode", "sampled");
        t.add_meta("samples", std::to_string(options.samples));
        t.add_meta("margin", "0.001");
        struct Task {
            BranchLabel branch;
            double param;
        };
        std::vector<Task> tasks;
        for (const auto& b : branches)
            for (double p : admissible_region(kind, b).interior_samples(options.samples, 1e-3))
                tasks.push_back({b, p});
        std::vector<std::vector<VerifyRow>> slots(tasks.size());
        parallel_for(tasks.size(), [&](std::size_t k) {
            const auto& task = tasks[k];
            const CoinField field = build_field(spec_for_parameter(kind, task.param));
            const auto roots = point_spectrum_search(field, options.search);
            for (const auto& v : branch_eigenvalues(task.branch, task.param)) {
                VerifyRow r;
                r.branch = task.branch.name();
                r.index = v.index;
                r.param = task.param;
                r.closed = v.value;
                r.in_region = true;
                r.expect_root = true;
                r.near = nearest_root(roots, v.value);
                r.status = matched(r.near) ? "ok" : "FAIL";
                slots[k].push_back(std::move(r));
            }
        });
        double worst = 0.0;
        for (auto& slot : slots)
            for (auto& r : slot) {
                failures += r.status != "ok";
                if (r.near.root)
                    worst = std::max(worst, r.near.distance);
                else
                    worst = std::numeric_limits<double>::infinity();
                t.add_row(to_cells(sel.name(), r));
            }
        t.add_summary("checked", std::to_string(t.rows.size()));
        t.add_summary("max_delta_theta", format_real(worst));
    } else {
        t.add_meta("mode", "point");
        const ModelSpec spec = sel.spec();
        t.add_meta("spec", spec.serialize());
        const CoinField field = build_field(spec);
        const auto roots = point_spectrum_search(field, options.search);

        // closed forms available at this point
        std::vector<VerifyRow> rows;
        std::optional<double> single = sel.param;
        if (!single && sel.sigma_pair && kind == ModelKind::TwoPhaseDefect &&
            (*sel.sigma_pair)[1] == -(*sel.sigma_pair)[0])
            single = (*sel.sigma_pair)[0];
        if (!sel.hadamard && single) {
            for (const auto& b : branches) {
                const bool inside = in_admissible_region(b, *single);
                for (const auto& v : branch_eigenvalues(b, *single)) {
                    VerifyRow r;
                    r.branch = b.name();
                    r.index = v.index;
                    r.param = *single;
                    r.closed = v.value;
                    r.in_region = inside;
                    r.expect_root = inside;
                    rows.push_back(std::move(r));
                }
            }
        } else if (!sel.hadamard && sel.sigma_pair && kind == ModelKind::CompleteTwoPhase) {
            const auto cf = complete_two_phase_eigenvalues((*sel.sigma_pair)[0], (*sel.sigma_pair)[1]);
            for (const auto& b : branches) {
                VerifyRow r;
                r.branch = b.name();
                r.index = b.id;
                r.closed = cf.values[static_cast<std::size_t>(b.id - 1)];
                rows.push_back(std::move(r));
            }
        }
        for (auto& r : rows) {
            r.near = nearest_root(roots, *r.closed);
            const bool hit = matched(r.near);
            if (!hit)
                r.tails = check_tails(field, *r.closed);
            if (!r.expect_root)
                r.status = hit ? "root" : "no-root";
            else if (*r.expect_root)
                r.status = hit ? "ok" : "FAIL";
            else
                r.status = hit ? "UNEXPECTED" : "ok";
            failures += r.status == "FAIL" || r.status == "UNEXPECTED";
        }
        // numeric roots without a closed form
        long long unexplained = 0;
        for (const auto& root : roots) {
            const bool explained = std::any_of(rows.begin(), rows.end(), [&](const VerifyRow& r) {
                return circle_distance(*r.closed, root.lambda) < tol;
            });
            if (explained)
                continue;
            VerifyRow r;
            r.branch = "numeric";
            r.near = {&root, 0.0};
            r.status = "UNEXPLAINED";
            ++unexplained;
            rows.push_back(std::move(r));
        }
        failures += unexplained;
        t.add_summary("numeric_roots", std::to_string(roots.size()));
        t.add_summary("unexplained_roots", std::to_string(unexplained));

        if (options.oracle_n > 0) {
            const auto oracle = localized_spectrum_oracle(field, options.oracle_n, options.participation);
            long long near_origin = 0;
            for (const auto& o : oracle) {
                // states bound to the wrap interface of a two-phase field are not ours
                if (std::abs(o.peak_site) > options.oracle_n / 2)
                    continue;
                ++near_origin;
                const auto near = nearest_root(roots, o.lambda);
                VerifyRow r;
                r.branch = "oracle";
                r.closed = o.lambda;
                r.near = near;
                r.status = near.root && near.distance < 1e-5 ? "ok" : "FAIL";
                failures += r.status == "FAIL";
                rows.push_back(std::move(r));
            }
            t.add_meta("oracle_n", std::to_string(options.oracle_n));
            t.add_meta("participation", format_real(options.participation));
            t.add_summary("oracle_localized", std::to_string(near_origin));
            if (near_origin != static_cast<long long>(roots.size()))
                ++failures;
        }
        for (const auto& r : rows)
            t.add_row(to_cells(sel.name(), r));
        if (roots.empty() && rows.empty())
            t.add_summary("point_spectrum", "empty");
    }

    t.add_summary("failures", std::to_string(failures));
    t.add_summary("verdict", failures == 0 ? "pass" : "fail");
    if (failures > 0)
        report.exit_code = kExitVerification;
    return report;
}

// ---------------------------------------------------------------------------

std::array<std::complex<double>, 2> parse_initial(const std::string& text)
{
    const double h = 1.0 / std::sqrt(2.0);
    if (text.empty() || text == "symmetric")
        return {cplx(h, 0.0), cplx(0.0, h)};
    if (text == "left")
        return {cplx(1.0, 0.0), cplx(0.0, 0.0)};
    if (text == "right")
        return {cplx(0.0, 0.0), cplx(1.0, 0.0)};
    const auto comma = text.find(',');
    if (comma == std::string::npos)
        throw ParseError("--initial must be symmetric, left, right or L,R");
    cplx l = parse_complex(text.substr(0, comma));
    cplx r = parse_complex(text.substr(comma + 1));
    const double norm = std::sqrt(std::norm(l) + std::norm(r));
    if (!(norm > 0.0))
        throw DomainError("--initial must not be the zero state");
    return {l / norm, r / norm};
}

Report cmd_evolve(const EvolveOptions& options)
{
    if (options.steps < 1)
        throw DomainError("evolve needs --steps >= 1");
    const CoinField field = build_field(options.spec);
    const WaveState initial = WaveState::at_origin(options.left, options.right);
    if (std::abs(state_norm(initial) - 1.0) > 1e-10)
        throw DomainError("initial state is not normalized");

    Report report;
    Table& t = report.table;
    common_meta(t, "evolve");
    t.add_meta("spec", options.spec.serialize());
    t.add_meta("steps", std::to_string(options.steps));
    t.add_meta("initial", options.initial_label);
    t.columns = {"t", "mu0", "running_average"};

    WaveState psi = initial;
    double sum = 0.0;
    for (int step = 1; step <= options.steps; ++step) {
        psi = apply_step(psi, field);
        const double mu = std::norm(psi.left(0)) + std::norm(psi.right(0));
        sum += mu;
        t.add_row({static_cast<long long>(step), mu, sum / step});
    }
    const double average = sum / options.steps;
    // thresholds are calibrated at kDichotomyTime only
    const char* verdict = options.steps < calibration::kDichotomyTime ? "indeterminate"
                          : average >= calibration::kLocalizedMin    ? "localized"
                          : average <= calibration::kDelocalizedMax ? "delocalized"
                                                                    : "indeterminate";
    t.add_summary("time_average", format_real(average));
    t.add_summary("final_norm", format_real(state_norm(psi)));
    t.add_summary("verdict", verdict);
    return report;
}

// ---------------------------------------------------------------------------

Report cmd_spectrum(const SpectrumOptions& options)
{
    if (options.half_width < 50)
        throw DomainError("--oracle-n must be >= 50");
    if (!(options.participation > 0.0 && options.participation <= 1.0))
        throw DomainError("--participation must lie in (0, 1]");
    const CoinField field = build_field(options.spec);
    const auto found = localized_spectrum_oracle(field, options.half_width, options.participation);

    Report report;
    Table& t = report.table;
    common_meta(t, "spectrum");
    t.add_meta("spec", options.spec.serialize());
    t.add_meta("oracle_n", std::to_string(options.half_width));
    t.add_meta("boundary", "periodic");
    t.add_meta("participation", format_real(options.participation));
    t.columns = {"re", "im", "theta", "participation", "peak_site", "near_origin", "on_continuous_spectrum"};
    long long near = 0;
    for (const auto& e : found) {
        const bool inner = std::abs(e.peak_site) <= options.half_width / 2;
        near += inner;
        t.add_row({e.lambda.value().real(), e.lambda.value().imag(), e.lambda.angle(), e.participation,
                   static_cast<long long>(e.peak_site), inner, continuous_spectrum_contains(e.lambda)});
    }
    t.add_summary("localized", std::to_string(found.size()));
    t.add_summary("localized_near_origin", std::to_string(near));
    return report;
}

// ---------------------------------------------------------------------------

double offband_coverage(const std::vector<UnimodularValue>& values, int bins)
{
    if (bins < 1)
        throw DomainError("offband_coverage: bins must be positive");
    const double width = 2.0 * kPi / bins;
    std::vector<char> offband(static_cast<std::size_t>(bins)), hit(static_cast<std::size_t>(bins));
    int total = 0;
    for (int k = 0; k < bins; ++k) {
        const auto mid = UnimodularValue::from_angle((k + 0.5) * width);
        offband[static_cast<std::size_t>(k)] = !continuous_spectrum_contains(mid);
        total += offband[static_cast<std::size_t>(k)];
    }
    for (const auto& v : values) {
        const int k = std::min(bins - 1, static_cast<int>(v.angle() / width));
        hit[static_cast<std::size_t>(k)] = 1;
    }
    int covered = 0;
    for (int k = 0; k < bins; ++k)
        covered += offband[static_cast<std::size_t>(k)] && hit[static_cast<std::size_t>(k)];
    return total ? static_cast<double>(covered) / total : 0.0;
}

Report cmd_coverage(const CoverageOptions& options)
{
    if (options.bins < 64)
        throw DomainError("coverage needs --bins >= 64");
    if (options.steps < 2)
        throw DomainError("coverage needs --steps >= 2");
    if (options.kinds.empty())
        throw DomainError("coverage needs at least one model");
    if (!options.branches.empty() && options.kinds.size() != 1)
        throw DomainError("--branch applies to a single model only");

    Report report;
    Table& t = report.table;
    common_meta(t, "coverage");
    t.add_meta("steps", std::to_string(options.steps));
    t.add_meta("bins", std::to_string(options.bins));
    t.add_meta("sampling", "stratified inside each branch region, margin 1e-9");
    t.columns = {"model", "branches", "values", "offband_bins", "hit_bins", "coverage"};

    for (ModelKind kind : options.kinds) {
        const auto branches = canonical(kind, options.branches);
        std::vector<std::vector<UnimodularValue>> per_branch(branches.size());
        parallel_for(branches.size(), [&](std::size_t k) {
            for (double p : admissible_region(kind, branches[k]).interior_samples(options.steps, 1e-9))
                for (const auto& v : branch_eigenvalues(branches[k], p))
                    if (!continuous_spectrum_contains(v.value))
                        per_branch[k].push_back(v.value);
        });
        std::vector<UnimodularValue> all;
        for (auto& v : per_branch)
            all.insert(all.end(), v.begin(), v.end());
        const double cov = offband_coverage(all, options.bins);
        const double width = 2.0 * kPi / options.bins;
        long long offband = 0;
        for (int k = 0; k < options.bins; ++k)
            offband += !continuous_spectrum_contains(UnimodularValue::from_angle((k + 0.5) * width));
        t.add_row({std::string(to_string(kind)), join_branches(branches), static_cast<long long>(all.size()),
                   offband, static_cast<long long>(std::llround(cov * static_cast<double>(offband))), cov});
    }
    return report;
}

}  // namespace qwalk::cli
