#pragma once

#include <array>
#include <complex>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qwalk/cli/output.hpp"
#include "qwalk/closedform.hpp"
#include "qwalk/models.hpp"
#include "qwalk/spectral.hpp"

namespace qwalk::cli {

inline constexpr const char* kToolVersion = "1.0.0";

/// Exit codes of the qwalk tool.
enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitVerification = 2, kExitSolver = 3 };

/// Raw model flags as typed on the command line.
struct ModelArgs {
    std::string model;  ///< kind name or "hadamard"
    std::optional<std::string> phi, xi, sigma, sigma_plus, sigma_minus, spec;
};

/// Model kind plus, optionally, one concrete parameter point.
struct ModelSelection {
    ModelKind kind = ModelKind::Wojcik;
    bool hadamard = false;
    std::optional<double> param;                     ///< phi, xi or single sigma
    std::optional<std::array<double, 2>> sigma_pair; ///< explicit (sigma+, sigma-)

    bool has_point() const { return hadamard || param || sigma_pair; }
    /// Concrete model; throws DomainError when no point was given.
    ModelSpec spec() const;
    /// "hadamard" or the kind name.
    std::string name() const;
};

/// Throws ParseError / DomainError on inconsistent flags.
ModelSelection resolve_model(const ModelArgs& args);

/// "all" or a comma list such as "+i,-i" or "1,3".
std::vector<BranchLabel> parse_branches(ModelKind kind, const std::string& text);

struct Report {
    Table table;
    int exit_code = kExitOk;
};

struct SweepOptions {
    ModelKind kind = ModelKind::Wojcik;
    std::vector<BranchLabel> branches;
    std::array<double, 2> range{0.0, 1.0};
    int steps = 100;
    bool verify = false;
    double tol = 1e-6;  ///< closed-form / numeric angle disagreement threshold
    SearchOptions search;
};

/// One record per grid point per branch eigenvalue, grid endpoints included.
/// Per-record failures land in the "error" column.
Report cmd_sweep(const SweepOptions& options);

struct VerifyOptions {
    ModelSelection model;
    std::vector<BranchLabel> branches;
    int samples = 20;
    double tol = 1e-8;
    double residual_tol = 1e-9;
    int oracle_n = 0;  ///< 0 disables the dense oracle
    double participation = 0.05;
    SearchOptions search;
};

/// Without a parameter point: `samples` points inside each branch region.
/// With a point: every closed form there, plus any numeric root no closed
/// form explains, plus the dense oracle when oracle_n > 0.
Report cmd_verify(const VerifyOptions& options);

struct EvolveOptions {
    ModelSpec spec;
    int steps = 2000;
    std::complex<double> left{1.0 / 1.4142135623730951, 0.0};
    std::complex<double> right{0.0, 1.0 / 1.4142135623730951};
    std::string initial_label = "symmetric";
};

/// Rows t, mu_t(0), running time average.
Report cmd_evolve(const EvolveOptions& options);

/// "symmetric", "left", "right" or "L,R" complex literals; normalized.
std::array<std::complex<double>, 2> parse_initial(const std::string& text);

struct SpectrumOptions {
    ModelSpec spec;
    int half_width = 150;
    double participation = 0.05;
};

/// Localized eigenvalues of the periodic truncation.
Report cmd_spectrum(const SpectrumOptions& options);

struct CoverageOptions {
    std::vector<ModelKind> kinds;
    /// Empty means every branch of each kind.
    std::vector<BranchLabel> branches;
    int steps = 2000;
    int bins = 256;
};

/// Fraction of the off-band arc bins hit by in-region closed-form values.
Report cmd_coverage(const CoverageOptions& options);

/// Circle split into `bins` equal arcs from angle 0; an arc counts as off
/// band when its midpoint is. Returns hit off-band arcs / off-band arcs.
double offband_coverage(const std::vector<UnimodularValue>& values, int bins);

/// Full command line without the program name. Writes CSV to `out` unless
/// --out is given.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qwalk::cli
