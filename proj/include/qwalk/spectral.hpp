#pragma once

#include <array>
#include <vector>

#include <Eigen/Dense>

#include "qwalk/core.hpp"

namespace qwalk {

/// 2x2 map (Psi^L(x), Psi^R(x)) -> (Psi^L(x+1), Psi^R(x+1)) of the
/// eigen-equation U Psi = lambda Psi at a fixed lambda.
struct TransferMatrix {
    Eigen::Matrix2cd m;

    cplx determinant() const { return m.determinant(); }
    /// Eigenvalues ordered by increasing modulus.
    std::array<cplx, 2> eigenvalues() const;
    /// Unit eigenvector for a given eigenvalue mu of m.
    Eigen::Vector2cd eigenvector(cplx mu) const;
};

/// Transfer matrix in a homogeneous region with coin `coin`:
/// [[(lambda^2 - bc)/(a lambda), -bd/(a lambda)], [c/lambda, d/lambda]].
/// Throws DegenerateCoin if |a| < 1e-12.
TransferMatrix bulk_transfer(const CoinMatrix& coin, const UnimodularValue& lambda);

/// Exact step from x to x+1: the lower row of the coin at x and the upper
/// row of the coin at x+1 enter.
TransferMatrix site_transfer(const CoinMatrix& at_x, const CoinMatrix& at_next, const UnimodularValue& lambda);

enum class Side { Left, Right };

/// Square-summable tail of the eigen-equation on one half-line.
struct HalfLineSolution {
    double decay;               ///< modulus ratio |Psi(x +/- 1)| / |Psi(x)| moving outward, in (0, 1)
    cplx multiplier;            ///< transfer eigenvalue mu (|mu| < 1 on the right, > 1 on the left)
    Eigen::Vector2cd direction; ///< unit eigenvector of the bulk transfer
};

/// Contracting eigenpair of the bulk transfer on the given side. Throws
/// NoContraction when both transfer moduli are within 1e-9 of 1.
HalfLineSolution half_line_solution(const CoinField& field, const UnimodularValue& lambda, Side side);

/// det[propagated left tail, right tail] with both vectors unit-normalized;
/// zero exactly when lambda is in the point spectrum. The left tail is
/// carried from CoinField::last_left_bulk_site() to first_right_bulk_site()
/// by site-exact transfer steps.
cplx matching_determinant(const CoinField& field, const UnimodularValue& lambda);

struct EigenCandidate {
    UnimodularValue lambda;
    double decay_right;
    double decay_left;
    double matching_residual;  ///< ||U Psi - lambda Psi|| / ||Psi|| on interior sites
    WaveState eigenfunction;   ///< unit norm; Psi^L at the last left-bulk site is real positive
};

struct SearchOptions {
    int grid_size = 4096;
    double theta_tol = 1e-12;
    double residual_tol = 1e-9;
    double band_margin = 1e-6;
    double window_decay_lengths = 10.0;
    /// Pre-filter on |matching_determinant| before building the eigenfunction.
    double determinant_tol = 1e-6;
};

/// Eigenfunction built from the two decaying tails matched at lambda. The
/// window spans `decay_lengths` decay lengths beyond the irregular block on
/// each side (at least 8 sites, at most 20000).
EigenCandidate build_eigencandidate(const CoinField& field, const UnimodularValue& lambda,
                                    double decay_lengths = 10.0);

/// ||U Psi - lambda Psi|| / ||Psi|| over the window minus its two outermost sites.
double eigen_residual(const CoinField& field, const WaveState& state, const UnimodularValue& lambda);

/// Point spectrum of the walk on Z from the transfer-matrix matching
/// condition: grid scan of |det| over the off-band arcs, golden-section
/// refinement of each local minimum, eigenfunction residual check.
/// Candidates are sorted by angle.
std::vector<EigenCandidate> point_spectrum_search(const CoinField& field, const SearchOptions& options = {});

/// Off-band arcs (theta intervals in [0, 2 pi), possibly wrapping past 2 pi)
/// where both half-lines contract, shrunk by `margin` at each band edge.
std::vector<std::array<double, 2>> offband_arcs(const CoinField& field, int grid_size, double margin);

struct LocalizedEigenvalue {
    UnimodularValue lambda;
    double participation;  ///< inverse participation ratio sum_x p(x)^2
    int peak_site;         ///< site of maximal probability, in [-N, N]
};

/// Dense diagonalization of truncated_operator(field, N); keeps eigenvalues
/// whose eigenvector has inverse participation ratio above the threshold.
/// Sorted by angle.
///
/// When bulk_left differs from bulk_right the wrap joins them in a second
/// interface near x = +/-N, whose bound states also show up here; their
/// peak_site tells them apart from states bound at the origin.
std::vector<LocalizedEigenvalue> localized_spectrum_oracle(const CoinField& field, int half_width,
                                                           double participation_threshold = 0.05);

/// Inverse participation ratio of a state (site probabilities normalized).
double inverse_participation_ratio(const WaveState& state);

}  // namespace qwalk
