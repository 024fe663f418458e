#pragma once

#include <array>
#include <string>
#include <vector>

#include "qwalk/core.hpp"
#include "qwalk/models.hpp"

namespace qwalk {

/// Which eigenvalue family of a model a closed form refers to.
///
/// For Wojcik and OneDefect the id is the chirality relation at the origin:
/// +1 for beta = +i alpha, -1 for beta = -i alpha, each giving a +/- pair.
/// For the two-phase kinds the id is the eigenvalue index j in 1..4.
struct BranchLabel {
    ModelKind kind = ModelKind::Wojcik;
    int id = +1;

    static BranchLabel beta_plus(ModelKind kind) { return {kind, +1}; }
    static BranchLabel beta_minus(ModelKind kind) { return {kind, -1}; }
    static BranchLabel index(ModelKind kind, int j) { return {kind, j}; }

    /// Throws DomainError if id does not fit the kind.
    void validate() const;

    /// "+i" / "-i" for the pair kinds, "1".."4" otherwise.
    std::string name() const;
    static BranchLabel parse(ModelKind kind, const std::string& text);

    /// Eigenvalue indices lambda^(j) carried by this branch: two for the
    /// pair kinds (beta = i alpha is (1,2) for Wojcik and (3,4) for
    /// OneDefect), one for the two-phase kinds.
    std::vector<int> eigen_indices() const;

    friend bool operator==(const BranchLabel&, const BranchLabel&) = default;
};

/// Every branch of a model kind in canonical order.
std::vector<BranchLabel> all_branches(ModelKind kind);

struct Interval {
    double lo;
    double hi;
    bool lo_closed;
    bool hi_closed;

    bool contains(double x) const;
    double length() const { return hi - lo; }
};

/// Sorted, pairwise disjoint union of intervals.
class RegionSet {
public:
    RegionSet() = default;
    explicit RegionSet(std::vector<Interval> intervals);

    const std::vector<Interval>& intervals() const { return intervals_; }
    bool contains(double x) const;
    double total_length() const;

    /// n deterministic stratified points, each at least `margin` away from
    /// every interval endpoint.
    std::vector<double> interior_samples(int n, double margin) const;

    /// Finite endpoints that are excluded from the set.
    std::vector<double> open_endpoints() const;

private:
    std::vector<Interval> intervals_;
};

/// Auxiliary quantities of the complete two-phase closed form.
struct TwoPhaseAux {
    cplx p, q, r_plus, r_minus;
    double sigma_tilde = 0.0;
    /// For lambda^(1) and lambda^(3): whether the non-principal sqrt(q) was
    /// needed to land on the unit circle.
    std::array<bool, 2> flipped_sqrt_q{false, false};
    /// ||lambda| - 1| before renormalization, per pair.
    std::array<double, 2> modulus_defect{0.0, 0.0};
};

struct CompleteTwoPhaseEigenvalues {
    std::array<UnimodularValue, 4> values;
    TwoPhaseAux aux;
};

/// Eigenvalue pair (sqrt(lambda^2), -sqrt(lambda^2)) of the Wojcik model.
std::array<UnimodularValue, 2> wojcik_eigenvalues(double phi, const BranchLabel& branch);

/// Eigenvalue pair of the one-defect model; the beta = +i alpha pair is the
/// conjugate of the beta = -i alpha pair.
std::array<UnimodularValue, 2> one_defect_eigenvalues(double xi, const BranchLabel& branch);

/// lambda^(1..4)(sigma) of the two-phase walk with one defect.
std::array<UnimodularValue, 4> two_phase_defect_eigenvalues(double sigma);

/// lambda^(1..4) of the complete two-phase walk for arbitrary (sigma+, sigma-).
CompleteTwoPhaseEigenvalues complete_two_phase_eigenvalues(double sigma_plus, double sigma_minus);

/// Membership in the Hadamard band {|Im lambda| <= 1/sqrt2}.
bool continuous_spectrum_contains(const UnimodularValue& lambda);

/// Signed distance |Im lambda| - 1/sqrt2 (positive off the band).
double band_gap(const UnimodularValue& lambda);

/// Parameter set on which the branch yields an l^2 eigenfunction.
RegionSet admissible_region(ModelKind kind, const BranchLabel& branch);

/// Region membership; sigma values outside [0, 2 pi] are reduced mod 2 pi.
bool in_admissible_region(const BranchLabel& branch, double param);

/// The single sweep parameter of each kind mapped to a model: phi, xi, or
/// the sigma_pair below.
ModelSpec spec_for_parameter(ModelKind kind, double param);

/// (sigma+, sigma-) behind the single-sigma formulas and regions:
/// (sigma, -sigma) with the origin defect, (2 sigma, -2 sigma) without it.
/// The second is the pairing under which the printed complete two-phase
/// regions are exactly where lambda^(j) has an l^2 eigenfunction.
std::array<double, 2> sigma_pair(ModelKind kind, double sigma);

struct BranchValue {
    int index;  ///< lambda^(index)
    UnimodularValue value;
};

/// Closed-form eigenvalues of one branch at a single sweep parameter.
std::vector<BranchValue> branch_eigenvalues(const BranchLabel& branch, double param);

}  // namespace qwalk
