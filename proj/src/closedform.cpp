#include "qwalk/closedform.hpp"

#include <algorithm>
#include <cmath>

namespace qwalk {

namespace {

const double kSqrt2 = std::sqrt(2.0);

bool is_pair_kind(ModelKind kind)
{
    return kind == ModelKind::Wojcik || kind == ModelKind::OneDefect;
}

UnimodularValue normalized(cplx z)
{
    return UnimodularValue(z / std::abs(z));
}

}  // namespace

// ---------------------------------------------------------------------------
// BranchLabel

void BranchLabel::validate() const
{
    if (is_pair_kind(kind)) {
        if (id != 1 && id != -1)
            throw DomainError("branch id for " + std::string(to_string(kind)) + " must be +1 or -1");
    } else if (id < 1 || id > 4) {
        throw DomainError("branch index for " + std::string(to_string(kind)) + " must be in 1..4");
    }
}

std::string BranchLabel::name() const
{
    if (is_pair_kind(kind))
        return id > 0 ? "+i" : "-i";
    return std::to_string(id);
}

BranchLabel BranchLabel::parse(ModelKind kind, const std::string& text)
{
    BranchLabel b{kind, 0};
    if (is_pair_kind(kind)) {
        if (text == "+i" || text == "i" || text == "plus")
            b.id = +1;
        else if (text == "-i" || text == "minus")
            b.id = -1;
        else
            throw ParseError("branch for " + std::string(to_string(kind)) + " must be plus|minus (+i|-i)");
    } else {
        if (text.size() != 1 || text[0] < '1' || text[0] > '4')
            throw ParseError("branch for " + std::string(to_string(kind)) + " must be 1..4");
        b.id = text[0] - '0';
    }
    return b;
}

std::vector<int> BranchLabel::eigen_indices() const
{
    validate();
    if (!is_pair_kind(kind))
        return {id};
    // Wojcik numbers beta = i alpha as (1,2); the one-defect model numbers
    // beta = -i alpha as (1,2).
    const bool first_pair = (kind == ModelKind::Wojcik) ? id > 0 : id < 0;
    return first_pair ? std::vector<int>{1, 2} : std::vector<int>{3, 4};
}

std::vector<BranchLabel> all_branches(ModelKind kind)
{
    if (kind == ModelKind::Wojcik)
        return {BranchLabel::beta_plus(kind), BranchLabel::beta_minus(kind)};
    if (kind == ModelKind::OneDefect)
        return {BranchLabel::beta_minus(kind), BranchLabel::beta_plus(kind)};
    return {BranchLabel::index(kind, 1), BranchLabel::index(kind, 2), BranchLabel::index(kind, 3),
            BranchLabel::index(kind, 4)};
}

// ---------------------------------------------------------------------------
// Regions

bool Interval::contains(double x) const
{
    const bool above = lo_closed ? x >= lo : x > lo;
    const bool below = hi_closed ? x <= hi : x < hi;
    return above && below;
}

RegionSet::RegionSet(std::vector<Interval> intervals) : intervals_(std::move(intervals))
{
    std::sort(intervals_.begin(), intervals_.end(),
              [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    for (std::size_t i = 0; i < intervals_.size(); ++i) {
        if (intervals_[i].lo > intervals_[i].hi)
            throw DomainError("RegionSet: interval with lo > hi");
        if (i > 0 && intervals_[i - 1].hi > intervals_[i].lo)
            throw DomainError("RegionSet: overlapping intervals");
    }
}

bool RegionSet::contains(double x) const
{
    return std::any_of(intervals_.begin(), intervals_.end(), [x](const Interval& iv) { return iv.contains(x); });
}

double RegionSet::total_length() const
{
    double sum = 0.0;
    for (const auto& iv : intervals_)
        sum += iv.length();
    return sum;
}

std::vector<double> RegionSet::interior_samples(int n, double margin) const
{
    std::vector<double> usable;
    double total = 0.0;
    for (const auto& iv : intervals_) {
        usable.push_back(std::max(0.0, iv.length() - 2.0 * margin));
        total += usable.back();
    }
    std::vector<double> out;
    if (n <= 0 || total <= 0.0)
        return out;
    out.reserve(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        double u = (k + 0.5) / n * total;
        for (std::size_t i = 0; i < intervals_.size(); ++i) {
            if (u <= usable[i] || i + 1 == intervals_.size()) {
                out.push_back(intervals_[i].lo + margin + std::min(u, usable[i]));
                break;
            }
            u -= usable[i];
        }
    }
    return out;
}

std::vector<double> RegionSet::open_endpoints() const
{
    std::vector<double> out;
    for (const auto& iv : intervals_) {
        if (!iv.lo_closed && std::isfinite(iv.lo))
            out.push_back(iv.lo);
        if (!iv.hi_closed && std::isfinite(iv.hi))
            out.push_back(iv.hi);
    }
    return out;
}

RegionSet admissible_region(ModelKind kind, const BranchLabel& branch)
{
    branch.validate();
    if (branch.kind != kind)
        throw DomainError("admissible_region: branch belongs to another model kind");
    constexpr double pi = kPi;
    switch (kind) {
    case ModelKind::Wojcik:
        if (branch.id > 0)
            return RegionSet({{0.25, 1.0, false, false}});
        return RegionSet({{0.0, 0.75, false, false}});
    case ModelKind::OneDefect:
        // Printed as "(o, pi/4)"; the o is read as 0.
        return RegionSet({{0.0, pi / 4, false, false}});
    case ModelKind::TwoPhaseDefect:
        if (branch.id <= 2)
            return RegionSet({{0.0, 5 * pi / 4, true, false}, {7 * pi / 4, 2 * pi, false, true}});
        return RegionSet({{0.0, pi / 4, true, false}, {3 * pi / 4, 2 * pi, false, true}});
    case ModelKind::CompleteTwoPhase:
        if (branch.id <= 2)
            return RegionSet({{pi / 2, pi, true, false}, {3 * pi / 2, 2 * pi, false, true}});
        return RegionSet({{0.0, pi / 2, true, false}, {pi, 3 * pi / 2, false, true}});
    }
    return {};
}

bool in_admissible_region(const BranchLabel& branch, double param)
{
    const RegionSet region = admissible_region(branch.kind, branch);
    if (!is_pair_kind(branch.kind) && (param < 0.0 || param > 2 * kPi)) {
        param = std::fmod(param, 2 * kPi);
        if (param < 0.0)
            param += 2 * kPi;
    }
    return region.contains(param);
}

// ---------------------------------------------------------------------------
// Closed forms

std::array<UnimodularValue, 2> wojcik_eigenvalues(double phi, const BranchLabel& branch)
{
    if (branch.kind != ModelKind::Wojcik)
        throw DomainError("wojcik_eigenvalues: branch of another model");
    branch.validate();
    if (!(phi > 0.0 && phi < 1.0))
        throw DomainError("wojcik_eigenvalues: phi must lie in (0, 1)");

    const cplx w = std::polar(1.0, 2.0 * kPi * phi);
    const cplx denom = 1.0 - 2.0 * w + 2.0 * w * w;
    if (std::abs(denom) < 1e-12)
        throw SingularDenominator("wojcik_eigenvalues: 1 - 2 omega + 2 omega^2 vanishes");
    const cplx even = w * (1.0 - 2.0 * w + w * w);
    const cplx odd = kI * w * (1.0 - w + w * w);
    // beta = i alpha takes the minus sign, beta = -i alpha the plus sign.
    const cplx lambda_sq = (branch.id > 0 ? even - odd : even + odd) / denom;
    const cplx root = std::sqrt(lambda_sq);
    return {UnimodularValue(root), UnimodularValue(-root)};
}

std::array<UnimodularValue, 2> one_defect_eigenvalues(double xi, const BranchLabel& branch)
{
    if (branch.kind != ModelKind::OneDefect)
        throw DomainError("one_defect_eigenvalues: branch of another model");
    branch.validate();
    if (!(xi >= 0.0 && xi <= kPi / 2))
        throw DomainError("one_defect_eigenvalues: xi must lie in [0, pi/2]");

    const double c = std::cos(xi);
    const double s = std::sin(xi);
    const double denom_sq = 3.0 - 2.0 * kSqrt2 * s;
    if (!(denom_sq > 0.0))
        throw SingularDenominator("one_defect_eigenvalues: 3 - 2 sqrt2 sin(xi) <= 0");
    const double im = branch.id < 0 ? kSqrt2 - s : -(kSqrt2 - s);
    const cplx lambda = cplx(c, im) / std::sqrt(denom_sq);
    return {UnimodularValue(lambda), UnimodularValue(-lambda)};
}

std::array<UnimodularValue, 4> two_phase_defect_eigenvalues(double sigma)
{
    if (!std::isfinite(sigma))
        throw DomainError("two_phase_defect_eigenvalues: sigma must be finite");
    const double c = std::cos(sigma);
    const double s = std::sin(sigma);
    const double plus_sq = 3.0 + 2.0 * kSqrt2 * s;
    const double minus_sq = 3.0 - 2.0 * kSqrt2 * s;
    if (!(plus_sq > 0.0) || !(minus_sq > 0.0))
        throw SingularDenominator("two_phase_defect_eigenvalues: 3 +/- 2 sqrt2 sin(sigma) <= 0");
    const cplx l1 = cplx(c, s + kSqrt2) / std::sqrt(plus_sq);
    const cplx l3 = -cplx(c, s - kSqrt2) / std::sqrt(minus_sq);
    return {UnimodularValue(l1), UnimodularValue(-l1), UnimodularValue(l3), UnimodularValue(-l3)};
}

CompleteTwoPhaseEigenvalues complete_two_phase_eigenvalues(double sigma_plus, double sigma_minus)
{
    if (!std::isfinite(sigma_plus) || !std::isfinite(sigma_minus))
        throw DomainError("complete_two_phase_eigenvalues: sigma must be finite");

    TwoPhaseAux aux;
    aux.sigma_tilde = 0.5 * (sigma_plus + sigma_minus);
    const cplx ep = std::polar(1.0, sigma_plus);
    const auto em2 = [](double t) { return std::polar(1.0, -2.0 * t); };
    aux.p = ep * (em2(sigma_minus) - em2(sigma_plus) - 4.0 * em2(aux.sigma_tilde));
    aux.q = em2(sigma_minus) + em2(sigma_plus) - 6.0 * em2(aux.sigma_tilde);
    aux.r_plus = std::polar(1.0, -sigma_plus) + std::polar(1.0, -sigma_minus);
    aux.r_minus = std::polar(1.0, -sigma_plus) - std::polar(1.0, -sigma_minus);

    // q is real-negative on the antisymmetric line sigma- = -sigma+; a signed
    // zero imaginary part would pick the branch at random there.
    cplx q = aux.q;
    if (q.imag() == 0.0)
        q = cplx(q.real(), 0.0);
    const cplx sqrt_q = std::sqrt(q);

    // sign = +1 gives lambda^(1), sign = -1 gives lambda^(3).
    const auto evaluate = [&](double sign, cplx root) {
        const cplx denom = 2.0 * (-aux.r_minus - sign * root);
        if (std::abs(denom) < 1e-12)
            throw SingularDenominator("complete_two_phase_eigenvalues: -r(-) -/+ sqrt(q) vanishes");
        return std::sqrt((aux.p + sign * ep * aux.r_minus * root) / denom);
    };

    std::array<cplx, 2> lambdas;
    for (int k = 0; k < 2; ++k) {
        const double sign = k == 0 ? 1.0 : -1.0;
        const cplx principal = evaluate(sign, sqrt_q);
        double defect = std::abs(std::abs(principal) - 1.0);
        cplx chosen = principal;
        if (defect >= 1e-10) {
            // No branch of sqrt(q) is fixed by the formula; try the other one.
            cplx alternate;
            try {
                alternate = evaluate(sign, -sqrt_q);
            } catch (const SingularDenominator&) {
                alternate = cplx(std::nan(""), 0.0);
            }
            const double alt_defect = std::abs(std::abs(alternate) - 1.0);
            if (alt_defect < defect) {
                chosen = alternate;
                defect = alt_defect;
                aux.flipped_sqrt_q[k] = true;
            }
        }
        if (!(defect < 1e-8))
            throw BranchResolutionFailed("complete_two_phase_eigenvalues: no sqrt(q) branch gives |lambda| = 1");
        aux.modulus_defect[k] = defect;
        lambdas[k] = chosen;
    }
    return {{normalized(lambdas[0]), normalized(-lambdas[0]), normalized(lambdas[1]), normalized(-lambdas[1])},
            aux};
}

bool continuous_spectrum_contains(const UnimodularValue& lambda)
{
    return std::abs(lambda.value().imag()) <= 1.0 / kSqrt2 + 1e-12;
}

double band_gap(const UnimodularValue& lambda)
{
    return std::abs(lambda.value().imag()) - 1.0 / kSqrt2;
}

// ---------------------------------------------------------------------------

ModelSpec spec_for_parameter(ModelKind kind, double param)
{
    switch (kind) {
    case ModelKind::Wojcik:
        return ModelSpec::wojcik(param);
    case ModelKind::OneDefect:
        return ModelSpec::one_defect(param);
    case ModelKind::TwoPhaseDefect: {
        const auto [sp, sm] = sigma_pair(kind, param);
        return ModelSpec::two_phase_defect(sp, sm);
    }
    case ModelKind::CompleteTwoPhase: {
        const auto [sp, sm] = sigma_pair(kind, param);
        return ModelSpec::complete_two_phase(sp, sm);
    }
    }
    throw DomainError("unknown model kind");
}

std::array<double, 2> sigma_pair(ModelKind kind, double sigma)
{
    switch (kind) {
    case ModelKind::TwoPhaseDefect:
        return {sigma, -sigma};
    case ModelKind::CompleteTwoPhase:
        return {2.0 * sigma, -2.0 * sigma};
    default:
        throw DomainError("sigma_pair: only defined for the two-phase kinds");
    }
}

std::vector<BranchValue> branch_eigenvalues(const BranchLabel& branch, double param)
{
    branch.validate();
    const auto idx = branch.eigen_indices();
    switch (branch.kind) {
    case ModelKind::Wojcik: {
        const auto pair = wojcik_eigenvalues(param, branch);
        return {{idx[0], pair[0]}, {idx[1], pair[1]}};
    }
    case ModelKind::OneDefect: {
        const auto pair = one_defect_eigenvalues(param, branch);
        return {{idx[0], pair[0]}, {idx[1], pair[1]}};
    }
    case ModelKind::TwoPhaseDefect:
        return {{branch.id, two_phase_defect_eigenvalues(param)[static_cast<std::size_t>(branch.id - 1)]}};
    case ModelKind::CompleteTwoPhase: {
        const auto [sp, sm] = sigma_pair(branch.kind, param);
        return {{branch.id, complete_two_phase_eigenvalues(sp, sm).values[static_cast<std::size_t>(branch.id - 1)]}};
    }
    }
    return {};
}

}  // namespace qwalk
