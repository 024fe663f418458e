#include <doctest.h>

#include "qwalk/closedform.hpp"
#include "support.hpp"

using namespace qwalk;
using namespace qwalk::testing;

namespace {

const double kS2 = std::sqrt(2.0);
const double kEdge = 1.0 / std::sqrt(2.0);

double pinning(const UnimodularValue& v)
{
    return std::abs(std::abs(v.value().imag()) - kEdge);
}

// a random parameter covering (and slightly exceeding) each kind's range
double random_param(Rng& rng, ModelKind kind)
{
    switch (kind) {
    case ModelKind::Wojcik:
        return uniform(rng, 1e-4, 1.0 - 1e-4);
    case ModelKind::OneDefect:
        return uniform(rng, 0.0, kPi / 2);
    default:
        return uniform(rng, -1.0, 2.0 * kPi + 1.0);
    }
}

}  // namespace

TEST_CASE("branch labels")
{
    CHECK(BranchLabel::parse(ModelKind::Wojcik, "+i") == BranchLabel::beta_plus(ModelKind::Wojcik));
    CHECK(BranchLabel::parse(ModelKind::Wojcik, "minus") == BranchLabel::beta_minus(ModelKind::Wojcik));
    CHECK(BranchLabel::parse(ModelKind::CompleteTwoPhase, "3") == BranchLabel::index(ModelKind::CompleteTwoPhase, 3));
    CHECK_THROWS_AS(BranchLabel::parse(ModelKind::Wojcik, "3"), ParseError);
    CHECK_THROWS_AS(BranchLabel::parse(ModelKind::TwoPhaseDefect, "5"), ParseError);
    CHECK_THROWS_AS(BranchLabel::index(ModelKind::OneDefect, 2).validate(), DomainError);
    CHECK_THROWS_AS(BranchLabel::index(ModelKind::TwoPhaseDefect, 0).validate(), DomainError);
    CHECK(all_branches(ModelKind::Wojcik).size() == 2);
    CHECK(all_branches(ModelKind::TwoPhaseDefect).size() == 4);
    CHECK(BranchLabel::index(ModelKind::TwoPhaseDefect, 4).name() == "4");
    CHECK(BranchLabel::beta_minus(ModelKind::OneDefect).name() == "-i");
}

TEST_CASE("region sets")
{
    CHECK_THROWS_AS(RegionSet({{0.0, 2.0, false, false}, {1.0, 3.0, false, false}}), DomainError);
    CHECK_THROWS_AS(RegionSet({{2.0, 1.0, false, false}}), DomainError);
    const RegionSet r({{0.0, 1.0, true, false}, {2.0, 3.0, false, true}});
    CHECK(r.contains(0.0));
    CHECK_FALSE(r.contains(1.0));
    CHECK_FALSE(r.contains(2.0));
    CHECK(r.contains(3.0));
    CHECK(r.total_length() == doctest::Approx(2.0));
    CHECK(r.open_endpoints() == std::vector<double>{1.0, 2.0});
    for (double x : r.interior_samples(40, 0.01)) {
        CHECK(r.contains(x));
        CHECK(std::min({std::abs(x), std::abs(x - 1), std::abs(x - 2), std::abs(x - 3)}) >= 0.01 - 1e-15);
    }
}

TEST_CASE("printed admissible regions")
{
    const auto w = admissible_region(ModelKind::Wojcik, BranchLabel::beta_plus(ModelKind::Wojcik)).intervals();
    REQUIRE(w.size() == 1);
    CHECK(w[0].lo == 0.25);
    CHECK(w[0].hi == 1.0);
    CHECK_FALSE(w[0].lo_closed);
    CHECK_FALSE(w[0].hi_closed);
    const auto wm = admissible_region(ModelKind::Wojcik, BranchLabel::beta_minus(ModelKind::Wojcik)).intervals();
    CHECK(wm[0].lo == 0.0);
    CHECK(wm[0].hi == 0.75);

    for (const auto& b : all_branches(ModelKind::OneDefect)) {
        const auto o = admissible_region(ModelKind::OneDefect, b).intervals();
        REQUIRE(o.size() == 1);
        CHECK(o[0].lo == 0.0);
        CHECK(o[0].hi == doctest::Approx(kPi / 4));
    }

    const auto c3 = admissible_region(ModelKind::CompleteTwoPhase, BranchLabel::index(ModelKind::CompleteTwoPhase, 3));
    CHECK(c3.contains(0.0));
    CHECK_FALSE(c3.contains(kPi / 2));
    CHECK_FALSE(c3.contains(kPi));
    CHECK(c3.contains(1.5 * kPi));
    CHECK_FALSE(c3.contains(1.7 * kPi));
    const auto c1 = admissible_region(ModelKind::CompleteTwoPhase, BranchLabel::index(ModelKind::CompleteTwoPhase, 1));
    CHECK(c1.contains(kPi / 2));
    CHECK_FALSE(c1.contains(kPi));
    CHECK(c1.contains(2 * kPi));

    const auto t1 = admissible_region(ModelKind::TwoPhaseDefect, BranchLabel::index(ModelKind::TwoPhaseDefect, 2));
    CHECK(t1.contains(0.0));
    CHECK_FALSE(t1.contains(1.25 * kPi));
    CHECK(t1.contains(2 * kPi));
    const auto t3 = admissible_region(ModelKind::TwoPhaseDefect, BranchLabel::index(ModelKind::TwoPhaseDefect, 3));
    CHECK_FALSE(t3.contains(kPi / 2));
    CHECK(t3.contains(kPi));

    CHECK_THROWS_AS(admissible_region(ModelKind::Wojcik, BranchLabel::index(ModelKind::TwoPhaseDefect, 1)),
                    DomainError);
}

TEST_CASE("sigma values outside [0, 2pi] are reduced for region membership")
{
    const auto b = BranchLabel::index(ModelKind::TwoPhaseDefect, 3);
    CHECK(in_admissible_region(b, kPi + 2 * kPi) == in_admissible_region(b, kPi));
    CHECK(in_admissible_region(b, kPi / 2 - 4 * kPi) == in_admissible_region(b, kPi / 2));
}

TEST_CASE("Wojcik phi = 1/2, beta = i alpha")
{
    const auto pair = wojcik_eigenvalues(0.5, BranchLabel::beta_plus(ModelKind::Wojcik));
    const cplx expected = cplx(1.0, 3.0) / std::sqrt(10.0);
    CHECK(std::abs(pair[0].value() * pair[0].value() - cplx(-4.0, 3.0) / 5.0) < 1e-14);
    const bool first = std::abs(pair[0].value() - expected) < 1e-12;
    const bool second = std::abs(pair[0].value() + expected) < 1e-12;
    CHECK((first || second));
    CHECK(pair[1].value() == -pair[0].value());
}

TEST_CASE("Wojcik boundary and Hadamard limit")
{
    const auto quarter = wojcik_eigenvalues(0.25, BranchLabel::beta_plus(ModelKind::Wojcik));
    CHECK(std::abs(quarter[0].value() * quarter[0].value() - kI) < 1e-14);
    CHECK(pinning(quarter[0]) < 1e-12);
    const auto limit = wojcik_eigenvalues(1e-8, BranchLabel::beta_plus(ModelKind::Wojcik));
    CHECK(std::abs(limit[0].value() * limit[0].value() + kI) < 1e-6);
    CHECK_THROWS_AS(wojcik_eigenvalues(1.0, BranchLabel::beta_plus(ModelKind::Wojcik)), DomainError);
    CHECK_THROWS_AS(wojcik_eigenvalues(0.5, BranchLabel::beta_plus(ModelKind::OneDefect)), DomainError);
}

TEST_CASE("one-defect xi = pi/6 from the formula")
{
    const auto pair = one_defect_eigenvalues(kPi / 6, BranchLabel::beta_minus(ModelKind::OneDefect));
    const double c = std::cos(kPi / 6), s = std::sin(kPi / 6);
    const cplx formula = cplx(c, kS2 - s) / std::sqrt(3.0 - 2.0 * kS2 * s);
    CHECK(std::abs(pair[0].value() - formula) < 1e-15);
    CHECK(std::abs(pair[0].value() - cplx(0.687714659660, 0.725981092652)) < 1e-11);
    CHECK(pair[1].value() == -pair[0].value());
}

TEST_CASE("one-defect xi = pi/4 sits on the band edge")
{
    const auto pair = one_defect_eigenvalues(kPi / 4, BranchLabel::beta_minus(ModelKind::OneDefect));
    CHECK(std::abs(pair[0].value() - cplx(1.0, 1.0) / kS2) < 1e-15);
}

TEST_CASE("two-phase defect closed form")
{
    const auto zero = two_phase_defect_eigenvalues(0.0);
    CHECK(std::abs(zero[0].value() - cplx(1.0, kS2) / std::sqrt(3.0)) < 1e-12);
    CHECK(std::abs(zero[0].value().imag()) > kEdge);
    const auto edge = two_phase_defect_eigenvalues(1.25 * kPi);
    CHECK(std::abs(edge[0].value() - cplx(-kS2 / 2, kS2 / 2)) < 1e-12);
    CHECK_THROWS_AS(two_phase_defect_eigenvalues(NAN), DomainError);
}

TEST_CASE("complete two-phase closed form")
{
    // the hand-evaluated point sigma+ = pi/2, sigma- = -pi/2
    const auto cf = complete_two_phase_eigenvalues(kPi / 2, -kPi / 2);
    CHECK(std::abs(cf.aux.q - cplx(-8.0, 0.0)) < 1e-14);
    CHECK(std::abs(cf.aux.r_minus - cplx(0.0, -2.0)) < 1e-15);
    CHECK(std::abs(cf.aux.p - cplx(0.0, -4.0)) < 1e-14);
    CHECK(std::abs(cf.values[2].value() - kI) < 1e-12);

    // equal sigmas: homogeneous walk, every value on the band edge
    Rng rng(6);
    for (int k = 0; k < 50; ++k) {
        const double s = uniform(rng, -7, 7);
        const auto h = complete_two_phase_eigenvalues(s, s);
        CHECK(std::abs(h.aux.r_minus) < 1e-15);
        CHECK(std::abs(h.aux.p + 4.0 * std::polar(1.0, -s)) < 1e-13);
        CHECK(std::abs(h.aux.q + 4.0 * std::polar(1.0, -2.0 * s)) < 1e-13);
        for (const auto& v : h.values)
            CHECK(pinning(v) < 1e-9);
    }
}

TEST_CASE("complete two-phase auxiliary invariants")
{
    Rng rng(13);
    for (int k = 0; k < 200; ++k) {
        const double sp = uniform(rng, -7, 7), sm = uniform(rng, -7, 7);
        const auto cf = complete_two_phase_eigenvalues(sp, sm);
        CHECK(std::abs(cf.aux.r_plus + cf.aux.r_minus - 2.0 * std::polar(1.0, -sp)) < 1e-14);
        CHECK(cf.aux.sigma_tilde == doctest::Approx(0.5 * (sp + sm)));
        CHECK(cf.aux.modulus_defect[0] < 1e-8);
        CHECK(cf.aux.modulus_defect[1] < 1e-8);
    }
}

TEST_CASE("sqrt(q) branch is the principal one on the antisymmetric line")
{
    Rng rng(10);
    for (int k = 0; k < 200; ++k) {
        const double s = uniform(rng, 0.0, 2.0 * kPi);
        const auto cf = complete_two_phase_eigenvalues(s, -s);
        CHECK(cf.aux.q.imag() == 0.0);
        CHECK_FALSE(cf.aux.flipped_sqrt_q[0]);
        CHECK_FALSE(cf.aux.flipped_sqrt_q[1]);
    }
}

TEST_CASE("single-sigma pairings")
{
    CHECK(sigma_pair(ModelKind::TwoPhaseDefect, 0.3) == std::array<double, 2>{0.3, -0.3});
    CHECK(sigma_pair(ModelKind::CompleteTwoPhase, 0.3) == std::array<double, 2>{0.6, -0.6});
    CHECK_THROWS_AS(sigma_pair(ModelKind::Wojcik, 0.3), DomainError);
    CHECK(spec_for_parameter(ModelKind::CompleteTwoPhase, 0.3) == ModelSpec::complete_two_phase(0.6, -0.6));
    CHECK(spec_for_parameter(ModelKind::OneDefect, 0.3) == ModelSpec::one_defect(0.3));
}

TEST_CASE("continuous spectrum predicate")
{
    CHECK(continuous_spectrum_contains(UnimodularValue(1.0)));
    CHECK_FALSE(continuous_spectrum_contains(UnimodularValue(kI)));
    CHECK(continuous_spectrum_contains(UnimodularValue::from_angle(kPi / 4)));
    CHECK(band_gap(UnimodularValue(kI)) == doctest::Approx(1.0 - kEdge));

    // momentum-space Hadamard symbol: lambda^2 - i sqrt2 sin k lambda - 1 = 0
    double widest = 0.0;
    for (int j = 0; j < 4096; ++j) {
        const double k = 2.0 * kPi * j / 4096;
        const cplx b = cplx(0.0, -kS2 * std::sin(k));
        const cplx disc = std::sqrt(b * b + 4.0);
        for (const cplx z : {(-b + disc) / 2.0, (-b - disc) / 2.0}) {
            CHECK(std::abs(std::abs(z) - 1.0) < 1e-12);
            CHECK(continuous_spectrum_contains(UnimodularValue(z / std::abs(z))));
            widest = std::max(widest, std::abs(z.imag()));
        }
    }
    CHECK(widest == doctest::Approx(kEdge).epsilon(1e-9));
}

TEST_CASE("unimodularity over 1000 parameters per model")
{
    Rng rng(1000);
    for (ModelKind kind : kAllKinds) {
        for (int k = 0; k < 1000; ++k) {
            const double p = random_param(rng, kind);
            for (const auto& b : all_branches(kind))
                for (const auto& v : branch_eigenvalues(b, p))
                    CHECK(std::abs(std::abs(v.value.value()) - 1.0) < 1e-10);
        }
    }
}

TEST_CASE("closed forms inside their regions stay off the band")
{
    for (ModelKind kind : kAllKinds)
        for (const auto& b : all_branches(kind))
            for (double p : admissible_region(kind, b).interior_samples(400, 1e-3))
                for (const auto& v : branch_eigenvalues(b, p))
                    CHECK_FALSE(continuous_spectrum_contains(v.value));
}

TEST_CASE("boundary pinning at the open region endpoints")
{
    const auto w_plus = BranchLabel::beta_plus(ModelKind::Wojcik);
    const auto w_minus = BranchLabel::beta_minus(ModelKind::Wojcik);
    for (const auto& v : wojcik_eigenvalues(0.25, w_plus))
        CHECK(pinning(v) < 1e-9);
    for (const auto& v : wojcik_eigenvalues(0.75, w_minus))
        CHECK(pinning(v) < 1e-9);
    for (const auto& b : all_branches(ModelKind::OneDefect))
        for (const auto& v : one_defect_eigenvalues(kPi / 4, b))
            CHECK(pinning(v) < 1e-9);
    const auto t = [](double s) { return two_phase_defect_eigenvalues(s); };
    CHECK(pinning(t(kPi / 4)[2]) < 1e-9);
    CHECK(pinning(t(0.75 * kPi)[2]) < 1e-9);
    CHECK(pinning(t(1.25 * kPi)[0]) < 1e-9);
    CHECK(pinning(t(1.75 * kPi)[0]) < 1e-9);
    for (double s : {kPi / 2, kPi, 1.5 * kPi})
        for (const auto& b : all_branches(ModelKind::CompleteTwoPhase))
            for (const auto& v : branch_eigenvalues(b, s))
                CHECK(pinning(v.value) < 1e-9);
}

TEST_CASE("one-defect branches are complex conjugates")
{
    Rng rng(12);
    for (int k = 0; k < 500; ++k) {
        const double xi = uniform(rng, 0.0, kPi / 2);
        const auto plus = one_defect_eigenvalues(xi, BranchLabel::beta_plus(ModelKind::OneDefect));
        const auto minus = one_defect_eigenvalues(xi, BranchLabel::beta_minus(ModelKind::OneDefect));
        CHECK(plus[0].value() == std::conj(minus[0].value()));
        CHECK(plus[1].value() == std::conj(minus[1].value()));
    }
}

TEST_CASE("sign pairs are exact")
{
    Rng rng(14);
    for (int k = 0; k < 500; ++k) {
        const double s = uniform(rng, -7, 7);
        const auto t = two_phase_defect_eigenvalues(s);
        CHECK(t[1].value() == -t[0].value());
        CHECK(t[3].value() == -t[2].value());
        const auto c = complete_two_phase_eigenvalues(s, uniform(rng, -7, 7)).values;
        CHECK(c[1].value() == -c[0].value());
        CHECK(c[3].value() == -c[2].value());
        for (const auto& b : all_branches(ModelKind::Wojcik)) {
            const auto w = wojcik_eigenvalues(uniform(rng, 0.01, 0.99), b);
            CHECK(w[1].value() == -w[0].value());
        }
    }
}

TEST_CASE("branch_eigenvalues carries the eigenvalue indices")
{
    const auto w = branch_eigenvalues(BranchLabel::beta_plus(ModelKind::Wojcik), 0.5);
    REQUIRE(w.size() == 2);
    CHECK(w[0].index == 1);
    CHECK(w[1].index == 2);
    const auto c = branch_eigenvalues(BranchLabel::index(ModelKind::CompleteTwoPhase, 3), kPi / 4);
    REQUIRE(c.size() == 1);
    CHECK(c[0].index == 3);
    CHECK(std::abs(c[0].value.value() - kI) < 1e-12);
}
