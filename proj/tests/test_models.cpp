#include <doctest.h>

#include "qwalk/models.hpp"
#include "support.hpp"

using namespace qwalk;
using namespace qwalk::testing;

namespace {

double coin_distance(const CoinMatrix& u, const CoinMatrix& v)
{
    return (u.matrix() - v.matrix()).cwiseAbs().maxCoeff();
}

void check_all_unitary(const CoinField& f)
{
    CHECK(f.bulk_left().is_unitary());
    CHECK(f.bulk_right().is_unitary());
    for (const auto& [x, c] : f.overrides())
        CHECK(c.is_unitary());
}

}  // namespace

TEST_CASE("model kind names round trip")
{
    for (ModelKind kind : kAllKinds)
        CHECK(parse_model_kind(to_string(kind)) == kind);
    CHECK_THROWS_AS(parse_model_kind("hadamard-ish"), ParseError);
}

TEST_CASE("every constructed coin is unitary")
{
    Rng rng(17);
    for (ModelKind kind : kAllKinds)
        for (int k = 0; k < 100; ++k)
            check_all_unitary(build_field(random_spec(rng, kind)));
}

TEST_CASE("Wojcik origin coin")
{
    const auto h = CoinMatrix::hadamard();
    CHECK(coin_distance(build_wojcik(0.5).at(0), h.scaled(-1.0)) < 1e-15);
    CHECK(coin_distance(build_wojcik(0.25).at(0), h.scaled(kI)) < 1e-15);
    CHECK(coin_distance(build_wojcik(1e-9).at(0), h) < 1e-8);
    const auto f = build_wojcik(0.3);
    CHECK(f.bulk_left() == h);
    CHECK(f.bulk_right() == h);
    CHECK(f.overrides().size() == 1);
    CHECK_THROWS_AS(build_wojcik(0.0), DomainError);
    CHECK_THROWS_AS(build_wojcik(1.0), DomainError);
    CHECK_THROWS_AS(build_wojcik(std::nan("")), DomainError);
}

TEST_CASE("Wojcik origin coin is omega H entrywise")
{
    Rng rng(4);
    for (int k = 0; k < 100; ++k) {
        const double phi = uniform(rng, 0.001, 0.999);
        const auto expected = CoinMatrix::hadamard().scaled(std::polar(1.0, 2.0 * kPi * phi));
        CHECK(coin_distance(build_wojcik(phi).at(0), expected) < 1e-15);
    }
}

TEST_CASE("one-defect origin coin")
{
    CHECK(coin_distance(build_one_defect(kPi / 4).at(0), CoinMatrix::hadamard()) < 1e-15);
    CHECK(build_one_defect(0.0).at(0) == CoinMatrix{1.0, 0.0, 0.0, -1.0});
    const auto c = build_one_defect(kPi / 3).at(0);
    CHECK(coin_distance(c, CoinMatrix{0.5, std::sqrt(3.0) / 2, std::sqrt(3.0) / 2, -0.5}) < 1e-15);
    CHECK(c.is_unitary());
    CHECK_NOTHROW(build_one_defect(kPi / 2));
    CHECK_THROWS_AS(build_one_defect(-0.01), DomainError);
    CHECK_THROWS_AS(build_one_defect(kPi / 2 + 0.01), DomainError);
}

TEST_CASE("two-phase walk with one defect")
{
    Rng rng(8);
    for (int k = 0; k < 50; ++k) {
        const double sp = uniform(rng, -10, 10);
        const double sm = uniform(rng, -10, 10);
        const auto f = build_two_phase_defect(sp, sm);
        for (int x = -3; x <= 3; ++x)
            CHECK(std::abs(f.at(x).determinant() + 1.0) < 1e-14);
        CHECK(coin_distance(f.at(1), phase_coin(sp)) == 0.0);
        CHECK(coin_distance(f.at(-1), phase_coin(sm)) == 0.0);
    }
    const auto same = build_two_phase_defect(0.7, 0.7);
    CHECK(same.bulk_left() == same.bulk_right());
    const auto zero = build_two_phase_defect(0.0, 0.0);
    CHECK(coin_distance(zero.bulk_left(), CoinMatrix::hadamard()) < 1e-15);
    CHECK(zero.at(0) == CoinMatrix{1.0, 0.0, 0.0, -1.0});
}

TEST_CASE("complete two-phase walk")
{
    const auto h = build_complete_two_phase(0.0, 0.0);
    CHECK(h.overrides().empty());
    for (int x = -4; x <= 4; ++x)
        CHECK(coin_distance(h.at(x), CoinMatrix::hadamard()) < 1e-15);
    const auto u = build_complete_two_phase(1.3, 1.3);
    CHECK(u.bulk_left() == u.bulk_right());
    const auto f = build_complete_two_phase(0.4, -1.1);
    CHECK(f.split_point() == 0);
    CHECK(f.at(0) == phase_coin(0.4));
    CHECK(f.at(-1) == phase_coin(-1.1));
    CHECK_THROWS_AS(build_complete_two_phase(INFINITY, 0.0), DomainError);
}

TEST_CASE("with equal sigmas the two two-phase shapes differ only at the origin")
{
    Rng rng(21);
    for (int k = 0; k < 20; ++k) {
        const double s = uniform(rng, -7, 7);
        const auto a = build_two_phase_defect(s, s);
        const auto b = build_complete_two_phase(s, s);
        for (int x = -5; x <= 5; ++x) {
            if (x == 0)
                CHECK_FALSE(a.at(x) == b.at(x));
            else
                CHECK(a.at(x) == b.at(x));
        }
    }
}

TEST_CASE("model spec text form")
{
    Rng rng(1);
    for (ModelKind kind : kAllKinds) {
        for (int k = 0; k < 25; ++k) {
            const auto spec = random_spec(rng, kind);
            CHECK(ModelSpec::parse(spec.serialize()) == spec);
        }
    }
    CHECK(ModelSpec::wojcik(0.5).serialize() == "kind=wojcik;phi=0.5");
    const auto parsed = ModelSpec::parse(" kind = two-phase-defect , sigma_plus=1\nsigma_minus=-2 ");
    CHECK(parsed == ModelSpec::two_phase_defect(1.0, -2.0));
    CHECK_THROWS_AS(ModelSpec::parse("phi=0.5"), ParseError);
    CHECK_THROWS_AS(ModelSpec::parse("kind=wojcik;phi=abc"), ParseError);
    CHECK_THROWS_AS(ModelSpec::parse("kind=wojcik;phi"), ParseError);
    CHECK_THROWS_AS(ModelSpec::parse("kind=nothing;phi=1"), ParseError);
    CHECK_THROWS_AS(ModelSpec::parse("kind=wojcik").validate(), DomainError);
    CHECK_THROWS_AS(ModelSpec::wojcik(1.5).validate(), DomainError);
}
