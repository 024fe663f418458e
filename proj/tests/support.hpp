#pragma once

#include <cmath>
#include <random>

#include "qwalk/closedform.hpp"
#include "qwalk/core.hpp"
#include "qwalk/models.hpp"

namespace qwalk::testing {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi)
{
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline cplx unit_phase(Rng& rng)
{
    return std::polar(1.0, uniform(rng, 0.0, 2.0 * kPi));
}

// e^{i delta} [[alpha, beta], [-conj(beta), conj(alpha)]]
inline CoinMatrix random_coin(Rng& rng)
{
    const double t = uniform(rng, 0.05, kPi / 2 - 0.05);  // keep |a| away from 0
    const cplx alpha = std::cos(t) * unit_phase(rng);
    const cplx beta = std::sin(t) * unit_phase(rng);
    const cplx g = unit_phase(rng);
    return {g * alpha, g * beta, -g * std::conj(beta), g * std::conj(alpha)};
}

inline UnimodularValue random_unimodular(Rng& rng)
{
    return UnimodularValue::from_angle(uniform(rng, 0.0, 2.0 * kPi));
}

inline ModelSpec random_spec(Rng& rng, ModelKind kind)
{
    switch (kind) {
    case ModelKind::Wojcik:
        return ModelSpec::wojcik(uniform(rng, 0.01, 0.99));
    case ModelKind::OneDefect:
        return ModelSpec::one_defect(uniform(rng, 0.0, kPi / 2 - 0.01));
    case ModelKind::TwoPhaseDefect:
        return ModelSpec::two_phase_defect(uniform(rng, -7.0, 7.0), uniform(rng, -7.0, 7.0));
    case ModelKind::CompleteTwoPhase:
        return ModelSpec::complete_two_phase(uniform(rng, -7.0, 7.0), uniform(rng, -7.0, 7.0));
    }
    return {};
}

inline constexpr ModelKind kAllKinds[] = {ModelKind::Wojcik, ModelKind::OneDefect, ModelKind::TwoPhaseDefect,
                                          ModelKind::CompleteTwoPhase};

// Normalized random state on [lo, hi] with zero padding sites at both ends.
inline WaveState random_state(Rng& rng, int lo, int hi)
{
    WaveState s(lo - 1, hi + 1);
    double n2 = 0.0;
    for (int x = lo; x <= hi; ++x) {
        const cplx l(uniform(rng, -1, 1), uniform(rng, -1, 1));
        const cplx r(uniform(rng, -1, 1), uniform(rng, -1, 1));
        s.set(x, l, r);
        n2 += std::norm(l) + std::norm(r);
    }
    for (auto& a : s.amplitudes())
        a /= std::sqrt(n2);
    return s;
}

inline double max_entry(const Eigen::MatrixXcd& m)
{
    return m.cwiseAbs().maxCoeff();
}

}  // namespace qwalk::testing
