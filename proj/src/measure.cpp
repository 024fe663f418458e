#include "qwalk/measure.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qwalk {

ProbabilityField::ProbabilityField(int window_min, std::vector<double> mass)
    : min_(window_min), mass_(std::move(mass))
{
}

double ProbabilityField::at(int x) const
{
    if (x < min_ || x > window_max())
        return 0.0;
    return mass_[static_cast<std::size_t>(x - min_)];
}

double ProbabilityField::total() const
{
    return std::accumulate(mass_.begin(), mass_.end(), 0.0);
}

ProbabilityField distribution(const WaveState& state)
{
    std::vector<double> mass;
    mass.reserve(state.size());
    for (int x = state.window_min(); x <= state.window_max(); ++x)
        mass.push_back(std::norm(state.left(x)) + std::norm(state.right(x)));
    return ProbabilityField(state.window_min(), std::move(mass));
}

WaveState symmetric_origin_state()
{
    const double h = 1.0 / std::sqrt(2.0);
    return WaveState::at_origin(h, cplx(0.0, h));
}

std::vector<double> origin_probability_series(const CoinField& field, const WaveState& initial, int steps)
{
    if (steps < 1)
        throw DomainError("origin_probability_series: T must be >= 1");
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(steps));
    WaveState psi = initial;
    for (int t = 1; t <= steps; ++t) {
        psi = apply_step(psi, field);
        out.push_back(std::norm(psi.left(0)) + std::norm(psi.right(0)));
    }
    return out;
}

double time_averaged_origin_probability(const CoinField& field, const WaveState& initial, int steps)
{
    const auto series = origin_probability_series(field, initial, steps);
    return std::accumulate(series.begin(), series.end(), 0.0) / steps;
}

double decay_length(double decay)
{
    if (!(decay > 0.0 && decay < 1.0))
        throw DomainError("decay_length: decay modulus must lie in (0, 1)");
    return -1.0 / std::log(decay);
}

double decay_length(const EigenCandidate& candidate)
{
    return decay_length(std::max(candidate.decay_left, candidate.decay_right));
}

}  // namespace qwalk
