#pragma once

#include <vector>

#include "qwalk/core.hpp"
#include "qwalk/spectral.hpp"

namespace qwalk {

/// Calibration constants of the localization dichotomy. These are
/// engineering thresholds for T = 2000 runs, not derived quantities.
namespace calibration {
inline constexpr int kDichotomyTime = 2000;
inline constexpr double kLocalizedMin = 0.02;
inline constexpr double kDelocalizedMax = 0.01;
}  // namespace calibration

/// Site probabilities mu(x) = |Psi^L(x)|^2 + |Psi^R(x)|^2.
class ProbabilityField {
public:
    ProbabilityField(int window_min, std::vector<double> mass);

    int window_min() const { return min_; }
    int window_max() const { return min_ + static_cast<int>(mass_.size()) - 1; }
    double at(int x) const;
    double total() const;
    const std::vector<double>& mass() const { return mass_; }

private:
    int min_;
    std::vector<double> mass_;
};

ProbabilityField distribution(const WaveState& state);

/// (Psi^L(0), Psi^R(0)) = (1/sqrt2, i/sqrt2), the default localization probe.
WaveState symmetric_origin_state();

/// mu_t(0) for t = 1..steps.
std::vector<double> origin_probability_series(const CoinField& field, const WaveState& initial, int steps);

/// (1/T) sum_{t=1..T} mu_t(0).
double time_averaged_origin_probability(const CoinField& field, const WaveState& initial, int steps);

/// -1 / ln(decay). Throws DomainError unless decay is in (0, 1).
double decay_length(double decay);
/// Decay length of the slower of the two tails.
double decay_length(const EigenCandidate& candidate);

}  // namespace qwalk
