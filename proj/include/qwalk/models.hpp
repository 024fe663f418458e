#pragma once

#include <map>
#include <string>
#include <string_view>

#include "qwalk/core.hpp"

namespace qwalk {

enum class ModelKind { Wojcik, OneDefect, TwoPhaseDefect, CompleteTwoPhase };

/// Command-line / serialization names: wojcik, one-defect, two-phase-defect,
/// complete-two-phase.
std::string_view to_string(ModelKind kind);
ModelKind parse_model_kind(std::string_view name);

/// A model kind together with its named real parameters.
///
/// Parameter names: "phi" (Wojcik), "xi" (OneDefect), "sigma_plus" and
/// "sigma_minus" (both two-phase kinds). Angles are radians.
struct ModelSpec {
    ModelKind kind = ModelKind::Wojcik;
    std::map<std::string, double> params;

    static ModelSpec wojcik(double phi);
    static ModelSpec one_defect(double xi);
    static ModelSpec two_phase_defect(double sigma_plus, double sigma_minus);
    static ModelSpec complete_two_phase(double sigma_plus, double sigma_minus);

    double param(const std::string& name) const;

    /// Throws DomainError when a parameter is missing or out of range.
    void validate() const;

    /// Flat form "kind=<name>;key=value;..." with keys in lexicographic order
    /// and shortest round-trip decimals.
    std::string serialize() const;
    /// Accepts ';', ',' or newlines as separators and ignores surrounding
    /// whitespace. Throws ParseError.
    static ModelSpec parse(std::string_view text);

    friend bool operator==(const ModelSpec&, const ModelSpec&) = default;
};

/// (1/sqrt2) [[1, e^{i sigma}], [e^{-i sigma}, -1]].
CoinMatrix phase_coin(double sigma);

/// Hadamard bulk with omega H at the origin, omega = exp(2 i pi phi).
/// phi must lie in (0, 1).
CoinField build_wojcik(double phi);

/// Hadamard bulk with [[cos xi, sin xi], [sin xi, -cos xi]] at the origin.
/// xi must lie in [0, pi/2].
CoinField build_one_defect(double xi);

/// phase_coin(sigma_plus) for x >= 1, phase_coin(sigma_minus) for x <= -1,
/// diag(1, -1) at the origin.
CoinField build_two_phase_defect(double sigma_plus, double sigma_minus);

/// phase_coin(sigma_plus) for x >= 0, phase_coin(sigma_minus) for x <= -1.
CoinField build_complete_two_phase(double sigma_plus, double sigma_minus);

CoinField hadamard_field();

CoinField build_field(const ModelSpec& spec);

}  // namespace qwalk
