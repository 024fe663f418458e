#include "qwalk/models.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <utility>

namespace qwalk {

namespace {

constexpr std::array<std::pair<ModelKind, std::string_view>, 4> kKindNames{{
    {ModelKind::Wojcik, "wojcik"},
    {ModelKind::OneDefect, "one-defect"},
    {ModelKind::TwoPhaseDefect, "two-phase-defect"},
    {ModelKind::CompleteTwoPhase, "complete-two-phase"},
}};

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::string shortest(double v)
{
    std::array<char, 64> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), end);
}

void require_finite(const ModelSpec& spec, const char* name)
{
    if (!std::isfinite(spec.param(name)))
        throw DomainError(std::string(name) + " must be finite");
}

}  // namespace

std::string_view to_string(ModelKind kind)
{
    for (const auto& [k, name] : kKindNames)
        if (k == kind)
            return name;
    return "unknown";
}

ModelKind parse_model_kind(std::string_view name)
{
    for (const auto& [k, n] : kKindNames)
        if (n == name)
            return k;
    throw ParseError("unknown model kind '" + std::string(name) + "'");
}

ModelSpec ModelSpec::wojcik(double phi)
{
    return {ModelKind::Wojcik, {{"phi", phi}}};
}

ModelSpec ModelSpec::one_defect(double xi)
{
    return {ModelKind::OneDefect, {{"xi", xi}}};
}

ModelSpec ModelSpec::two_phase_defect(double sigma_plus, double sigma_minus)
{
    return {ModelKind::TwoPhaseDefect, {{"sigma_plus", sigma_plus}, {"sigma_minus", sigma_minus}}};
}

ModelSpec ModelSpec::complete_two_phase(double sigma_plus, double sigma_minus)
{
    return {ModelKind::CompleteTwoPhase, {{"sigma_plus", sigma_plus}, {"sigma_minus", sigma_minus}}};
}

double ModelSpec::param(const std::string& name) const
{
    const auto it = params.find(name);
    if (it == params.end())
        throw DomainError("model " + std::string(to_string(kind)) + " is missing parameter '" + name + "'");
    return it->second;
}

void ModelSpec::validate() const
{
    switch (kind) {
    case ModelKind::Wojcik: {
        const double phi = param("phi");
        if (!(phi > 0.0 && phi < 1.0))
            throw DomainError("wojcik: phi must lie in (0, 1)");
        break;
    }
    case ModelKind::OneDefect: {
        const double xi = param("xi");
        if (!(xi >= 0.0 && xi <= kPi / 2))
            throw DomainError("one-defect: xi must lie in [0, pi/2]");
        break;
    }
    case ModelKind::TwoPhaseDefect:
    case ModelKind::CompleteTwoPhase:
        require_finite(*this, "sigma_plus");
        require_finite(*this, "sigma_minus");
        break;
    }
}

std::string ModelSpec::serialize() const
{
    std::string out = "kind=" + std::string(to_string(kind));
    for (const auto& [key, value] : params)
        out += ";" + key + "=" + shortest(value);
    return out;
}

ModelSpec ModelSpec::parse(std::string_view text)
{
    ModelSpec spec;
    bool have_kind = false;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto next = text.find_first_of(";,\n", pos);
        const auto token = trim(text.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos));
        pos = next == std::string_view::npos ? text.size() + 1 : next + 1;
        if (token.empty())
            continue;
        const auto eq = token.find('=');
        if (eq == std::string_view::npos)
            throw ParseError("model spec: expected key=value, got '" + std::string(token) + "'");
        const auto key = trim(token.substr(0, eq));
        const auto value = trim(token.substr(eq + 1));
        if (key == "kind") {
            spec.kind = parse_model_kind(value);
            have_kind = true;
            continue;
        }
        double v = 0.0;
        auto [end, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
        if (ec != std::errc{} || end != value.data() + value.size())
            throw ParseError("model spec: bad number for '" + std::string(key) + "'");
        spec.params[std::string(key)] = v;
    }
    if (!have_kind)
        throw ParseError("model spec: missing kind");
    return spec;
}

// ---------------------------------------------------------------------------

CoinMatrix phase_coin(double sigma)
{
    const double h = 1.0 / std::sqrt(2.0);
    return {h, h * std::polar(1.0, sigma), h * std::polar(1.0, -sigma), -h};
}

CoinField build_wojcik(double phi)
{
    ModelSpec::wojcik(phi).validate();
    const CoinMatrix h = CoinMatrix::hadamard();
    const cplx omega = std::polar(1.0, 2.0 * kPi * phi);
    return CoinField(h, h, 0, {{0, h.scaled(omega)}});
}

CoinField build_one_defect(double xi)
{
    ModelSpec::one_defect(xi).validate();
    const CoinMatrix h = CoinMatrix::hadamard();
    const double c = std::cos(xi);
    const double s = std::sin(xi);
    return CoinField(h, h, 0, {{0, CoinMatrix{c, s, s, -c}}});
}

CoinField build_two_phase_defect(double sigma_plus, double sigma_minus)
{
    ModelSpec::two_phase_defect(sigma_plus, sigma_minus).validate();
    return CoinField(phase_coin(sigma_minus), phase_coin(sigma_plus), 1,
                     {{0, CoinMatrix{1.0, 0.0, 0.0, -1.0}}});
}

CoinField build_complete_two_phase(double sigma_plus, double sigma_minus)
{
    ModelSpec::complete_two_phase(sigma_plus, sigma_minus).validate();
    return CoinField(phase_coin(sigma_minus), phase_coin(sigma_plus), 0);
}

CoinField hadamard_field()
{
    return CoinField::uniform(CoinMatrix::hadamard());
}

CoinField build_field(const ModelSpec& spec)
{
    spec.validate();
    switch (spec.kind) {
    case ModelKind::Wojcik:
        return build_wojcik(spec.param("phi"));
    case ModelKind::OneDefect:
        return build_one_defect(spec.param("xi"));
    case ModelKind::TwoPhaseDefect:
        return build_two_phase_defect(spec.param("sigma_plus"), spec.param("sigma_minus"));
    case ModelKind::CompleteTwoPhase:
        return build_complete_two_phase(spec.param("sigma_plus"), spec.param("sigma_minus"));
    }
    throw DomainError("unknown model kind");
}

}  // namespace qwalk
