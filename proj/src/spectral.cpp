#include "qwalk/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>

namespace qwalk {

namespace {

constexpr double kTwoPi = 2.0 * kPi;
constexpr double kContractionTol = 1e-9;
constexpr int kMinTail = 8;
constexpr int kMaxTail = 20000;

std::optional<HalfLineSolution> contracting_pair(const TransferMatrix& t, Side side)
{
    const auto mu = t.eigenvalues();
    if (std::abs(mu[1]) - 1.0 < kContractionTol)
        return std::nullopt;
    // Right tails need |mu| < 1 going outward (x -> +inf); left tails are
    // Psi(x) = mu^(x - x0) v with x -> -inf, so they need |mu| > 1.
    const cplx chosen = side == Side::Right ? mu[0] : mu[1];
    const double decay = side == Side::Right ? std::abs(mu[0]) : 1.0 / std::abs(mu[1]);
    return HalfLineSolution{decay, chosen, t.eigenvector(chosen)};
}

std::optional<HalfLineSolution> try_half_line(const CoinField& field, const UnimodularValue& lambda, Side side)
{
    const CoinMatrix& coin = side == Side::Right ? field.bulk_right() : field.bulk_left();
    return contracting_pair(bulk_transfer(coin, lambda), side);
}

/// Unit left tail carried to first_right_bulk_site().
Eigen::Vector2cd propagate_left(const CoinField& field, const UnimodularValue& lambda, Eigen::Vector2cd w)
{
    const int from = field.last_left_bulk_site();
    const int to = field.first_right_bulk_site();
    for (int x = from; x < to; ++x) {
        w = site_transfer(field.at(x), field.at(x + 1), lambda).m * w;
        w.normalize();
    }
    return w;
}

std::optional<double> abs_matching(const CoinField& field, const UnimodularValue& lambda)
{
    const auto left = try_half_line(field, lambda, Side::Left);
    const auto right = try_half_line(field, lambda, Side::Right);
    if (!left || !right)
        return std::nullopt;
    const Eigen::Vector2cd w = propagate_left(field, lambda, left->direction);
    const Eigen::Vector2cd& v = right->direction;
    return std::abs(w(0) * v(1) - w(1) * v(0));
}

bool offband_at(const CoinField& field, double theta)
{
    const auto lambda = UnimodularValue::from_angle(theta);
    return try_half_line(field, lambda, Side::Left) && try_half_line(field, lambda, Side::Right);
}

/// Boundary between an on-band angle and an off-band angle.
double band_edge(const CoinField& field, double on_band, double off_band)
{
    for (int i = 0; i < 80 && std::abs(off_band - on_band) > 1e-15; ++i) {
        const double mid = 0.5 * (on_band + off_band);
        (offband_at(field, mid) ? off_band : on_band) = mid;
    }
    return off_band;
}

int tail_length(double decay, double decay_lengths)
{
    const double len = -1.0 / std::log(decay);
    if (!std::isfinite(len))
        return kMaxTail;
    return static_cast<int>(std::clamp(std::ceil(decay_lengths * len), double(kMinTail), double(kMaxTail)));
}

std::vector<double> distribution_of(const WaveState& state)
{
    std::vector<double> p;
    p.reserve(state.size());
    for (int x = state.window_min(); x <= state.window_max(); ++x)
        p.push_back(std::norm(state.left(x)) + std::norm(state.right(x)));
    return p;
}

double golden_minimize(const auto& f, double a, double b, double tol)
{
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    while (b - a > tol) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return fc < fd ? c : d;
}

}  // namespace

// ---------------------------------------------------------------------------

std::array<cplx, 2> TransferMatrix::eigenvalues() const
{
    const cplx tr = m(0, 0) + m(1, 1);
    const cplx det = m.determinant();
    const cplx disc = std::sqrt(tr * tr - 4.0 * det);
    const cplx plus = 0.5 * (tr + disc);
    const cplx minus = 0.5 * (tr - disc);
    // The larger root is free of cancellation; recover the smaller from det.
    const cplx big = std::abs(plus) >= std::abs(minus) ? plus : minus;
    const cplx small = big == cplx{} ? cplx{} : det / big;
    return {small, big};
}

Eigen::Vector2cd TransferMatrix::eigenvector(cplx mu) const
{
    Eigen::Vector2cd from_row0(m(0, 1), mu - m(0, 0));
    Eigen::Vector2cd from_row1(mu - m(1, 1), m(1, 0));
    Eigen::Vector2cd v = from_row0.norm() >= from_row1.norm() ? from_row0 : from_row1;
    if (v.norm() == 0.0)
        return Eigen::Vector2cd(1.0, 0.0);
    return v.normalized();
}

TransferMatrix bulk_transfer(const CoinMatrix& coin, const UnimodularValue& lambda)
{
    return site_transfer(coin, coin, lambda);
}

TransferMatrix site_transfer(const CoinMatrix& at_x, const CoinMatrix& at_next, const UnimodularValue& lambda)
{
    if (std::abs(at_next.a) < 1e-12)
        throw DegenerateCoin("transfer matrix undefined for a coin with a = 0");
    const cplx l = lambda.value();
    const cplx a = at_next.a;
    const cplx b = at_next.b;
    TransferMatrix t;
    // Psi^R(x+1) = (c Psi^L(x) + d Psi^R(x)) / lambda with the coin at x;
    // Psi^L(x+1) from lambda Psi^L(x) = a Psi^L(x+1) + b Psi^R(x+1) at x+1.
    t.m(1, 0) = at_x.c / l;
    t.m(1, 1) = at_x.d / l;
    t.m(0, 0) = (l - b * t.m(1, 0)) / a;
    t.m(0, 1) = -b * t.m(1, 1) / a;
    return t;
}

HalfLineSolution half_line_solution(const CoinField& field, const UnimodularValue& lambda, Side side)
{
    auto sol = try_half_line(field, lambda, side);
    if (!sol)
        throw NoContraction("half_line_solution: transfer moduli are both 1 (lambda lies in the band)");
    return *sol;
}

cplx matching_determinant(const CoinField& field, const UnimodularValue& lambda)
{
    const HalfLineSolution left = half_line_solution(field, lambda, Side::Left);
    const HalfLineSolution right = half_line_solution(field, lambda, Side::Right);
    const Eigen::Vector2cd w = propagate_left(field, lambda, left.direction);
    const Eigen::Vector2cd& v = right.direction;
    return w(0) * v(1) - w(1) * v(0);
}

// ---------------------------------------------------------------------------

double eigen_residual(const CoinField& field, const WaveState& state, const UnimodularValue& lambda)
{
    const cplx l = lambda.value();
    double res = 0.0;
    for (int x = state.window_min() + 1; x < state.window_max(); ++x) {
        const CoinMatrix& next = field.at(x + 1);
        const CoinMatrix& prev = field.at(x - 1);
        const cplx up = next.a * state.left(x + 1) + next.b * state.right(x + 1) - l * state.left(x);
        const cplx down = prev.c * state.left(x - 1) + prev.d * state.right(x - 1) - l * state.right(x);
        res += std::norm(up) + std::norm(down);
    }
    const double norm = state_norm(state);
    return norm == 0.0 ? std::numeric_limits<double>::infinity() : std::sqrt(res) / norm;
}

EigenCandidate build_eigencandidate(const CoinField& field, const UnimodularValue& lambda, double decay_lengths)
{
    const HalfLineSolution left = half_line_solution(field, lambda, Side::Left);
    const HalfLineSolution right = half_line_solution(field, lambda, Side::Right);
    const int x_left = field.last_left_bulk_site();
    const int x_right = field.first_right_bulk_site();

    std::vector<Eigen::Vector2cd> block;
    Eigen::Vector2cd w = left.direction;
    block.push_back(w);
    for (int x = x_left; x < x_right; ++x) {
        w = site_transfer(field.at(x), field.at(x + 1), lambda).m * w;
        block.push_back(w);
    }
    const cplx right_coef = right.direction.dot(w);

    const int n_left = tail_length(left.decay, decay_lengths);
    const int n_right = tail_length(right.decay, decay_lengths);
    const int half = std::max(x_right + n_right, n_left - x_left);
    WaveState psi(-half, half);

    Eigen::Vector2cd tail = left.direction;
    for (int x = x_left; x >= -half; --x) {
        psi.set(x, tail(0), tail(1));
        tail /= left.multiplier;
    }
    for (int x = x_left + 1; x < x_right; ++x) {
        const auto& v = block[static_cast<std::size_t>(x - x_left)];
        psi.set(x, v(0), v(1));
    }
    tail = right_coef * right.direction;
    for (int x = x_right; x <= half; ++x) {
        psi.set(x, tail(0), tail(1));
        tail *= right.multiplier;
    }

    cplx anchor = psi.left(x_left);
    if (std::abs(anchor) < 1e-300)
        anchor = psi.right(x_left);
    const cplx gauge = std::conj(anchor) / (std::abs(anchor) * state_norm(psi));
    for (cplx& z : psi.amplitudes())
        z *= gauge;

    const double residual = eigen_residual(field, psi, lambda);
    return EigenCandidate{lambda, right.decay, left.decay, residual, std::move(psi)};
}

std::vector<std::array<double, 2>> offband_arcs(const CoinField& field, int grid_size, double margin)
{
    const auto theta = [grid_size](long k) { return kTwoPi * static_cast<double>(k) / grid_size; };
    std::vector<char> off(static_cast<std::size_t>(grid_size));
    for (int k = 0; k < grid_size; ++k)
        off[static_cast<std::size_t>(k)] = offband_at(field, theta(k));

    const auto first_on = std::find(off.begin(), off.end(), 0);
    if (first_on == off.end())
        return {{0.0, kTwoPi}};
    if (std::find(off.begin(), off.end(), 1) == off.end())
        return {};

    const long start = first_on - off.begin();
    const auto is_off = [&](long k) { return off[static_cast<std::size_t>(k % grid_size)] != 0; };
    std::vector<std::array<double, 2>> arcs;
    for (long k = start + 1; k <= start + grid_size; ++k) {
        if (!is_off(k) || is_off(k - 1))
            continue;
        long j = k;
        while (is_off(j + 1))
            ++j;
        const double lo = band_edge(field, theta(k - 1), theta(k)) + margin;
        const double hi = band_edge(field, theta(j + 1), theta(j)) - margin;
        if (hi > lo) {
            const double shift = lo >= kTwoPi ? kTwoPi : 0.0;
            arcs.push_back({lo - shift, hi - shift});
        }
        k = j;
    }
    std::sort(arcs.begin(), arcs.end());
    return arcs;
}

std::vector<EigenCandidate> point_spectrum_search(const CoinField& field, const SearchOptions& options)
{
    if (options.grid_size < 256)
        throw DomainError("point_spectrum_search: grid_size must be >= 256");

    const double step = kTwoPi / options.grid_size;
    const auto objective = [&](double t) {
        const auto v = abs_matching(field, UnimodularValue::from_angle(t));
        return v ? *v : std::numeric_limits<double>::infinity();
    };

    std::vector<EigenCandidate> found;
    for (const auto& [lo, hi] : offband_arcs(field, options.grid_size, options.band_margin)) {
        const bool full_circle = lo == 0.0 && hi == kTwoPi;
        std::vector<double> ts;
        if (full_circle) {
            for (int k = -1; k <= options.grid_size; ++k)
                ts.push_back(k * step);
        } else {
            ts.push_back(lo);
            for (double t = (std::floor(lo / step) + 1) * step; t < hi; t += step)
                ts.push_back(t);
            ts.push_back(hi);
        }
        std::vector<double> fs(ts.size());
        std::transform(ts.begin(), ts.end(), fs.begin(), objective);

        const std::size_t n = ts.size();
        for (std::size_t i = 0; i < n; ++i) {
            double a = 0.0;
            double b = 0.0;
            if (i > 0 && i + 1 < n) {
                if (!(fs[i] <= fs[i - 1] && fs[i] < fs[i + 1]))
                    continue;
                a = ts[i - 1];
                b = ts[i + 1];
            } else if (full_circle) {
                continue;
            } else if (i == 0 && n > 1 && fs[0] < fs[1]) {
                // Root between the band margin and the first grid point.
                a = ts[0];
                b = ts[1];
            } else if (i + 1 == n && n > 1 && fs[n - 1] < fs[n - 2]) {
                a = ts[n - 2];
                b = ts[n - 1];
            } else {
                continue;
            }
            const double t = golden_minimize(objective, a, b, options.theta_tol);
            if (!(objective(t) < options.determinant_tol))
                continue;
            const auto lambda = UnimodularValue::from_angle(t);
            EigenCandidate cand = build_eigencandidate(field, lambda, options.window_decay_lengths);
            if (!(cand.matching_residual < options.residual_tol))
                continue;
            const bool duplicate = std::any_of(found.begin(), found.end(), [&](const EigenCandidate& c) {
                return circle_distance(c.lambda, lambda) < 1e-9;
            });
            if (!duplicate)
                found.push_back(std::move(cand));
        }
    }
    std::sort(found.begin(), found.end(), [](const EigenCandidate& a, const EigenCandidate& b) {
        return a.lambda.angle() < b.lambda.angle();
    });
    return found;
}

// ---------------------------------------------------------------------------

double inverse_participation_ratio(const WaveState& state)
{
    const std::vector<double> p = distribution_of(state);
    const double total = std::accumulate(p.begin(), p.end(), 0.0);
    if (total == 0.0)
        return 0.0;
    double ipr = 0.0;
    for (double v : p)
        ipr += (v / total) * (v / total);
    return ipr;
}

std::vector<LocalizedEigenvalue> localized_spectrum_oracle(const CoinField& field, int half_width,
                                                           double participation_threshold)
{
    const Eigen::MatrixXcd m = truncated_operator(field, half_width);
    const Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(m, true);
    const auto& values = solver.eigenvalues();
    const auto& vectors = solver.eigenvectors();

    std::vector<LocalizedEigenvalue> out;
    for (Eigen::Index k = 0; k < values.size(); ++k) {
        const WaveState state = from_vector(vectors.col(k), half_width);
        const double ipr = inverse_participation_ratio(state);
        if (!(ipr > participation_threshold))
            continue;
        const auto mass = distribution_of(state);
        const auto peak = std::max_element(mass.begin(), mass.end()) - mass.begin();
        out.push_back({UnimodularValue(values(k) / std::abs(values(k))), ipr,
                       static_cast<int>(peak) - half_width});
    }
    std::sort(out.begin(), out.end(), [](const LocalizedEigenvalue& a, const LocalizedEigenvalue& b) {
        return a.lambda.angle() < b.lambda.angle();
    });
    return out;
}

}  // namespace qwalk
