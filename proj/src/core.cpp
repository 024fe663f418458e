#include "qwalk/core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qwalk {

CoinMatrix CoinMatrix::hadamard()
{
    const double h = 1.0 / std::sqrt(2.0);
    return {h, h, h, -h};
}

CoinMatrix CoinMatrix::from_matrix(const Eigen::Matrix2cd& m)
{
    return {m(0, 0), m(0, 1), m(1, 0), m(1, 1)};
}

Eigen::Matrix2cd CoinMatrix::matrix() const
{
    Eigen::Matrix2cd m;
    m << a, b, c, d;
    return m;
}

double CoinMatrix::unitarity_defect() const
{
    const Eigen::Matrix2cd m = matrix();
    const Eigen::Matrix2cd e = m * m.adjoint() - Eigen::Matrix2cd::Identity();
    return e.cwiseAbs().maxCoeff();
}

// ---------------------------------------------------------------------------

CoinField::CoinField(CoinMatrix bulk_left, CoinMatrix bulk_right, int split_point,
                     std::map<int, CoinMatrix> overrides)
    : bulk_left_(bulk_left), bulk_right_(bulk_right), split_point_(split_point),
      overrides_(std::move(overrides))
{
    const auto check = [](const CoinMatrix& c) {
        if (!c.is_unitary())
            throw DomainError("CoinField: coin is not unitary to 1e-12");
    };
    check(bulk_left_);
    check(bulk_right_);
    for (const auto& [x, c] : overrides_)
        check(c);
}

CoinField CoinField::uniform(const CoinMatrix& coin)
{
    return CoinField(coin, coin, 0);
}

const CoinMatrix& CoinField::at(int x) const
{
    if (auto it = overrides_.find(x); it != overrides_.end())
        return it->second;
    return x < split_point_ ? bulk_left_ : bulk_right_;
}

int CoinField::last_left_bulk_site() const
{
    int first_irregular = split_point_;
    if (!overrides_.empty())
        first_irregular = std::min(first_irregular, overrides_.begin()->first);
    return first_irregular - 1;
}

int CoinField::first_right_bulk_site() const
{
    int first = split_point_;
    if (!overrides_.empty())
        first = std::max(first, overrides_.rbegin()->first + 1);
    return first;
}

// ---------------------------------------------------------------------------

WaveState::WaveState(int window_min, int window_max) : min_(window_min), max_(window_max)
{
    if (window_min > window_max)
        throw DomainError("WaveState: window_min > window_max");
    amps_.assign(2 * size(), cplx{});
}

WaveState WaveState::at_origin(cplx left, cplx right, int pad)
{
    WaveState s(-pad, pad);
    s.set(0, left, right);
    return s;
}

cplx WaveState::left(int x) const
{
    return contains(x) ? amps_[2 * static_cast<std::size_t>(x - min_)] : cplx{};
}

cplx WaveState::right(int x) const
{
    return contains(x) ? amps_[2 * static_cast<std::size_t>(x - min_) + 1] : cplx{};
}

void WaveState::set(int x, cplx left, cplx right)
{
    if (!contains(x))
        throw DomainError("WaveState::set: site " + std::to_string(x) + " outside window");
    const auto i = 2 * static_cast<std::size_t>(x - min_);
    amps_[i] = left;
    amps_[i + 1] = right;
}

// ---------------------------------------------------------------------------

UnimodularValue::UnimodularValue(cplx z) : z_(z)
{
    if (!(std::abs(std::abs(z) - 1.0) < 1e-10))
        throw DomainError("UnimodularValue: |z| deviates from 1 by more than 1e-10");
}

double UnimodularValue::angle() const
{
    double t = std::arg(z_);
    if (t < 0.0)
        t += 2.0 * kPi;
    if (t >= 2.0 * kPi)
        t -= 2.0 * kPi;
    return t;
}

double circle_distance(const UnimodularValue& u, const UnimodularValue& v)
{
    // arg(u conj(v)) is the signed angle between them, in (-pi, pi].
    return std::abs(std::arg(u.value() * std::conj(v.value())));
}

// ---------------------------------------------------------------------------

WaveState apply_step(const WaveState& state, const CoinField& field)
{
    const int lo = state.window_min();
    const int hi = state.window_max();
    const auto boundary_zero = [&](int x) {
        return state.left(x) == cplx{} && state.right(x) == cplx{};
    };
    if (!boundary_zero(lo) || !boundary_zero(hi))
        throw WindowOverflow("apply_step: nonzero amplitude on a boundary site; enlarge the window");

    WaveState out(lo - 1, hi + 1);
    auto& dst = out.amplitudes();
    for (int x = lo; x <= hi; ++x) {
        const cplx l = state.left(x);
        const cplx r = state.right(x);
        if (l == cplx{} && r == cplx{})
            continue;
        const CoinMatrix& coin = field.at(x);
        // P_x moves the upper row to x-1, Q_x moves the lower row to x+1.
        dst[2 * static_cast<std::size_t>(x - 1 - out.window_min())] += coin.a * l + coin.b * r;
        dst[2 * static_cast<std::size_t>(x + 1 - out.window_min()) + 1] += coin.c * l + coin.d * r;
    }
    return out;
}

Eigen::MatrixXcd truncated_operator(const CoinField& field, int half_width)
{
    if (half_width < 2)
        throw DomainError("truncated_operator: half width must be >= 2");
    const int sites = 2 * half_width + 1;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2 * sites, 2 * sites);
    for (int i = 0; i < sites; ++i) {
        const CoinMatrix& coin = field.at(i - half_width);
        const int left_to = (i - 1 + sites) % sites;
        const int right_to = (i + 1) % sites;
        m(2 * left_to, 2 * i) += coin.a;
        m(2 * left_to, 2 * i + 1) += coin.b;
        m(2 * right_to + 1, 2 * i) += coin.c;
        m(2 * right_to + 1, 2 * i + 1) += coin.d;
    }
    return m;
}

Eigen::VectorXcd to_vector(const WaveState& state, int half_width)
{
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(2 * (2 * half_width + 1));
    for (int x = state.window_min(); x <= state.window_max(); ++x) {
        const cplx l = state.left(x);
        const cplx r = state.right(x);
        if (l == cplx{} && r == cplx{})
            continue;
        if (x < -half_width || x > half_width)
            throw DomainError("to_vector: state support exceeds [-N, N]");
        v(2 * (x + half_width)) = l;
        v(2 * (x + half_width) + 1) = r;
    }
    return v;
}

WaveState from_vector(const Eigen::VectorXcd& v, int half_width)
{
    WaveState s(-half_width, half_width);
    for (int x = -half_width; x <= half_width; ++x)
        s.set(x, v(2 * (x + half_width)), v(2 * (x + half_width) + 1));
    return s;
}

double state_norm(const WaveState& state)
{
    double sum = 0.0;
    for (const cplx& z : state.amplitudes())
        sum += std::norm(z);
    return std::sqrt(sum);
}

}  // namespace qwalk
