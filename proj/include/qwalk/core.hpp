#pragma once

#include <complex>
#include <map>
#include <vector>

#include <Eigen/Dense>

#include "qwalk/errors.hpp"

namespace qwalk {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr cplx kI{0.0, 1.0};

/// Per-site 2x2 coin A_x = [[a, b], [c, d]].
///
/// The upper row (a, b) feeds the left-moving chirality and the lower row
/// (c, d) the right-moving one, i.e. A_x = P_x + Q_x.
struct CoinMatrix {
    cplx a, b, c, d;

    static CoinMatrix hadamard();
    static CoinMatrix from_matrix(const Eigen::Matrix2cd& m);

    Eigen::Matrix2cd matrix() const;
    cplx determinant() const { return a * d - b * c; }

    /// Largest entry of |A A^dagger - I|.
    double unitarity_defect() const;
    bool is_unitary(double tol = 1e-12) const { return unitarity_defect() <= tol; }

    CoinMatrix scaled(cplx factor) const { return {factor * a, factor * b, factor * c, factor * d}; }

    friend bool operator==(const CoinMatrix&, const CoinMatrix&) = default;
};

/// Assignment of a coin to every lattice site.
///
/// Sites x < split_point use bulk_left, sites x >= split_point use
/// bulk_right, except for the finitely many positions listed in overrides.
class CoinField {
public:
    /// Throws DomainError if any coin fails CoinMatrix::is_unitary().
    CoinField(CoinMatrix bulk_left, CoinMatrix bulk_right, int split_point,
              std::map<int, CoinMatrix> overrides = {});

    /// Homogeneous field with a single coin everywhere.
    static CoinField uniform(const CoinMatrix& coin);

    const CoinMatrix& at(int x) const;

    const CoinMatrix& bulk_left() const { return bulk_left_; }
    const CoinMatrix& bulk_right() const { return bulk_right_; }
    int split_point() const { return split_point_; }
    const std::map<int, CoinMatrix>& overrides() const { return overrides_; }

    /// Largest x such that every site <= x carries bulk_left.
    int last_left_bulk_site() const;
    /// Smallest x such that every site >= x carries bulk_right.
    int first_right_bulk_site() const;

private:
    CoinMatrix bulk_left_;
    CoinMatrix bulk_right_;
    int split_point_;
    std::map<int, CoinMatrix> overrides_;
};

/// Two-component amplitudes (Psi^L(x), Psi^R(x)) on [window_min, window_max].
class WaveState {
public:
    /// All-zero state on the window; throws DomainError if min > max.
    WaveState(int window_min, int window_max);

    /// State with a single occupied site at the origin, padded by `pad`
    /// zero sites on each side.
    static WaveState at_origin(cplx left, cplx right, int pad = 1);

    int window_min() const { return min_; }
    int window_max() const { return max_; }
    std::size_t size() const { return static_cast<std::size_t>(max_ - min_ + 1); }
    bool contains(int x) const { return x >= min_ && x <= max_; }

    /// Amplitudes outside the window read as zero.
    cplx left(int x) const;
    cplx right(int x) const;
    void set(int x, cplx left, cplx right);

    /// Interleaved storage: [L(min), R(min), L(min+1), R(min+1), ...].
    const std::vector<cplx>& amplitudes() const { return amps_; }
    std::vector<cplx>& amplitudes() { return amps_; }

private:
    int min_;
    int max_;
    std::vector<cplx> amps_;
};

/// Value on the unit circle; construction enforces ||z| - 1| < 1e-10.
class UnimodularValue {
public:
    explicit UnimodularValue(cplx z);
    static UnimodularValue from_angle(double theta) { return UnimodularValue(std::polar(1.0, theta)); }

    cplx value() const { return z_; }
    /// Angle in [0, 2 pi).
    double angle() const;
    UnimodularValue operator-() const { return UnimodularValue(-z_); }
    UnimodularValue conj() const { return UnimodularValue(std::conj(z_)); }

private:
    cplx z_;
};

/// Shortest arc distance between two points on the circle.
double circle_distance(const UnimodularValue& u, const UnimodularValue& v);

/// One step of U = S (+) A_x. The window grows by one site per side.
///
/// Throws WindowOverflow if either boundary site of `state` carries a
/// nonzero amplitude.
WaveState apply_step(const WaveState& state, const CoinField& field);

/// Dense 2(2N+1) square matrix of the walk on [-N, N] with periodic wrap.
/// Basis index of (x, J) is 2(x + N) + J with J = 0 (L), 1 (R).
Eigen::MatrixXcd truncated_operator(const CoinField& field, int half_width);

/// Pack / unpack a state on [-N, N] into the truncated_operator basis.
Eigen::VectorXcd to_vector(const WaveState& state, int half_width);
WaveState from_vector(const Eigen::VectorXcd& v, int half_width);

double state_norm(const WaveState& state);

}  // namespace qwalk
