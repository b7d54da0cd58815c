#pragma once

/// @file grid.hpp
/// @brief Periodic 1-D grid and the field types everything else operates on.
///
/// A Grid is an N-point uniform discretisation of the torus [0, L).  N must be
/// a power of two (>= 16) so that all transforms are radix-2 exact.  Fourier
/// modes are stored in standard FFT ordering: column k holds the coefficient
/// for the signed mode k (k < N/2) or k - N (k >= N/2), i.e. the frequency
/// xi_k = 2*pi*(signed mode)/L.
///
/// Normalisation: the DFT used throughout is unitary, so the discrete
/// Plancherel identity  sum_x |z(x)|^2 = sum_k |zhat(k)|^2  holds exactly and
/// a constant field c transforms to a single mode-0 coefficient of value
/// c*sqrt(N).  L^2 norms carry the quadrature weight sqrt(L/N) so that grid
/// refinement converges to the continuum norm; a unit-amplitude tone
/// cos(2*pi*x/L) has L^2 norm sqrt(L/2) under this convention.

#include <Eigen/Core>
#include <complex>
#include <limits>
#include <stdexcept>

namespace declab {

inline constexpr double pi = 3.14159265358979323846264338327950288;
inline constexpr double inf = std::numeric_limits<double>::infinity();

/// Uniform periodic grid on [0, box_length).
struct Grid {
    int num_points = 0;      ///< N, a power of two >= 16
    double box_length = 0.0; ///< L > 0

    Grid() = default;
    Grid(int n, double length);

    double dx() const { return box_length / num_points; }
    double x(int j) const { return j * dx(); }

    /// Smallest positive resolvable frequency, 2*pi/L.
    double xi_min() const { return 2.0 * pi / box_length; }
    /// Nyquist frequency magnitude, pi*N/L.
    double xi_max() const { return pi * num_points / box_length; }

    /// Signed integer mode for storage index k in [0, N).
    int signed_mode(int k) const { return k < num_points / 2 ? k : k - num_points; }
    /// Frequency xi_k = 2*pi*signed_mode(k)/L.
    double frequency(int k) const { return signed_mode(k) * xi_min(); }

    /// Quadrature weight for physical-space integrals (dx).
    double quad_weight() const { return dx(); }
    /// Scale factor turning an l^2 coefficient norm into the continuum L^2 norm.
    double l2_scale() const { return std::sqrt(box_length / num_points); }

    bool operator==(const Grid& o) const {
        return num_points == o.num_points && box_length == o.box_length;
    }
};

/// Multi-component field sampled in physical space; row i = component i.
struct RealField {
    Grid grid;
    Eigen::MatrixXd values; ///< n_components x num_points

    RealField() = default;
    RealField(const Grid& g, int n_components)
        : grid(g), values(Eigen::MatrixXd::Zero(n_components, g.num_points)) {}

    int components() const { return static_cast<int>(values.rows()); }
};

/// Multi-component field in Fourier space (FFT mode ordering, unitary DFT).
struct SpectralField {
    Grid grid;
    Eigen::MatrixXcd coeff; ///< n_components x num_points

    SpectralField() = default;
    SpectralField(const Grid& g, int n_components)
        : grid(g), coeff(Eigen::MatrixXcd::Zero(n_components, g.num_points)) {}

    int components() const { return static_cast<int>(coeff.rows()); }
};

/// Continuum-scaled L^2 norm of a physical field (Euclidean in components).
double l2_norm(const RealField& f);
/// Continuum-scaled L^2 norm computed spectrally (Plancherel).
double l2_norm(const SpectralField& f);
/// L^p norm with pointwise Euclidean component norm; p >= 1 or infinity.
double lp_norm(const RealField& f, double p);

/// Max |coeff(k) - conj(coeff(-k))| over modes; 0 for exactly Hermitian data.
double hermitian_asymmetry(const SpectralField& f);
/// Averages coeff(k) with conj(coeff(-k)) in place and returns the asymmetry
/// that was removed.  Shared modes (0 and Nyquist) have imaginary parts zeroed.
double enforce_hermitian(SpectralField& f);

} // namespace declab
