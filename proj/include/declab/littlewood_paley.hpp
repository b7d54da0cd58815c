#pragma once

/// @file littlewood_paley.hpp
/// @brief Dyadic cutoffs and frequency-block projections.
///
/// The low-frequency cutoff chi is a smooth radial profile equal to 1 on
/// |xi| <= 3/4 and 0 on |xi| >= 4/3, built from exp(-k/x) gluing (k =
/// steepness, a tunable that changes the transition shape but never the
/// supports).  The shell function is defined as
///
///     phi(xi) := chi(xi/2) - chi(xi),
///
/// supported in 3/4 <= |xi| <= 8/3, so both partition identities telescope
/// *exactly* (halving a double is exact in binary floating point):
///
///     chi(xi) + sum_{j>=0} phi(2^{-j} xi) = 1            for all xi,
///     sum_{j in Z} phi(2^{-j} xi)         = 1            for xi != 0.
///
/// Blocks: the homogeneous block_j multiplies by phi(2^{-j} xi); the
/// inhomogeneous family uses chi for j = -1, phi(2^{-j} xi) for j >= 0 and
/// vanishes for j <= -2.

#include "declab/fourier.hpp"

namespace declab {

/// Smooth dyadic cutoff pair with pinned supports.
struct CutoffProfile {
    double steepness = 1.0; ///< k in the exp(-k/x) transition; must be > 0

    /// Low-frequency cutoff: 1 on |xi| <= 3/4, 0 on |xi| >= 4/3.
    double chi(double xi) const;
    /// Shell function chi(xi/2) - chi(xi), supported in [3/4, 8/3].
    double phi(double xi) const;

    // Support radii (all radial in |xi|).
    static constexpr double chi_inner = 0.75;       // chi == 1 inside
    static constexpr double chi_outer = 4.0 / 3.0;  // chi == 0 outside
    static constexpr double shell_inner = 0.75;     // phi == 0 inside
    static constexpr double shell_outer = 8.0 / 3.0;// phi == 0 outside
};

/// Range of dyadic indices that can interact with a given grid:
///   j_min = floor(log2(2 pi / L)) - 1,  j_max = ceil(log2(pi N / L)) + 1.
/// Every nonzero grid frequency lies in the union of shells in this range,
/// with one index of slack on both ends.
struct BlockRange {
    int j_min = 0;
    int j_max = 0;
};
BlockRange block_range(const Grid& g);

/// phi(2^{-j} xi): weight of homogeneous block j at frequency xi.
double homogeneous_weight(const CutoffProfile& c, int j, double xi);
/// chi(xi) for j == -1, phi(2^{-j} xi) for j >= 0, 0 for j <= -2.
double inhomogeneous_weight(const CutoffProfile& c, int j, double xi);

/// Apply the homogeneous block multiplier Delta-dot_j.
SpectralField homogeneous_block(const SpectralField& f, int j,
                                const CutoffProfile& c = {});
/// Apply the inhomogeneous block multiplier Delta_j (j >= -1; j <= -2 gives 0).
SpectralField inhomogeneous_block(const SpectralField& f, int j,
                                  const CutoffProfile& c = {});

/// L^2 norm of block j computed directly from weighted coefficients
/// (no inverse transform); equals l2_norm(homogeneous_block(f, j, c)).
double homogeneous_block_l2(const SpectralField& f, int j,
                            const CutoffProfile& c = {});
double inhomogeneous_block_l2(const SpectralField& f, int j,
                              const CutoffProfile& c = {});

/// sum over the inhomogeneous family j = -1 .. j_max of the weights at xi;
/// equals 1 exactly for any grid frequency (partition of unity).
double partition_sum_inhomogeneous(const CutoffProfile& c, double xi, int j_max);
/// sum over j = j_min .. j_max of homogeneous weights; 1 for xi != 0 once the
/// range covers the shells that meet xi.
double partition_sum_homogeneous(const CutoffProfile& c, double xi,
                                 int j_min, int j_max);

} // namespace declab
