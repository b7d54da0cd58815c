#pragma once

/// @file besov.hpp
/// @brief Besov norms on the discrete torus and Chemin-Lerner time versions.
///
/// Homogeneous norm:    || 2^{js} ||block_j f||_{L^p} ||_{l^r}  over the
/// grid-resolvable range [j_min, j_max]; the truncation range actually used
/// and any mode-0 mass (which no homogeneous shell sees) are reported with
/// every result.  Inhomogeneous norm: same aggregation over j = -1 .. j_max
/// with the j = -1 block given by the low-frequency cutoff (mode 0 included).
///
/// Lebesgue index p is restricted to {1, 2, inf}: 2 is evaluated spectrally
/// (Plancherel), 1 and inf by quadrature after an inverse transform.  The
/// summation index r is any value in [1, inf].
///
/// Chemin-Lerner norms take the time aggregation *inside* the dyadic sum:
/// for theta = 2 the block time integral uses the trapezoid rule on squared
/// block norms over the (not necessarily uniform) sample times; theta = inf
/// takes the max over samples.

#include "declab/littlewood_paley.hpp"

#include <vector>

namespace declab {

enum class Homogeneity { homogeneous, inhomogeneous };

struct BesovParams {
    double s = 0.0;           ///< regularity index
    double p = 2.0;           ///< Lebesgue index: 1, 2 or inf
    double r = 1.0;           ///< summation index in [1, inf]
    Homogeneity hom = Homogeneity::homogeneous;
};

/// Norm value plus the dyadic truncation actually used.
struct NormResult {
    double value = 0.0;
    int j_lo = 0;             ///< lowest dyadic index aggregated
    int j_hi = 0;             ///< highest dyadic index aggregated
    double mode_zero_mass = 0.0; ///< L^2 mass at mode 0 (unseen by homogeneous shells)
};

NormResult besov_norm(const SpectralField& f, const BesovParams& par,
                      const CutoffProfile& c = {});

/// Restrict the dyadic aggregation to j <= j_cap (used by the low-frequency
/// lemma functionals).  For inhomogeneous params the range is [-1, j_cap].
NormResult besov_norm_low(const SpectralField& f, const BesovParams& par,
                          int j_cap, const CutoffProfile& c = {});

/// Sampled trajectory for time-aggregated norms.
struct TimeSeries {
    std::vector<double> times;
    std::vector<SpectralField> fields;
};

/// Chemin-Lerner norm over the sampled window; theta must be 2 or inf.
NormResult chemin_lerner_norm(const TimeSeries& ts, const BesovParams& par,
                              double theta, const CutoffProfile& c = {});

} // namespace declab
