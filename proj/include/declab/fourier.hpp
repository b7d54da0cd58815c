#pragma once

/// @file fourier.hpp
/// @brief Unitary DFT wrappers and Fourier multipliers.
///
/// Transforms are backed by FFTW with plans cached per size; execution is
/// serialised through an internal buffer so calls are thread-safe and results
/// are bit-reproducible for a fixed build.  All reductions used by the norm
/// helpers are plain sequential sums in mode order.

#include "declab/grid.hpp"

#include <functional>

namespace declab {

/// Forward unitary DFT of every component row.
SpectralField forward(const RealField& f);

/// Inverse unitary DFT; imaginary residue is discarded.  If max_imag is
/// non-null the largest |imaginary part| encountered is reported there.
RealField inverse(const SpectralField& f, double* max_imag = nullptr);

/// Pointwise scalar multiplier m(xi) applied to every component.
SpectralField apply_multiplier(const SpectralField& f,
                               const std::function<std::complex<double>(double)>& m);

/// d/dx, i.e. multiplier (i xi).
SpectralField derivative(const SpectralField& f);

/// |D|^alpha = multiplier |xi|^alpha with mode 0 mapped to zero.
/// alpha must be >= 0; alpha = 0 is the identity away from mode 0 and also
/// preserves mode 0 (|xi|^0 with the 0^0 = 1 convention would be ambiguous,
/// so alpha == 0 returns the input unchanged).
SpectralField fractional_derivative(const SpectralField& f, double alpha);

/// Zero all modes with |signed mode| > keep_fraction * N/2 (dealiasing).
void truncate_modes(SpectralField& f, double keep_fraction);

} // namespace declab
