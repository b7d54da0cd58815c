#pragma once

/// @file snapshot_io.hpp
/// @brief Binary snapshot container and CSV series output.
///
/// Snapshot layout (all little-endian):
///   bytes 0-3   magic "DLSF"
///   u32         format version (1)
///   u32         num_points
///   u32         n_components
///   f64         box_length
///   u8          domain: 0 = physical samples, 1 = spectral coefficients
///   payload     row-major doubles, one row per component;
///               spectral rows store (re, im) pairs per mode.

#include "declab/grid.hpp"

#include <string>
#include <vector>

namespace declab {

void write_snapshot(const std::string& path, const RealField& f);
void write_snapshot(const std::string& path, const SpectralField& f);

/// Reads either domain; exactly one of the outputs is filled, flagged by
/// the return value (true = spectral).  Throws std::runtime_error on a
/// malformed file.
bool read_snapshot(const std::string& path, RealField& real_out,
                   SpectralField& spectral_out);

/// CSV with a header row; by convention column 0 is the abscissa (time or
/// frequency).  Each row must supply one value per column.  Values are
/// written with enough digits that a re-read is faithful.
void write_csv_series(const std::string& path,
                      const std::vector<std::string>& columns,
                      const std::vector<std::vector<double>>& rows);

} // namespace declab
