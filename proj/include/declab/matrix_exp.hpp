#pragma once

/// @file matrix_exp.hpp
/// @brief Dense matrix exponential via scaling-and-squaring with Pade
///        approximants (Higham's degree-13 scheme with lower-degree
///        short-circuits for small norms).

#include <Eigen/Dense>

namespace declab {

/// exp(M) for a complex square matrix.
Eigen::MatrixXcd matrix_exponential(const Eigen::MatrixXcd& m);

/// Simultaneous phi-functions for exponential integrators:
///   phi0(M) = exp(M),
///   phi1(M) = M^{-1} (exp(M) - I),
///   phi2(M) = M^{-2} (exp(M) - I - M),
/// computed without inverting M (augmented-matrix exponential), so singular M
/// (e.g. symbols with a nontrivial equilibrium kernel) is handled exactly.
struct PhiFunctions {
    Eigen::MatrixXcd phi0, phi1, phi2;
};
PhiFunctions phi_functions(const Eigen::MatrixXcd& m);

} // namespace declab
