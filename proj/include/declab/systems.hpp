#pragma once

/// @file systems.hpp
/// @brief Symmetric dissipative first-order systems
///
///     A0 z_t + A1 z_x + L z = dP(z)/dx + Q(z)
///
/// with the structural checks that make them decay: symmetry/positivity of the
/// coefficient blocks, the equilibrium space M = ker L, the coupling condition
/// ("no convection eigenvector hides in the kernel") and the dissipative
/// spectral envelope Re lambda(i xi) <= -c |xi|^2/(1+|xi|^2).

#include "declab/grid.hpp"

#include <Eigen/Dense>

#include <complex>
#include <functional>
#include <string>
#include <vector>

namespace declab {

/// Pointwise state-space maps for the nonlinear flux P and source Q.
using StateMap = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

struct SystemSpec {
    std::string name;
    Eigen::MatrixXd a0;  ///< symmetric positive definite
    Eigen::MatrixXd a1;  ///< symmetric
    Eigen::MatrixXd ell; ///< relaxation matrix L (may be non-symmetric)
    Eigen::MatrixXd equilibrium; ///< orthonormal columns spanning M = ker L
    StateMap flux;       ///< P(z); empty => 0
    StateMap source;     ///< Q(z); empty => 0
    double dealias_fraction = 0.5; ///< mode fraction kept before nonlinear products
    /// states outside this set are invalid (e.g. vacuum); empty => all valid
    std::function<bool(const Eigen::VectorXd&)> state_valid;

    int dim() const { return static_cast<int>(a0.rows()); }
};

// ------------------------------------------------------------ built-in models

/// 1-D isentropic Euler flow with friction, symmetrised around the constant
/// state (rho_bar, 0); second component is momentum / rho_bar.  Pressure
/// p(rho) = rho^gamma.  gamma = 1 makes the symbol eigenvalues solve
/// lambda^2 + lambda + xi^2 = 0 exactly.
SystemSpec make_damped_euler(double rho_bar = 1.0, double gamma = 1.4);

/// 1-D thermoelasticity with relaxed (Cattaneo) heat flux; state
/// (velocity, strain, temperature, heat flux), stress psi(r) = a^2 r + r^3/3.
SystemSpec make_thermoelasticity(double a = 1.0);

/// Timoshenko beam system in the equal-wave-speed normalisation; state
/// (v, u, z, y), shear law sigma(z) = z + z^3/3 (sigma'(0) = 1).  L is
/// non-symmetric; its kernel span{e2, e3} is the equilibrium space.
SystemSpec make_timoshenko();

/// Deliberately broken 3-component model: a wave block on components (1,2)
/// that never feels the relaxation acting on component 3.  Satisfies the
/// symmetry conditions but fails the coupling condition with witness
/// (1, +-1, 0)/sqrt(2).
SystemSpec make_decoupled_counterexample();

/// Look up a built-in by CLI name: "damped-euler", "thermoelasticity",
/// "timoshenko", "decoupled".  Throws std::invalid_argument otherwise.
SystemSpec make_builtin(const std::string& name);

// ------------------------------------------------------------------- symbol

/// Phi(i xi) = -(A0)^{-1} (i xi A1 + L).  Throws if A0 is singular.
Eigen::MatrixXcd symbol(const SystemSpec& sys, double xi);

/// Eigenvalues of Phi(i xi).
Eigen::VectorXcd symbol_eigenvalues(const SystemSpec& sys, double xi);

// ---------------------------------------------------------- structure checks

struct ConditionAReport {
    bool a0_symmetric = false;
    bool a0_positive = false;
    double a0_min_eigenvalue = 0.0;
    bool a1_symmetric = false;
    bool l_symmetric = false;      ///< false triggers the symmetric-part caveat
    bool l_nonnegative = false;    ///< of the symmetric part of L
    double l_min_eigenvalue = 0.0; ///< smallest eigenvalue of sym(L)
    bool kernel_matches_equilibrium = false;
    double kernel_angle = 0.0;     ///< largest principal angle (radians)
    bool pass = false;
    std::string detail;
};
ConditionAReport check_condition_a(const SystemSpec& sys, double tol = 1e-12);

struct ConditionKReport {
    bool pass = false;
    /// smallest distance-to-orthogonality: min over eigenspaces V of the
    /// smallest singular value of (I - P_M) V; 0 means an eigenvector lies
    /// in the equilibrium space.
    double min_margin = 0.0;
    Eigen::VectorXd witness;       ///< offending eigenvector when failing
    double witness_speed = 0.0;    ///< its pencil eigenvalue mu
    bool indeterminate = false;    ///< defective/ill-conditioned pencil
    std::string detail;
};
ConditionKReport check_condition_k(const SystemSpec& sys, double tol = 1e-8);

// -------------------------------------------------------- spectral envelope

/// eta1(xi) = xi^2 / (1 + xi^2), the expected dissipation shape.
inline double eta1(double xi) { return xi * xi / (1.0 + xi * xi); }

struct EnvelopeReport {
    std::vector<double> xi;       ///< probe frequencies
    std::vector<double> max_re;   ///< max Re lambda(i xi) at each probe
    double c_fit = 0.0;           ///< min over probes of (-max_re)/eta1
    bool all_nonpositive = false; ///< max_re <= tol everywhere
    bool pass = false;            ///< all_nonpositive && c_fit > 0
};
/// Probe the symbol spectrum on the given frequencies (xi != 0).
EnvelopeReport spectral_envelope(const SystemSpec& sys,
                                 const std::vector<double>& xi_probe);

/// Log-spaced probe grid [lo, hi] with count points.
std::vector<double> log_grid(double lo, double hi, int count);

/// Largest radius r0 such that max Re lambda(i xi) <= -(c/2) xi^2 for every
/// probe frequency <= r0 (scanned on a log grid up to the envelope's range).
double dissipation_radius(const SystemSpec& sys, double c,
                          const std::vector<double>& xi_probe);

/// Threshold block index j0 = floor(log2(3 r0 / 8)).
int low_frequency_cutoff(double r0);

} // namespace declab
