#pragma once

/// @file decay.hpp
/// @brief Decay experiments: data synthesis, rate fitting, experiment driver
///        and the time-weighted functional audits.

#include "declab/solver.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>

namespace declab {

// ------------------------------------------------------------ initial data

/// Families of synthetic initial data.
///   besov_tail:    |zhat(xi)| = amplitude |xi|^{s-1/2} exp(-(xi/xi_cut)^2),
///                  random phases, fixed component direction; saturates the
///                  Bdot^{-s}_{2,inf} tail uniformly across low shells.
///   gaussian_l1:   physical Gaussian bump (nonzero mean), the L^1-data case.
///   high_freq:     random mass confined to shells j_lo..j_hi (j_lo >= 1),
///                  i.e. no low-frequency content at all.
struct DataSpec {
    std::string family = "besov_tail"; ///< besov_tail | gaussian_l1 | high_freq
    double s = 0.5;            ///< besov_tail index (0 < s <= 1/2 typical)
    double amplitude = 1.0;
    double xi_cut = 1.0;       ///< spectral envelope cut-off (besov_tail)
    double width = 1.0;        ///< physical width (gaussian_l1)
    int j_lo = 1, j_hi = 2;    ///< shell range (high_freq)
    Eigen::VectorXd direction; ///< component direction; empty => e1
    /// "fixed" uses `direction`; "random" draws a seed-determined unit
    /// direction; "random-complement" draws it orthogonal to the span of
    /// `complement_of` (the undamped subspace, when filled from a system).
    std::string direction_mode = "fixed";
    Eigen::MatrixXd complement_of; ///< basis excluded by "random-complement"
    std::uint64_t seed = 1;
};

/// Synthesise Hermitian-symmetric initial data on g with dim components.
SpectralField synthesize_initial_data(const Grid& g, int dim,
                                      const DataSpec& spec);

/// Same, with dim and (for "random-complement") the excluded subspace taken
/// from the system: complement_of defaults to sys.equilibrium.
SpectralField synthesize_initial_data(const Grid& g, const SystemSpec& sys,
                                      const DataSpec& spec);

/// Time horizon on which the torus still mimics the line: the slowest mode
/// has decayed by at most beta, i.e. T_max = beta / (c xi_min^2).
double torus_validity_horizon(const Grid& g, double c, double beta = 0.1);

// -------------------------------------------------------------- rate fitting

struct RateFit {
    double exponent = 0.0;  ///< slope of log(value) against log(1+t)
    double stderr_ = 0.0;   ///< standard error of the slope
    double r_squared = 0.0;
    int points = 0;
    bool ok = false;        ///< >= min_points samples with positive values
};

/// Least-squares fit of log(values) vs log(1+t) restricted to
/// t in [window_lo, window_hi]; requires >= min_points usable samples.
RateFit fit_rate(const std::vector<double>& times,
                 const std::vector<double>& values, double window_lo,
                 double window_hi, int min_points = 8);

/// Same but against t itself (exponential-decay fits); slope is d log(v)/dt.
RateFit fit_exponential(const std::vector<double>& times,
                        const std::vector<double>& values, double window_lo,
                        double window_hi, int min_points = 8);

/// Geometric time ladder t_i = t0 * ratio^i clipped to [t0, t1], always
/// including both endpoints.
std::vector<double> geometric_times(double t0, double t1, int count);

// --------------------------------------------------------------- experiment

/// One tracked norm: ||Lambda^l z||_{L^2} ("sobolev") or homogeneous
/// Bdot^l_{2,1} ("besov").
struct TrackedNorm {
    std::string kind = "sobolev"; ///< sobolev | besov
    double l = 0.0;
};

struct ExperimentConfig {
    Grid grid;
    DataSpec data;
    std::vector<double> sample_times;
    /// Fit window.  (0,0) picks one automatically (post-transient, inside
    /// the torus validity horizon); window_hi = 0 alone means open-ended.
    double window_lo = 0.0, window_hi = 0.0;
    std::vector<TrackedNorm> norms;
    bool nonlinear = false;
    NonlinearOptions nl;
    double rate_tol = 0.05;  ///< |fitted - expected| ceiling
};

struct NormTrace {
    TrackedNorm norm;
    std::vector<double> values;
    RateFit fit;
    double expected_exponent = 0.0; ///< -(s+l)/2; NaN when not applicable
    bool algebraic_applicable = true;
    bool pass = false;
};

struct DecayReport {
    std::string model;
    ExperimentConfig config;
    double c_fit = 0.0;
    double horizon = 0.0;         ///< torus validity horizon
    std::vector<double> times;    ///< actual sample times
    std::vector<NormTrace> traces;
    double max_asymmetry = 0.0;   ///< nonlinear runs only
    bool blowup = false;
    bool pass = false;            ///< all applicable traces pass
};

DecayReport run_experiment(const SystemSpec& sys, const ExperimentConfig& cfg);

// ------------------------------------------------------------------- audits

/// Weighted functionals of a sampled trajectory for data index s:
///   E0(t) = sup_{tau<=t} ||z||_{B^{3/2}_{2,1}},
///   E1(t) = sup_tau (1+tau)^{s/2} ||z||_{L^2}
///           + max over l in {1/8,1/4,3/8,1/2} of
///             sup_tau (1+tau)^{(s+l)/2} ||z||_{Bdot^l_{2,1}}.
struct FunctionalTrace {
    std::vector<double> times;
    std::vector<double> e0;
    std::vector<double> e1;
};
FunctionalTrace weighted_functionals(const TimeSeries& ts, double s);

/// Nonlinear closure audit: for each amplitude, run the nonlinear model and
/// report M(a) = sup_t E1(t) against the data norm
/// E0(a) = max(||z0||_{B^{3/2}_{2,1}}, ||z0||_{Bdot^{-s}_{2,inf}}).
struct ClosureAuditRow {
    double amplitude = 0.0;
    double data_norm = 0.0;   ///< E0(a)
    double m_value = 0.0;     ///< M(a)
    double ratio = 0.0;       ///< M(a)/E0(a)
    bool blowup = false;
};
struct ClosureAuditReport {
    std::string model;
    std::vector<ClosureAuditRow> rows;
    double ratio_spread = 0.0; ///< max/min of the ratios
    bool pass = false;         ///< spread <= ceiling, no blow-ups
};
ClosureAuditReport closure_audit(const SystemSpec& sys, const Grid& g,
                                 DataSpec base,
                                 const std::vector<double>& amplitudes,
                                 const std::vector<double>& sample_times,
                                 const NonlinearOptions& opt,
                                 double spread_ceiling = 2.0);

/// Energy-inequality audit (relaxed-heat-flux model): fitted
///   C0 = [ ||W||_{Ltilde^inf(B^{3/2}_{2,1})}
///          + mu0 ( ||q||_{Ltilde^2(B^{3/2}_{2,1})}
///                  + ||dW/dx||_{Ltilde^2(B^{1/2}_{2,1})} ) ] / ||W0||_{B^{3/2}_{2,1}}
/// with mu0 = 1; stability of C0 across seeds/amplitudes is what is asserted.
struct EnergyAuditRow {
    std::uint64_t seed = 0;
    double amplitude = 0.0;
    double c0 = 0.0;
    bool blowup = false;
};
struct EnergyAuditReport {
    std::vector<EnergyAuditRow> rows;
    double c0_spread = 0.0; ///< max/min fitted C0
    bool pass = false;
};
EnergyAuditReport energy_inequality_audit(const SystemSpec& sys, const Grid& g,
                                          DataSpec base,
                                          const std::vector<std::uint64_t>& seeds,
                                          const std::vector<double>& amplitudes,
                                          double t_end, const NonlinearOptions& opt,
                                          double spread_ceiling = 4.0);

} // namespace declab
