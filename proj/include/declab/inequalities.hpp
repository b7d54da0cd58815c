#pragma once

/// @file inequalities.hpp
/// @brief Statistical verifiers for the harmonic-analysis toolbox:
///        Bernstein bounds, embeddings, interpolation inequalities and
///        product/composition estimates.
///
/// Each verifier draws seeded random fields, evaluates the two sides of an
/// inequality and reports the observed ratio statistics.  A verifier passes
/// when every sampled ratio is finite and below the configured ceiling (and,
/// where the estimate is two-sided, above the floor).

#include "declab/besov.hpp"

#include <cstdint>
#include <map>
#include <string>

namespace declab {

struct InequalityReport {
    std::string name;                      ///< which estimate was probed
    std::map<std::string, double> params;  ///< exponents and sizes used
    int samples = 0;
    double ratio_min = 0.0;
    double ratio_max = 0.0;
    double ratio_mean = 0.0;
    bool pass = false;
    std::string detail;                    ///< human-readable failure note
};

/// Random band-limited scalar field with unit L^2 norm: independent complex
/// Gaussian coefficients on modes with |xi| in [xi_lo, xi_hi], Hermitian
/// symmetrised, mode 0 zeroed.
SpectralField random_band_field(const Grid& g, double xi_lo, double xi_hi,
                                std::uint64_t seed);

/// Random field supported in a single homogeneous shell j.
SpectralField random_block_field(const Grid& g, int j, std::uint64_t seed,
                                 const CutoffProfile& c = {});

/// Two-sided Bernstein equivalence on shells: for every sampled single-block
/// field, ||Lambda^alpha f||_2 / (2^{j alpha} ||f||_2) must lie in
/// [(3/4)^alpha, (8/3)^alpha].  trials fields are drawn across the resolvable
/// shells of g.
InequalityReport verify_bernstein_shell(const Grid& g, double alpha, int trials,
                                        std::uint64_t seed);

/// One-sided Bernstein L^2 -> L^inf bound on balls: for fields supported in
/// |xi| <= lambda, ||f||_inf <= C lambda^{1/2} ||f||_2.  Reports fitted C
/// statistics; passes if max/min fitted C <= spread_ceiling.
InequalityReport verify_bernstein_ball(const Grid& g, int trials,
                                       std::uint64_t seed,
                                       double spread_ceiling = 4.0);

/// Embedding family:
///   "besov-regularity":  inhomogeneous B^{s_hi} -> B^{s_lo}, ratio <= 2^{s_hi-s_lo}
///   "besov-summation":   l^r monotonicity, ratio <= 1
///   "l1-critical":       ||f||_{Bdot^{-1/2}_{2,inf}} <= C ||f||_{L^1}
InequalityReport verify_embedding(const std::string& kind, const Grid& g,
                                  int trials, std::uint64_t seed);

/// Interpolation inequalities.  which selects the flavour:
///   "besov"        : ||f||_{Bdot^k_{2,1}} <= C ||f||^{theta}_{Bdot^{k+m}_{2,inf}}
///                      * ||f||^{1-theta}_{Bdot^{-rho}_{2,inf}},
///                      theta = (rho+k)/(rho+k+m)
///   "sobolev"      : same shape with Lambda^k, Lambda^{k+m} L^2 norms
///   "besov-lp"     : ||f||_{Bdot^k_{q,1}} <= C ||f||^{1-theta}_{Bdot^m_{r,inf}}
///                      * ||f||^{theta}_{Bdot^rho_{r,inf}} with the same
///                      balance relation k + n(1/r - 1/q) = m(1-theta) +
///                      rho*theta (n = 1); q, r restricted to {1, 2, inf}
///   "gns"          : ||Lambda^k f||_{L^q} <= C ||Lambda^m f||^{1-theta}_{L^r}
///                      * ||Lambda^rho f||^{theta}_{L^r}
/// An exponent tuple violating the balance relation is rejected
/// (std::invalid_argument carrying the residual).
struct InterpolationCase {
    std::string which;    ///< "besov", "sobolev", "besov-lp", "gns"
    double k = 0.0;
    double m = 1.0;
    double rho = 0.5;
    double theta = 0.0;   ///< derived when 0 for besov/sobolev; required for gns
    double q = 2.0;       ///< gns / besov-lp target Lebesgue index
    double r = 2.0;       ///< gns source Lebesgue index
};
InequalityReport verify_interpolation(const InterpolationCase& ic, const Grid& g,
                                      int trials, std::uint64_t seed);

/// Balance residual k + n(1/r - 1/q) - m(1-theta) - rho*theta for n = 1.
double gns_balance_residual(double k, double q, double r, double m, double rho,
                            double theta);

/// Product estimates:
///   "algebra":  || f g ||_{Bdot^s_{2,1}} <= C ( ||f||_inf ||g||_{Bdot^s_{2,1}}
///                + ||g||_inf ||f||_{Bdot^s_{2,1}} )
///   "negative": || f g ||_{Bdot^{s1+s2-1/2}_{2,1}} <= C ||f||_{Bdot^{s1}_{2,1}}
///                ||g||_{Bdot^{s2}_{2,1}},  s1, s2 <= 1/2, s1+s2 > 0.
InequalityReport verify_product(const std::string& kind, const Grid& g,
                                double s1, double s2, int trials,
                                std::uint64_t seed);

/// Composition estimates for F in the catalogue {"square", "cubic", "sine"}:
///   F(f) = f^2, f^3/3, sin(f) - with F(0) = 0.
///   "composition":  ||F(f)||_{B^s} <= C(||f||_inf) ||f||_{B^s}
///   "quadratic":    ||F(f) - F'(0) f||_{B^s} <= C(||f||_inf) ||f||_inf
///                   ||f||_{B^s}; verified via amplitude scaling: the fitted
///                   log-log slope of LHS vs amplitude must be >= 2 - tol.
struct CompositionReport {
    InequalityReport base;
    double amplitude_exponent = 0.0; ///< fitted slope for the "quadratic" form
};
CompositionReport verify_composition(const std::string& f_name, double s,
                                     const Grid& g, int trials,
                                     std::uint64_t seed);

/// Dilation invariance of the critical embedding: for a Gaussian profile
/// synthesised analytically at dilations lambda = 2^0..2^{levels-1}, the ratio
/// ||f_lambda||_{Bdot^{-1/2}_{2,inf}} / ||f_lambda||_{L^1} must vary by at
/// most rel_tol across lambdas.
InequalityReport verify_critical_dilation(const Grid& g, int levels,
                                          double rel_tol = 0.10);

} // namespace declab
