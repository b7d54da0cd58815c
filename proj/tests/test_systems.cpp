#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "declab/systems.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

using namespace declab;

namespace {

/// Sort eigenvalues by (Re, Im) for stable comparison; real parts closer
/// than 1e-9 count as ties so conjugate pairs order by their imaginary part
/// rather than by rounding noise.
std::vector<std::complex<double>> sorted_eigs(const Eigen::VectorXcd& v) {
    std::vector<std::complex<double>> out(v.data(), v.data() + v.size());
    std::sort(out.begin(), out.end(), [](auto a, auto b) {
        if (std::abs(a.real() - b.real()) > 1e-9) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return out;
}

} // namespace

TEST_CASE("builtin registry") {
    CHECK(make_builtin("damped-euler").dim() == 2);
    CHECK(make_builtin("thermoelasticity").dim() == 4);
    CHECK(make_builtin("timoshenko").dim() == 4);
    CHECK(make_builtin("decoupled").dim() == 3);
    CHECK_THROWS_AS(make_builtin("nope"), std::invalid_argument);
    CHECK_THROWS_AS(make_damped_euler(-1.0, 1.4), std::invalid_argument);
    CHECK_THROWS_AS(make_damped_euler(1.0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(make_thermoelasticity(0.0), std::invalid_argument);
}

TEST_CASE("damped Euler symbol roots solve lambda^2 + lambda + gamma xi^2 = 0") {
    for (double gamma : {1.0, 1.4}) {
        const SystemSpec sys = make_damped_euler(1.0, gamma);
        for (double xi : {0.05, 0.3, 1.0, 4.0}) {
            const Eigen::VectorXcd lam = symbol_eigenvalues(sys, xi);
            REQUIRE(lam.size() == 2);
            for (int i = 0; i < 2; ++i) {
                const std::complex<double> res =
                    lam(i) * lam(i) + lam(i) + gamma * xi * xi;
                CHECK(std::abs(res) <= 1e-10);
            }
        }
    }
}

TEST_CASE("damped Euler at gamma = 1: explicit quadratic-root oracle") {
    const SystemSpec sys = make_damped_euler(1.0, 1.0);
    const double xi = 0.3; // real roots (-1 +- sqrt(1-4 xi^2))/2
    const auto lam = sorted_eigs(symbol_eigenvalues(sys, xi));
    const double disc = std::sqrt(1.0 - 4.0 * xi * xi);
    CHECK(std::abs(lam[0] - std::complex<double>(-0.5 - 0.5 * disc)) <= 1e-12);
    CHECK(std::abs(lam[1] - std::complex<double>(-0.5 + 0.5 * disc)) <= 1e-12);

    const auto lam1 = sorted_eigs(symbol_eigenvalues(sys, 1.0)); // complex pair
    CHECK(lam1[0].real() == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(lam1[1].real() == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(std::abs(std::abs(lam1[0].imag()) - std::sqrt(3.0) / 2.0) <= 1e-12);
}

TEST_CASE("symbol respects conjugate symmetry in xi") {
    for (const char* name : {"damped-euler", "thermoelasticity", "timoshenko"}) {
        const SystemSpec sys = make_builtin(name);
        const Eigen::MatrixXcd plus = symbol(sys, 0.7);
        const Eigen::MatrixXcd minus = symbol(sys, -0.7);
        CHECK((minus - plus.conjugate()).cwiseAbs().maxCoeff() <= 1e-14);
    }
}

TEST_CASE("thermoelasticity zero-frequency spectrum is {0,0,0,-1}") {
    const SystemSpec sys = make_thermoelasticity();
    const auto lam = sorted_eigs(symbol_eigenvalues(sys, 0.0));
    CHECK(std::abs(lam[0] - std::complex<double>(-1.0)) <= 1e-12);
    for (int i = 1; i < 4; ++i) CHECK(std::abs(lam[i]) <= 1e-12);
}

TEST_CASE("timoshenko zero-frequency spectrum is {0,0,(-1 +- i sqrt3)/2}") {
    const SystemSpec sys = make_timoshenko();
    const auto lam = sorted_eigs(symbol_eigenvalues(sys, 0.0));
    const double re = -0.5, im = std::sqrt(3.0) / 2.0;
    CHECK(std::abs(lam[0] - std::complex<double>(re, -im)) <= 1e-12);
    CHECK(std::abs(lam[1] - std::complex<double>(re, im)) <= 1e-12);
    CHECK(std::abs(lam[2]) <= 1e-12);
    CHECK(std::abs(lam[3]) <= 1e-12);
}

TEST_CASE("entropy condition holds for the three dissipative models") {
    for (const char* name : {"damped-euler", "thermoelasticity", "timoshenko"}) {
        const SystemSpec sys = make_builtin(name);
        const ConditionAReport rep = check_condition_a(sys);
        INFO(name, ": ", rep.detail);
        CHECK(rep.a0_symmetric);
        CHECK(rep.a0_positive);
        CHECK(rep.a0_min_eigenvalue > 0.0);
        CHECK(rep.a1_symmetric);
        CHECK(rep.l_nonnegative);
        CHECK(rep.kernel_matches_equilibrium);
        CHECK(rep.kernel_angle <= 1e-8);
        CHECK(rep.pass);
    }
}

TEST_CASE("timoshenko has a genuinely non-symmetric relaxation matrix") {
    const ConditionAReport rep = check_condition_a(make_timoshenko());
    CHECK_FALSE(rep.l_symmetric);
    CHECK(rep.pass); // nonnegativity is asked of the symmetric part only
    CHECK(rep.detail.find("symmetric part") != std::string::npos);
}

TEST_CASE("decoupled counterexample still satisfies the entropy condition") {
    const ConditionAReport rep = check_condition_a(make_decoupled_counterexample());
    CHECK(rep.pass);
    CHECK(rep.l_symmetric);
}

TEST_CASE("coupling condition holds for the three dissipative models") {
    for (const char* name : {"damped-euler", "thermoelasticity", "timoshenko"}) {
        const ConditionKReport rep = check_condition_k(make_builtin(name));
        INFO(name, ": ", rep.detail);
        CHECK(rep.pass);
        CHECK_FALSE(rep.indeterminate);
        CHECK(rep.min_margin > 1e-2);
        CHECK(rep.witness.size() == 0);
    }
}

TEST_CASE("timoshenko coupling margin is 1/sqrt(2)") {
    const ConditionKReport rep = check_condition_k(make_timoshenko());
    CHECK(rep.min_margin == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-10));
}

TEST_CASE("decoupled counterexample fails the coupling condition with a witness") {
    const ConditionKReport rep = check_condition_k(make_decoupled_counterexample());
    CHECK_FALSE(rep.pass);
    CHECK_FALSE(rep.indeterminate);
    CHECK(rep.min_margin <= 1e-10);
    REQUIRE(rep.witness.size() == 3);
    // the offending eigenvector is (1, +-1, 0)/sqrt(2), travelling at speed +-1
    CHECK(std::abs(rep.witness[2]) <= 1e-8);
    CHECK(std::abs(std::abs(rep.witness[0]) - 1.0 / std::sqrt(2.0)) <= 1e-8);
    CHECK(std::abs(std::abs(rep.witness[1]) - 1.0 / std::sqrt(2.0)) <= 1e-8);
    CHECK(std::abs(std::abs(rep.witness_speed) - 1.0) <= 1e-10);
}

TEST_CASE("spectral envelope: damped Euler fits c ~ 1/2 and r0 ~ sqrt(2)") {
    const SystemSpec sys = make_damped_euler();
    const std::vector<double> probe = log_grid(1e-3, 1e3, 400);
    const EnvelopeReport env = spectral_envelope(sys, probe);
    CHECK(env.all_nonpositive);
    CHECK(env.pass);
    CHECK(env.c_fit == doctest::Approx(0.5).epsilon(0.01));

    const double r0 = dissipation_radius(sys, env.c_fit, probe);
    CHECK(r0 == doctest::Approx(std::sqrt(2.0)).epsilon(0.05));
    CHECK(low_frequency_cutoff(r0) == -1);
    CHECK_THROWS_AS(low_frequency_cutoff(0.0), std::invalid_argument);
}

TEST_CASE("spectral envelope passes for all three dissipative models") {
    const std::vector<double> probe = log_grid(1e-3, 1e3, 300);
    for (const char* name : {"damped-euler", "thermoelasticity", "timoshenko"}) {
        const EnvelopeReport env = spectral_envelope(make_builtin(name), probe);
        INFO(name);
        CHECK(env.all_nonpositive);
        CHECK(env.c_fit > 0.0);
        CHECK(env.pass);
    }
}

TEST_CASE("decoupled counterexample has no dissipation in the wave block") {
    const EnvelopeReport env =
        spectral_envelope(make_decoupled_counterexample(), log_grid(0.01, 10.0, 50));
    CHECK(env.all_nonpositive);   // nothing grows...
    CHECK(env.c_fit <= 1e-12);    // ...but nothing in the wave block decays
    CHECK_FALSE(env.pass);
}

TEST_CASE("envelope probes reject xi = 0") {
    CHECK_THROWS_AS(spectral_envelope(make_damped_euler(), {0.0, 1.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(log_grid(-1.0, 1.0, 10), std::invalid_argument);
    CHECK_THROWS_AS(log_grid(1.0, 2.0, 1), std::invalid_argument);
}

TEST_CASE("nonlinear fluxes: explicit small-state oracles") {
    // gamma = 1 pressure is linear, leaving only the convection quadratic
    const SystemSpec euler = make_damped_euler(1.0, 1.0);
    const Eigen::Vector2d w(0.1, 0.2);
    const Eigen::VectorXd p = euler.flux(w);
    CHECK(p[0] == 0.0);
    CHECK(p[1] == doctest::Approx(-0.04 / 1.1).epsilon(1e-14));
    CHECK(euler.state_valid(Eigen::Vector2d(-0.5, 0.0)));
    CHECK_FALSE(euler.state_valid(Eigen::Vector2d(-1.5, 0.0)));

    // generic gamma: the flux remainder is quadratically small
    const SystemSpec euler14 = make_damped_euler();
    const Eigen::VectorXd tiny = euler14.flux(1e-3 * Eigen::Vector2d(1.0, 1.0));
    CHECK(tiny.norm() <= 5e-6);
    CHECK(euler14.flux(Eigen::Vector2d::Zero()).norm() == 0.0);

    const Eigen::VectorXd pt = make_thermoelasticity().flux(
        Eigen::Vector4d(0.5, 0.3, 0.7, 0.9));
    CHECK(pt[0] == doctest::Approx(0.027 / 3.0).epsilon(1e-14));
    CHECK(pt.tail(3).norm() == 0.0);

    const Eigen::VectorXd pk =
        make_timoshenko().flux(Eigen::Vector4d(0.1, 0.2, 0.3, 0.4));
    CHECK(pk[3] == doctest::Approx(0.027 / 3.0).epsilon(1e-14));
    CHECK(pk.head(3).norm() == 0.0);
}

TEST_CASE("equilibrium bases are orthonormal") {
    for (const char* name :
         {"damped-euler", "thermoelasticity", "timoshenko", "decoupled"}) {
        const SystemSpec sys = make_builtin(name);
        const Eigen::MatrixXd gram =
            sys.equilibrium.transpose() * sys.equilibrium;
        CHECK((gram - Eigen::MatrixXd::Identity(gram.rows(), gram.cols()))
                  .cwiseAbs()
                  .maxCoeff() <= 1e-14);
    }
}
