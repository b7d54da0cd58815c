#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "declab/besov.hpp"
#include "declab/fourier.hpp"

#include <cmath>
#include <random>

using namespace declab;

namespace {

BesovParams params(double s, double p, double r, Homogeneity h) {
    BesovParams par;
    par.s = s;
    par.p = p;
    par.r = r;
    par.hom = h;
    return par;
}

/// Tone at grid frequency |xi| = m * xi_min with unit L2 norm.
SpectralField unit_tone(const Grid& g, int m) {
    SpectralField f(g, 1);
    f.coeff(0, m) = 1.0 / std::sqrt(2.0);
    f.coeff(0, g.num_points - m) = 1.0 / std::sqrt(2.0);
    f.coeff /= g.l2_scale(); // unit continuum L2 norm
    return f;
}

SpectralField random_low_field(const Grid& g, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    SpectralField f(g, 2);
    for (int k = 1; k < g.num_points / 4; ++k)
        for (int comp = 0; comp < 2; ++comp) {
            f.coeff(comp, k) = std::complex<double>(gauss(rng), gauss(rng));
            f.coeff(comp, g.num_points - k) = std::conj(f.coeff(comp, k));
        }
    return f;
}

} // namespace

TEST_CASE("invalid p and r are rejected") {
    const Grid g(64, 2.0 * pi);
    const SpectralField f = unit_tone(g, 3);
    CHECK_THROWS_AS(
        besov_norm(f, params(0.0, 3.0, 1.0, Homogeneity::homogeneous)),
        std::invalid_argument);
    CHECK_THROWS_AS(
        besov_norm(f, params(0.0, 2.0, 0.5, Homogeneity::homogeneous)),
        std::invalid_argument);
}

TEST_CASE("single-shell tone: norm equals 2^{js} * ||f||_2 for every r") {
    const Grid g(256, 2.0 * pi);
    // |xi| = 3 sits in shell j = 1 alone: phi(3/2) = 1, phi(3/4) = phi(3) = 0
    const SpectralField f = unit_tone(g, 3);
    for (double r : {1.0, 2.0, inf})
        for (double s : {-0.5, 0.0, 0.5, 1.5}) {
            const NormResult n =
                besov_norm(f, params(s, 2.0, r, Homogeneity::homogeneous));
            CHECK(n.value == doctest::Approx(std::pow(2.0, s)).epsilon(1e-12));
        }
}

TEST_CASE("norm is absolutely homogeneous in the field") {
    const Grid g(128, 10.0);
    SpectralField f = random_low_field(g, 3);
    const double base =
        besov_norm(f, params(0.5, 2.0, 1.0, Homogeneity::homogeneous)).value;
    f.coeff *= 3.0;
    const double scaled =
        besov_norm(f, params(0.5, 2.0, 1.0, Homogeneity::homogeneous)).value;
    CHECK(scaled == doctest::Approx(3.0 * base).epsilon(1e-12));
}

TEST_CASE("l^r aggregation is monotone: r = inf <= r = 2 <= r = 1") {
    const Grid g(256, 20.0);
    const SpectralField f = random_low_field(g, 17);
    const double n1 =
        besov_norm(f, params(0.3, 2.0, 1.0, Homogeneity::homogeneous)).value;
    const double n2 =
        besov_norm(f, params(0.3, 2.0, 2.0, Homogeneity::homogeneous)).value;
    const double ninf =
        besov_norm(f, params(0.3, 2.0, inf, Homogeneity::homogeneous)).value;
    CHECK(ninf <= n2 + 1e-14);
    CHECK(n2 <= n1 + 1e-14);
    CHECK(ninf > 0.0);
}

TEST_CASE("p = inf block norms: a pure tone has sup-norm 1 per shell") {
    const Grid g(256, 2.0 * pi);
    SpectralField f(g, 1);
    // cos(3x): coefficients sqrt(N)/2 at modes +-3, shell j = 1 only
    f.coeff(0, 3) = std::sqrt(256.0) / 2.0;
    f.coeff(0, 253) = std::sqrt(256.0) / 2.0;
    const NormResult n =
        besov_norm(f, params(0.0, inf, 1.0, Homogeneity::homogeneous));
    CHECK(n.value == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("p = 1 norm of a wide Gaussian concentrates in low shells") {
    const Grid g(512, 100.0);
    RealField bump(g, 1);
    for (int j = 0; j < g.num_points; ++j) {
        const double dx = g.x(j) - 50.0;
        bump.values(0, j) = std::exp(-dx * dx / 8.0);
    }
    const NormResult n = besov_norm(
        forward(bump), params(0.0, 1.0, inf, Homogeneity::homogeneous));
    CHECK(n.value > 0.0);
    CHECK(std::isfinite(n.value));
}

TEST_CASE("homogeneous norm ignores mode 0 but reports its mass") {
    const Grid g(64, 4.0);
    SpectralField f(g, 1);
    f.coeff(0, 0) = 5.0; // constant component only
    const NormResult n =
        besov_norm(f, params(0.5, 2.0, 1.0, Homogeneity::homogeneous));
    CHECK(n.value == 0.0);
    CHECK(n.mode_zero_mass == doctest::Approx(5.0 * g.l2_scale()));
}

TEST_CASE("inhomogeneous norm of a constant: low block with weight 2^{-s}") {
    const Grid g(64, 9.0);
    RealField f(g, 1);
    f.values.setConstant(2.0);
    const double l2 = 2.0 * std::sqrt(g.box_length);
    for (double s : {0.5, 1.5}) {
        const NormResult n = besov_norm(
            forward(f), params(s, 2.0, 1.0, Homogeneity::inhomogeneous));
        CHECK(n.j_lo == -1);
        CHECK(n.value == doctest::Approx(std::pow(2.0, -s) * l2).epsilon(1e-12));
    }
}

TEST_CASE("inhomogeneous and homogeneous agree for mean-free annular data") {
    const Grid g(256, 2.0 * pi);
    const SpectralField f = unit_tone(g, 12); // well above the low block
    const double hom =
        besov_norm(f, params(0.7, 2.0, 1.0, Homogeneity::homogeneous)).value;
    const double inhom =
        besov_norm(f, params(0.7, 2.0, 1.0, Homogeneity::inhomogeneous)).value;
    CHECK(hom == doctest::Approx(inhom).epsilon(1e-12));
}

TEST_CASE("besov_norm_low truncates the shell ladder") {
    const Grid g(256, 2.0 * pi);
    SpectralField f(g, 1);
    f.coeff(0, 2) = 1.0;   // shells 0/1
    f.coeff(0, 254) = 1.0;
    f.coeff(0, 40) = 1.0;  // |xi| = 40: shells 4/5
    f.coeff(0, 216) = 1.0;
    const BesovParams par = params(0.0, 2.0, 1.0, Homogeneity::homogeneous);
    const double full = besov_norm(f, par).value;
    const double low = besov_norm_low(f, par, 1).value;
    CHECK(low < full);
    // the cap keeps shells j <= 1, i.e. exactly the |xi| = 2 tone's mass
    SpectralField lowpart(g, 1);
    lowpart.coeff(0, 2) = 1.0;
    lowpart.coeff(0, 254) = 1.0;
    CHECK(low == doctest::Approx(besov_norm(lowpart, par).value).epsilon(1e-12));
    CHECK_THROWS_AS(besov_norm_low(f, par, -30), std::invalid_argument);
}

TEST_CASE("l2 norm is recovered at s = 0, r = 2 up to shell overlap") {
    // with phi^2 + phi^2 overlap the r=2, s=0 norm is within [1/sqrt2, 1] of L2
    const Grid g(256, 30.0);
    const SpectralField f = random_low_field(g, 23);
    const double b =
        besov_norm(f, params(0.0, 2.0, 2.0, Homogeneity::homogeneous)).value;
    const double l2 = l2_norm(f);
    CHECK(b <= l2 * (1.0 + 1e-12));
    CHECK(b >= l2 / std::sqrt(2.0) * (1.0 - 1e-12));
}

TEST_CASE("time-integrated norms reproduce an exponential-decay oracle") {
    const Grid g(64, 2.0 * pi);
    const SpectralField f0 = unit_tone(g, 3); // single shell j = 1
    TimeSeries ts;
    const double t_end = 5.0, dt = 0.01;
    for (double t = 0.0; t <= t_end + 1e-12; t += dt) {
        SpectralField f = f0;
        f.coeff *= std::exp(-t);
        ts.times.push_back(t);
        ts.fields.push_back(f);
    }
    const BesovParams par = params(0.5, 2.0, 1.0, Homogeneity::homogeneous);

    // sup in time: the t = 0 value
    const NormResult sup = chemin_lerner_norm(ts, par, inf);
    CHECK(sup.value == doctest::Approx(std::pow(2.0, 0.5)).epsilon(1e-12));

    // L2 in time: sqrt((1 - e^{-2T})/2), trapezoid error O(dt^2)
    const NormResult l2t = chemin_lerner_norm(ts, par, 2.0);
    const double exact =
        std::sqrt((1.0 - std::exp(-2.0 * t_end)) / 2.0) * std::pow(2.0, 0.5);
    CHECK(l2t.value == doctest::Approx(exact).epsilon(1e-3));
}

TEST_CASE("time-integrated norms validate their inputs") {
    const Grid g(64, 2.0 * pi);
    TimeSeries ts;
    ts.times = {0.0, 1.0};
    ts.fields = {unit_tone(g, 3), unit_tone(g, 3)};
    const BesovParams par = params(0.0, 2.0, 1.0, Homogeneity::homogeneous);
    CHECK_NOTHROW(chemin_lerner_norm(ts, par, 2.0));
    CHECK_THROWS_AS(chemin_lerner_norm(ts, par, 3.0), std::invalid_argument);
    ts.times = {1.0, 1.0};
    CHECK_THROWS_AS(chemin_lerner_norm(ts, par, 2.0), std::invalid_argument);
    ts.times.clear();
    ts.fields.clear();
    CHECK_THROWS_AS(chemin_lerner_norm(ts, par, 2.0), std::invalid_argument);
}
