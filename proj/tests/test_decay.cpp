#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "declab/decay.hpp"
#include "declab/fourier.hpp"

#include <cmath>

using namespace declab;

namespace {

DataSpec tail_data(double s, std::uint64_t seed = 1) {
    DataSpec d;
    d.family = "besov_tail";
    d.s = s;
    d.amplitude = 1.0;
    d.xi_cut = 1.0;
    d.seed = seed;
    return d;
}

} // namespace

TEST_CASE("tail data: Hermitian, directional, mean-free and reproducible") {
    const Grid g(512, 100.0);
    DataSpec d = tail_data(0.5, 7);
    d.direction = Eigen::Vector2d(0.0, 1.0);
    const SpectralField z = synthesize_initial_data(g, 2, d);
    CHECK(hermitian_asymmetry(z) <= 1e-13);
    CHECK(z.coeff.col(0).norm() == 0.0);                    // no mean
    CHECK(z.coeff.col(g.num_points / 2).norm() == 0.0);     // no Nyquist
    CHECK(z.coeff.row(0).norm() == 0.0);                    // direction = e2
    CHECK(z.coeff.row(1).norm() > 0.0);

    const SpectralField z2 = synthesize_initial_data(g, 2, d);
    CHECK((z2.coeff - z.coeff).cwiseAbs().maxCoeff() == 0.0);
    d.seed = 8;
    const SpectralField z3 = synthesize_initial_data(g, 2, d);
    CHECK((z3.coeff - z.coeff).cwiseAbs().maxCoeff() > 0.0);
}

TEST_CASE("tail data scales linearly with the amplitude") {
    const Grid g(256, 60.0);
    DataSpec d = tail_data(0.3);
    const SpectralField a = synthesize_initial_data(g, 2, d);
    d.amplitude = 2.5;
    const SpectralField b = synthesize_initial_data(g, 2, d);
    CHECK((b.coeff - 2.5 * a.coeff).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("random direction modes: deterministic, unit, profile-preserving") {
    const Grid g(64, 10.0);
    DataSpec d = tail_data(0.5, 5);
    d.direction_mode = "random";

    const SpectralField a = synthesize_initial_data(g, 3, d);
    const SpectralField b = synthesize_initial_data(g, 3, d);
    CHECK((a.coeff - b.coeff).cwiseAbs().maxCoeff() == 0.0); // same seed
    d.seed = 6;
    const SpectralField c = synthesize_initial_data(g, 3, d);
    CHECK((c.coeff - a.coeff).cwiseAbs().maxCoeff() > 0.0);

    // every mode shares one real direction: columns are pairwise parallel
    const Eigen::VectorXcd c1 = a.coeff.col(1), c2 = a.coeff.col(2);
    CHECK(std::abs(std::abs(c1.dot(c2)) - c1.norm() * c2.norm()) <= 1e-12);

    // the scalar spectral profile matches the fixed-direction draw seed for
    // seed: random modes consume a separate generator, so per-mode column
    // norms (= |profile|, direction being unit) agree exactly
    DataSpec fixed = tail_data(0.5, 5);
    const SpectralField f = synthesize_initial_data(g, 3, fixed);
    for (int k = 1; k < g.num_points / 2; k += 7)
        CHECK(a.coeff.col(k).norm() ==
              doctest::Approx(f.coeff.col(k).norm()).epsilon(1e-13));
}

TEST_CASE("random-complement direction avoids the undamped subspace") {
    const Grid g(64, 10.0);
    const SystemSpec sys = make_damped_euler(); // equilibrium span = e1
    DataSpec d = tail_data(0.5, 9);
    d.direction_mode = "random-complement";

    const SpectralField z = synthesize_initial_data(g, sys, d);
    CHECK(z.coeff.row(0).norm() == 0.0); // orthogonal to e1
    CHECK(z.coeff.row(1).norm() > 0.0);

    // direct call honours an explicit (even unnormalised) basis
    d.complement_of = Eigen::MatrixXd::Zero(3, 1);
    d.complement_of(2, 0) = -4.0;
    const SpectralField w = synthesize_initial_data(g, 3, d);
    CHECK(w.coeff.row(2).norm() == 0.0);
    CHECK(w.coeff.norm() > 0.0);
}

TEST_CASE("direction mode misuse is rejected") {
    const Grid g(32, 5.0);
    DataSpec d = tail_data(0.5);
    d.direction_mode = "sideways";
    CHECK_THROWS_AS((void)synthesize_initial_data(g, 2, d),
                    std::invalid_argument);

    d.direction_mode = "random";
    d.direction = Eigen::Vector2d(1.0, 0.0); // ambiguous with a mode
    CHECK_THROWS_AS((void)synthesize_initial_data(g, 2, d),
                    std::invalid_argument);

    d.direction = Eigen::VectorXd();
    d.direction_mode = "random-complement";
    CHECK_THROWS_AS((void)synthesize_initial_data(g, 2, d), // no basis
                    std::invalid_argument);
    d.complement_of = Eigen::MatrixXd::Identity(2, 2); // full span: no room
    CHECK_THROWS_AS((void)synthesize_initial_data(g, 2, d),
                    std::invalid_argument);
}

TEST_CASE("tail data fills the low-frequency tail uniformly") {
    // |zhat| = xi^{s-1/2} e^{-(xi/xi_c)^2} makes 2^{-js} ||block_j|| roughly
    // level across low shells: the Bdot^{-s}_{2,inf} sup is attained broadly
    const Grid g(4096, 800.0 * pi);
    const SpectralField z = synthesize_initial_data(g, 1, tail_data(0.5, 3));
    BesovParams par;
    par.s = -0.5;
    par.p = 2.0;
    par.r = inf;
    par.hom = Homogeneity::homogeneous;
    const CutoffProfile c;
    const double sup = besov_norm(z, par).value;
    int level_shells = 0;
    for (int j = -8; j <= -2; ++j) {
        const double v =
            std::pow(2.0, -0.5 * j) * homogeneous_block_l2(z, j, c);
        if (v >= 0.5 * sup) ++level_shells;
    }
    CHECK(level_shells >= 5);
}

TEST_CASE("gaussian bump data carries L1 mass and a nonzero mean") {
    const Grid g(512, 100.0);
    DataSpec d;
    d.family = "gaussian_l1";
    d.width = 2.0;
    d.amplitude = 1.0;
    d.seed = 1;
    const SpectralField z = synthesize_initial_data(g, 2, d);
    CHECK(z.coeff.col(0).norm() > 0.0); // nonzero mean
    CHECK(hermitian_asymmetry(z) <= 1e-12);
    double max_imag = 0.0;
    const RealField phys = inverse(z, &max_imag);
    CHECK(max_imag <= 1e-12);
    CHECK(lp_norm(phys, 1.0) > 0.0);

    // different seeds shift the bump but keep its L1 norm
    d.seed = 5;
    const SpectralField z2 = synthesize_initial_data(g, 2, d);
    CHECK(lp_norm(inverse(z2), 1.0) ==
          doctest::Approx(lp_norm(phys, 1.0)).epsilon(1e-8));
    CHECK((z2.coeff - z.coeff).cwiseAbs().maxCoeff() > 1e-12);
}

TEST_CASE("high-frequency data has no content below its bottom shell") {
    const Grid g(512, 16.0 * pi); // xi_min = 1/8
    DataSpec d;
    d.family = "high_freq";
    d.j_lo = 2;
    d.j_hi = 4;
    d.seed = 9;
    const SpectralField z = synthesize_initial_data(g, 3, d);
    CHECK(hermitian_asymmetry(z) <= 1e-13);
    for (int k = 0; k < g.num_points; ++k) {
        const double xi = std::abs(g.frequency(k));
        if (z.coeff.col(k).norm() > 0.0) {
            CHECK(xi >= 0.75 * 4.0);        // bottom of shell 2
            CHECK(xi <= (8.0 / 3.0) * 16.0); // top of shell 4
        }
    }
    d.j_lo = 0; // low shells are reserved for the tail families
    CHECK_THROWS_AS(synthesize_initial_data(g, 3, d), std::invalid_argument);
}

TEST_CASE("unknown data families are rejected") {
    const Grid g(64, 10.0);
    DataSpec d;
    d.family = "nope";
    CHECK_THROWS_AS(synthesize_initial_data(g, 2, d), std::invalid_argument);
}

TEST_CASE("torus validity horizon follows beta / (c xi_min^2)") {
    const Grid g(256, 100.0 * pi); // xi_min = 0.02
    const double c = 0.5;
    CHECK(torus_validity_horizon(g, c) ==
          doctest::Approx(0.1 / (0.5 * 0.02 * 0.02)).epsilon(1e-12));
    CHECK(torus_validity_horizon(g, c, 0.2) ==
          doctest::Approx(2.0 * torus_validity_horizon(g, c)).epsilon(1e-12));
    CHECK_THROWS_AS(torus_validity_horizon(g, 0.0), std::invalid_argument);
}

TEST_CASE("rate fitting recovers a clean power law exactly") {
    std::vector<double> t, v;
    for (int i = 0; i < 24; ++i) {
        const double ti = std::pow(1.35, i);
        t.push_back(ti);
        v.push_back(7.0 * std::pow(1.0 + ti, -0.75));
    }
    const RateFit fit = fit_rate(t, v, 1.0, 1e9);
    CHECK(fit.ok);
    CHECK(fit.exponent == doctest::Approx(-0.75).epsilon(1e-12));
    CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fit.stderr_ <= 1e-10);
    CHECK(fit.points == 24);
}

TEST_CASE("rate fitting respects the window and the minimum point count") {
    std::vector<double> t, v;
    for (int i = 0; i < 24; ++i) {
        const double ti = 1.0 + i;
        t.push_back(ti);
        // slope -1 before t = 10, slope -2 after
        v.push_back(ti < 10.0 ? 1.0 / (1.0 + ti)
                              : std::pow(1.0 + ti, -2.0) * 11.0);
    }
    const RateFit late = fit_rate(t, v, 10.0, 100.0);
    CHECK(late.ok);
    CHECK(late.exponent == doctest::Approx(-2.0).epsilon(1e-6));

    const RateFit sparse = fit_rate(t, v, 20.0, 24.0); // 5 points < 8
    CHECK_FALSE(sparse.ok);

    std::vector<double> vz = v;
    vz[15] = 0.0; // nonpositive samples are skipped
    const RateFit skip = fit_rate(t, vz, 10.0, 100.0);
    CHECK(skip.points == late.points - 1);
}

TEST_CASE("exponential fitting recovers the e-folding slope") {
    std::vector<double> t, v;
    for (int i = 0; i < 20; ++i) {
        t.push_back(0.5 * i);
        v.push_back(3.0 * std::exp(-0.3 * 0.5 * i));
    }
    const RateFit fit = fit_exponential(t, v, 0.0, 10.0);
    CHECK(fit.ok);
    CHECK(fit.exponent == doctest::Approx(-0.3).epsilon(1e-10));
}

TEST_CASE("geometric time ladders include both endpoints and increase") {
    const std::vector<double> t = geometric_times(1.0, 100.0, 10);
    REQUIRE(t.size() == 10);
    CHECK(t.front() == doctest::Approx(1.0));
    CHECK(t.back() == doctest::Approx(100.0));
    for (size_t i = 1; i < t.size(); ++i) CHECK(t[i] > t[i - 1]);
}

TEST_CASE("linear decay experiment fits the predicted rates") {
    const SystemSpec sys = make_damped_euler();
    ExperimentConfig cfg;
    cfg.grid = Grid(8192, 2000.0 * pi); // xi_min = 0.001
    cfg.data = tail_data(0.5, 11);
    cfg.sample_times = geometric_times(1.0, 2000.0, 40);
    cfg.window_lo = 100.0;
    cfg.window_hi = 2000.0;
    cfg.norms = {{"sobolev", 0.0}, {"besov", 0.5}};
    cfg.rate_tol = 0.05;
    const DecayReport rep = run_experiment(sys, cfg);

    CHECK(rep.c_fit == doctest::Approx(0.5).epsilon(0.01));
    CHECK(rep.horizon == doctest::Approx(0.1 / (rep.c_fit * 1e-6)).epsilon(1e-6));
    REQUIRE(rep.traces.size() == 2);
    const NormTrace& l2 = rep.traces[0];
    CHECK(l2.expected_exponent == doctest::Approx(-0.25));
    CHECK(l2.fit.ok);
    INFO("l2 slope ", l2.fit.exponent);
    CHECK(std::abs(l2.fit.exponent - l2.expected_exponent) <= 0.05);
    CHECK(l2.pass);

    const NormTrace& bes = rep.traces[1];
    CHECK(bes.expected_exponent == doctest::Approx(-0.5));
    INFO("besov slope ", bes.fit.exponent);
    CHECK(std::abs(bes.fit.exponent - bes.expected_exponent) <= 0.05);
    CHECK(bes.pass);
    CHECK(rep.pass);
}

TEST_CASE("fit window: automatic and open-ended forms stay usable") {
    const SystemSpec sys = make_damped_euler();
    ExperimentConfig cfg;
    cfg.grid = Grid(1024, 200.0 * pi);
    cfg.data = tail_data(0.5, 4);
    cfg.sample_times = geometric_times(1.0, 100.0, 24);
    cfg.norms = {{"sobolev", 0.0}};
    cfg.rate_tol = 0.1;

    // (0,0): a post-transient window inside the horizon is chosen
    DecayReport rep = run_experiment(sys, cfg);
    REQUIRE(rep.traces.size() == 1);
    CHECK(rep.traces[0].fit.ok);
    CHECK(rep.traces[0].fit.points >= 8);
    INFO("auto-window slope ", rep.traces[0].fit.exponent);
    CHECK(rep.pass);

    // a lower edge alone leaves the upper edge open
    cfg.window_lo = 10.0;
    rep = run_experiment(sys, cfg);
    CHECK(rep.traces[0].fit.ok);
    CHECK(rep.pass);
}

TEST_CASE("high-frequency data is flagged outside the algebraic regime") {
    const SystemSpec sys = make_damped_euler();
    ExperimentConfig cfg;
    cfg.grid = Grid(512, 16.0 * pi);
    cfg.data.family = "high_freq";
    cfg.data.j_lo = 2;
    cfg.data.j_hi = 3;
    cfg.data.seed = 4;
    cfg.sample_times = geometric_times(1.0, 50.0, 16);
    cfg.window_lo = 1.0;
    cfg.window_hi = 50.0;
    cfg.norms = {{"sobolev", 0.0}};
    const DecayReport rep = run_experiment(sys, cfg);
    REQUIRE(rep.traces.size() == 1);
    CHECK_FALSE(rep.traces[0].algebraic_applicable);
    CHECK(std::isnan(rep.traces[0].expected_exponent));
    CHECK(rep.traces[0].pass); // not-applicable traces do not fail the run
}

TEST_CASE("nonlinear experiment path records asymmetry and completes") {
    const SystemSpec sys = make_damped_euler();
    ExperimentConfig cfg;
    cfg.grid = Grid(512, 50.0 * pi);
    cfg.data = tail_data(0.5, 2);
    cfg.data.amplitude = 0.05;
    cfg.sample_times = geometric_times(1.0, 20.0, 12);
    cfg.window_lo = 1.0;
    cfg.window_hi = 20.0;
    cfg.norms = {{"sobolev", 0.0}};
    cfg.nonlinear = true;
    cfg.nl.dt = 0.1;
    const DecayReport rep = run_experiment(sys, cfg);
    CHECK_FALSE(rep.blowup);
    CHECK(rep.max_asymmetry <= 1e-10);
    REQUIRE(rep.traces.size() == 1);
    CHECK(rep.traces[0].values.front() > rep.traces[0].values.back());
}

TEST_CASE("weighted functionals are running suprema") {
    const Grid g(256, 60.0);
    const SystemSpec sys = make_damped_euler();
    const SpectralField z0 = synthesize_initial_data(g, 2, tail_data(0.5, 5));
    const TimeSeries ts = evolve_linear(sys, z0, {0.0, 1.0, 4.0, 10.0, 30.0});
    const FunctionalTrace tr = weighted_functionals(ts, 0.5);
    REQUIRE(tr.e0.size() == 5);
    REQUIRE(tr.e1.size() == 5);
    for (size_t i = 1; i < tr.e0.size(); ++i) {
        CHECK(tr.e0[i] >= tr.e0[i - 1] - 1e-14);
        CHECK(tr.e1[i] >= tr.e1[i - 1] - 1e-14);
    }
    // the B^{3/2} supremum of a decaying linear flow is its initial value
    BesovParams b32;
    b32.s = 1.5;
    b32.p = 2.0;
    b32.r = 1.0;
    b32.hom = Homogeneity::inhomogeneous;
    CHECK(tr.e0.back() ==
          doctest::Approx(besov_norm(z0, b32).value).epsilon(1e-10));
}

TEST_CASE("closure audit: amplitude-to-response ratio is stable") {
    const SystemSpec sys = make_damped_euler();
    const Grid g(512, 100.0 * pi);
    NonlinearOptions opt;
    opt.dt = 0.2;
    const ClosureAuditReport rep =
        closure_audit(sys, g, tail_data(0.5, 6), {0.05, 0.1, 0.2},
                      geometric_times(1.0, 40.0, 10), opt);
    REQUIRE(rep.rows.size() == 3);
    for (const auto& row : rep.rows) {
        CHECK_FALSE(row.blowup);
        CHECK(row.data_norm > 0.0);
        CHECK(row.m_value > 0.0);
    }
    INFO("spread ", rep.ratio_spread);
    CHECK(rep.ratio_spread <= 2.0);
    CHECK(rep.pass);
}

TEST_CASE("energy audit: fitted constant is stable across seeds and sizes") {
    const SystemSpec sys = make_thermoelasticity();
    const Grid g(256, 50.0 * pi);
    NonlinearOptions opt;
    opt.dt = 0.1;
    const EnergyAuditReport rep = energy_inequality_audit(
        sys, g, tail_data(0.5, 1), {1, 2}, {0.05, 0.1}, 20.0, opt);
    REQUIRE(rep.rows.size() == 4);
    for (const auto& row : rep.rows) {
        CHECK_FALSE(row.blowup);
        CHECK(row.c0 > 0.0);
        CHECK(std::isfinite(row.c0));
    }
    INFO("spread ", rep.c0_spread);
    CHECK(rep.c0_spread <= 4.0);
    CHECK(rep.pass);
}
