#include "declab/decay.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace declab {

// -------------------------------------------------------------- initial data

namespace {

/// Resolve the component direction for a datum.  Random modes use their own
/// generator (decoupled from the phase stream) so that, seed for seed, the
/// scalar spectral profile is identical whichever mode is chosen.
Eigen::VectorXd resolve_direction(int dim, const DataSpec& spec) {
    if (spec.direction_mode == "fixed") {
        Eigen::VectorXd dir = spec.direction;
        if (dir.size() == 0) {
            dir = Eigen::VectorXd::Zero(dim);
            dir[0] = 1.0;
        }
        if (dir.size() != dim)
            throw std::invalid_argument("synthesize: direction/dim mismatch");
        if (dir.norm() == 0.0)
            throw std::invalid_argument("synthesize: direction must be nonzero");
        dir.normalize();
        return dir;
    }
    if (spec.direction_mode != "random" &&
        spec.direction_mode != "random-complement")
        throw std::invalid_argument("synthesize: unknown direction_mode " +
                                    spec.direction_mode);
    if (spec.direction.size() != 0)
        throw std::invalid_argument(
            "synthesize: direction vector and direction_mode=" +
            spec.direction_mode + " are mutually exclusive");
    std::mt19937_64 rng(spec.seed * 0x9e3779b97f4a7c15ull +
                        0xda3e39cb94b95bdbull);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::VectorXd dir(dim);
    for (int i = 0; i < dim; ++i) dir[i] = gauss(rng);
    if (spec.direction_mode == "random-complement") {
        if (spec.complement_of.rows() != dim || spec.complement_of.cols() < 1)
            throw std::invalid_argument(
                "synthesize: random-complement needs a dim-row basis in "
                "complement_of");
        if (spec.complement_of.cols() >= dim)
            throw std::invalid_argument(
                "synthesize: complement_of leaves no room for a direction");
        // project out the span only; tolerate a non-orthonormal basis
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(spec.complement_of);
        const Eigen::MatrixXd q =
            qr.householderQ() *
            Eigen::MatrixXd::Identity(dim, spec.complement_of.cols());
        dir -= q * (q.transpose() * dir);
    }
    if (dir.norm() < 1e-12)
        throw std::invalid_argument("synthesize: degenerate random direction");
    dir.normalize();
    return dir;
}

} // namespace

SpectralField synthesize_initial_data(const Grid& g, int dim,
                                      const DataSpec& spec) {
    if (dim < 1) throw std::invalid_argument("synthesize: dim must be >= 1");
    const Eigen::VectorXd dir = resolve_direction(dim, spec);

    std::mt19937_64 rng(spec.seed);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * pi);
    std::normal_distribution<double> gauss(0.0, 1.0);

    SpectralField f(g, dim);
    const int n = g.num_points;

    if (spec.family == "besov_tail") {
        if (!(spec.s > 0.0))
            throw std::invalid_argument("besov_tail: s must be > 0");
        if (!(spec.xi_cut > 0.0))
            throw std::invalid_argument("besov_tail: xi_cut must be > 0");
        for (int k = 1; k < n / 2; ++k) {
            const double xi = g.frequency(k);
            const double mag = spec.amplitude *
                               std::pow(xi, spec.s - 0.5) *
                               std::exp(-(xi / spec.xi_cut) * (xi / spec.xi_cut));
            const std::complex<double> ph = std::polar(mag, phase(rng));
            f.coeff.col(k) = ph * dir.cast<std::complex<double>>();
        }
    } else if (spec.family == "gaussian_l1") {
        // physical bump centred mid-box; genuinely nonzero mean
        RealField phys(g, dim);
        const double x0 = 0.5 * g.box_length;
        const double w = spec.width;
        for (int j = 0; j < n; ++j) {
            const double dx = g.x(j) - x0;
            phys.values.col(j) =
                spec.amplitude * std::exp(-dx * dx / (2.0 * w * w)) * dir;
        }
        f = forward(phys);
        // random phases would destroy the L^1 structure; jitter the centre
        // instead so different seeds still give different realisations
        const double shift = phase(rng) / (2.0 * pi) * g.box_length;
        for (int k = 0; k < n; ++k)
            f.coeff.col(k) *= std::polar(1.0, -g.frequency(k) * shift);
    } else if (spec.family == "high_freq") {
        if (spec.j_lo < 1 || spec.j_hi < spec.j_lo)
            throw std::invalid_argument("high_freq: need 1 <= j_lo <= j_hi");
        const CutoffProfile prof;
        for (int k = 1; k < n / 2; ++k) {
            const double xi = g.frequency(k);
            double w = 0.0;
            for (int j = spec.j_lo; j <= spec.j_hi; ++j)
                w += homogeneous_weight(prof, j, xi);
            if (w == 0.0) continue;
            const std::complex<double> val(gauss(rng), gauss(rng));
            f.coeff.col(k) =
                spec.amplitude * w * val * dir.cast<std::complex<double>>();
        }
    } else {
        throw std::invalid_argument("synthesize: unknown family " + spec.family);
    }

    // Hermitian closure; mode 0 untouched for gaussian_l1, zero otherwise
    for (int k = 1; k < n / 2; ++k)
        f.coeff.col(n - k) = f.coeff.col(k).conjugate();
    f.coeff.col(n / 2).setZero(); // unpaired Nyquist mode stays empty
    if (spec.family != "gaussian_l1") f.coeff.col(0).setZero();
    enforce_hermitian(f);
    return f;
}

SpectralField synthesize_initial_data(const Grid& g, const SystemSpec& sys,
                                      const DataSpec& spec) {
    DataSpec resolved = spec;
    if (resolved.direction_mode == "random-complement" &&
        resolved.complement_of.size() == 0)
        resolved.complement_of = sys.equilibrium;
    return synthesize_initial_data(g, sys.dim(), resolved);
}

double torus_validity_horizon(const Grid& g, double c, double beta) {
    if (!(c > 0.0)) throw std::invalid_argument("horizon: c must be > 0");
    const double ximin = g.xi_min();
    return beta / (c * ximin * ximin);
}

// -------------------------------------------------------------- rate fitting

namespace {

RateFit fit_line(const std::vector<double>& x, const std::vector<double>& y,
                 int min_points) {
    RateFit fit;
    fit.points = static_cast<int>(x.size());
    if (fit.points < min_points) return fit;
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0.0) return fit;
    fit.exponent = sxy / sxx;
    const double intercept = my - fit.exponent * mx;
    double ss_res = 0.0;
    for (size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (intercept + fit.exponent * x[i]);
        ss_res += r * r;
    }
    fit.r_squared = syy == 0.0 ? 1.0 : 1.0 - ss_res / syy;
    if (x.size() > 2)
        fit.stderr_ = std::sqrt(ss_res / ((n - 2.0) * sxx));
    fit.ok = true;
    return fit;
}

} // namespace

RateFit fit_rate(const std::vector<double>& times,
                 const std::vector<double>& values, double window_lo,
                 double window_hi, int min_points) {
    if (times.size() != values.size())
        throw std::invalid_argument("fit_rate: ragged series");
    std::vector<double> x, y;
    for (size_t i = 0; i < times.size(); ++i) {
        if (times[i] < window_lo || times[i] > window_hi) continue;
        if (!(values[i] > 0.0)) continue;
        x.push_back(std::log(1.0 + times[i]));
        y.push_back(std::log(values[i]));
    }
    return fit_line(x, y, min_points);
}

RateFit fit_exponential(const std::vector<double>& times,
                        const std::vector<double>& values, double window_lo,
                        double window_hi, int min_points) {
    if (times.size() != values.size())
        throw std::invalid_argument("fit_exponential: ragged series");
    std::vector<double> x, y;
    for (size_t i = 0; i < times.size(); ++i) {
        if (times[i] < window_lo || times[i] > window_hi) continue;
        if (!(values[i] > 0.0)) continue;
        x.push_back(times[i]);
        y.push_back(std::log(values[i]));
    }
    return fit_line(x, y, min_points);
}

std::vector<double> geometric_times(double t0, double t1, int count) {
    if (!(t0 > 0.0) || !(t1 > t0) || count < 2)
        throw std::invalid_argument("geometric_times: need 0 < t0 < t1, count >= 2");
    std::vector<double> t(count);
    const double step = std::log(t1 / t0) / (count - 1);
    for (int i = 0; i < count; ++i) t[i] = t0 * std::exp(i * step);
    return t;
}

// ---------------------------------------------------------------- experiment

namespace {

double tracked_norm_value(const SpectralField& f, const TrackedNorm& tn) {
    if (tn.kind == "sobolev")
        return l2_norm(fractional_derivative(f, tn.l));
    if (tn.kind == "besov") {
        BesovParams par;
        par.s = tn.l;
        par.p = 2.0;
        par.r = 1.0;
        par.hom = Homogeneity::homogeneous;
        return besov_norm(f, par).value;
    }
    throw std::invalid_argument("unknown tracked norm kind: " + tn.kind);
}

} // namespace

DecayReport run_experiment(const SystemSpec& sys, const ExperimentConfig& cfg) {
    if (cfg.sample_times.empty())
        throw std::invalid_argument("run_experiment: no sample times");
    if (cfg.norms.empty())
        throw std::invalid_argument("run_experiment: no tracked norms");

    DecayReport rep;
    rep.model = sys.name;
    rep.config = cfg;

    const EnvelopeReport env =
        spectral_envelope(sys, log_grid(1e-3, 1e3, 400));
    rep.c_fit = env.c_fit;
    rep.horizon = env.pass ? torus_validity_horizon(cfg.grid, env.c_fit) : 0.0;

    const double t_last =
        *std::max_element(cfg.sample_times.begin(), cfg.sample_times.end());
    double window_lo = cfg.window_lo, window_hi = cfg.window_hi;
    if (window_lo == 0.0 && window_hi == 0.0) {
        // auto: skip the early transient (the default geometric ladder keeps
        // enough late samples to fit) and stay inside the validity horizon
        window_lo = std::min(100.0, 0.2 * t_last);
        window_hi =
            rep.horizon > 0.0 ? std::min(t_last, rep.horizon / 10.0) : t_last;
    } else if (window_hi == 0.0) {
        window_hi = inf; // only the lower edge was pinned
    }

    const SpectralField z0 = synthesize_initial_data(cfg.grid, sys, cfg.data);

    const bool high_freq_data = cfg.data.family == "high_freq";
    for (const TrackedNorm& tn : cfg.norms) {
        NormTrace tr;
        tr.norm = tn;
        tr.algebraic_applicable = !high_freq_data;
        tr.expected_exponent =
            high_freq_data ? std::nan("") : -0.5 * (cfg.data.s + tn.l);
        rep.traces.push_back(tr);
    }

    if (cfg.nonlinear) {
        const NonlinearResult nl =
            evolve_nonlinear(sys, z0, cfg.sample_times, cfg.nl);
        rep.max_asymmetry = nl.max_asymmetry;
        rep.blowup = nl.blowup || nl.invalid_state;
        rep.times = nl.series.times;
        for (const SpectralField& f : nl.series.fields)
            for (size_t q = 0; q < rep.traces.size(); ++q)
                rep.traces[q].values.push_back(
                    tracked_norm_value(f, rep.traces[q].norm));
    } else {
        rep.times = cfg.sample_times;
        for (double t : cfg.sample_times) {
            const SpectralField zt = apply_semigroup(sys, z0, t);
            for (size_t q = 0; q < rep.traces.size(); ++q)
                rep.traces[q].values.push_back(
                    tracked_norm_value(zt, rep.traces[q].norm));
        }
    }

    rep.pass = !rep.blowup;
    for (NormTrace& tr : rep.traces) {
        tr.fit = fit_rate(rep.times, tr.values, window_lo, window_hi);
        if (!tr.algebraic_applicable) {
            // no low-frequency content: decay is exponential, a power-law
            // description does not apply and is not asserted
            tr.pass = true;
            continue;
        }
        tr.pass = tr.fit.ok &&
                  std::abs(tr.fit.exponent - tr.expected_exponent) <= cfg.rate_tol;
        rep.pass = rep.pass && tr.pass;
    }
    return rep;
}

// -------------------------------------------------------------------- audits

FunctionalTrace weighted_functionals(const TimeSeries& ts, double s) {
    static const double ells[] = {0.125, 0.25, 0.375, 0.5};
    FunctionalTrace tr;
    tr.times = ts.times;
    BesovParams inhom;
    inhom.s = 1.5;
    inhom.p = 2.0;
    inhom.r = 1.0;
    inhom.hom = Homogeneity::inhomogeneous;

    double e0 = 0.0;
    double sup_l2 = 0.0;
    double sup_besov[4] = {0.0, 0.0, 0.0, 0.0};
    for (size_t i = 0; i < ts.fields.size(); ++i) {
        const SpectralField& f = ts.fields[i];
        const double tau = ts.times[i];
        e0 = std::max(e0, besov_norm(f, inhom).value);
        tr.e0.push_back(e0);
        sup_l2 = std::max(sup_l2, std::pow(1.0 + tau, 0.5 * s) * l2_norm(f));
        double e1 = sup_l2;
        double besov_part = 0.0;
        for (int q = 0; q < 4; ++q) {
            BesovParams par;
            par.s = ells[q];
            par.p = 2.0;
            par.r = 1.0;
            par.hom = Homogeneity::homogeneous;
            sup_besov[q] = std::max(sup_besov[q],
                                     std::pow(1.0 + tau, 0.5 * (s + ells[q])) *
                                         besov_norm(f, par).value);
            besov_part = std::max(besov_part, sup_besov[q]);
        }
        tr.e1.push_back(e1 + besov_part);
    }
    return tr;
}

ClosureAuditReport closure_audit(const SystemSpec& sys, const Grid& g,
                                 DataSpec base,
                                 const std::vector<double>& amplitudes,
                                 const std::vector<double>& sample_times,
                                 const NonlinearOptions& opt,
                                 double spread_ceiling) {
    ClosureAuditReport rep;
    rep.model = sys.name;
    BesovParams inhom;
    inhom.s = 1.5;
    inhom.p = 2.0;
    inhom.r = 1.0;
    inhom.hom = Homogeneity::inhomogeneous;
    BesovParams tail;
    tail.s = -base.s;
    tail.p = 2.0;
    tail.r = inf;
    tail.hom = Homogeneity::homogeneous;

    for (double a : amplitudes) {
        DataSpec spec = base;
        spec.amplitude = a;
        const SpectralField z0 = synthesize_initial_data(g, sys, spec);
        ClosureAuditRow row;
        row.amplitude = a;
        row.data_norm =
            std::max(besov_norm(z0, inhom).value, besov_norm(z0, tail).value);
        const NonlinearResult nl = evolve_nonlinear(sys, z0, sample_times, opt);
        row.blowup = nl.blowup || nl.invalid_state;
        const FunctionalTrace tr = weighted_functionals(nl.series, base.s);
        row.m_value = tr.e1.empty() ? 0.0 : tr.e1.back();
        row.ratio = row.data_norm > 0.0 ? row.m_value / row.data_norm : inf;
        rep.rows.push_back(row);
    }

    double lo = inf, hi = 0.0;
    bool ok = true;
    for (const ClosureAuditRow& row : rep.rows) {
        if (row.blowup || !std::isfinite(row.ratio)) ok = false;
        lo = std::min(lo, row.ratio);
        hi = std::max(hi, row.ratio);
    }
    rep.ratio_spread = lo > 0.0 ? hi / lo : inf;
    rep.pass = ok && rep.ratio_spread <= spread_ceiling;
    return rep;
}

EnergyAuditReport energy_inequality_audit(
    const SystemSpec& sys, const Grid& g, DataSpec base,
    const std::vector<std::uint64_t>& seeds,
    const std::vector<double>& amplitudes, double t_end,
    const NonlinearOptions& opt, double spread_ceiling) {
    EnergyAuditReport rep;

    BesovParams b32;
    b32.s = 1.5;
    b32.p = 2.0;
    b32.r = 1.0;
    b32.hom = Homogeneity::inhomogeneous;
    BesovParams b12 = b32;
    b12.s = 0.5;

    // dense snapshot ladder for the time-integrated norms
    std::vector<double> snap;
    const int count = std::max(2, static_cast<int>(std::ceil(t_end / 0.5)) + 1);
    for (int i = 0; i < count; ++i)
        snap.push_back(t_end * i / (count - 1));

    for (std::uint64_t seed : seeds) {
        for (double a : amplitudes) {
            DataSpec spec = base;
            spec.seed = seed;
            spec.amplitude = a;
            const SpectralField w0 = synthesize_initial_data(g, sys, spec);
            const double data_norm = besov_norm(w0, b32).value;

            EnergyAuditRow row;
            row.seed = seed;
            row.amplitude = a;

            const NonlinearResult nl = evolve_nonlinear(sys, w0, snap, opt);
            row.blowup = nl.blowup || nl.invalid_state;
            if (!row.blowup && data_norm > 0.0) {
                const NormResult sup_w =
                    chemin_lerner_norm(nl.series, b32, inf);
                // heat-flux component alone
                TimeSeries q_series;
                q_series.times = nl.series.times;
                for (const SpectralField& f : nl.series.fields) {
                    SpectralField q(f.grid, 1);
                    q.coeff.row(0) = f.coeff.row(3);
                    q_series.fields.push_back(q);
                }
                const NormResult diss_q =
                    chemin_lerner_norm(q_series, b32, 2.0);
                TimeSeries dx_series;
                dx_series.times = nl.series.times;
                for (const SpectralField& f : nl.series.fields)
                    dx_series.fields.push_back(derivative(f));
                const NormResult diss_dx =
                    chemin_lerner_norm(dx_series, b12, 2.0);
                const double mu0 = 1.0;
                row.c0 = (sup_w.value + mu0 * (diss_q.value + diss_dx.value)) /
                         data_norm;
            }
            rep.rows.push_back(row);
        }
    }

    double lo = inf, hi = 0.0;
    bool ok = true;
    for (const EnergyAuditRow& row : rep.rows) {
        if (row.blowup || !(row.c0 > 0.0)) ok = false;
        lo = std::min(lo, row.c0);
        hi = std::max(hi, row.c0);
    }
    rep.c0_spread = lo > 0.0 ? hi / lo : inf;
    rep.pass = ok && rep.c0_spread <= spread_ceiling;
    return rep;
}

} // namespace declab
