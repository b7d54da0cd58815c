#include "declab/solver.hpp"

#include "declab/matrix_exp.hpp"

#include <algorithm>
#include <cmath>

namespace declab {

namespace {

Eigen::MatrixXd a0_inverse(const SystemSpec& sys) {
    return sys.a0.partialPivLu().inverse();
}

SpectralField apply_component_matrix(const Eigen::MatrixXd& m,
                                     const SpectralField& f) {
    SpectralField out = f;
    out.coeff = m * f.coeff;
    return out;
}

void check_dim(const SystemSpec& sys, const SpectralField& f) {
    if (f.components() != sys.dim())
        throw std::invalid_argument("field/system component mismatch");
}

/// Structure-check by-products needed by the lemma envelopes: the fitted
/// dissipation constant and radius for the standard probe grid.
struct EnvelopeConstants {
    double c = 0.0;
    double r0 = 0.0;
    int j0 = 0;
};

EnvelopeConstants envelope_constants(const SystemSpec& sys) {
    const std::vector<double> probe = log_grid(1e-3, 1e3, 400);
    const EnvelopeReport env = spectral_envelope(sys, probe);
    if (!env.pass)
        throw std::runtime_error("lemma bounds need a strictly dissipative model");
    EnvelopeConstants ec;
    ec.c = env.c_fit;
    ec.r0 = dissipation_radius(sys, ec.c, probe);
    ec.j0 = low_frequency_cutoff(ec.r0);
    return ec;
}

/// l^r aggregation over shells j_min..j_cap of 2^{j l} ||Ddot_j f||_{L^2}.
double shell_aggregate(const SpectralField& f, double l, double r, int j_cap,
                       const CutoffProfile& c) {
    const BlockRange br = block_range(f.grid);
    const int hi = std::min(j_cap, br.j_max);
    std::vector<double> terms;
    for (int j = br.j_min; j <= hi; ++j)
        terms.push_back(std::pow(2.0, j * l) * homogeneous_block_l2(f, j, c));
    if (std::isinf(r)) {
        double m = 0.0;
        for (double t : terms) m = std::max(m, t);
        return m;
    }
    double acc = 0.0;
    for (double t : terms) acc += std::pow(t, r);
    return r == 1.0 ? acc : std::pow(acc, 1.0 / r);
}

double equilibrium_fraction(const SystemSpec& sys, const SpectralField& f) {
    const double total = f.coeff.norm();
    if (total == 0.0) return 0.0;
    return (sys.equilibrium.transpose() * f.coeff).norm() / total;
}

} // namespace

SpectralField apply_semigroup(const SystemSpec& sys, const SpectralField& z0,
                              double t) {
    check_dim(sys, z0);
    if (t < 0.0) throw std::invalid_argument("apply_semigroup: t must be >= 0");
    const int n = z0.grid.num_points;
    SpectralField out(z0.grid, z0.components());
    // Real coefficient matrices give exp(t Phi(-i xi)) = conj(exp(t Phi(i xi))),
    // so conjugate mode pairs share one matrix exponential.  The contract asks
    // for Hermitian input; if the input measurably is not, fall back to the
    // direct per-mode loop instead of silently symmetrising.
    const bool hermitian =
        hermitian_asymmetry(z0) <=
        1e-12 * std::max(1.0, z0.coeff.cwiseAbs().maxCoeff());
    if (hermitian) {
        for (int k = 0; k <= n / 2; ++k) {
            const Eigen::MatrixXcd e =
                matrix_exponential(t * symbol(sys, z0.grid.frequency(k)));
            out.coeff.col(k) = e * z0.coeff.col(k);
            const int kc = (n - k) % n;
            if (kc != k) out.coeff.col(kc) = out.coeff.col(k).conjugate();
        }
    } else {
        for (int k = 0; k < n; ++k)
            out.coeff.col(k) =
                matrix_exponential(t * symbol(sys, z0.grid.frequency(k))) *
                z0.coeff.col(k);
    }
    return out;
}

TimeSeries evolve_linear(const SystemSpec& sys, const SpectralField& z0,
                         const std::vector<double>& times) {
    TimeSeries ts;
    for (double t : times) {
        ts.times.push_back(t);
        ts.fields.push_back(apply_semigroup(sys, z0, t));
    }
    return ts;
}

SpectralField nonlinear_rhs(const SystemSpec& sys, const SpectralField& z) {
    check_dim(sys, z);
    const int n = z.grid.num_points;
    const int nc = z.components();
    SpectralField rhs(z.grid, nc);
    if (!sys.flux && !sys.source) return rhs;

    SpectralField padded = z;
    truncate_modes(padded, sys.dealias_fraction);
    const RealField w = inverse(padded);

    RealField p_phys(z.grid, nc), q_phys(z.grid, nc);
    for (int j = 0; j < n; ++j) {
        const Eigen::VectorXd state = w.values.col(j);
        if (sys.state_valid && !sys.state_valid(state))
            throw std::domain_error("nonlinear_rhs: state left the model's valid set");
        if (sys.flux) p_phys.values.col(j) = sys.flux(state);
        if (sys.source) q_phys.values.col(j) = sys.source(state);
    }

    if (sys.flux) rhs.coeff = derivative(forward(p_phys)).coeff;
    if (sys.source) rhs.coeff += forward(q_phys).coeff;
    rhs = apply_component_matrix(a0_inverse(sys), rhs);
    truncate_modes(rhs, sys.dealias_fraction);
    return rhs;
}

NonlinearResult evolve_nonlinear(const SystemSpec& sys, const SpectralField& z0,
                                 const std::vector<double>& times,
                                 const NonlinearOptions& opt) {
    check_dim(sys, z0);
    if (!(opt.dt > 0.0)) throw std::invalid_argument("evolve_nonlinear: dt must be > 0");
    if (times.empty()) throw std::invalid_argument("evolve_nonlinear: no sample times");
    for (size_t i = 1; i < times.size(); ++i)
        if (!(times[i] > times[i - 1]))
            throw std::invalid_argument("evolve_nonlinear: times must increase");

    const int n = z0.grid.num_points;
    const int nc = z0.components();
    const double t_end = times.back();
    const long n_steps = std::max<long>(1, std::lround(std::ceil(t_end / opt.dt - 1e-9)));

    // each requested time maps to the nearest step boundary; collapsed to a
    // unique sorted list so the recorded series is strictly monotone
    std::vector<long> targets;
    for (double t : times)
        targets.push_back(std::clamp<long>(std::lround(t / opt.dt), 0, n_steps));
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());

    // per-mode tables for one step: E = exp(dt Phi), B1 = dt phi1, B2 = dt phi2;
    // the predictor is an exponential Euler step, the corrector adds the
    // phi2-weighted difference of the nonlinear term (second order)
    std::vector<Eigen::MatrixXcd> e_tab(n / 2 + 1), b1_tab(n / 2 + 1),
        b2_tab(n / 2 + 1);
    for (int k = 0; k <= n / 2; ++k) {
        const PhiFunctions ph =
            phi_functions(opt.dt * symbol(sys, z0.grid.frequency(k)));
        e_tab[k] = ph.phi0;
        b1_tab[k] = opt.dt * ph.phi1;
        b2_tab[k] = opt.dt * ph.phi2;
    }

    NonlinearResult res;
    SpectralField z = z0;
    res.max_asymmetry = enforce_hermitian(z);
    const double guard = opt.blowup_factor * std::max(l2_norm(z), 1e-300);

    size_t next_target = 0;
    const auto record_due = [&](long s, const SpectralField& f) {
        while (next_target < targets.size() && targets[next_target] == s) {
            res.series.times.push_back(s * opt.dt);
            res.series.fields.push_back(f);
            ++next_target;
        }
    };

    SpectralField predictor(z0.grid, nc), next(z0.grid, nc);
    long completed = 0;
    record_due(0, z);
    for (long step = 0; step < n_steps; ++step) {
        try {
            const SpectralField rhs_n = nonlinear_rhs(sys, z);
            for (int k = 0; k <= n / 2; ++k) {
                predictor.coeff.col(k) =
                    e_tab[k] * z.coeff.col(k) + b1_tab[k] * rhs_n.coeff.col(k);
                const int kc = (n - k) % n;
                if (kc != k)
                    predictor.coeff.col(kc) = predictor.coeff.col(k).conjugate();
            }
            SpectralField rhs_d = nonlinear_rhs(sys, predictor);
            rhs_d.coeff -= rhs_n.coeff;
            for (int k = 0; k <= n / 2; ++k) {
                next.coeff.col(k) = predictor.coeff.col(k) +
                                    b2_tab[k] * rhs_d.coeff.col(k);
                const int kc = (n - k) % n;
                if (kc != k) next.coeff.col(kc) = next.coeff.col(k).conjugate();
            }
        } catch (const std::domain_error&) {
            res.invalid_state = true;
            break;
        }
        z = next;
        res.max_asymmetry = std::max(res.max_asymmetry, enforce_hermitian(z));
        completed = step + 1;
        record_due(completed, z);
        if (l2_norm(z) > guard) {
            res.blowup = true;
            break;
        }
    }
    res.final_time = completed * opt.dt;
    return res;
}

// ---------------------------------------------------- localised Duhamel sums

namespace {

/// Trapezoid-weighted sum over snapshots tau <= t of
/// exp((t - tau) Phi) applied to the (dealiased) nonlinear right-hand side.
SpectralField duhamel_integral(const SystemSpec& sys, const TimeSeries& traj,
                               double t) {
    if (traj.times.empty() || traj.times.front() != 0.0)
        throw std::invalid_argument("duhamel: trajectory must start at t = 0");
    size_t last = 0;
    while (last + 1 < traj.times.size() && traj.times[last + 1] <= t + 1e-12)
        ++last;
    if (std::abs(traj.times[last] - t) > 1e-9)
        throw std::invalid_argument("duhamel: t must coincide with a snapshot");

    const Grid& g = traj.fields.front().grid;
    SpectralField acc(g, traj.fields.front().components());
    if (last == 0) return acc; // t == 0
    for (size_t i = 0; i <= last; ++i) {
        const double w_lo = i == 0 ? 0.0 : 0.5 * (traj.times[i] - traj.times[i - 1]);
        const double w_hi = i == last ? 0.0 : 0.5 * (traj.times[i + 1] - traj.times[i]);
        const double w = w_lo + w_hi;
        const SpectralField rhs = nonlinear_rhs(sys, traj.fields[i]);
        const SpectralField prop = apply_semigroup(sys, rhs, t - traj.times[i]);
        acc.coeff += w * prop.coeff;
    }
    return acc;
}

} // namespace

SpectralField localized_duhamel_term(const SystemSpec& sys,
                                     const TimeSeries& traj, double t, int j,
                                     double l, bool homogeneous,
                                     const CutoffProfile& c) {
    SpectralField term = duhamel_integral(sys, traj, t);
    term = fractional_derivative(term, l);
    return homogeneous ? homogeneous_block(term, j, c)
                       : inhomogeneous_block(term, j, c);
}

double duhamel_consistency_defect(const SystemSpec& sys, const TimeSeries& traj,
                                  double t, const CutoffProfile& c) {
    // Sum of the localised terms over the whole inhomogeneous family; the
    // block weights form an exact partition of unity, so the sum is applied
    // as a single multiplier instead of one propagation per block.
    const SpectralField integral = duhamel_integral(sys, traj, t);
    const Grid& g = integral.grid;
    const int j_hi = block_range(g).j_max;
    SpectralField summed = integral;
    for (int k = 0; k < g.num_points; ++k)
        summed.coeff.col(k) *=
            partition_sum_inhomogeneous(c, g.frequency(k), j_hi);

    size_t idx = 0;
    while (idx + 1 < traj.times.size() && traj.times[idx + 1] <= t + 1e-12) ++idx;
    const SpectralField linear = apply_semigroup(sys, traj.fields.front(), t);
    SpectralField defect = traj.fields[idx];
    defect.coeff -= linear.coeff;
    defect.coeff -= summed.coeff;
    return l2_norm(defect);
}

// ------------------------------------------------------------- lemma bounds

SpectralField project_equilibrium_complement(const SystemSpec& sys,
                                             const SpectralField& f) {
    check_dim(sys, f);
    SpectralField out = f;
    out.coeff -= sys.equilibrium *
                 (sys.equilibrium.transpose() * f.coeff);
    return out;
}

LemmaReport verify_lemma_bound(const SystemSpec& sys, const LemmaProbe& probe,
                               const SpectralField& datum,
                               const CutoffProfile& c) {
    check_dim(sys, datum);
    if (probe.times.empty())
        throw std::invalid_argument("verify_lemma_bound: no probe times");
    for (double t : probe.times)
        if (!(t > 0.0))
            throw std::invalid_argument("verify_lemma_bound: times must be > 0");

    LemmaReport rep;
    rep.probe = probe;
    const bool block_lemma = probe.id == LemmaId::low_block_flux;
    const bool source_lemma = probe.id == LemmaId::low_shells_source;
    if (block_lemma) {
        if (!(probe.l + 1.0 - probe.sigma >= 0.0) || !(probe.s > 0.0))
            throw std::invalid_argument(
                "low-block lemma needs l + 1 - sigma >= 0 and s > 0");
    } else {
        if (!(probe.s + probe.l + 1.0 - probe.sigma > 0.0))
            throw std::invalid_argument(
                "shell lemmas need s + l + 1 - sigma > 0");
    }
    if (source_lemma && equilibrium_fraction(sys, datum) > 1e-10)
        throw std::invalid_argument(
            "source lemma needs a datum orthogonal to the equilibrium space");

    const EnvelopeConstants ec = envelope_constants(sys);
    rep.c = ec.c;
    rep.r0 = ec.r0;
    rep.j0 = ec.j0;

    // datum-side norm || Lambda^sigma datum ||_{Bdot^{-s}_{2,inf}}
    BesovParams tail;
    tail.s = -probe.s;
    tail.p = 2.0;
    tail.r = inf;
    tail.hom = Homogeneity::homogeneous;
    const double datum_tail =
        besov_norm(fractional_derivative(datum, probe.sigma), tail, c).value;
    // exponential-term weight (source lemma only): shells of the raw datum
    const double datum_shells =
        source_lemma ? shell_aggregate(datum, probe.l, probe.r, ec.j0, c) : 0.0;

    const Eigen::MatrixXd a0inv = a0_inverse(sys);
    SpectralField seed = source_lemma
                             ? apply_component_matrix(a0inv, datum)
                             : apply_component_matrix(a0inv, derivative(datum));

    rep.admissible = true;
    rep.finite = true;
    const double decay_exp = 0.5 * (probe.s + probe.l + 1.0 - probe.sigma);
    for (double t : probe.times) {
        const SpectralField evolved = apply_semigroup(sys, seed, t);
        double lhs;
        if (block_lemma) {
            lhs = inhomogeneous_block_l2(fractional_derivative(evolved, probe.l),
                                         -1, c);
        } else {
            lhs = shell_aggregate(evolved, probe.l, probe.r, ec.j0, c);
        }
        double env = std::pow(1.0 + t, -decay_exp) * datum_tail;
        if (source_lemma) env += std::exp(-ec.c * t) * datum_shells;
        rep.lhs.push_back(lhs);
        rep.envelope.push_back(env);
        const double ratio = lhs / env;
        if (!std::isfinite(ratio)) rep.finite = false;
        rep.sup_ratio = std::max(rep.sup_ratio, ratio);
    }
    return rep;
}

EnvelopeComparison compare_source_vs_flux_envelopes(
    const SystemSpec& sys, const SpectralField& datum, double s, double sigma,
    double l, double r, const std::vector<double>& times, double ceiling,
    const CutoffProfile& c) {
    check_dim(sys, datum);
    if (equilibrium_fraction(sys, datum) > 1e-10)
        throw std::invalid_argument(
            "envelope comparison needs a datum orthogonal to the equilibrium space");
    const EnvelopeConstants ec = envelope_constants(sys);

    BesovParams tail;
    tail.s = -s;
    tail.p = 2.0;
    tail.r = inf;
    tail.hom = Homogeneity::homogeneous;
    const double datum_tail =
        besov_norm(fractional_derivative(datum, sigma), tail, c).value;
    const double datum_shells = shell_aggregate(datum, l, r, ec.j0, c);

    EnvelopeComparison cmp;
    cmp.times = times;
    cmp.dominates = true;
    const double decay_exp = 0.5 * (s + l + 1.0 - sigma);
    for (double t : times) {
        const double flux_env = std::pow(1.0 + t, -decay_exp) * datum_tail;
        const double source_env = flux_env + std::exp(-ec.c * t) * datum_shells;
        cmp.env_flux.push_back(flux_env);
        cmp.env_source.push_back(source_env);
        if (source_env < flux_env) cmp.dominates = false;
        if (t >= 10.0)
            cmp.max_ratio = std::max(cmp.max_ratio, source_env / flux_env);
    }
    cmp.pass = cmp.dominates && cmp.max_ratio <= ceiling && cmp.max_ratio >= 1.0;
    return cmp;
}

} // namespace declab
