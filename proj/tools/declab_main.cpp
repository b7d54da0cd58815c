/// @file declab_main.cpp
/// @brief Command-line laboratory driver.  Subcommands:
///          check         structural conditions + spectral envelope
///          spectrum      symbol spectrum scan to CSV
///          evolve        linear / nonlinear trajectory with norm series
///          decay         full decay-rate experiment from a config file
///          inequalities  harmonic-analysis verifier battery
///          lemma-bounds  frequency-localised decay-bound probes
///          audit         closure / energy-functional audits
///        Exit codes: 0 = all checks passed, 1 = a check failed,
///        2 = configuration / usage error.

#include "declab/config.hpp"
#include "declab/decay.hpp"
#include "declab/inequalities.hpp"
#include "declab/reports.hpp"
#include "declab/snapshot_io.hpp"
#include "declab/solver.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

namespace {

using namespace declab;

struct GlobalOpts {
    std::string output_dir = ".";
};

std::string out_path(const GlobalOpts& g, const std::string& file) {
    std::filesystem::create_directories(g.output_dir);
    return (std::filesystem::path(g.output_dir) / file).string();
}

/// A model is either a builtin name or a path to a descriptor file.
SystemSpec resolve_model(const std::string& spec) {
    if (std::filesystem::exists(spec))
        return system_from_config(Config::load(spec));
    return make_builtin(spec);
}

struct DataOpts {
    std::string family = "besov_tail";
    double s = 0.5;
    double amplitude = 1.0;
    double xi_cut = 1.0;
    double width = 1.0;
    int j_lo = 1, j_hi = 2;
    std::uint64_t seed = 1;
    std::vector<double> direction;
    std::string direction_mode = "fixed";

    DataSpec to_spec() const {
        DataSpec d;
        d.family = family;
        d.s = s;
        d.amplitude = amplitude;
        d.xi_cut = xi_cut;
        d.width = width;
        d.j_lo = j_lo;
        d.j_hi = j_hi;
        d.seed = seed;
        if (!direction.empty())
            d.direction = Eigen::Map<const Eigen::VectorXd>(
                direction.data(), static_cast<long>(direction.size()));
        d.direction_mode = direction_mode;
        return d;
    }
};

void add_data_options(CLI::App* cmd, DataOpts& d) {
    cmd->add_option("--data-family", d.family,
                    "besov_tail | gaussian_l1 | high_freq")
        ->check(CLI::IsMember({"besov_tail", "gaussian_l1", "high_freq"}));
    cmd->add_option("--data-s", d.s, "spectral tail index");
    cmd->add_option("--data-amplitude", d.amplitude);
    cmd->add_option("--data-xi-cut", d.xi_cut);
    cmd->add_option("--data-width", d.width);
    cmd->add_option("--data-j-lo", d.j_lo);
    cmd->add_option("--data-j-hi", d.j_hi);
    cmd->add_option("--data-seed", d.seed);
    cmd->add_option("--data-direction", d.direction, "component direction")
        ->delimiter(',');
    cmd->add_option("--data-direction-mode", d.direction_mode,
                    "fixed | random | random-complement")
        ->check(CLI::IsMember({"fixed", "random", "random-complement"}));
}

std::vector<double> envelope_probe() { return log_grid(1e-3, 1e3, 400); }

int run_check(const GlobalOpts& g, const std::string& model) {
    const SystemSpec sys = resolve_model(model);
    const ConditionAReport a = check_condition_a(sys);
    const ConditionKReport k = check_condition_k(sys);
    const EnvelopeReport env = spectral_envelope(sys, envelope_probe());
    const std::string doc = structure_report_json(sys.name, a, k, env);
    write_text_file(out_path(g, "check_" + sys.name + ".json"), doc);
    std::cout << doc;
    return (a.pass && k.pass && env.pass) ? 0 : 1;
}

int run_spectrum(const GlobalOpts& g, const std::string& model, double xi_lo,
                 double xi_hi, int points) {
    const SystemSpec sys = resolve_model(model);
    const std::vector<double> probe = log_grid(xi_lo, xi_hi, points);
    const EnvelopeReport env = spectral_envelope(sys, probe);
    const double r0 = dissipation_radius(sys, env.c_fit, probe);

    std::vector<std::vector<double>> rows;
    for (size_t i = 0; i < env.xi.size(); ++i)
        rows.push_back({env.xi[i], env.max_re[i],
                        -env.max_re[i] / eta1(env.xi[i])});
    write_csv_series(out_path(g, "spectrum_" + sys.name + ".csv"),
                     {"xi", "max_re_lambda", "c_ratio"}, rows);

    std::cout << "{\n  \"model\": \"" << sys.name << "\",\n  \"c_fit\": "
              << env.c_fit << ",\n  \"r0\": " << r0
              << ",\n  \"j0\": " << low_frequency_cutoff(r0)
              << ",\n  \"stable\": " << (env.pass ? "true" : "false")
              << "\n}\n";
    return env.pass ? 0 : 1;
}

int run_evolve(const GlobalOpts& g, const std::string& model, int n,
               double length, const DataOpts& data, std::vector<double> times,
               bool nonlinear, double dt, const std::string& save_final) {
    const SystemSpec sys = resolve_model(model);
    const Grid grid(n, length);
    const SpectralField z0 = synthesize_initial_data(grid, sys, data.to_spec());
    std::sort(times.begin(), times.end());
    if (times.empty() || times.front() < 0.0)
        throw std::runtime_error("evolve: need sample times >= 0");

    TimeSeries series;
    double max_asym = 0.0;
    bool blowup = false;
    if (nonlinear) {
        NonlinearOptions opt;
        opt.dt = dt;
        const NonlinearResult res = evolve_nonlinear(sys, z0, times, opt);
        series = res.series;
        max_asym = res.max_asymmetry;
        blowup = res.blowup || res.invalid_state;
    } else {
        series = evolve_linear(sys, z0, times);
    }

    BesovParams bhalf;
    bhalf.s = 0.5;
    bhalf.p = 2.0;
    bhalf.r = 1.0;
    bhalf.hom = Homogeneity::homogeneous;
    BesovParams b32 = bhalf;
    b32.s = 1.5;
    b32.hom = Homogeneity::inhomogeneous;

    std::vector<std::vector<double>> rows;
    for (size_t i = 0; i < series.times.size(); ++i) {
        const SpectralField& f = series.fields[i];
        rows.push_back({series.times[i], l2_norm(f),
                        besov_norm(f, bhalf).value, besov_norm(f, b32).value});
    }
    write_csv_series(out_path(g, "evolve_" + sys.name + ".csv"),
                     {"t", "l2", "besov_half", "besov_three_half"}, rows);
    if (!save_final.empty() && !series.fields.empty())
        write_snapshot(out_path(g, save_final), series.fields.back());

    std::cout << "{\n  \"model\": \"" << sys.name << "\",\n  \"samples\": "
              << series.times.size() << ",\n  \"max_asymmetry\": " << max_asym
              << ",\n  \"blowup\": " << (blowup ? "true" : "false") << "\n}\n";
    return blowup ? 1 : 0;
}

int run_decay(const GlobalOpts& g, const std::string& config_path,
              const std::string& model, int n, double length,
              const DataOpts& data, std::vector<double> times, double t0,
              double t1, int samples, double window_lo, double window_hi,
              const std::vector<double>& sobolev_ls,
              const std::vector<double>& besov_ls, bool nonlinear, double dt,
              double rate_tol) {
    SystemSpec sys;
    ExperimentConfig ec;
    if (!config_path.empty()) {
        // config file drives the experiment; the model flag only overrides
        const Config cfg = Config::load(config_path);
        sys = model.empty() ? system_from_config(cfg) : resolve_model(model);
        ec = experiment_from_config(cfg);
    } else {
        sys = resolve_model(model.empty() ? "damped-euler" : model);
        ec.grid = Grid(n, length);
        ec.data = data.to_spec();
        if (times.empty()) times = geometric_times(t0, t1, samples);
        std::sort(times.begin(), times.end());
        ec.sample_times = times;
        ec.window_lo = window_lo;
        ec.window_hi = window_hi;
        for (double l : sobolev_ls) ec.norms.push_back({"sobolev", l});
        for (double l : besov_ls) ec.norms.push_back({"besov", l});
        if (ec.norms.empty()) ec.norms = {{"sobolev", 0.0}, {"besov", 0.5}};
        ec.nonlinear = nonlinear;
        ec.nl.dt = dt;
        ec.rate_tol = rate_tol;
    }
    const DecayReport rep = run_experiment(sys, ec);

    const std::string doc = to_json(rep);
    write_text_file(out_path(g, "decay_" + sys.name + ".json"), doc);

    std::vector<std::string> cols = {"t"};
    for (const NormTrace& tr : rep.traces) {
        std::ostringstream name;
        name << tr.norm.kind << "_" << tr.norm.l;
        cols.push_back(name.str());
    }
    std::vector<std::vector<double>> rows;
    for (size_t i = 0; i < rep.times.size(); ++i) {
        std::vector<double> row = {rep.times[i]};
        for (const NormTrace& tr : rep.traces) row.push_back(tr.values[i]);
        rows.push_back(row);
    }
    write_csv_series(out_path(g, "decay_" + sys.name + ".csv"), cols, rows);

    std::cout << doc;
    return rep.pass ? 0 : 1;
}

int run_inequalities(const GlobalOpts& g, int n, double length, int trials,
                     std::uint64_t seed) {
    const Grid grid(n, length);
    std::vector<InequalityReport> reps;

    for (double alpha : {0.0, 0.5, 1.0})
        reps.push_back(verify_bernstein_shell(grid, alpha, trials, seed));
    reps.push_back(verify_bernstein_ball(grid, trials, seed));
    for (const char* kind :
         {"besov-regularity", "besov-summation", "l1-critical"})
        reps.push_back(verify_embedding(kind, grid, trials, seed));

    InterpolationCase ic;
    ic.which = "besov";
    reps.push_back(verify_interpolation(ic, grid, trials, seed));
    ic.which = "sobolev";
    reps.push_back(verify_interpolation(ic, grid, trials, seed));
    ic.which = "gns"; // Agmon: ||f||_inf <= C ||f||_2^{1/2} ||f_x||_2^{1/2}
    ic.k = 0.0;
    ic.q = inf;
    ic.r = 2.0;
    ic.m = 0.0;
    ic.rho = 1.0;
    ic.theta = 0.5;
    reps.push_back(verify_interpolation(ic, grid, trials, seed));

    reps.push_back(verify_product("algebra", grid, 0.5, 0.5, trials, seed));
    reps.push_back(verify_product("negative", grid, 0.25, 0.25, trials, seed));
    reps.push_back(verify_product("negative", grid, 0.5, 0.25, trials, seed));

    for (const char* f_name : {"square", "cubic", "sine"}) {
        CompositionReport comp =
            verify_composition(f_name, 0.5, grid, trials, seed);
        comp.base.params["amplitude_exponent"] = comp.amplitude_exponent;
        comp.base.pass =
            comp.base.pass && comp.amplitude_exponent >= 2.0 - 0.1;
        reps.push_back(comp.base);
    }

    reps.push_back(verify_critical_dilation(grid, 4));

    const std::string doc = to_json(reps);
    write_text_file(out_path(g, "inequalities.json"), doc);
    std::cout << doc;
    for (const auto& r : reps)
        if (!r.pass) return 1;
    return 0;
}

int run_lemma_bounds(const GlobalOpts& g, const std::string& model,
                     const std::string& bound, int n, double length,
                     const DataOpts& data, double s, double sigma, double l,
                     double r, std::vector<double> times, double ceiling,
                     bool compare) {
    const SystemSpec sys = resolve_model(model);
    const Grid grid(n, length);
    SpectralField datum = synthesize_initial_data(grid, sys, data.to_spec());
    std::sort(times.begin(), times.end());

    if (compare) {
        datum = project_equilibrium_complement(sys, datum);
        const EnvelopeComparison cmp = compare_source_vs_flux_envelopes(
            sys, datum, s, sigma, l, r, times, ceiling);
        const std::string doc = to_json(cmp);
        write_text_file(out_path(g, "envelope_comparison_" + sys.name + ".json"),
                        doc);
        std::cout << doc;
        return cmp.pass ? 0 : 1;
    }

    LemmaProbe probe;
    if (bound == "low-block-flux")
        probe.id = LemmaId::low_block_flux;
    else if (bound == "low-shells-flux")
        probe.id = LemmaId::low_shells_flux;
    else if (bound == "low-shells-source")
        probe.id = LemmaId::low_shells_source;
    else
        throw std::runtime_error("unknown bound: " + bound);
    probe.s = s;
    probe.sigma = sigma;
    probe.l = l;
    probe.r = r;
    probe.times = times;

    if (probe.id == LemmaId::low_shells_source)
        datum = project_equilibrium_complement(sys, datum);

    const LemmaReport rep = verify_lemma_bound(sys, probe, datum);
    const std::string doc = to_json(rep);
    write_text_file(out_path(g, "lemma_" + bound + "_" + sys.name + ".json"),
                    doc);
    std::cout << doc;
    const bool ok = rep.admissible && rep.finite && rep.sup_ratio <= ceiling;
    return ok ? 0 : 1;
}

int run_audit(const GlobalOpts& g, const std::string& model,
              const std::string& kind, int n, double length,
              const DataOpts& data, std::vector<double> amplitudes,
              std::vector<double> seeds, double t_end, double dt) {
    const SystemSpec sys = resolve_model(model);
    const Grid grid(n, length);
    NonlinearOptions opt;
    opt.dt = dt;
    if (amplitudes.empty()) amplitudes = {0.05, 0.1, 0.2};

    if (kind == "closure") {
        const std::vector<double> samples = geometric_times(1.0, t_end, 16);
        const ClosureAuditReport rep = closure_audit(
            sys, grid, data.to_spec(), amplitudes, samples, opt);
        const std::string doc = to_json(rep);
        write_text_file(out_path(g, "audit_closure_" + sys.name + ".json"), doc);
        std::cout << doc;
        return rep.pass ? 0 : 1;
    }
    if (kind == "energy") {
        if (sys.dim() < 4)
            throw std::runtime_error(
                "energy audit expects a model with a heat-flux component "
                "(dim >= 4)");
        std::vector<std::uint64_t> s64;
        for (double s : seeds) s64.push_back(static_cast<std::uint64_t>(s));
        if (s64.empty()) s64 = {1, 2, 3};
        const EnergyAuditReport rep = energy_inequality_audit(
            sys, grid, data.to_spec(), s64, amplitudes, t_end, opt);
        const std::string doc = to_json(rep);
        write_text_file(out_path(g, "audit_energy_" + sys.name + ".json"), doc);
        std::cout << doc;
        return rep.pass ? 0 : 1;
    }
    throw std::runtime_error("unknown audit kind: " + kind);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"declab: a numerical laboratory for dissipative hyperbolic "
                 "systems and Littlewood-Paley analysis"};
    app.require_subcommand(1);

    GlobalOpts g;
    if (const char* dir = std::getenv("DECLAB_OUTPUT_DIR")) g.output_dir = dir;
    app.add_option("--output-dir", g.output_dir,
                   "directory for reports (env: DECLAB_OUTPUT_DIR)");
    if (const char* threads = std::getenv("DECLAB_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(threads, &end, 10);
        if (end == threads || *end != '\0' || v < 1) {
            std::cerr << "error: DECLAB_THREADS must be a positive integer\n";
            return 2;
        }
        // computations are deterministic and serial; accepted for forward
        // compatibility
    }

    std::string model = "damped-euler";
    DataOpts data;
    int n = 1024;
    double length = 200.0 * pi;

    // every model-taking subcommand accepts the model either as the first
    // positional argument or via --model
    auto add_model = [&model](CLI::App* cmd) {
        cmd->add_option("model,--model", model,
                        "builtin name or descriptor file");
    };

    auto* check = app.add_subcommand("check", "structural condition report");
    add_model(check);

    auto* spectrum = app.add_subcommand("spectrum", "symbol spectrum scan");
    add_model(spectrum);
    double xi_lo = 1e-3, xi_hi = 1e3;
    int points = 400;
    spectrum->add_option("--xi-min", xi_lo);
    spectrum->add_option("--xi-max", xi_hi);
    spectrum->add_option("--points", points);

    auto* evolve = app.add_subcommand("evolve", "sampled trajectory");
    add_model(evolve);
    evolve->add_option("--n", n, "grid points (power of two)");
    evolve->add_option("--length", length, "box length");
    std::vector<double> times = {0.0, 1.0, 2.0, 5.0, 10.0};
    evolve->add_option("--times", times)->delimiter(',');
    bool nonlinear = false;
    evolve->add_flag("--nonlinear", nonlinear);
    double dt = 0.1;
    evolve->add_option("--dt", dt);
    std::string save_final;
    evolve->add_option("--save-final", save_final, "snapshot file name");
    add_data_options(evolve, data);

    auto* decay = app.add_subcommand("decay", "decay-rate experiment");
    std::string config_path;
    decay->add_option("--config", config_path, "experiment config file");
    std::string decay_model;
    decay->add_option("model,--model", decay_model,
                      "builtin name or descriptor file (overrides the config)");
    decay->add_option("--n", n, "grid points (flag-driven runs)");
    decay->add_option("--length", length, "box length (flag-driven runs)");
    std::vector<double> decay_times;
    decay->add_option("--times", decay_times, "explicit sample times")
        ->delimiter(',');
    double decay_t0 = 1.0, decay_t1 = 100.0;
    int decay_samples = 24;
    decay->add_option("--t0", decay_t0, "geometric ladder start");
    decay->add_option("--t1", decay_t1, "geometric ladder end");
    decay->add_option("--samples", decay_samples, "geometric ladder size");
    double window_lo = 0.0, window_hi = 0.0;
    decay->add_option("--window-lo", window_lo, "fit window start (0 = auto)");
    decay->add_option("--window-hi", window_hi, "fit window end (0 = auto)");
    std::vector<double> sobolev_ls, besov_ls;
    decay->add_option("--sobolev", sobolev_ls, "tracked Sobolev orders")
        ->delimiter(',');
    decay->add_option("--besov", besov_ls, "tracked Besov orders")
        ->delimiter(',');
    bool decay_nonlinear = false;
    decay->add_flag("--nonlinear", decay_nonlinear);
    double decay_dt = 0.1;
    decay->add_option("--dt", decay_dt);
    double rate_tol = 0.05;
    decay->add_option("--rate-tol", rate_tol, "|fitted - expected| ceiling");
    add_data_options(decay, data);

    auto* ineq = app.add_subcommand("inequalities", "verifier battery");
    int trials = 40;
    std::uint64_t seed = 1234;
    ineq->add_option("--n", n);
    ineq->add_option("--length", length);
    ineq->add_option("--trials", trials);
    ineq->add_option("--seed", seed);

    auto* lemma = app.add_subcommand("lemma-bounds", "localised decay bounds");
    add_model(lemma);
    std::string bound = "low-shells-flux";
    lemma->add_option("--bound", bound,
                      "low-block-flux | low-shells-flux | low-shells-source");
    lemma->add_option("--n", n);
    lemma->add_option("--length", length);
    double ls = 0.5, lsigma = 0.0, ll = 0.0, lr = 1.0;
    lemma->add_option("--s", ls);
    lemma->add_option("--sigma", lsigma);
    lemma->add_option("--l", ll);
    lemma->add_option("--r", lr);
    std::vector<double> probe_times = {1.0, 2.0, 5.0, 10.0, 20.0, 50.0};
    lemma->add_option("--times", probe_times)->delimiter(',');
    double ceiling = inf;
    lemma->add_option("--ceiling", ceiling, "sup-ratio ceiling");
    bool compare = false;
    lemma->add_flag("--compare-source-flux", compare,
                    "envelope comparison instead of a single bound");
    add_data_options(lemma, data);

    auto* audit = app.add_subcommand("audit", "closure / energy audits");
    add_model(audit);
    std::string audit_kind = "closure";
    audit->add_option("--kind", audit_kind, "closure | energy");
    audit->add_option("--n", n);
    audit->add_option("--length", length);
    std::vector<double> amplitudes;
    audit->add_option("--amplitudes", amplitudes)->delimiter(',');
    std::vector<double> audit_seeds;
    audit->add_option("--seeds", audit_seeds)->delimiter(',');
    double t_end = 20.0;
    audit->add_option("--t-end", t_end);
    audit->add_option("--dt", dt);
    add_data_options(audit, data);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // --help and friends exit 0; anything else is a configuration error
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (check->parsed()) return run_check(g, model);
        if (spectrum->parsed())
            return run_spectrum(g, model, xi_lo, xi_hi, points);
        if (evolve->parsed())
            return run_evolve(g, model, n, length, data, times, nonlinear, dt,
                              save_final);
        if (decay->parsed())
            return run_decay(g, config_path, decay_model, n, length, data,
                             decay_times, decay_t0, decay_t1, decay_samples,
                             window_lo, window_hi, sobolev_ls, besov_ls,
                             decay_nonlinear, decay_dt, rate_tol);
        if (ineq->parsed())
            return run_inequalities(g, n, length, trials, seed);
        if (lemma->parsed())
            return run_lemma_bounds(g, model, bound, n, length, data, ls,
                                    lsigma, ll, lr, probe_times, ceiling,
                                    compare);
        if (audit->parsed())
            return run_audit(g, model, audit_kind, n, length, data, amplitudes,
                             audit_seeds, t_end, dt);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
