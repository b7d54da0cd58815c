#include "declab/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace declab {

namespace {

void tally(InequalityReport& rep, double ratio) {
    if (rep.samples == 0) {
        rep.ratio_min = rep.ratio_max = ratio;
        rep.ratio_mean = 0.0;
    }
    rep.ratio_min = std::min(rep.ratio_min, ratio);
    rep.ratio_max = std::max(rep.ratio_max, ratio);
    rep.ratio_mean += ratio;
    ++rep.samples;
}

void finish(InequalityReport& rep, double ceiling, double floor = 0.0) {
    if (rep.samples > 0) rep.ratio_mean /= rep.samples;
    rep.pass = rep.samples > 0 && std::isfinite(rep.ratio_max) &&
               rep.ratio_max <= ceiling && rep.ratio_min >= floor;
    if (!rep.pass && rep.detail.empty())
        rep.detail = "observed ratios outside [floor, ceiling]";
    rep.params["ceiling"] = ceiling;
    if (floor > 0.0) rep.params["floor"] = floor;
}

BesovParams hom(double s, double p = 2.0, double r = 1.0) {
    BesovParams par;
    par.s = s;
    par.p = p;
    par.r = r;
    par.hom = Homogeneity::homogeneous;
    return par;
}

BesovParams inhom(double s, double p = 2.0, double r = 1.0) {
    BesovParams par = hom(s, p, r);
    par.hom = Homogeneity::inhomogeneous;
    return par;
}

/// Scalar physical field from a spectral one (single component).
RealField physical(const SpectralField& f) { return inverse(f); }

} // namespace

SpectralField random_band_field(const Grid& g, double xi_lo, double xi_hi,
                                std::uint64_t seed) {
    if (!(xi_lo >= 0.0) || !(xi_hi > xi_lo))
        throw std::invalid_argument("random_band_field: bad band");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    SpectralField f(g, 1);
    const int n = g.num_points;
    for (int k = 1; k < n / 2; ++k) {
        const double xi = g.frequency(k);
        if (xi < xi_lo || xi > xi_hi) continue;
        f.coeff(0, k) = std::complex<double>(gauss(rng), gauss(rng));
        f.coeff(0, n - k) = std::conj(f.coeff(0, k));
    }
    const double norm = l2_norm(f);
    if (norm > 0.0) f.coeff /= norm;
    return f;
}

SpectralField random_block_field(const Grid& g, int j, std::uint64_t seed,
                                 const CutoffProfile& c) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    SpectralField f(g, 1);
    const int n = g.num_points;
    for (int k = 1; k < n / 2; ++k) {
        const double w = homogeneous_weight(c, j, g.frequency(k));
        if (w == 0.0) continue;
        f.coeff(0, k) = w * std::complex<double>(gauss(rng), gauss(rng));
        f.coeff(0, n - k) = std::conj(f.coeff(0, k));
    }
    const double norm = l2_norm(f);
    if (norm > 0.0) f.coeff /= norm;
    return f;
}

InequalityReport verify_bernstein_shell(const Grid& g, double alpha, int trials,
                                        std::uint64_t seed) {
    if (alpha < 0.0)
        throw std::invalid_argument("verify_bernstein_shell: alpha must be >= 0");
    InequalityReport rep;
    rep.name = "bernstein-shell";
    rep.params["alpha"] = alpha;

    // shells that actually contain grid modes, kept clear of the Nyquist edge
    const CutoffProfile prof;
    std::vector<int> usable;
    const BlockRange br = block_range(g);
    for (int j = br.j_min; j <= br.j_max; ++j) {
        if (CutoffProfile::shell_outer * std::pow(2.0, j) > 0.9 * g.xi_max())
            continue;
        bool any = false;
        for (int k = 1; k < g.num_points / 2 && !any; ++k)
            any = homogeneous_weight(prof, j, g.frequency(k)) > 0.0;
        if (any) usable.push_back(j);
    }
    if (usable.empty()) {
        rep.detail = "grid resolves no complete shell";
        return rep;
    }

    const double lo = std::pow(0.75, alpha);
    const double hi = std::pow(8.0 / 3.0, alpha);
    for (int t = 0; t < trials; ++t) {
        const int j = usable[t % usable.size()];
        const SpectralField f = random_block_field(g, j, seed + t, prof);
        const double base = l2_norm(f);
        if (base == 0.0) continue;
        const double ratio = l2_norm(fractional_derivative(f, alpha)) /
                             (std::pow(2.0, j * alpha) * base);
        tally(rep, ratio);
    }
    finish(rep, hi * (1.0 + 1e-12), lo * (1.0 - 1e-12));
    return rep;
}

InequalityReport verify_bernstein_ball(const Grid& g, int trials,
                                       std::uint64_t seed,
                                       double spread_ceiling) {
    InequalityReport rep;
    rep.name = "bernstein-ball";
    const double lambda = std::min(16.0, g.xi_max() / 4.0);
    rep.params["lambda"] = lambda;
    for (int t = 0; t < trials; ++t) {
        const SpectralField f = random_band_field(g, 0.0, lambda, seed + t);
        const double l2 = l2_norm(f);
        if (l2 == 0.0) continue;
        const double linf = lp_norm(physical(f), inf);
        tally(rep, linf / (std::sqrt(lambda) * l2));
    }
    if (rep.samples > 0) rep.ratio_mean /= rep.samples;
    rep.pass = rep.samples > 0 && rep.ratio_min > 0.0 &&
               rep.ratio_max / rep.ratio_min <= spread_ceiling;
    rep.params["spread"] = rep.samples > 0 ? rep.ratio_max / rep.ratio_min : inf;
    rep.params["spread_ceiling"] = spread_ceiling;
    if (!rep.pass) rep.detail = "fitted constant not stable across samples";
    return rep;
}

InequalityReport verify_embedding(const std::string& kind, const Grid& g,
                                  int trials, std::uint64_t seed) {
    InequalityReport rep;
    rep.name = "embedding-" + kind;
    const double band_hi = 0.5 * g.xi_max();

    if (kind == "besov-regularity") {
        const double s_hi = 1.0, s_lo = 0.5;
        rep.params["s_hi"] = s_hi;
        rep.params["s_lo"] = s_lo;
        for (int t = 0; t < trials; ++t) {
            const SpectralField f =
                random_band_field(g, 0.0, band_hi, seed + t);
            const double denom = besov_norm(f, inhom(s_hi)).value;
            if (denom == 0.0) continue;
            tally(rep, besov_norm(f, inhom(s_lo)).value / denom);
        }
        finish(rep, std::pow(2.0, s_hi - s_lo) * (1.0 + 1e-9));
    } else if (kind == "besov-summation") {
        rep.params["r_from"] = 1.0;
        rep.params["r_to"] = 2.0;
        for (int t = 0; t < trials; ++t) {
            const SpectralField f =
                random_band_field(g, 0.0, band_hi, seed + t);
            const double denom = besov_norm(f, hom(0.5, 2.0, 1.0)).value;
            if (denom == 0.0) continue;
            tally(rep, besov_norm(f, hom(0.5, 2.0, 2.0)).value / denom);
        }
        finish(rep, 1.0 + 1e-12);
    } else if (kind == "l1-critical") {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> width(0.5, 4.0);
        std::uniform_real_distribution<double> centre(0.25, 0.75);
        for (int t = 0; t < trials; ++t) {
            // positive bumps of varying width: the classic extremisers
            RealField bump(g, 1);
            const double w = width(rng);
            const double x0 = centre(rng) * g.box_length;
            for (int j = 0; j < g.num_points; ++j) {
                const double dx = g.x(j) - x0;
                bump.values(0, j) = std::exp(-dx * dx / (2.0 * w * w));
            }
            const SpectralField f = forward(bump);
            const double l1 = lp_norm(bump, 1.0);
            if (l1 == 0.0) continue;
            tally(rep, besov_norm(f, hom(-0.5, 2.0, inf)).value / l1);
        }
        finish(rep, 1.0);
    } else {
        throw std::invalid_argument("verify_embedding: unknown kind " + kind);
    }
    return rep;
}

double gns_balance_residual(double k, double q, double r, double m, double rho,
                            double theta) {
    const double inv_q = std::isinf(q) ? 0.0 : 1.0 / q;
    const double inv_r = std::isinf(r) ? 0.0 : 1.0 / r;
    return k + (inv_r - inv_q) - m * (1.0 - theta) - rho * theta;
}

InequalityReport verify_interpolation(const InterpolationCase& ic, const Grid& g,
                                      int trials, std::uint64_t seed) {
    InequalityReport rep;
    rep.name = "interpolation-" + ic.which;
    rep.params["k"] = ic.k;
    rep.params["m"] = ic.m;
    rep.params["rho"] = ic.rho;
    const double band_hi = 0.45 * g.xi_max();

    if (ic.which == "besov" || ic.which == "sobolev") {
        if (!(ic.m > 0.0) || !(ic.rho + ic.k > 0.0))
            throw std::invalid_argument("interpolation: need m > 0, rho + k > 0");
        const double theta =
            ic.theta > 0.0 ? ic.theta : (ic.rho + ic.k) / (ic.rho + ic.k + ic.m);
        rep.params["theta"] = theta;
        for (int t = 0; t < trials; ++t) {
            const SpectralField f =
                random_band_field(g, 0.0, band_hi, seed + t);
            const double high = besov_norm(f, hom(ic.k + ic.m, 2.0, inf)).value;
            const double low = besov_norm(f, hom(-ic.rho, 2.0, inf)).value;
            double lhs;
            if (ic.which == "besov")
                lhs = besov_norm(f, hom(ic.k, 2.0, 1.0)).value;
            else
                lhs = l2_norm(fractional_derivative(f, ic.k));
            const double rhs = std::pow(high, theta) * std::pow(low, 1.0 - theta);
            if (rhs == 0.0) continue;
            tally(rep, lhs / rhs);
        }
        finish(rep, 8.0);
    } else if (ic.which == "besov-lp") {
        if (ic.rho == ic.m)
            throw std::invalid_argument("besov-lp interpolation: need rho != m");
        const double theta =
            (ic.k + (std::isinf(ic.r) ? 0.0 : 1.0 / ic.r) -
             (std::isinf(ic.q) ? 0.0 : 1.0 / ic.q) - ic.m) /
            (ic.rho - ic.m);
        if (!(theta > 0.0) || !(theta < 1.0))
            throw std::invalid_argument("besov-lp interpolation: theta outside (0,1)");
        rep.params["theta"] = theta;
        rep.params["q"] = ic.q;
        rep.params["r"] = ic.r;
        for (int t = 0; t < trials; ++t) {
            const SpectralField f =
                random_band_field(g, 0.0, band_hi, seed + t);
            const double lhs = besov_norm(f, hom(ic.k, ic.q, 1.0)).value;
            const double rhs =
                std::pow(besov_norm(f, hom(ic.m, ic.r, inf)).value, 1.0 - theta) *
                std::pow(besov_norm(f, hom(ic.rho, ic.r, inf)).value, theta);
            if (rhs == 0.0) continue;
            tally(rep, lhs / rhs);
        }
        finish(rep, 8.0);
    } else if (ic.which == "gns") {
        const double residual =
            gns_balance_residual(ic.k, ic.q, ic.r, ic.m, ic.rho, ic.theta);
        if (std::abs(residual) > 1e-9)
            throw std::invalid_argument(
                "gns interpolation: balance residual " + std::to_string(residual));
        if (!(ic.theta >= 0.0) || !(ic.theta <= 1.0))
            throw std::invalid_argument("gns interpolation: theta outside [0,1]");
        rep.params["theta"] = ic.theta;
        rep.params["q"] = ic.q;
        rep.params["r"] = ic.r;
        for (int t = 0; t < trials; ++t) {
            const SpectralField f =
                random_band_field(g, 0.0, band_hi, seed + t);
            const double lhs =
                lp_norm(physical(fractional_derivative(f, ic.k)), ic.q);
            const double rhs =
                std::pow(lp_norm(physical(fractional_derivative(f, ic.m)), ic.r),
                         1.0 - ic.theta) *
                std::pow(lp_norm(physical(fractional_derivative(f, ic.rho)), ic.r),
                         ic.theta);
            if (rhs == 0.0) continue;
            tally(rep, lhs / rhs);
        }
        finish(rep, 4.0);
    } else {
        throw std::invalid_argument("verify_interpolation: unknown which " +
                                    ic.which);
    }
    return rep;
}

InequalityReport verify_product(const std::string& kind, const Grid& g,
                                double s1, double s2, int trials,
                                std::uint64_t seed) {
    InequalityReport rep;
    rep.name = "product-" + kind;
    rep.params["s1"] = s1;
    rep.params["s2"] = s2;
    // cap the factor bands so the product stays alias-free on the grid
    const double band_hi = 0.24 * g.xi_max();

    for (int t = 0; t < trials; ++t) {
        const SpectralField fa = random_band_field(g, 0.0, band_hi, seed + 2 * t);
        const SpectralField fb =
            random_band_field(g, 0.0, band_hi, seed + 2 * t + 1);
        const RealField pa = physical(fa);
        const RealField pb = physical(fb);
        RealField prod(g, 1);
        prod.values = pa.values.cwiseProduct(pb.values);
        const SpectralField fp = forward(prod);

        double lhs, rhs;
        if (kind == "algebra") {
            if (s1 != s2)
                throw std::invalid_argument("product algebra: needs s1 == s2");
            lhs = besov_norm(fp, hom(s1)).value;
            rhs = lp_norm(pa, inf) * besov_norm(fb, hom(s1)).value +
                  lp_norm(pb, inf) * besov_norm(fa, hom(s1)).value;
        } else if (kind == "negative") {
            if (!(s1 <= 0.5) || !(s2 <= 0.5) || !(s1 + s2 > 0.0))
                throw std::invalid_argument(
                    "product negative: needs s1, s2 <= 1/2 and s1 + s2 > 0");
            lhs = besov_norm(fp, hom(s1 + s2 - 0.5)).value;
            rhs = besov_norm(fa, hom(s1)).value * besov_norm(fb, hom(s2)).value;
        } else {
            throw std::invalid_argument("verify_product: unknown kind " + kind);
        }
        if (rhs == 0.0) continue;
        tally(rep, lhs / rhs);
    }
    finish(rep, 8.0);
    return rep;
}

CompositionReport verify_composition(const std::string& f_name, double s,
                                     const Grid& g, int trials,
                                     std::uint64_t seed) {
    const auto
        apply = [&f_name](double v) -> double {
            if (f_name == "square") return v * v;
            if (f_name == "cubic") return v * v * v / 3.0;
            if (f_name == "sine") return std::sin(v);
            throw std::invalid_argument("verify_composition: unknown F " + f_name);
        };
    const double fprime0 = f_name == "sine" ? 1.0 : 0.0;

    CompositionReport out;
    out.base.name = "composition-" + f_name;
    out.base.params["s"] = s;
    const double band_hi = 0.2 * g.xi_max();

    // base estimate ||F(f)||_{B^s} <= C(||f||_inf) ||f||_{B^s}: record the
    // fitted C at a fixed moderate amplitude
    for (int t = 0; t < trials; ++t) {
        const SpectralField f = random_band_field(g, 0.0, band_hi, seed + t);
        RealField pf = physical(f);
        pf.values *= 0.5 / std::max(1e-30, lp_norm(pf, inf)); // ||f||_inf = 1/2
        RealField comp(g, 1);
        for (int j = 0; j < g.num_points; ++j)
            comp.values(0, j) = apply(pf.values(0, j));
        const double denom = besov_norm(forward(pf), inhom(s)).value;
        if (denom == 0.0) continue;
        tally(out.base, besov_norm(forward(comp), inhom(s)).value / denom);
    }
    finish(out.base, 4.0);

    // quadratic-remainder amplitude scaling on one representative field
    const SpectralField f = random_band_field(g, 0.0, band_hi, seed);
    RealField pf = physical(f);
    pf.values /= std::max(1e-30, lp_norm(pf, inf));
    std::vector<double> amps, lhss;
    for (double a : {1.0, 0.5, 0.25, 0.125}) {
        RealField rem(g, 1);
        for (int j = 0; j < g.num_points; ++j) {
            const double v = a * pf.values(0, j);
            rem.values(0, j) = apply(v) - fprime0 * v;
        }
        const double lhs = besov_norm(forward(rem), inhom(s)).value;
        if (lhs > 0.0) {
            amps.push_back(std::log(a));
            lhss.push_back(std::log(lhs));
        }
    }
    if (amps.size() >= 3) {
        double mx = 0.0, my = 0.0;
        for (size_t i = 0; i < amps.size(); ++i) {
            mx += amps[i];
            my += lhss[i];
        }
        mx /= amps.size();
        my /= amps.size();
        double sxx = 0.0, sxy = 0.0;
        for (size_t i = 0; i < amps.size(); ++i) {
            sxx += (amps[i] - mx) * (amps[i] - mx);
            sxy += (amps[i] - mx) * (lhss[i] - my);
        }
        out.amplitude_exponent = sxy / sxx;
    }
    return out;
}

InequalityReport verify_critical_dilation(const Grid& g, int levels,
                                          double rel_tol) {
    if (levels < 2)
        throw std::invalid_argument("verify_critical_dilation: levels >= 2");
    InequalityReport rep;
    rep.name = "critical-dilation";
    rep.params["levels"] = levels;

    const double w = 32.0 / g.xi_max(); // base spectral width well inside the grid
    for (int lev = 0; lev < levels; ++lev) {
        const double lambda = std::pow(2.0, lev);
        // f_lambda = lambda f(lambda x) for a Gaussian f: coefficients keep the
        // same shape with the spectral envelope dilated by lambda
        SpectralField f(g, 1);
        for (int k = 0; k < g.num_points; ++k) {
            const double xi = g.frequency(k);
            const double u = w * xi / lambda;
            f.coeff(0, k) = std::exp(-0.5 * u * u);
        }
        const RealField phys = inverse(f);
        const double l1 = lp_norm(phys, 1.0);
        if (l1 == 0.0) continue;
        tally(rep, besov_norm(f, hom(-0.5, 2.0, inf)).value / l1);
    }
    if (rep.samples > 0) rep.ratio_mean /= rep.samples;
    const double spread =
        rep.ratio_min > 0.0 ? rep.ratio_max / rep.ratio_min : inf;
    rep.params["spread"] = spread;
    rep.pass = rep.samples == levels && spread <= 1.0 + rel_tol;
    if (!rep.pass) rep.detail = "dilation spread above tolerance";
    return rep;
}

} // namespace declab
