#include "declab/besov.hpp"

#include <cmath>

namespace declab {

namespace {

void validate(const BesovParams& par) {
    if (!(par.p == 1.0 || par.p == 2.0 || std::isinf(par.p)))
        throw std::invalid_argument("besov_norm: p must be 1, 2 or inf");
    if (!(par.r >= 1.0))
        throw std::invalid_argument("besov_norm: r must be in [1, inf]");
}

double block_lp(const SpectralField& f, int j, bool homogeneous, double p,
                const CutoffProfile& c) {
    if (p == 2.0)
        return homogeneous ? homogeneous_block_l2(f, j, c)
                           : inhomogeneous_block_l2(f, j, c);
    const SpectralField blk = homogeneous ? homogeneous_block(f, j, c)
                                          : inhomogeneous_block(f, j, c);
    return lp_norm(inverse(blk), p);
}

/// l^r aggregation of the weighted block norms b_j, fixed ascending-j order.
double aggregate(const std::vector<double>& terms, double r) {
    if (std::isinf(r)) {
        double m = 0.0;
        for (double t : terms) m = std::max(m, t);
        return m;
    }
    if (r == 1.0) {
        double s = 0.0;
        for (double t : terms) s += t;
        return s;
    }
    double s = 0.0;
    for (double t : terms) s += std::pow(t, r);
    return std::pow(s, 1.0 / r);
}

NormResult norm_over_range(const SpectralField& f, const BesovParams& par,
                           int j_lo, int j_hi, const CutoffProfile& c) {
    validate(par);
    const bool hom = par.hom == Homogeneity::homogeneous;
    NormResult res;
    res.j_lo = j_lo;
    res.j_hi = j_hi;
    res.mode_zero_mass = f.grid.l2_scale() * f.coeff.col(0).norm();
    std::vector<double> terms;
    terms.reserve(j_hi - j_lo + 1);
    for (int j = j_lo; j <= j_hi; ++j)
        terms.push_back(std::pow(2.0, j * par.s) * block_lp(f, j, hom, par.p, c));
    res.value = aggregate(terms, par.r);
    return res;
}

} // namespace

NormResult besov_norm(const SpectralField& f, const BesovParams& par,
                      const CutoffProfile& c) {
    const BlockRange br = block_range(f.grid);
    const int j_lo = par.hom == Homogeneity::homogeneous ? br.j_min : -1;
    return norm_over_range(f, par, j_lo, br.j_max, c);
}

NormResult besov_norm_low(const SpectralField& f, const BesovParams& par,
                          int j_cap, const CutoffProfile& c) {
    const BlockRange br = block_range(f.grid);
    const int j_lo = par.hom == Homogeneity::homogeneous ? br.j_min : -1;
    if (j_cap < j_lo)
        throw std::invalid_argument("besov_norm_low: j_cap below resolvable range");
    return norm_over_range(f, par, j_lo, std::min(j_cap, br.j_max), c);
}

NormResult chemin_lerner_norm(const TimeSeries& ts, const BesovParams& par,
                              double theta, const CutoffProfile& c) {
    validate(par);
    if (!(theta == 2.0 || std::isinf(theta)))
        throw std::invalid_argument("chemin_lerner_norm: theta must be 2 or inf");
    if (ts.times.size() != ts.fields.size() || ts.times.empty())
        throw std::invalid_argument("chemin_lerner_norm: empty or ragged series");
    for (size_t i = 1; i < ts.times.size(); ++i)
        if (!(ts.times[i] > ts.times[i - 1]))
            throw std::invalid_argument("chemin_lerner_norm: times must increase");

    const Grid& g = ts.fields.front().grid;
    const BlockRange br = block_range(g);
    const bool hom = par.hom == Homogeneity::homogeneous;
    const int j_lo = hom ? br.j_min : -1;

    NormResult res;
    res.j_lo = j_lo;
    res.j_hi = br.j_max;
    for (const SpectralField& f : ts.fields)
        res.mode_zero_mass =
            std::max(res.mode_zero_mass, g.l2_scale() * f.coeff.col(0).norm());

    const size_t nt = ts.times.size();
    std::vector<double> terms;
    for (int j = j_lo; j <= br.j_max; ++j) {
        std::vector<double> bn(nt);
        for (size_t i = 0; i < nt; ++i)
            bn[i] = block_lp(ts.fields[i], j, hom, par.p, c);
        double time_norm;
        if (std::isinf(theta)) {
            time_norm = 0.0;
            for (double v : bn) time_norm = std::max(time_norm, v);
        } else { // theta == 2: trapezoid on the squared block norms
            double acc = 0.0;
            for (size_t i = 0; i + 1 < nt; ++i)
                acc += 0.5 * (ts.times[i + 1] - ts.times[i]) *
                       (bn[i] * bn[i] + bn[i + 1] * bn[i + 1]);
            time_norm = std::sqrt(acc);
        }
        terms.push_back(std::pow(2.0, j * par.s) * time_norm);
    }
    res.value = aggregate(terms, par.r);
    return res;
}

} // namespace declab
