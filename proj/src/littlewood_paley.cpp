#include "declab/littlewood_paley.hpp"

#include <cmath>

namespace declab {

namespace {

/// exp(-k/x) for x > 0, else 0: the C^inf one-sided bump.
double side(double x, double k) { return x > 0.0 ? std::exp(-k / x) : 0.0; }

/// Smooth transition: 0 for x <= 0, 1 for x >= 1.
double transition(double x, double k) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double a = side(x, k);
    const double b = side(1.0 - x, k);
    return a / (a + b);
}

} // namespace

double CutoffProfile::chi(double xi) const {
    const double r = std::abs(xi);
    if (r <= chi_inner) return 1.0;
    if (r >= chi_outer) return 0.0;
    return 1.0 - transition((r - chi_inner) / (chi_outer - chi_inner), steepness);
}

double CutoffProfile::phi(double xi) const {
    // chi(xi/2) - chi(xi); halving is exact, so dyadic sums telescope exactly.
    return chi(0.5 * xi) - chi(xi);
}

BlockRange block_range(const Grid& g) {
    BlockRange r;
    r.j_min = static_cast<int>(std::floor(std::log2(g.xi_min()))) - 1;
    r.j_max = static_cast<int>(std::ceil(std::log2(g.xi_max()))) + 1;
    return r;
}

double homogeneous_weight(const CutoffProfile& c, int j, double xi) {
    return c.phi(std::ldexp(std::abs(xi), -j)); // 2^{-j} xi, exact scaling
}

double inhomogeneous_weight(const CutoffProfile& c, int j, double xi) {
    if (j <= -2) return 0.0;
    if (j == -1) return c.chi(xi);
    return homogeneous_weight(c, j, xi);
}

namespace {

SpectralField weighted_copy(const SpectralField& f, const CutoffProfile& c,
                            int j, bool homogeneous) {
    SpectralField out = f;
    const int n = f.grid.num_points;
    for (int k = 0; k < n; ++k) {
        const double xi = f.grid.frequency(k);
        const double w = homogeneous ? homogeneous_weight(c, j, xi)
                                     : inhomogeneous_weight(c, j, xi);
        if (w == 0.0)
            out.coeff.col(k).setZero();
        else
            out.coeff.col(k) *= w;
    }
    return out;
}

double weighted_l2(const SpectralField& f, const CutoffProfile& c, int j,
                   bool homogeneous) {
    const int n = f.grid.num_points;
    double acc = 0.0;
    for (int k = 0; k < n; ++k) {
        const double xi = f.grid.frequency(k);
        const double w = homogeneous ? homogeneous_weight(c, j, xi)
                                     : inhomogeneous_weight(c, j, xi);
        if (w != 0.0) acc += w * w * f.coeff.col(k).squaredNorm();
    }
    return f.grid.l2_scale() * std::sqrt(acc);
}

} // namespace

SpectralField homogeneous_block(const SpectralField& f, int j,
                                const CutoffProfile& c) {
    return weighted_copy(f, c, j, true);
}

SpectralField inhomogeneous_block(const SpectralField& f, int j,
                                  const CutoffProfile& c) {
    return weighted_copy(f, c, j, false);
}

double homogeneous_block_l2(const SpectralField& f, int j,
                            const CutoffProfile& c) {
    return weighted_l2(f, c, j, true);
}

double inhomogeneous_block_l2(const SpectralField& f, int j,
                              const CutoffProfile& c) {
    return weighted_l2(f, c, j, false);
}

double partition_sum_inhomogeneous(const CutoffProfile& c, double xi, int j_max) {
    double acc = c.chi(xi);
    for (int j = 0; j <= j_max; ++j) acc += homogeneous_weight(c, j, xi);
    return acc;
}

double partition_sum_homogeneous(const CutoffProfile& c, double xi, int j_min,
                                 int j_max) {
    double acc = 0.0;
    for (int j = j_min; j <= j_max; ++j) acc += homogeneous_weight(c, j, xi);
    return acc;
}

} // namespace declab
