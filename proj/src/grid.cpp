#include "declab/grid.hpp"

#include <cmath>

namespace declab {

namespace {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

} // namespace

Grid::Grid(int n, double length) : num_points(n), box_length(length) {
    if (!is_power_of_two(n) || n < 16)
        throw std::invalid_argument("Grid: num_points must be a power of two >= 16");
    if (!(length > 0.0) || !std::isfinite(length))
        throw std::invalid_argument("Grid: box_length must be positive and finite");
}

double l2_norm(const RealField& f) {
    return f.grid.l2_scale() * f.values.norm();
}

double l2_norm(const SpectralField& f) {
    return f.grid.l2_scale() * f.coeff.norm();
}

double lp_norm(const RealField& f, double p) {
    if (!(p >= 1.0))
        throw std::invalid_argument("lp_norm: p must be >= 1");
    const int n = f.grid.num_points;
    if (std::isinf(p)) {
        double m = 0.0;
        for (int j = 0; j < n; ++j) m = std::max(m, f.values.col(j).norm());
        return m;
    }
    if (p == 2.0) return l2_norm(f);
    double acc = 0.0;
    for (int j = 0; j < n; ++j) acc += std::pow(f.values.col(j).norm(), p);
    return std::pow(f.grid.quad_weight() * acc, 1.0 / p);
}

double hermitian_asymmetry(const SpectralField& f) {
    const int n = f.grid.num_points;
    double worst = 0.0;
    for (int k = 0; k <= n / 2; ++k) {
        const int kc = (n - k) % n;
        if (k == kc) { // modes 0 and Nyquist pair with themselves
            worst = std::max(worst, f.coeff.col(k).imag().matrix().template lpNorm<Eigen::Infinity>());
            continue;
        }
        worst = std::max(worst,
                         (f.coeff.col(k) - f.coeff.col(kc).conjugate()).cwiseAbs().maxCoeff());
    }
    return worst;
}

double enforce_hermitian(SpectralField& f) {
    const int n = f.grid.num_points;
    double worst = 0.0;
    for (int k = 0; k <= n / 2; ++k) {
        const int kc = (n - k) % n;
        if (k == kc) {
            worst = std::max(worst, f.coeff.col(k).imag().matrix().template lpNorm<Eigen::Infinity>());
            f.coeff.col(k) = f.coeff.col(k).real().template cast<std::complex<double>>();
            continue;
        }
        const Eigen::VectorXcd avg =
            0.5 * (f.coeff.col(k) + f.coeff.col(kc).conjugate());
        worst = std::max(worst, (f.coeff.col(k) - avg).cwiseAbs().maxCoeff());
        f.coeff.col(k) = avg;
        f.coeff.col(kc) = avg.conjugate();
    }
    return worst;
}

} // namespace declab
