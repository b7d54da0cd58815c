#include "declab/fourier.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>

namespace declab {

namespace {

/// One cached FFTW plan pair per transform size.  Executions copy through the
/// plan's own aligned buffers under a lock: thread-safe, deterministic, and
/// the copies are noise next to the transform itself.
class PlanCache {
  public:
    static PlanCache& instance() {
        static PlanCache cache;
        return cache;
    }

    void forward(int n, const std::complex<double>* in, std::complex<double>* out) {
        std::lock_guard<std::mutex> hold(lock_);
        Entry& e = entry(n);
        std::copy(in, in + n, reinterpret_cast<std::complex<double>*>(e.buf_in));
        fftw_execute(e.fwd);
        std::copy(reinterpret_cast<std::complex<double>*>(e.buf_out),
                  reinterpret_cast<std::complex<double>*>(e.buf_out) + n, out);
    }

    void backward(int n, const std::complex<double>* in, std::complex<double>* out) {
        std::lock_guard<std::mutex> hold(lock_);
        Entry& e = entry(n);
        std::copy(in, in + n, reinterpret_cast<std::complex<double>*>(e.buf_in));
        fftw_execute(e.bwd);
        std::copy(reinterpret_cast<std::complex<double>*>(e.buf_out),
                  reinterpret_cast<std::complex<double>*>(e.buf_out) + n, out);
    }

  private:
    struct Entry {
        fftw_complex* buf_in = nullptr;
        fftw_complex* buf_out = nullptr;
        fftw_plan fwd = nullptr;
        fftw_plan bwd = nullptr;
    };

    Entry& entry(int n) {
        auto it = entries_.find(n);
        if (it != entries_.end()) return it->second;
        Entry e;
        e.buf_in = fftw_alloc_complex(n);
        e.buf_out = fftw_alloc_complex(n);
        e.fwd = fftw_plan_dft_1d(n, e.buf_in, e.buf_out, FFTW_FORWARD, FFTW_ESTIMATE);
        e.bwd = fftw_plan_dft_1d(n, e.buf_in, e.buf_out, FFTW_BACKWARD, FFTW_ESTIMATE);
        return entries_.emplace(n, e).first->second;
    }

    std::mutex lock_;
    std::map<int, Entry> entries_;
};

} // namespace

SpectralField forward(const RealField& f) {
    const int n = f.grid.num_points;
    const int nc = f.components();
    SpectralField out(f.grid, nc);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    Eigen::VectorXcd row(n), hat(n);
    for (int c = 0; c < nc; ++c) {
        for (int j = 0; j < n; ++j) row[j] = f.values(c, j);
        PlanCache::instance().forward(n, row.data(), hat.data());
        out.coeff.row(c) = (hat * scale).transpose();
    }
    return out;
}

RealField inverse(const SpectralField& f, double* max_imag) {
    const int n = f.grid.num_points;
    const int nc = f.components();
    RealField out(f.grid, nc);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    double imag_worst = 0.0;
    Eigen::VectorXcd row(n), phys(n);
    for (int c = 0; c < nc; ++c) {
        row = f.coeff.row(c).transpose();
        PlanCache::instance().backward(n, row.data(), phys.data());
        for (int j = 0; j < n; ++j) {
            imag_worst = std::max(imag_worst, std::abs(phys[j].imag()) * scale);
            out.values(c, j) = phys[j].real() * scale;
        }
    }
    if (max_imag) *max_imag = imag_worst;
    return out;
}

SpectralField apply_multiplier(const SpectralField& f,
                               const std::function<std::complex<double>(double)>& m) {
    SpectralField out = f;
    const int n = f.grid.num_points;
    for (int k = 0; k < n; ++k) out.coeff.col(k) *= m(f.grid.frequency(k));
    return out;
}

SpectralField derivative(const SpectralField& f) {
    return apply_multiplier(
        f, [](double xi) { return std::complex<double>(0.0, xi); });
}

SpectralField fractional_derivative(const SpectralField& f, double alpha) {
    if (alpha < 0.0)
        throw std::invalid_argument("fractional_derivative: alpha must be >= 0");
    if (alpha == 0.0) return f;
    return apply_multiplier(f, [alpha](double xi) {
        return std::complex<double>(xi == 0.0 ? 0.0 : std::pow(std::abs(xi), alpha), 0.0);
    });
}

void truncate_modes(SpectralField& f, double keep_fraction) {
    const int n = f.grid.num_points;
    const int keep = static_cast<int>(std::floor(keep_fraction * (n / 2)));
    for (int k = 0; k < n; ++k)
        if (std::abs(f.grid.signed_mode(k)) > keep) f.coeff.col(k).setZero();
}

} // namespace declab
