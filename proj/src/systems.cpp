#include "declab/systems.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace declab {

namespace {

Eigen::MatrixXd orthonormal_columns(std::vector<Eigen::VectorXd> cols) {
    Eigen::MatrixXd m(cols.front().size(), cols.size());
    for (size_t i = 0; i < cols.size(); ++i) m.col(i) = cols[i].normalized();
    return m;
}

} // namespace

SystemSpec make_damped_euler(double rho_bar, double gamma) {
    if (!(rho_bar > 0.0)) throw std::invalid_argument("damped euler: rho_bar must be > 0");
    if (!(gamma >= 1.0)) throw std::invalid_argument("damped euler: gamma must be >= 1");
    SystemSpec s;
    s.name = "damped-euler";
    const auto pressure = [gamma](double rho) { return std::pow(rho, gamma); };
    const double dp = gamma * std::pow(rho_bar, gamma - 1.0); // p'(rho_bar)
    const double abar = dp / rho_bar;
    s.a0 = Eigen::Vector2d(abar, rho_bar).asDiagonal();
    s.a1 = Eigen::MatrixXd::Zero(2, 2);
    s.a1(0, 1) = s.a1(1, 0) = abar * rho_bar;
    s.ell = Eigen::Vector2d(0.0, rho_bar).asDiagonal();
    s.equilibrium = orthonormal_columns({Eigen::Vector2d(1.0, 0.0)});
    // State (rho - rho_bar, m/rho_bar): the continuity row is exactly linear,
    // the momentum flux collects the convection and pressure remainders.
    s.flux = [rho_bar, dp, pressure](const Eigen::VectorXd& w) {
        const double rho = rho_bar + w[0];
        const double q2 = -rho_bar * rho_bar * w[1] * w[1] / rho -
                          (pressure(rho) - pressure(rho_bar) - dp * w[0]);
        return Eigen::Vector2d(0.0, q2 / rho_bar);
    };
    s.state_valid = [rho_bar](const Eigen::VectorXd& w) {
        return rho_bar + w[0] > 0.0;
    };
    // convection + pressure remainder is quadratic-leading: 2/3 rule
    s.dealias_fraction = 2.0 / 3.0;
    return s;
}

SystemSpec make_thermoelasticity(double a) {
    if (!(a > 0.0)) throw std::invalid_argument("thermoelasticity: a must be > 0");
    SystemSpec s;
    s.name = "thermoelasticity";
    const double a2 = a * a;
    s.a0 = Eigen::Vector4d(1.0, a2, 1.0, 1.0).asDiagonal();
    s.a1 = Eigen::MatrixXd::Zero(4, 4);
    // rows of A1 z_x:  (-a^2 r_x + theta_x, -a^2 v_x, v_x + q_x, theta_x)
    s.a1(0, 1) = s.a1(1, 0) = -a2;
    s.a1(0, 2) = s.a1(2, 0) = 1.0;
    s.a1(2, 3) = s.a1(3, 2) = 1.0;
    s.ell = Eigen::Vector4d(0.0, 0.0, 0.0, 1.0).asDiagonal();
    s.equilibrium = orthonormal_columns({Eigen::Vector4d(1, 0, 0, 0),
                                         Eigen::Vector4d(0, 1, 0, 0),
                                         Eigen::Vector4d(0, 0, 1, 0)});
    // stress psi(r) = a^2 r + r^3/3; flux carries psi(r) - psi'(0) r = r^3/3
    s.flux = [](const Eigen::VectorXd& w) {
        Eigen::Vector4d p = Eigen::Vector4d::Zero();
        p[0] = w[1] * w[1] * w[1] / 3.0;
        return p;
    };
    s.dealias_fraction = 0.5; // cubic law: 1/2 rule
    return s;
}

SystemSpec make_timoshenko() {
    SystemSpec s;
    s.name = "timoshenko";
    s.a0 = Eigen::MatrixXd::Identity(4, 4);
    s.a1 = Eigen::MatrixXd::Zero(4, 4);
    s.a1(0, 1) = s.a1(1, 0) = -1.0;
    s.a1(2, 3) = s.a1(3, 2) = -1.0;
    s.ell = Eigen::MatrixXd::Zero(4, 4);
    s.ell(0, 3) = 1.0;   // +y in the first equation
    s.ell(3, 0) = -1.0;  // -v in the fourth
    s.ell(3, 3) = 1.0;   // +y in the fourth
    s.equilibrium = orthonormal_columns({Eigen::Vector4d(0, 1, 0, 0),
                                         Eigen::Vector4d(0, 0, 1, 0)});
    // shear law sigma(z) = z + z^3/3; flux carries sigma(z) - sigma'(0) z
    s.flux = [](const Eigen::VectorXd& w) {
        Eigen::Vector4d p = Eigen::Vector4d::Zero();
        p[3] = w[2] * w[2] * w[2] / 3.0;
        return p;
    };
    s.dealias_fraction = 0.5;
    return s;
}

SystemSpec make_decoupled_counterexample() {
    SystemSpec s;
    s.name = "decoupled";
    s.a0 = Eigen::MatrixXd::Identity(3, 3);
    s.a1 = Eigen::MatrixXd::Zero(3, 3);
    s.a1(0, 1) = s.a1(1, 0) = 1.0;
    s.ell = Eigen::Vector3d(0.0, 0.0, 1.0).asDiagonal();
    s.equilibrium = orthonormal_columns({Eigen::Vector3d(1, 0, 0),
                                         Eigen::Vector3d(0, 1, 0)});
    return s;
}

SystemSpec make_builtin(const std::string& name) {
    if (name == "damped-euler") return make_damped_euler();
    if (name == "thermoelasticity") return make_thermoelasticity();
    if (name == "timoshenko") return make_timoshenko();
    if (name == "decoupled") return make_decoupled_counterexample();
    throw std::invalid_argument(
        "unknown model: " + name +
        " (built-ins: damped-euler, thermoelasticity, timoshenko, decoupled)");
}

Eigen::MatrixXcd symbol(const SystemSpec& sys, double xi) {
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(sys.a0);
    if (std::abs(lu.determinant()) < 1e-300)
        throw std::invalid_argument("symbol: A0 is singular");
    Eigen::MatrixXcd rhs =
        std::complex<double>(0.0, xi) * sys.a1.cast<std::complex<double>>() +
        sys.ell.cast<std::complex<double>>();
    Eigen::MatrixXcd out(sys.dim(), sys.dim());
    // solve A0 X = -(i xi A1 + L) column-wise through the real factorisation
    for (int c = 0; c < sys.dim(); ++c) {
        const Eigen::VectorXd re = -rhs.col(c).real();
        const Eigen::VectorXd im = -rhs.col(c).imag();
        out.col(c) = lu.solve(re) + std::complex<double>(0, 1) * lu.solve(im);
    }
    return out;
}

Eigen::VectorXcd symbol_eigenvalues(const SystemSpec& sys, double xi) {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(symbol(sys, xi), false);
    return es.eigenvalues();
}

ConditionAReport check_condition_a(const SystemSpec& sys, double tol) {
    ConditionAReport r;
    const auto sym_defect = [](const Eigen::MatrixXd& m) {
        return (m - m.transpose()).cwiseAbs().maxCoeff();
    };
    r.a0_symmetric = sym_defect(sys.a0) <= tol;
    r.a1_symmetric = sym_defect(sys.a1) <= tol;
    r.l_symmetric = sym_defect(sys.ell) <= tol;

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es0(
        0.5 * (sys.a0 + sys.a0.transpose()));
    r.a0_min_eigenvalue = es0.eigenvalues().minCoeff();
    r.a0_positive = r.a0_min_eigenvalue > tol;

    const Eigen::MatrixXd l_sym = 0.5 * (sys.ell + sys.ell.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> esl(l_sym);
    r.l_min_eigenvalue = esl.eigenvalues().minCoeff();
    r.l_nonnegative = r.l_min_eigenvalue >= -tol;

    // kernel of L (the full matrix, not its symmetric part) vs the declared
    // equilibrium space, compared through principal angles
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(sys.ell, Eigen::ComputeFullV);
    const double smax = svd.singularValues().maxCoeff();
    const double rank_tol = std::max(tol, 1e-12 * std::max(smax, 1.0));
    int rank = 0;
    for (int i = 0; i < svd.singularValues().size(); ++i)
        if (svd.singularValues()[i] > rank_tol) ++rank;
    const int kernel_dim = sys.dim() - rank;
    if (kernel_dim != sys.equilibrium.cols()) {
        r.kernel_matches_equilibrium = false;
        r.kernel_angle = pi / 2.0;
        r.detail = "kernel dimension mismatch";
    } else if (kernel_dim == 0) {
        r.kernel_matches_equilibrium = true;
    } else {
        const Eigen::MatrixXd kernel =
            svd.matrixV().rightCols(kernel_dim); // orthonormal
        // worst principal angle via its sine: the residual of the kernel
        // basis after projecting onto the equilibrium span.  (acos of an
        // overlap singular value cannot resolve angles below ~1e-8, so even
        // exact alignment would fail a tight threshold.)
        const Eigen::MatrixXd residual =
            kernel - sys.equilibrium * (sys.equilibrium.transpose() * kernel);
        Eigen::JacobiSVD<Eigen::MatrixXd> res_svd(residual);
        const double sin_worst = res_svd.singularValues().maxCoeff();
        r.kernel_angle = std::asin(std::min(1.0, sin_worst));
        r.kernel_matches_equilibrium = r.kernel_angle <= 1e-8;
    }

    r.pass = r.a0_symmetric && r.a0_positive && r.a1_symmetric &&
             r.l_nonnegative && r.kernel_matches_equilibrium;
    if (r.pass && !r.l_symmetric)
        r.detail = "L non-symmetric; nonnegativity checked on its symmetric part";
    return r;
}

ConditionKReport check_condition_k(const SystemSpec& sys, double tol) {
    ConditionKReport r;
    const int n = sys.dim();
    // pencil A1 v = mu A0 v; with A0 SPD + A1 symmetric this is a regular
    // self-adjoint problem (never defective)
    const double a0_defect = (sys.a0 - sys.a0.transpose()).cwiseAbs().maxCoeff();
    const double a1_defect = (sys.a1 - sys.a1.transpose()).cwiseAbs().maxCoeff();
    if (a0_defect > 1e-10 || a1_defect > 1e-10) {
        r.indeterminate = true;
        r.detail = "pencil not symmetric; eigenvector criterion indeterminate";
        return r;
    }
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(sys.a1, sys.a0);
    if (es.info() != Eigen::Success) {
        r.indeterminate = true;
        r.detail = "pencil eigensolver failed";
        return r;
    }
    const Eigen::VectorXd mu = es.eigenvalues();
    const Eigen::MatrixXd vecs = es.eigenvectors();

    // projector onto the equilibrium space M = ker L
    const Eigen::MatrixXd p_m = sys.equilibrium * sys.equilibrium.transpose();
    const Eigen::MatrixXd i_n = Eigen::MatrixXd::Identity(n, n);

    r.min_margin = 2.0;
    r.pass = true;
    // group equal eigenvalues and test each eigenspace as a whole: for a
    // degenerate speed, "an eigenvector lies in M" means the eigenspace
    // intersects M, i.e. (I - P_M) restricted to it is singular
    const double cluster_tol = 1e-8 * std::max(1.0, mu.cwiseAbs().maxCoeff());
    int i = 0;
    while (i < n) {
        int j = i + 1;
        while (j < n && std::abs(mu[j] - mu[i]) <= cluster_tol) ++j;
        Eigen::MatrixXd basis = vecs.middleCols(i, j - i);
        // orthonormalise (A0-orthogonal vectors need not be Euclidean-orthonormal)
        const Eigen::HouseholderQR<Eigen::MatrixXd> qr(basis);
        basis = qr.householderQ() * Eigen::MatrixXd::Identity(n, j - i);
        Eigen::JacobiSVD<Eigen::MatrixXd> svd((i_n - p_m) * basis,
                                              Eigen::ComputeFullV);
        const double margin = svd.singularValues().minCoeff();
        if (margin < r.min_margin) {
            r.min_margin = margin;
            r.witness = (basis * svd.matrixV().col(svd.matrixV().cols() - 1))
                            .normalized();
            r.witness_speed = mu[i];
        }
        if (margin <= tol) r.pass = false;
        i = j;
    }
    if (r.pass) {
        r.witness = Eigen::VectorXd();
        r.detail = "no pencil eigenspace meets the equilibrium space";
    } else {
        r.detail = "pencil eigenspace intersects the equilibrium space";
    }
    return r;
}

EnvelopeReport spectral_envelope(const SystemSpec& sys,
                                 const std::vector<double>& xi_probe) {
    EnvelopeReport r;
    r.xi = xi_probe;
    r.max_re.resize(xi_probe.size());
    r.c_fit = inf;
    r.all_nonpositive = true;
    for (size_t i = 0; i < xi_probe.size(); ++i) {
        const double xi = xi_probe[i];
        if (xi == 0.0)
            throw std::invalid_argument("spectral_envelope: xi probes must be nonzero");
        const Eigen::VectorXcd lam = symbol_eigenvalues(sys, xi);
        r.max_re[i] = lam.real().maxCoeff();
        if (r.max_re[i] > 1e-10) r.all_nonpositive = false;
        r.c_fit = std::min(r.c_fit, -r.max_re[i] / eta1(xi));
    }
    r.pass = r.all_nonpositive && r.c_fit > 0.0;
    return r;
}

std::vector<double> log_grid(double lo, double hi, int count) {
    if (!(lo > 0.0) || !(hi > lo) || count < 2)
        throw std::invalid_argument("log_grid: need 0 < lo < hi and count >= 2");
    std::vector<double> g(count);
    const double step = std::log(hi / lo) / (count - 1);
    for (int i = 0; i < count; ++i) g[i] = lo * std::exp(i * step);
    return g;
}

double dissipation_radius(const SystemSpec& sys, double c,
                          const std::vector<double>& xi_probe) {
    double r0 = 0.0;
    for (double xi : xi_probe) {
        const Eigen::VectorXcd lam = symbol_eigenvalues(sys, xi);
        if (lam.real().maxCoeff() <= -0.5 * c * xi * xi)
            r0 = xi;
        else
            break;
    }
    return r0;
}

int low_frequency_cutoff(double r0) {
    if (!(r0 > 0.0))
        throw std::invalid_argument("low_frequency_cutoff: r0 must be > 0");
    return static_cast<int>(std::floor(std::log2(3.0 * r0 / 8.0)));
}

} // namespace declab
