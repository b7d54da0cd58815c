#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "declab/matrix_exp.hpp"

#include <Eigen/Eigenvalues>
#include <complex>
#include <random>

using namespace declab;

namespace {

Eigen::MatrixXcd random_complex(int n, std::uint64_t seed, double scale) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXcd m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            m(i, j) = scale * std::complex<double>(gauss(rng), gauss(rng));
    return m;
}

/// Reference exponential through diagonalisation (valid for the random
/// matrices drawn here, which are diagonalisable with probability 1).
Eigen::MatrixXcd expm_eig(const Eigen::MatrixXcd& m) {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m);
    Eigen::VectorXcd lam = es.eigenvalues();
    for (int i = 0; i < lam.size(); ++i) lam(i) = std::exp(lam(i));
    return es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().inverse();
}

} // namespace

TEST_CASE("exp(0) = I and exp(diag) is the entrywise exponential") {
    const Eigen::MatrixXcd z = Eigen::MatrixXcd::Zero(3, 3);
    CHECK((matrix_exponential(z) - Eigen::MatrixXcd::Identity(3, 3)).norm() ==
          0.0);

    Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(3, 3);
    d(0, 0) = std::complex<double>(1.0, 0.0);
    d(1, 1) = std::complex<double>(-2.0, 0.5);
    d(2, 2) = std::complex<double>(0.0, 3.0);
    const Eigen::MatrixXcd e = matrix_exponential(d);
    for (int i = 0; i < 3; ++i)
        CHECK(std::abs(e(i, i) - std::exp(d(i, i))) <= 1e-14);
    CHECK(std::abs(e(0, 1)) <= 1e-15);
}

TEST_CASE("nilpotent block: exp([[0,1],[0,0]]) = I + N") {
    Eigen::MatrixXcd n = Eigen::MatrixXcd::Zero(2, 2);
    n(0, 1) = 1.0;
    const Eigen::MatrixXcd e = matrix_exponential(n);
    CHECK(std::abs(e(0, 0) - 1.0) <= 1e-15);
    CHECK(std::abs(e(0, 1) - 1.0) <= 1e-15);
    CHECK(std::abs(e(1, 0)) <= 1e-15);
    CHECK(std::abs(e(1, 1) - 1.0) <= 1e-15);
}

TEST_CASE("rotation generator gives cosine/sine") {
    const double theta = 1.234;
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(2, 2);
    a(0, 1) = -theta;
    a(1, 0) = theta;
    const Eigen::MatrixXcd e = matrix_exponential(a);
    CHECK(std::abs(e(0, 0) - std::cos(theta)) <= 1e-14);
    CHECK(std::abs(e(0, 1) + std::sin(theta)) <= 1e-14);
    CHECK(std::abs(e(1, 0) - std::sin(theta)) <= 1e-14);
    CHECK(std::abs(e(1, 1) - std::cos(theta)) <= 1e-14);
}

TEST_CASE("agrees with the eigendecomposition reference to 1e-10") {
    for (std::uint64_t seed : {1, 2, 3, 4, 5}) {
        const Eigen::MatrixXcd m = random_complex(4, seed, 1.0);
        const Eigen::MatrixXcd a = matrix_exponential(m);
        const Eigen::MatrixXcd b = expm_eig(m);
        CHECK((a - b).cwiseAbs().maxCoeff() <= 1e-10 * std::max(1.0, b.norm()));
    }
}

TEST_CASE("large norms go through scaling and squaring correctly") {
    const Eigen::MatrixXcd m = random_complex(3, 11, 20.0); // ||m|| >> theta13
    const Eigen::MatrixXcd half = matrix_exponential(0.5 * m);
    const Eigen::MatrixXcd full = matrix_exponential(m);
    CHECK((half * half - full).cwiseAbs().maxCoeff() <=
          1e-9 * std::max(1.0, full.cwiseAbs().maxCoeff()));
}

TEST_CASE("semigroup property exp(A)exp(A) = exp(2A)") {
    const Eigen::MatrixXcd m = random_complex(4, 21, 0.7);
    const Eigen::MatrixXcd e1 = matrix_exponential(m);
    const Eigen::MatrixXcd e2 = matrix_exponential(2.0 * m);
    CHECK((e1 * e1 - e2).cwiseAbs().maxCoeff() <=
          1e-11 * std::max(1.0, e2.cwiseAbs().maxCoeff()));
}

TEST_CASE("phi functions satisfy their defining recurrences") {
    // M phi1 = phi0 - I and M phi2 = phi1 - I, including singular M
    for (std::uint64_t seed : {31, 32}) {
        Eigen::MatrixXcd m = random_complex(3, seed, 1.0);
        if (seed == 32) m.col(0).setZero(); // make it singular
        const PhiFunctions p = phi_functions(m);
        const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(3, 3);
        CHECK((p.phi0 - matrix_exponential(m)).cwiseAbs().maxCoeff() <= 1e-11);
        CHECK((m * p.phi1 - (p.phi0 - id)).cwiseAbs().maxCoeff() <= 1e-11);
        CHECK((m * p.phi2 - (p.phi1 - id)).cwiseAbs().maxCoeff() <= 1e-11);
    }
}

TEST_CASE("phi functions at M = 0: phi1 = I, phi2 = I/2") {
    const Eigen::MatrixXcd z = Eigen::MatrixXcd::Zero(2, 2);
    const PhiFunctions p = phi_functions(z);
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(2, 2);
    CHECK((p.phi0 - id).cwiseAbs().maxCoeff() <= 1e-14);
    CHECK((p.phi1 - id).cwiseAbs().maxCoeff() <= 1e-14);
    CHECK((p.phi2 - 0.5 * id).cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("scalar case reduces to std::exp") {
    Eigen::MatrixXcd m(1, 1);
    m(0, 0) = std::complex<double>(-0.3, 1.7);
    CHECK(std::abs(matrix_exponential(m)(0, 0) - std::exp(m(0, 0))) <= 1e-14);
}
