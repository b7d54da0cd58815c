#include "declab/matrix_exp.hpp"

#include <cmath>

namespace declab {

namespace {

using Mat = Eigen::MatrixXcd;

// Pade numerator coefficients, Higham "The scaling and squaring method for
// the matrix exponential revisited" (2005).
Mat pade_solve(const Mat& u, const Mat& v) {
    // r = (v - u)^{-1} (v + u)
    return (v - u).partialPivLu().solve(v + u);
}

Mat expm_pade3(const Mat& a) {
    static const double b[] = {120.0, 60.0, 12.0, 1.0};
    const Mat i = Mat::Identity(a.rows(), a.cols());
    const Mat a2 = a * a;
    const Mat u = a * (b[3] * a2 + b[1] * i);
    const Mat v = b[2] * a2 + b[0] * i;
    return pade_solve(u, v);
}

Mat expm_pade5(const Mat& a) {
    static const double b[] = {30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0};
    const Mat i = Mat::Identity(a.rows(), a.cols());
    const Mat a2 = a * a;
    const Mat a4 = a2 * a2;
    const Mat u = a * (b[5] * a4 + b[3] * a2 + b[1] * i);
    const Mat v = b[4] * a4 + b[2] * a2 + b[0] * i;
    return pade_solve(u, v);
}

Mat expm_pade7(const Mat& a) {
    static const double b[] = {17297280.0, 8648640.0, 1995840.0, 277200.0,
                               25200.0,    1512.0,    56.0,      1.0};
    const Mat i = Mat::Identity(a.rows(), a.cols());
    const Mat a2 = a * a;
    const Mat a4 = a2 * a2;
    const Mat a6 = a4 * a2;
    const Mat u = a * (b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * i);
    const Mat v = b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * i;
    return pade_solve(u, v);
}

Mat expm_pade13(const Mat& a) {
    static const double b[] = {64764752532480000.0, 32382376266240000.0,
                               7771770303897600.0,  1187353796428800.0,
                               129060195264000.0,   10559470521600.0,
                               670442572800.0,      33522128640.0,
                               1323241920.0,        40840800.0,
                               960960.0,            16380.0,
                               182.0,               1.0};
    const Mat i = Mat::Identity(a.rows(), a.cols());
    const Mat a2 = a * a;
    const Mat a4 = a2 * a2;
    const Mat a6 = a4 * a2;
    const Mat u =
        a * (a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 +
             b[5] * a4 + b[3] * a2 + b[1] * i);
    const Mat v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 +
                  b[4] * a4 + b[2] * a2 + b[0] * i;
    return pade_solve(u, v);
}

} // namespace

Eigen::MatrixXcd matrix_exponential(const Eigen::MatrixXcd& m) {
    if (m.rows() != m.cols())
        throw std::invalid_argument("matrix_exponential: matrix must be square");
    const double norm = m.cwiseAbs().rowwise().sum().maxCoeff(); // inf-norm
    if (!std::isfinite(norm))
        throw std::invalid_argument("matrix_exponential: non-finite entries");
    if (norm <= 1.495585217958292e-2) return expm_pade3(m);
    if (norm <= 2.539398330063230e-1) return expm_pade5(m);
    if (norm <= 9.504178996162932e-1) return expm_pade7(m);
    const double theta13 = 5.371920351148152;
    int squarings = 0;
    Mat scaled = m;
    if (norm > theta13) {
        squarings = static_cast<int>(std::ceil(std::log2(norm / theta13)));
        scaled = m / std::pow(2.0, squarings);
    }
    Mat r = expm_pade13(scaled);
    for (int s = 0; s < squarings; ++s) r = r * r;
    return r;
}

PhiFunctions phi_functions(const Eigen::MatrixXcd& m) {
    // exp of the augmented block matrix [[M I 0],[0 0 I],[0 0 0]] carries
    // phi1(M) and phi2(M) in the top row without requiring M to be invertible.
    const long d = m.rows();
    Mat aug = Mat::Zero(3 * d, 3 * d);
    aug.topLeftCorner(d, d) = m;
    aug.block(0, d, d, d) = Mat::Identity(d, d);
    aug.block(d, 2 * d, d, d) = Mat::Identity(d, d);
    const Mat e = matrix_exponential(aug);
    PhiFunctions out;
    out.phi0 = e.topLeftCorner(d, d);
    out.phi1 = e.block(0, d, d, d);
    out.phi2 = e.block(0, 2 * d, d, d);
    return out;
}

} // namespace declab
