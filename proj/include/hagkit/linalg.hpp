#pragma once

#include <cmath>
#include <complex>

#include <Eigen/Dense>

namespace hagkit {

using cplx = std::complex<double>;
using RVec = Eigen::VectorXd;
using CVec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using CMat = Eigen::MatrixXcd;

inline constexpr double kPi = 3.14159265358979323846;

// Largest absolute entry; 0 for empty matrices.
template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& m) {
    for (Eigen::Index c = 0; c < m.cols(); ++c)
        for (Eigen::Index r = 0; r < m.rows(); ++r) {
            const auto v = m(r, c);
            if (!std::isfinite(std::real(v)) || !std::isfinite(std::imag(v))) return false;
        }
    return true;
}

// Principal square root of a Hermitian positive semidefinite matrix.
// Eigenvalues in [-tol, 0) are clamped; anything below -tol throws DomainError.
CMat hermitian_sqrt(const CMat& h, double tol = 1e-10);
RMat symmetric_sqrt(const RMat& s, double tol = 1e-10);

// sqrt(det(G)) for complex symmetric G with positive definite real part,
// taken as the product of principal roots of the eigenvalues. This is the
// branch that makes the Gaussian integral continuous in G.
cplx sqrt_det_positive_real(const CMat& g);

// Smallest singular value.
double min_singular_value(const CMat& m);

// Standard symplectic form J = [[0, I], [-I, 0]] of size 2d.
RMat symplectic_form(int d);

}  // namespace hagkit
