#include "hagkit/linalg.hpp"

#include <sstream>

#include "hagkit/errors.hpp"

namespace hagkit {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::structural: return "structural error";
        case ErrorKind::data: return "data error";
        case ErrorKind::domain: return "domain error";
        case ErrorKind::singularity: return "singularity error";
        case ErrorKind::numerical: return "numerical error";
        case ErrorKind::resource: return "resource error";
        case ErrorKind::io: return "I/O error";
        case ErrorKind::internal: return "internal error";
    }
    return "error";
}

namespace {

template <typename Mat>
Mat clamped_root(const Mat& h, double tol) {
    Eigen::SelfAdjointEigenSolver<Mat> es(h);
    if (es.info() != Eigen::Success) throw NumericalError("eigendecomposition failed");
    Eigen::VectorXd ev = es.eigenvalues();
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        if (ev(i) < -tol) {
            std::ostringstream os;
            os << "matrix square root: eigenvalue " << ev(i) << " is negative";
            throw DomainError(os.str());
        }
        ev(i) = std::sqrt(std::max(ev(i), 0.0));
    }
    return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

CMat hermitian_sqrt(const CMat& h, double tol) {
    const CMat sym = 0.5 * (h + h.adjoint());
    CMat r = clamped_root(sym, tol);
    return 0.5 * (r + r.adjoint());
}

RMat symmetric_sqrt(const RMat& s, double tol) {
    const RMat sym = 0.5 * (s + s.transpose());
    RMat r = clamped_root(sym, tol);
    return 0.5 * (r + r.transpose());
}

cplx sqrt_det_positive_real(const CMat& g) {
    Eigen::ComplexEigenSolver<CMat> es(g, false);
    if (es.info() != Eigen::Success) throw NumericalError("eigenvalue computation failed");
    cplx out = 1.0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) out *= std::sqrt(es.eigenvalues()(i));
    return out;
}

double min_singular_value(const CMat& m) {
    if (m.size() == 0) return 0.0;
    Eigen::JacobiSVD<CMat> svd(m);
    return svd.singularValues().minCoeff();
}

RMat symplectic_form(int d) {
    RMat j = RMat::Zero(2 * d, 2 * d);
    j.topRightCorner(d, d) = RMat::Identity(d, d);
    j.bottomLeftCorner(d, d) = -RMat::Identity(d, d);
    return j;
}

}  // namespace hagkit
