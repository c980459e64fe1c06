#include "hagkit/params.hpp"

#include <cstdio>
#include <iomanip>
#include <sstream>

#include "hagkit/errors.hpp"

namespace hagkit {

ParameterSet ParameterSet::standard(int d, double epsilon) {
    ParameterSet ps;
    ps.epsilon = epsilon;
    ps.q = RVec::Zero(d);
    ps.p = RVec::Zero(d);
    ps.Q = CMat::Identity(d, d);
    ps.P = cplx(0.0, 1.0) * CMat::Identity(d, d);
    return ps;
}

const Residual& ValidationReport::get(const std::string& name) const {
    for (const auto& r : residuals)
        if (r.name == name) return r;
    throw InternalError("no residual named " + name);
}

std::string ValidationReport::to_string() const {
    std::ostringstream os;
    os << (passed ? "PASS" : "FAIL") << "\n";
    for (const auto& r : residuals) {
        os << "  " << std::left << std::setw(22) << r.name << std::setw(26) << std::setprecision(17)
           << r.value << (r.ok ? "ok" : "FAILED") << "  (threshold " << std::setprecision(3)
           << r.threshold << ")\n";
    }
    return os.str();
}

namespace {

void check_shapes(const ParameterSet& ps) {
    const Eigen::Index d = ps.q.size();
    if (d < 1) throw StructuralError("parameter set has dimension 0");
    if (ps.p.size() != d || ps.Q.rows() != d || ps.Q.cols() != d || ps.P.rows() != d ||
        ps.P.cols() != d) {
        std::ostringstream os;
        os << "inconsistent dimensions: q " << d << ", p " << ps.p.size() << ", Q " << ps.Q.rows()
           << "x" << ps.Q.cols() << ", P " << ps.P.rows() << "x" << ps.P.cols();
        throw StructuralError(os.str());
    }
    if (!std::isfinite(ps.epsilon) || !all_finite(ps.q) || !all_finite(ps.p) ||
        !all_finite(ps.Q) || !all_finite(ps.P))
        throw DataError("parameter set contains non-finite entries");
    if (!(ps.epsilon > 0.0)) throw DataError("epsilon must be positive");
}

}  // namespace

ValidationReport validate(const ParameterSet& ps, double tol) {
    check_shapes(ps);
    const int d = ps.dim();
    const CMat& Q = ps.Q;
    const CMat& P = ps.P;
    const cplx i(0.0, 1.0);

    ValidationReport rep;
    auto upper = [&](const std::string& name, double v) {
        rep.residuals.push_back({name, v, tol, v <= tol});
    };
    auto lower = [&](const std::string& name, double v) {
        rep.residuals.push_back({name, v, tol, v > tol});
    };

    upper("QtP-PtQ", max_abs(Q.transpose() * P - P.transpose() * Q));
    upper("Q*P-P*Q-2iI", max_abs(Q.adjoint() * P - P.adjoint() * Q - 2.0 * i * CMat::Identity(d, d)));
    const double svq = min_singular_value(Q);
    lower("min_singular_Q", svq);
    lower("min_singular_P", min_singular_value(P));
    double min_eig = std::numeric_limits<double>::quiet_NaN();
    if (svq > tol) {
        const CMat C = P * Q.inverse();
        RMat imc = C.imag();
        imc = (0.5 * (imc + imc.transpose())).eval();
        min_eig = Eigen::SelfAdjointEigenSolver<RMat>(imc, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
    }
    rep.residuals.push_back({"min_eig_ImC", min_eig, tol, min_eig > tol});

    rep.passed = true;
    for (const auto& r : rep.residuals) rep.passed = rep.passed && r.ok;
    return rep;
}

void require_valid(const ParameterSet& ps, double tol) {
    ValidationReport rep = validate(ps, tol);
    if (!rep.passed) throw DataError("parameter set fails validation\n" + rep.to_string());
}

CMat width_matrix(const ParameterSet& ps) {
    check_shapes(ps);
    Eigen::FullPivLU<CMat> lu(ps.Q);
    if (!lu.isInvertible()) throw SingularityError("width_matrix: Q is singular");
    // C Q = P  <=>  Q^T C^T = P^T
    CMat ct = Eigen::FullPivLU<CMat>(ps.Q.transpose()).solve(ps.P.transpose());
    CMat c = ct.transpose();
    return 0.5 * (c + c.transpose());
}

SymplecticEmbedding symplectic_embed(const ParameterSet& ps) {
    check_shapes(ps);
    const int d = ps.dim();
    SymplecticEmbedding e;
    e.F.resize(2 * d, 2 * d);
    e.F << ps.Q.real(), ps.Q.imag(), ps.P.real(), ps.P.imag();
    const RMat J = symplectic_form(d);
    e.F_inv = -J * e.F.transpose() * J;
    return e;
}

ParameterSet from_squeeze(const RVec& q, const RVec& p, const CMat& W, double epsilon, double tol) {
    const Eigen::Index d = q.size();
    if (p.size() != d || W.rows() != d || W.cols() != d)
        throw StructuralError("from_squeeze: inconsistent dimensions");
    if (!all_finite(W)) throw DataError("from_squeeze: non-finite W");
    if (max_abs(W - W.transpose()) > tol) throw StructuralError("from_squeeze: W is not symmetric");
    const CMat id = CMat::Identity(d, d);
    const CMat g = id - W.adjoint() * W;
    const double lam = Eigen::SelfAdjointEigenSolver<CMat>(0.5 * (g + g.adjoint()), Eigen::EigenvaluesOnly)
                           .eigenvalues()
                           .minCoeff();
    if (!(lam > 0.0)) {
        std::ostringstream os;
        os << "from_squeeze: W*W has an eigenvalue >= 1 (1 - lambda_max = " << lam << ")";
        throw DomainError(os.str());
    }
    const CMat root_inv = hermitian_sqrt(g).inverse();
    ParameterSet ps;
    ps.epsilon = epsilon;
    ps.q = q;
    ps.p = p;
    ps.Q = (id + W) * root_inv;
    ps.P = cplx(0.0, 1.0) * (id - W) * root_inv;
    return ps;
}

SqueezeData to_squeeze(const ParameterSet& ps) {
    check_shapes(ps);
    const cplx i(0.0, 1.0);
    const CMat a = ps.Q - i * ps.P;
    Eigen::FullPivLU<CMat> lu(a);
    if (!lu.isInvertible()) throw InternalError("to_squeeze: Q - iP is singular");
    SqueezeData s;
    s.W = (ps.Q + i * ps.P) * lu.inverse();
    s.W = (0.5 * (s.W + s.W.transpose())).eval();
    // Q - iP = |Q - iP| V*
    const CMat mod = hermitian_sqrt(a * a.adjoint());
    s.V = (mod.inverse() * a).adjoint();
    return s;
}

PolarResult polar_normalize(const ParameterSet& ps) {
    check_shapes(ps);
    // QQ* is real symmetric for valid parameters; taking the real part makes
    // |Q| exactly real symmetric.
    const RMat absq = symmetric_sqrt((ps.Q * ps.Q.adjoint()).real());
    PolarResult r;
    r.U = ps.Q.adjoint() * absq.inverse().cast<cplx>();
    r.params = ps;
    r.params.sqrt_det_q.reset();
    r.params.Q = absq.cast<cplx>();
    r.params.P = ps.P * r.U;
    return r;
}

cplx sqrt_det_q(const ParameterSet& ps) {
    if (ps.sqrt_det_q) return *ps.sqrt_det_q;
    return std::sqrt(ps.Q.determinant());
}

FourierDual fourier_dual(const ParameterSet& ps) {
    require_valid(ps);
    FourierDual fd;
    fd.params = ps;
    fd.params.sqrt_det_q.reset();
    fd.params.q = ps.p;
    fd.params.p = -ps.q;
    fd.params.Q = ps.P;
    fd.params.P = -ps.Q;
    // The Gaussian integral produces det(-iC)^{-1/2} on its continuous
    // branch; comparing with the principal det(P)^{1/2} leaves a fixed phase
    // whose square is i^d.
    const CMat C = width_matrix(ps);
    const cplx kappa = sqrt_det_q(fd.params) / (sqrt_det_q(ps) * sqrt_det_positive_real(cplx(0.0, -1.0) * C));
    fd.phase = std::exp(cplx(0.0, -ps.p.dot(ps.q) / ps.epsilon)) * kappa / std::abs(kappa);
    return fd;
}

Translated translate_params(const ParameterSet& ps, const RVec& a, const RVec& b) {
    check_shapes(ps);
    if (a.size() != ps.dim() || b.size() != ps.dim())
        throw StructuralError("translate_params: shift has wrong dimension");
    Translated t;
    t.params = ps;
    t.params.q = ps.q + a;
    t.params.p = ps.p + b;
    t.phase = std::exp(cplx(0.0, b.dot(ps.q + 0.5 * a) / ps.epsilon));
    return t;
}

std::uint64_t params_hash(const ParameterSet& ps) {
    std::string s;
    char buf[40];
    auto put = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.17g;", v);
        s += buf;
    };
    put(ps.epsilon);
    for (Eigen::Index i = 0; i < ps.q.size(); ++i) put(ps.q(i));
    for (Eigen::Index i = 0; i < ps.p.size(); ++i) put(ps.p(i));
    for (const CMat* m : {&ps.Q, &ps.P})
        for (Eigen::Index r = 0; r < m->rows(); ++r)
            for (Eigen::Index c = 0; c < m->cols(); ++c) {
                put((*m)(r, c).real());
                put((*m)(r, c).imag());
            }
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace hagkit
