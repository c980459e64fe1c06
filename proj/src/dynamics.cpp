#include "hagkit/dynamics.hpp"

#include <cmath>
#include <sstream>

#include <unsupported/Eigen/MatrixFunctions>

#include "hagkit/errors.hpp"

namespace hagkit {

PotentialModel PotentialModel::quadratic(RMat H, RVec g, double v0) {
    if (H.rows() != H.cols()) throw StructuralError("quadratic potential: H is not square");
    if (max_abs(H - H.transpose()) > 1e-12 * std::max(1.0, max_abs(H)))
        throw StructuralError("quadratic potential: H is not symmetric");
    if (g.size() == 0) g = RVec::Zero(H.rows());
    if (g.size() != H.rows()) throw StructuralError("quadratic potential: g has wrong size");
    PotentialModel m;
    m.kind_ = Kind::quadratic;
    m.H_ = 0.5 * (H + H.transpose());
    m.g_ = std::move(g);
    m.v0_ = v0;
    return m;
}

PotentialModel PotentialModel::callable(std::function<double(const RVec&)> V,
                                        std::function<RVec(const RVec&)> grad,
                                        std::function<RMat(const RVec&)> hess) {
    if (!V || !grad || !hess) throw StructuralError("callable potential needs V, grad V and Hess V");
    PotentialModel m;
    m.kind_ = Kind::callable;
    m.V_ = std::move(V);
    m.grad_ = std::move(grad);
    m.hess_ = std::move(hess);
    return m;
}

PotentialModel PotentialModel::harmonic(int d) { return quadratic(RMat::Identity(d, d)); }

PotentialModel PotentialModel::quartic(int d) {
    (void)d;
    return callable([](const RVec& x) { return 0.25 * x.array().pow(4).sum(); },
                    [](const RVec& x) { return RVec(x.array().pow(3)); },
                    [](const RVec& x) { return RMat(RVec(3.0 * x.array().square()).asDiagonal()); });
}

double PotentialModel::value(const RVec& x) const {
    if (kind_ == Kind::quadratic) return 0.5 * x.dot(H_ * x) + g_.dot(x) + v0_;
    return V_(x);
}

RVec PotentialModel::gradient(const RVec& x) const {
    if (kind_ == Kind::quadratic) return H_ * x + g_;
    RVec g = grad_(x);
    if (g.size() != x.size() || !all_finite(g)) throw NumericalError("potential gradient evaluation failed");
    return g;
}

RMat PotentialModel::hessian(const RVec& x) const {
    if (kind_ == Kind::quadratic) return H_;
    RMat h = hess_(x);
    if (h.rows() != x.size() || h.cols() != x.size() || !all_finite(h))
        throw NumericalError("potential Hessian evaluation failed");
    return 0.5 * (h + h.transpose());
}

double symplectic_residual(const ParameterSet& ps) {
    const int d = ps.dim();
    const cplx i(0.0, 1.0);
    return std::max(max_abs(ps.Q.transpose() * ps.P - ps.P.transpose() * ps.Q),
                    max_abs(ps.Q.adjoint() * ps.P - ps.P.adjoint() * ps.Q - 2.0 * i * CMat::Identity(d, d)));
}

namespace {

// the root of 1/det(Q) closest to the previous value
cplx continue_phase(const CMat& Q, cplx previous) {
    const cplx r = 1.0 / std::sqrt(Q.determinant());
    return std::abs(r - previous) <= std::abs(-r - previous) ? r : -r;
}

void attach_branch(TrajectoryState& s) { s.params.sqrt_det_q = 1.0 / s.det_phase; }

}  // namespace

TrajectoryState initial_state(const ParameterSet& ps) {
    require_valid(ps);
    TrajectoryState s;
    s.t = 0.0;
    s.params = ps;
    s.det_phase = 1.0 / sqrt_det_q(ps);
    s.action = 0.0;
    attach_branch(s);
    return s;
}

TrajectoryState step(const TrajectoryState& s, const PotentialModel& V, double dt, const StepOptions& opt) {
    if (!(dt > 0.0)) throw DomainError("step: dt must be positive");
    const ParameterSet& a = s.params;
    TrajectoryState n = s;
    ParameterSet& b = n.params;

    const RVec p_half = a.p - 0.5 * dt * V.gradient(a.q);
    const CMat P_half = a.P - 0.5 * dt * V.hessian(a.q).cast<cplx>() * a.Q;
    b.q = a.q + dt * p_half;
    b.Q = a.Q + dt * P_half;
    b.p = p_half - 0.5 * dt * V.gradient(b.q);
    b.P = P_half - 0.5 * dt * V.hessian(b.q).cast<cplx>() * b.Q;

    n.t = s.t + dt;
    n.action = s.action + dt * (0.5 * p_half.squaredNorm() - V.value(0.5 * (a.q + b.q)));
    n.det_phase = continue_phase(b.Q, s.det_phase);
    attach_branch(n);

    const double before = symplectic_residual(a);
    const double after = symplectic_residual(b);
    const double scale = std::max(1.0, max_abs(b.Q) * max_abs(b.P));
    if (!std::isfinite(after) || after > before + opt.drift_rate * dt + 64.0 * 2.2e-16 * scale) {
        std::ostringstream os;
        os << "step rejected at t = " << n.t << ": symplecticity residual " << before << " -> " << after;
        throw NumericalError(os.str());
    }
    return n;
}

Trajectory propagate(const TrajectoryState& s0, const PotentialModel& V, double T, double dt,
                     const StepOptions& opt) {
    if (!(T > 0.0) || !(dt > 0.0)) throw DomainError("propagate: T and dt must be positive");
    const double ratio = T / dt;
    const long steps = std::lround(ratio);
    if (steps < 1 || std::abs(ratio - steps) > 1e-9 * std::max(1.0, ratio))
        throw DomainError("propagate: dt must divide T");
    Trajectory tr;
    tr.states.reserve(steps + 1);
    tr.states.push_back(s0);
    const double r0 = symplectic_residual(s0.params);
    try {
        for (long k = 0; k < steps; ++k) {
            TrajectoryState nxt = step(tr.states.back(), V, dt, opt);
            nxt.t = s0.t + (k + 1) * dt;  // avoid accumulated rounding in t
            tr.states.push_back(std::move(nxt));
        }
        tr.completed = true;
    } catch (const NumericalError& e) {
        tr.diagnostic = e.what();
    }
    tr.final_drift = symplectic_residual(tr.states.back().params) - r0;
    return tr;
}

TrajectoryState harmonic_reference(const TrajectoryState& s0, double t, const RMat& H, const RVec& g_in,
                                   double v0) {
    const int d = s0.params.dim();
    if (H.rows() != d || H.cols() != d) throw StructuralError("harmonic_reference: H has wrong shape");
    const RVec g = g_in.size() ? g_in : RVec::Zero(d);
    const int n = 2 * d + 1;
    // y = (q, p, 1),  y' = M y
    RMat M = RMat::Zero(n, n);
    M.block(0, d, d, d) = RMat::Identity(d, d);
    M.block(d, 0, d, d) = -H;
    M.block(d, 2 * d, d, 1) = -g;
    // Lagrangian p^2/2 - V(q) as the quadratic form y^T L y
    RMat L = RMat::Zero(n, n);
    L.block(0, 0, d, d) = -0.5 * H;
    L.block(d, d, d, d) = 0.5 * RMat::Identity(d, d);
    L.block(0, 2 * d, d, 1) = -0.5 * g;
    L.block(2 * d, 0, 1, d) = -0.5 * g.transpose();
    L(2 * d, 2 * d) = -v0;
    // Van Loan: exp([[-M^T, L], [0, M]] t) has F22 = e^{Mt}, F22^T F12 = int e^{M^T s} L e^{M s} ds
    RMat big = RMat::Zero(2 * n, 2 * n);
    big.block(0, 0, n, n) = -M.transpose();
    big.block(0, n, n, n) = L;
    big.block(n, n, n, n) = M;
    const RMat E = (big * t).exp();
    const RMat F22 = E.block(n, n, n, n);
    const RMat gram = F22.transpose() * E.block(0, n, n, n);

    RVec y0(n);
    y0 << s0.params.q, s0.params.p, 1.0;
    const RVec y = F22 * y0;

    TrajectoryState s = s0;
    s.t = s0.t + t;
    s.params.q = y.head(d);
    s.params.p = y.segment(d, d);
    s.action = s0.action + y0.dot(gram * y0);
    const RMat Phi = F22.topLeftCorner(2 * d, 2 * d);
    const CMat QP0 = (CMat(2 * d, d) << s0.params.Q, s0.params.P).finished();
    const CMat QP = Phi.cast<cplx>() * QP0;
    s.params.Q = QP.topRows(d);
    s.params.P = QP.bottomRows(d);

    // follow the branch of det(Q)^{-1/2} along the exact flow
    const RMat A = M.topLeftCorner(2 * d, 2 * d);
    const int sub = std::max(64, static_cast<int>(std::ceil(std::abs(t) / 0.01)));
    const RMat stepmap = (A * (t / sub)).exp();
    CMat cur = QP0;
    cplx phase = s0.det_phase;
    for (int k = 0; k < sub; ++k) {
        cur = stepmap.cast<cplx>() * cur;
        phase = continue_phase(cur.topRows(d), phase);
    }
    s.det_phase = phase;
    attach_branch(s);
    return s;
}

double energy(const TrajectoryState& s, const PotentialModel& V) {
    return 0.5 * s.params.p.squaredNorm() + V.value(s.params.q);
}

double max_phase_jump(const Trajectory& tr) {
    double m = 0.0;
    for (std::size_t i = 1; i < tr.states.size(); ++i)
        m = std::max(m, std::abs(std::arg(tr.states[i].det_phase / tr.states[i - 1].det_phase)));
    return m;
}

}  // namespace hagkit
