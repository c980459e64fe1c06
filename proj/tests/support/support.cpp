#include "support.hpp"

#include <Eigen/QR>

namespace hagkit::testing {

namespace {

const cplx I(0.0, 1.0);

// a b f for a = alpha.X - beta.Pi, b = gamma.X - delta.Pi, where
// X = x - q and Pi = -i eps grad - p.
cplx apply_pair(const CVec& alpha, const CVec& beta, const CVec& gamma, const CVec& delta, const Jet& j,
                const RVec& X, const RVec& p, double eps) {
    const int d = static_cast<int>(X.size());
    cplx acc = 0.0;
    for (int m = 0; m < d; ++m)
        for (int n = 0; n < d; ++n) {
            const cplx xx = X(m) * X(n) * j.f;
            const cplx xpi = X(m) * (-I * eps * j.grad(n) - p(n) * j.f);
            const cplx pix = -I * eps * ((m == n ? 1.0 : 0.0) * j.f + X(n) * j.grad(m)) - p(m) * X(n) * j.f;
            const cplx pipi = -eps * eps * j.hess(m, n) + I * eps * p(n) * j.grad(m) + I * eps * p(m) * j.grad(n) +
                              p(m) * p(n) * j.f;
            acc += alpha(m) * gamma(n) * xx - alpha(m) * delta(n) * xpi - beta(m) * gamma(n) * pix +
                   beta(m) * delta(n) * pipi;
        }
    return acc;
}

}  // namespace

CMat random_unitary(int d, Rng& rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    CMat a(d, d);
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) a(r, c) = cplx(n(rng), n(rng));
    Eigen::HouseholderQR<CMat> qr(a);
    CMat q = qr.householderQ();
    return q;
}

RVec random_vec(int d, Rng& rng, double radius) {
    std::uniform_real_distribution<double> u(-radius, radius);
    RVec v(d);
    for (int j = 0; j < d; ++j) v(j) = u(rng);
    return v;
}

ParameterSet random_params(int d, Rng& rng, double epsilon, double squeeze) {
    std::normal_distribution<double> n(0.0, 1.0);
    std::uniform_real_distribution<double> u(0.3, 1.0);
    if (epsilon <= 0.0) epsilon = u(rng);
    CMat a(d, d);
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) a(r, c) = cplx(n(rng), n(rng));
    CMat W = 0.5 * (a + a.transpose());
    const double s = Eigen::JacobiSVD<CMat>(W).singularValues()(0);
    W *= squeeze * u(rng) / s;
    ParameterSet ps = from_squeeze(random_vec(d, rng, 1.0), random_vec(d, rng, 1.0), W, epsilon);
    const CMat V = random_unitary(d, rng);
    ps.Q = ps.Q * V;
    ps.P = ps.P * V;
    return ps;
}

PhasePoint random_point(const Basis& b, Rng& rng, double radius_in_sqrt_eps) {
    const double r = radius_in_sqrt_eps * std::sqrt(b.epsilon());
    return PhasePoint{b.q() + random_vec(b.dim(), rng, r), b.p() + random_vec(b.dim(), rng, r)};
}

ComplexFn packet(const Basis& b, const MultiIndex& k) {
    return [&b, k](const RVec& x) { return wavepacket_eval(b, k, x); };
}

double rel_err(cplx a, cplx b, double floor) { return std::abs(a - b) / std::max(std::abs(b), floor); }

Jet cauchy_jet(const EntireFn& f, const RVec& x, double radius, int nodes) {
    const int d = static_cast<int>(x.size());
    const CVec x0 = x.cast<cplx>();
    std::vector<cplx> w(nodes);
    for (int a = 0; a < nodes; ++a) w[a] = radius * std::exp(I * (2.0 * kPi * (a + 0.5) / nodes));
    Jet j;
    j.f = f(x0);
    j.grad = CVec::Zero(d);
    j.hess = CMat::Zero(d, d);
    for (int m = 0; m < d; ++m) {
        cplx g = 0.0, h = 0.0;
        for (int a = 0; a < nodes; ++a) {
            CVec z = x0;
            z(m) += w[a];
            const cplx v = f(z);
            g += v / w[a];
            h += v / (w[a] * w[a]);
        }
        j.grad(m) = g / double(nodes);
        j.hess(m, m) = 2.0 * h / double(nodes);
    }
    for (int m = 0; m < d; ++m)
        for (int n = m + 1; n < d; ++n) {
            cplx h = 0.0;
            for (int a = 0; a < nodes; ++a)
                for (int c = 0; c < nodes; ++c) {
                    CVec z = x0;
                    z(m) += w[a];
                    z(n) += w[c];
                    h += f(z) / (w[a] * w[c]);
                }
            j.hess(m, n) = j.hess(n, m) = h / double(nodes * nodes);
        }
    return j;
}

Jet PacketOracle::jet(const RVec& x) const {
    const IndexSet set = IndexSet::box(k);
    const std::size_t pos = static_cast<std::size_t>(set.find(k));
    const EntireFn f = [&](const CVec& z) { return wavepackets_eval(basis, set, z)[pos]; };
    const double r = 0.5 * std::sqrt(basis.epsilon()) * min_singular_value(basis.Q());
    return cauchy_jet(f, x, r, 48);
}

cplx PacketOracle::position(const RVec& x, int j) const {
    return (x(j) - basis.q()(j)) * wavepacket_eval(basis, k, x);
}

cplx PacketOracle::momentum(const RVec& x, int j) const {
    const Jet t = jet(x);
    return -I * basis.epsilon() * t.grad(j) - basis.p()(j) * t.f;
}

cplx PacketOracle::oscillator(const RVec& x) const {
    const Jet t = jet(x);
    const int d = basis.dim();
    const RVec X = x - basis.q();
    cplx acc = 0.0;
    for (int j = 0; j < d; ++j) {
        const CVec u_x = basis.P().col(j), u_p = basis.Q().col(j);
        const CVec v_x = basis.P().col(j).conjugate(), v_p = basis.Q().col(j).conjugate();
        acc += apply_pair(u_x, u_p, v_x, v_p, t, X, basis.p(), basis.epsilon());
        acc += apply_pair(v_x, v_p, u_x, u_p, t, X, basis.p(), basis.epsilon());
    }
    return acc / (4.0 * basis.epsilon());
}

}  // namespace hagkit::testing
