#include "hagkit/wavepacket.hpp"

#include <cmath>
#include <map>
#include <sstream>

#include "hagkit/errors.hpp"
#include "hagkit/special.hpp"

namespace hagkit {

namespace {

constexpr cplx I(0.0, 1.0);

bool finite(cplx v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

int first_axis(const MultiIndex& k) {
    for (int j = 0; j < k.dim(); ++j)
        if (k[j] > 0) return j;
    return -1;
}

void check_point(const Basis& b, Eigen::Index n, const char* who) {
    if (n != b.dim()) {
        std::ostringstream os;
        os << who << ": point has dimension " << n << ", expected " << b.dim();
        throw StructuralError(os.str());
    }
}

void overflow(const MultiIndex& k) {
    throw NumericalError("non-finite wavepacket value at index " + k.to_string());
}

}  // namespace

Basis::Basis(ParameterSet params, double tol) : ps_(std::move(params)) {
    require_valid(ps_, tol);
    Eigen::FullPivLU<CMat> lu(ps_.Q);
    q_inv_ = lu.inverse();
    q_inv_q_bar_ = q_inv_ * ps_.Q.conjugate();
    c_ = width_matrix(ps_);
    im_c_ = c_.imag();
    im_c_ = (0.5 * (im_c_ + im_c_.transpose())).eval();
    if (ps_.sqrt_det_q) {
        const cplx det = ps_.Q.determinant();
        if (std::abs(*ps_.sqrt_det_q * *ps_.sqrt_det_q - det) > 1e-8 * std::abs(det))
            throw DataError("sqrt_det_q is not a square root of det(Q)");
    }
    inv_sqrt_det_q_ = 1.0 / sqrt_det_q(ps_);
    prefactor_ = std::pow(kPi * ps_.epsilon, -0.25 * dim()) * inv_sqrt_det_q_;
}

cplx gaussian_eval(const Basis& b, const CVec& x) {
    check_point(b, x.size(), "gaussian_eval");
    const CVec X = x - b.q().cast<cplx>();
    const cplx quad = X.transpose() * b.C() * X;
    const cplx lin = b.p().cast<cplx>().dot(X);  // dot conjugates the real left operand: harmless
    return b.gaussian_prefactor() * std::exp(I / b.epsilon() * (0.5 * quad + lin));
}

cplx gaussian_eval(const Basis& b, const RVec& x) { return gaussian_eval(b, CVec(x.cast<cplx>())); }

cplx gaussian_eval(const ParameterSet& ps, const RVec& x) { return gaussian_eval(Basis(ps), x); }

PolynomialTable polys_eval(const Basis& b, const IndexSet& set, const CVec& x) {
    set.require_downward_closed("polys_eval");
    check_point(b, x.size(), "polys_eval");
    const int d = b.dim();
    const CVec y = (2.0 / std::sqrt(b.epsilon())) * b.Q_inv() * (x - b.q().cast<cplx>());
    const CMat R = 2.0 * b.Q_inv_Q_bar();
    PolynomialTable t;
    t.point = x;
    t.values.assign(set.size(), 0.0);
    if (set.size() == 0) return t;
    t.values[0] = 1.0;
    for (std::size_t i = 1; i < set.size(); ++i) {
        const int j = first_axis(set[i]);
        const std::size_t nu = static_cast<std::size_t>(set.below(i, j));
        const MultiIndex& kn = set[nu];
        cplx v = y(j) * t.values[nu];
        for (int l = 0; l < d; ++l)
            if (kn[l] > 0) v -= R(j, l) * double(kn[l]) * t.values[set.below(nu, l)];
        t.values[i] = v;
    }
    return t;
}

std::vector<cplx> wavepackets_eval(const Basis& b, const IndexSet& set, const CVec& x) {
    set.require_downward_closed("wavepackets_eval");
    check_point(b, x.size(), "wavepackets_eval");
    const int d = b.dim();
    const CVec y = std::sqrt(2.0 / b.epsilon()) * b.Q_inv() * (x - b.q().cast<cplx>());
    const CMat& R = b.Q_inv_Q_bar();
    std::vector<cplx> phi(set.size(), 0.0);
    if (set.size() == 0) return phi;
    phi[0] = gaussian_eval(b, x);
    for (std::size_t i = 1; i < set.size(); ++i) {
        const int j = first_axis(set[i]);
        const std::size_t nu = static_cast<std::size_t>(set.below(i, j));
        const MultiIndex& kn = set[nu];
        cplx v = y(j) * phi[nu];
        for (int l = 0; l < d; ++l)
            if (kn[l] > 0) v -= R(j, l) * std::sqrt(double(kn[l])) * phi[set.below(nu, l)];
        phi[i] = v / std::sqrt(double(set[i][j]));
        if (!finite(phi[i])) overflow(set[i]);
    }
    return phi;
}

std::vector<cplx> wavepackets_eval(const Basis& b, const IndexSet& set, const RVec& x) {
    return wavepackets_eval(b, set, CVec(x.cast<cplx>()));
}

cplx wavepacket_eval(const Basis& b, const MultiIndex& k, const RVec& x) {
    if (k.dim() != b.dim()) throw StructuralError("wavepacket_eval: index has wrong dimension");
    const IndexSet box = IndexSet::box(k);
    const CVec xc = x.cast<cplx>();
    if (k.modulus() > 100) return wavepackets_eval(b, box, xc).back();
    const PolynomialTable t = polys_eval(b, box, xc);
    const double norm = std::sqrt(std::pow(2.0, k.modulus()) * k.factorial());
    const cplx v = t.values.back() * gaussian_eval(b, xc) / norm;
    if (!finite(v)) overflow(k);
    return v;
}

cplx wavepacket_eval(const ParameterSet& ps, const MultiIndex& k, const RVec& x) {
    return wavepacket_eval(Basis(ps), k, x);
}

namespace {

// prod_j binom(k_j, nu_j) u_j^{k_j - nu_j}
cplx binomial_power(const MultiIndex& k, const MultiIndex& nu, const CVec& u) {
    cplx out = 1.0;
    for (int j = 0; j < k.dim(); ++j) {
        out *= binomial(k[j], nu[j]);
        for (int r = 0; r < k[j] - nu[j]; ++r) out *= u(j);
    }
    return out;
}

}  // namespace

cplx poly_translate(const Basis& b, const MultiIndex& k, const CVec& x, const CVec& z) {
    check_point(b, z.size(), "poly_translate");
    const IndexSet box = IndexSet::box(k);
    const PolynomialTable t = polys_eval(b, box, x);
    const CVec u = (2.0 / std::sqrt(b.epsilon())) * b.Q_inv() * z;
    cplx s = 0.0;
    for (std::size_t i = 0; i < box.size(); ++i) s += binomial_power(k, box[i], u) * t.values[i];
    return s;
}

cplx poly_rodriguez(const Basis& b, const MultiIndex& k, const RVec& x, int cap) {
    if (k.modulus() > cap) {
        std::ostringstream os;
        os << "poly_rodriguez: |k| = " << k.modulus() << " exceeds the cap " << cap;
        throw DomainError(os.str());
    }
    check_point(b, x.size(), "poly_rodriguez");
    const int d = b.dim();
    const double se = std::sqrt(b.epsilon());
    const RMat& G = b.Im_C();
    const CMat Qs = b.Q().adjoint();
    using Poly = std::map<std::vector<int>, cplx>;
    Poly f{{std::vector<int>(d, 0), 1.0}};

    // f -> -sqrt(eps) sum_m Qs(j, m) (d_m f - (2/eps) (G X)_m f)
    auto apply = [&](const Poly& g, int j) {
        Poly out;
        for (const auto& [mono, c] : g) {
            for (int m = 0; m < d; ++m) {
                const cplx w = -se * Qs(j, m);
                if (mono[m] > 0) {
                    auto e = mono;
                    --e[m];
                    out[e] += w * c * double(mono[m]);
                }
                for (int r = 0; r < d; ++r) {
                    if (G(m, r) == 0.0) continue;
                    auto e = mono;
                    ++e[r];
                    out[e] += -w * (2.0 / b.epsilon()) * G(m, r) * c;
                }
            }
        }
        return out;
    };
    for (int j = 0; j < d; ++j)
        for (int r = 0; r < k[j]; ++r) f = apply(f, j);

    const RVec X = x - b.q();
    cplx s = 0.0;
    for (const auto& [mono, c] : f) {
        double v = 1.0;
        for (int m = 0; m < d; ++m) v *= std::pow(X(m), mono[m]);
        s += c * v;
    }
    return s;
}

cplx gaussian_moment(const Basis& b, const CMat& M, const MultiIndex& k, const CVec& z) {
    const int d = b.dim();
    if (M.rows() != d || M.cols() != d) throw StructuralError("gaussian_moment: M has wrong shape");
    check_point(b, z.size(), "gaussian_moment");
    const CMat Ms = 0.5 * (M + M.transpose());
    const CMat G = b.Im_C().cast<cplx>() + Ms;
    const RMat reG = G.real();
    const double lam = Eigen::SelfAdjointEigenSolver<RMat>(0.5 * (reG + reG.transpose()),
                                                           Eigen::EigenvaluesOnly)
                           .eigenvalues()
                           .minCoeff();
    if (!(lam > 0.0)) {
        std::ostringstream os;
        os << "gaussian_moment: Im(C) + Re(M) is not positive definite (eigenvalue " << lam << ")";
        throw DomainError(os.str());
    }
    const CMat N = CMat::Identity(d, d) + b.Q().adjoint() * Ms * b.Q();
    const double smin = min_singular_value(N);
    if (!(smin > 1e-14 * std::max(1.0, max_abs(N)))) {
        std::ostringstream os;
        os << "gaussian_moment: Id + Q*MQ is singular (smallest singular value " << smin << ")";
        throw DomainError(os.str());
    }
    const CMat R = -2.0 * N.fullPivLu().solve(b.Q().adjoint() * Ms * b.Q().conjugate());

    const IndexSet box = IndexSet::box(k);
    std::vector<cplx> c(box.size(), 0.0);
    c[0] = std::pow(kPi * b.epsilon(), 0.5 * d) / sqrt_det_positive_real(G);
    for (std::size_t i = 1; i < box.size(); ++i) {
        if (box[i].modulus() % 2 == 1) continue;
        const int j = first_axis(box[i]);
        const std::size_t nu = static_cast<std::size_t>(box.below(i, j));
        const MultiIndex& kn = box[nu];
        cplx v = 0.0;
        for (int l = 0; l < d; ++l)
            if (kn[l] > 0) v += R(j, l) * double(kn[l]) * c[box.below(nu, l)];
        c[i] = v;
    }
    const CVec u = (2.0 / std::sqrt(b.epsilon())) * b.Q_inv() * z;
    cplx s = 0.0;
    for (std::size_t i = 0; i < box.size(); ++i)
        if (c[i] != 0.0) s += binomial_power(k, box[i], u) * c[i];
    return s;
}

CoefficientVector CoefficientVector::unit(const IndexSet& set, const MultiIndex& k) {
    CoefficientVector cv = zeros(set);
    const auto i = set.find(k);
    if (i == IndexSet::npos) throw StructuralError("unit: index " + k.to_string() + " not in set");
    cv.coeffs[i] = 1.0;
    return cv;
}

CoefficientVector CoefficientVector::zeros(const IndexSet& set) {
    return CoefficientVector{set, std::vector<cplx>(set.size(), 0.0)};
}

cplx CoefficientVector::at(const MultiIndex& k) const {
    const auto i = set.find(k);
    return i == IndexSet::npos ? cplx(0.0) : coeffs[i];
}

double CoefficientVector::norm2() const {
    double s = 0.0;
    for (const auto& c : coeffs) s += std::norm(c);
    return s;
}

CoefficientVector combine(cplx a, const CoefficientVector& x, cplx b, const CoefficientVector& y) {
    CoefficientVector out = CoefficientVector::zeros(x.set.united(y.set));
    for (std::size_t i = 0; i < out.set.size(); ++i)
        out.coeffs[i] = a * x.at(out.set[i]) + b * y.at(out.set[i]);
    return out;
}

double max_abs_difference(const CoefficientVector& x, const CoefficientVector& y) {
    const IndexSet u = x.set.united(y.set);
    double m = 0.0;
    for (const auto& k : u) m = std::max(m, std::abs(x.at(k) - y.at(k)));
    return m;
}

namespace {

// sum_i (lo_i A_i + hi_i A_i^dagger) applied in coefficient space
CoefficientVector ladder_combination(const CoefficientVector& c, const CVec& lo, const CVec& hi) {
    const int d = c.set.dim();
    c.set.require_downward_closed("ladder action");
    IndexSet out_set = c.set;
    for (int i = 0; i < d; ++i)
        if (hi(i) != 0.0) out_set = out_set.united(c.set.raised(i));
    CoefficientVector out = CoefficientVector::zeros(out_set);
    for (std::size_t r = 0; r < out_set.size(); ++r) {
        const MultiIndex& m = out_set[r];
        cplx v = 0.0;
        for (int i = 0; i < d; ++i) {
            if (lo(i) != 0.0) v += lo(i) * std::sqrt(m[i] + 1.0) * c.at(m.raised(i));
            if (hi(i) != 0.0 && m[i] > 0) v += hi(i) * std::sqrt(double(m[i])) * c.at(m.lowered(i));
        }
        out.coeffs[r] = v;
    }
    return out;
}

CVec unit_weight(int d, int j) {
    CVec w = CVec::Zero(d);
    w(j) = 1.0;
    return w;
}

}  // namespace

CoefficientVector raise_coeffs(const CoefficientVector& c, int j) {
    const int d = c.set.dim();
    return ladder_combination(c, CVec::Zero(d), unit_weight(d, j));
}

CoefficientVector lower_coeffs(const CoefficientVector& c, int j) {
    const int d = c.set.dim();
    return ladder_combination(c, unit_weight(d, j), CVec::Zero(d));
}

// x - q = sqrt(eps/2) (conj(Q) A + Q A^dagger)
CoefficientVector position_action(const Basis& b, const CoefficientVector& c, int j) {
    const double s = std::sqrt(0.5 * b.epsilon());
    return ladder_combination(c, s * b.Q().row(j).conjugate().transpose(), s * b.Q().row(j).transpose());
}

// -i eps grad - p = sqrt(eps/2) (conj(P) A + P A^dagger)
CoefficientVector momentum_action(const Basis& b, const CoefficientVector& c, int j) {
    const double s = std::sqrt(0.5 * b.epsilon());
    return ladder_combination(c, s * b.P().row(j).conjugate().transpose(), s * b.P().row(j).transpose());
}

CoefficientVector oscillator_action(const Basis& b, const CoefficientVector& c) {
    const int d = b.dim();
    // u_j = (P^T X - Q^T Pi)_j,  v_j = (P^* X - Q^* Pi)_j
    auto apply_uv = [&](const CoefficientVector& f, int j, bool conj) {
        CoefficientVector acc = CoefficientVector::zeros(f.set);
        for (int i = 0; i < d; ++i) {
            cplx pc = b.P()(i, j);
            cplx qc = b.Q()(i, j);
            if (conj) {
                pc = std::conj(pc);
                qc = std::conj(qc);
            }
            acc = combine(1.0, acc, pc, position_action(b, f, i));
            acc = combine(1.0, acc, -qc, momentum_action(b, f, i));
        }
        return acc;
    };
    CoefficientVector out = CoefficientVector::zeros(c.set);
    for (int j = 0; j < d; ++j) {
        out = combine(1.0, out, 1.0, apply_uv(apply_uv(c, j, true), j, false));
        out = combine(1.0, out, 1.0, apply_uv(apply_uv(c, j, false), j, true));
    }
    for (auto& v : out.coeffs) v /= 4.0 * b.epsilon();
    return out;
}

ComplexFn heisenberg_weyl(ComplexFn f, const RVec& a, const RVec& b, double epsilon) {
    return [f = std::move(f), a, b, epsilon](const RVec& x) {
        return std::exp(cplx(0.0, b.dot(x - 0.5 * a) / epsilon)) * f(x - a);
    };
}

std::vector<MultiIndex> redundant_enumeration(int d, int n) {
    std::vector<MultiIndex> cur{MultiIndex(d)};
    for (int level = 0; level < n; ++level) {
        std::vector<MultiIndex> next;
        next.reserve(cur.size() * d);
        for (int l = 0; l < d; ++l)
            for (const auto& k : cur) next.push_back(k.raised(l));
        cur = std::move(next);
    }
    return cur;
}

namespace {

void check_cap(int d, int n, std::size_t cap) {
    double size = std::pow(double(d), n);
    if (n < 0 || size > double(cap)) {
        std::ostringstream os;
        os << "eigenspace vector of size " << size << " exceeds the cap " << cap;
        throw DomainError(os.str());
    }
}

}  // namespace

EigenspaceVector eigenspace_vector(const Basis& b, int n, const RVec& x, std::size_t cap) {
    const int d = b.dim();
    check_cap(d, n, cap);
    const IndexSet all = IndexSet::total_degree(d, n);
    const std::vector<cplx> phi = wavepackets_eval(b, all, x);
    EigenspaceVector ev;
    ev.n = n;
    ev.slots = redundant_enumeration(d, n);
    ev.repeated.assign(ev.slots.size(), false);
    ev.entries = CVec::Zero(static_cast<Eigen::Index>(ev.slots.size()));
    std::map<MultiIndex, bool> seen;
    for (std::size_t s = 0; s < ev.slots.size(); ++s) {
        if (seen.count(ev.slots[s])) {
            ev.repeated[s] = true;
            continue;
        }
        seen[ev.slots[s]] = true;
        ev.entries(s) = phi[all.find(ev.slots[s])];
    }
    return ev;
}

CVec eigenspace_vector_raw(const Basis& b, int n, const RVec& x, std::size_t cap) {
    const int d = b.dim();
    check_cap(d, n, cap);
    const IndexSet all = IndexSet::total_degree(d, n);
    const std::vector<cplx> phi = wavepackets_eval(b, all, x);
    const auto slots = redundant_enumeration(d, n);
    CVec out(static_cast<Eigen::Index>(slots.size()));
    for (std::size_t s = 0; s < slots.size(); ++s)
        out(s) = std::sqrt(slots[s].factorial()) * phi[all.find(slots[s])];
    return out;
}

}  // namespace hagkit
