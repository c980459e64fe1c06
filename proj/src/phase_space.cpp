#include "hagkit/phase_space.hpp"

#include <cmath>
#include <sstream>

#include "hagkit/errors.hpp"
#include "hagkit/parallel.hpp"
#include "hagkit/special.hpp"

namespace hagkit {

namespace {

constexpr cplx I(0.0, 1.0);

void check_point(const Basis& b, const PhasePoint& pt) {
    if (pt.x.size() != b.dim() || pt.xi.size() != b.dim()) {
        std::ostringstream os;
        os << "phase point has dimensions (" << pt.x.size() << ", " << pt.xi.size() << "), expected "
           << b.dim();
        throw StructuralError(os.str());
    }
}

void check_index(const Basis& b, const MultiIndex& k) {
    if (k.dim() != b.dim()) throw StructuralError("multi-index " + k.to_string() + " has wrong dimension");
}

int first_axis(const MultiIndex& k) {
    for (int j = 0; j < k.dim(); ++j)
        if (k[j] > 0) return j;
    return -1;
}

}  // namespace

ZVector z_of(const Basis& b, const PhasePoint& pt) {
    check_point(b, pt);
    const CVec X = (pt.x - b.q()).cast<cplx>();
    const CVec Xi = (pt.xi - b.p()).cast<cplx>();
    return ZVector{-I * (b.P().transpose() * X - b.Q().transpose() * Xi)};
}

ZVector z_via_embedding(const Basis& b, const PhasePoint& pt) {
    check_point(b, pt);
    const int d = b.dim();
    const SymplecticEmbedding e = symplectic_embed(b.params());
    RVec v(2 * d);
    v << pt.x - b.q(), pt.xi - b.p();
    const RVec w = e.F_inv * v;
    ZVector z;
    z.z = CVec(d);
    for (int j = 0; j < d; ++j) z.z(j) = cplx(w(j), w(d + j));
    return z;
}

cplx wigner_closed(const Basis& b, const MultiIndex& k, const MultiIndex& l, const PhasePoint& pt) {
    check_index(b, k);
    check_index(b, l);
    const ZVector z = z_of(b, pt);
    const double eps = b.epsilon();
    const int d = b.dim();
    cplx prod = (l.modulus() % 2 == 0) ? 1.0 : -1.0;
    const double se = std::sqrt(eps);
    for (int j = 0; j < d; ++j) prod *= laguerre_kernel_one_scaled(k[j], l[j], z.z(j) / se);
    return std::pow(kPi * eps, -d) * std::exp(-z.norm2() / eps) * prod;
}

cplx WignerTable::at(const IndexSet& set, const MultiIndex& k, const MultiIndex& l) const {
    const auto i = set.find(k);
    const auto j = set.find(l);
    if (i == IndexSet::npos || j == IndexSet::npos) throw StructuralError("WignerTable: index not in set");
    return values(i, j);
}

WignerTable wigner_table(const Basis& b, const IndexSet& set, const PhasePoint& pt, FillOrder order) {
    set.require_downward_closed("wigner_table");
    WignerTable t;
    t.point = pt;
    t.z = z_of(b, pt);
    const std::size_t n = set.size();
    t.values = CMat::Zero(n, n);
    if (n == 0) return t;
    const double eps = b.epsilon();
    const int d = b.dim();
    const double s = std::sqrt(2.0 / eps);
    const CVec zk = s * t.z.z;             // multiplies when raising k
    const CVec zl = s * t.z.z.conjugate(); // multiplies when raising l
    CMat& W = t.values;
    W(0, 0) = std::pow(kPi * eps, -d) * std::exp(-t.z.norm2() / eps);

    // sqrt(k_j) W_{k,l} = zk_j W_{k-e_j,l} - sqrt(l_j) W_{k-e_j,l-e_j}
    auto raise_k = [&](std::size_t ik, std::size_t il) {
        const int j = first_axis(set[ik]);
        const auto km = static_cast<std::size_t>(set.below(ik, j));
        cplx v = zk(j) * W(km, il);
        const int lj = set[il][j];
        if (lj > 0) v -= std::sqrt(double(lj)) * W(km, set.below(il, j));
        W(ik, il) = v / std::sqrt(double(set[ik][j]));
    };
    // sqrt(l_j) W_{k,l} = zl_j W_{k,l-e_j} - sqrt(k_j) W_{k-e_j,l-e_j}
    auto raise_l = [&](std::size_t ik, std::size_t il) {
        const int j = first_axis(set[il]);
        const auto lm = static_cast<std::size_t>(set.below(il, j));
        cplx v = zl(j) * W(ik, lm);
        const int kj = set[ik][j];
        if (kj > 0) v -= std::sqrt(double(kj)) * W(set.below(ik, j), lm);
        W(ik, il) = v / std::sqrt(double(set[il][j]));
    };

    if (order == FillOrder::l_first) {
        for (std::size_t il = 1; il < n; ++il) raise_l(0, il);
        for (std::size_t ik = 1; ik < n; ++ik)
            for (std::size_t il = 0; il < n; ++il) raise_k(ik, il);
    } else {
        for (std::size_t ik = 1; ik < n; ++ik) raise_k(ik, 0);
        for (std::size_t il = 1; il < n; ++il)
            for (std::size_t ik = 0; ik < n; ++ik) raise_l(ik, il);
    }
    return t;
}

std::vector<double> wigner_superposition(const Basis& b, const CoefficientVector& c,
                                         const std::vector<PhasePoint>& points, int workers) {
    c.set.require_downward_closed("wigner_superposition");
    if (c.coeffs.size() != c.set.size()) throw StructuralError("coefficient vector length mismatch");
    std::vector<double> out(points.size());
    const std::size_t n = c.set.size();
    parallel_for(points.size(), workers, [&](std::size_t ip) {
        const WignerTable t = wigner_table(b, c.set, points[ip]);
        cplx sum = 0.0;
        double mag = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (c.coeffs[i] == 0.0) continue;
            const cplx ci = std::conj(c.coeffs[i]);
            for (std::size_t j = 0; j < n; ++j) {
                const cplx term = ci * c.coeffs[j] * t.values(i, j);
                sum += term;
                mag += std::abs(term);
            }
        }
        if (!std::isfinite(sum.real()) || !std::isfinite(sum.imag())) {
            std::ostringstream os;
            os << "non-finite Wigner value at point " << ip;
            throw NumericalError(os.str());
        }
        if (std::abs(sum.imag()) > 1e-10 * std::max(mag, 1e-300) && std::abs(sum.imag()) > 1e-300) {
            std::ostringstream os;
            os << "Wigner superposition at point " << ip << " has imaginary residue " << sum.imag()
               << " (scale " << mag << ")";
            throw NumericalError(os.str());
        }
        out[ip] = sum.real();
    });
    return out;
}

double eigenspace_trace(const Basis& b, int n, const PhasePoint& pt) {
    if (n < 0) throw DomainError("eigenspace_trace: negative level");
    const ZVector z = z_of(b, pt);
    const double eps = b.epsilon();
    const int d = b.dim();
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    const double lag = laguerre_poly(n, d - 1, cplx(2.0 * z.norm2() / eps, 0.0)).real();
    return sign * std::pow(kPi * eps, -d) * std::exp(-z.norm2() / eps) * lag;
}

cplx wigner_metaplectic(const Basis& b, const MultiIndex& k, const MultiIndex& l, const PhasePoint& pt) {
    check_index(b, k);
    check_index(b, l);
    const ZVector z = z_via_embedding(b, pt);
    const double se = std::sqrt(b.epsilon());
    cplx out = std::pow(b.epsilon(), -b.dim());
    for (int j = 0; j < b.dim(); ++j)
        out *= hermite_wigner(k[j], l[j], z.z(j).real() / se, z.z(j).imag() / se);
    return out;
}

bool is_isotropic(const Basis& b, double tol) {
    const int d = b.dim();
    return max_abs(b.C() - I * CMat::Identity(d, d)) <= tol;
}

namespace {

double fbi_norm(const MultiIndex& k, int d, double eps) {
    return std::pow(kPi * eps, d) * std::sqrt(std::pow(2.0, k.modulus() + d) * k.factorial());
}

}  // namespace

cplx fbi_general(const Basis& b, const MultiIndex& k, const PhasePoint& pt) {
    check_index(b, k);
    check_point(b, pt);
    const int d = b.dim();
    const double eps = b.epsilon();
    const CMat id = CMat::Identity(d, d);
    const RVec X = pt.x - b.q();
    const RVec Xi = pt.xi - b.p();
    const CMat A = id - I * b.C();
    const CVec w = A.partialPivLu().solve(X.cast<cplx>() - I * Xi.cast<cplx>());
    const CMat M = 0.5 * (id - I * b.C().conjugate());
    const cplx moment = gaussian_moment(b, M, k, w);
    const cplx wAw = w.transpose() * A * w;
    const cplx expo = I * pt.xi.dot(X) / eps - X.squaredNorm() / (2.0 * eps) + wAw / (2.0 * eps);
    return std::exp(expo) * b.inv_sqrt_det_q() * moment / fbi_norm(k, d, eps);
}

cplx fbi_isotropic(const Basis& b, const MultiIndex& k, const PhasePoint& pt) {
    check_index(b, k);
    check_point(b, pt);
    if (!is_isotropic(b, 1e-10)) throw DomainError("fbi_isotropic requires C = i Id");
    const int d = b.dim();
    const double eps = b.epsilon();
    const RVec X = pt.x - b.q();
    const RVec Xi = pt.xi - b.p();
    const CVec z = X.cast<cplx>() - I * Xi.cast<cplx>();
    const CVec u = b.Q_inv() * z / std::sqrt(eps);
    cplx pw = 1.0;
    for (int j = 0; j < d; ++j)
        for (int r = 0; r < k[j]; ++r) pw *= u(j);
    const cplx expo = I * X.dot(pt.xi + b.p()) / (2.0 * eps) - z.squaredNorm() / (4.0 * eps);
    return std::exp(expo) * b.inv_sqrt_det_q() * pw * std::pow(kPi * eps, 0.5 * d) / fbi_norm(k, d, eps);
}

cplx fbi_closed(const Basis& b, const MultiIndex& k, const PhasePoint& pt) {
    return is_isotropic(b) ? fbi_isotropic(b, k, pt) : fbi_general(b, k, pt);
}

double husimi(const Basis& b, const MultiIndex& k, const PhasePoint& pt) {
    return std::norm(fbi_closed(b, k, pt));
}

double phase_ladder_residual(const Basis& b, const MultiIndex& k, const MultiIndex& l,
                             const PhasePoint& pt, double h, LadderSigns signs) {
    check_index(b, k);
    check_index(b, l);
    check_point(b, pt);
    const int d = b.dim();
    const double eps = b.epsilon();
    if (h <= 0.0) h = 1e-3 * std::sqrt(eps);

    auto W = [&](const MultiIndex& a, const MultiIndex& c, const PhasePoint& p) {
        return wigner_closed(b, a, c, p);
    };
    const cplx w0 = W(k, l, pt);
    // D_x W and D_xi W, with D = -i eps d/d.
    CVec Dx(d), Dxi(d);
    for (int m = 0; m < d; ++m) {
        PhasePoint a = pt, c = pt;
        a.x(m) += h;
        c.x(m) -= h;
        Dx(m) = -I * eps * (W(k, l, a) - W(k, l, c)) / (2.0 * h);
        a = pt;
        c = pt;
        a.xi(m) += h;
        c.xi(m) -= h;
        Dxi(m) = -I * eps * (W(k, l, a) - W(k, l, c)) / (2.0 * h);
    }
    const CVec X = (pt.x - b.q()).cast<cplx>() * w0;
    const CVec Xi = (pt.xi - b.p()).cast<cplx>() * w0;
    const double s = 1.0 / std::sqrt(2.0 * eps);
    const double first = (signs == LadderSigns::resolved) ? 1.0 : -1.0;

    const CMat Pt = b.P().transpose(), Qt = b.Q().transpose();
    const CMat Ps = b.P().adjoint(), Qs = b.Q().adjoint();
    const CVec kdag = first * (-I * s) * (Pt * (2.0 * X + Dxi) - Qt * (2.0 * Xi - Dx));
    const CVec kop = first * (I * s) * (Ps * (2.0 * X + Dxi) - Qs * (2.0 * Xi - Dx));
    const CVec ldag = (I * s) * (Ps * (2.0 * X - Dxi) - Qs * (2.0 * Xi + Dx));
    const CVec lop = (-I * s) * (Pt * (2.0 * X - Dxi) - Qt * (2.0 * Xi + Dx));

    double res = 0.0;
    for (int j = 0; j < d; ++j) {
        const cplx up_k = 2.0 * std::sqrt(k[j] + 1.0) * W(k.raised(j), l, pt);
        const cplx dn_k = k[j] > 0 ? 2.0 * std::sqrt(double(k[j])) * W(k.lowered(j), l, pt) : 0.0;
        const cplx up_l = 2.0 * std::sqrt(l[j] + 1.0) * W(k, l.raised(j), pt);
        const cplx dn_l = l[j] > 0 ? 2.0 * std::sqrt(double(l[j])) * W(k, l.lowered(j), pt) : 0.0;
        res = std::max({res, std::abs(kdag(j) - up_k), std::abs(kop(j) - dn_k), std::abs(ldag(j) - up_l),
                        std::abs(lop(j) - dn_l)});
    }
    return res;
}

}  // namespace hagkit
