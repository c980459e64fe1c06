#include "hagkit/approximation.hpp"

#include <cmath>

#include "hagkit/errors.hpp"

namespace hagkit {

IndexSet hyperbolic_set(int d, int K, std::size_t cap) { return IndexSet::hyperbolic(d, K, cap); }

QuadratureSpec default_projection_spec(const Basis& b) {
    QuadratureSpec s;
    s.scheme = Scheme::trapezoid;
    s.nodes_per_axis = static_cast<int>(std::ceil(160.0 / std::sqrt(b.epsilon())));
    s.truncation_radius = 8.0;
    return s;
}

Projection project(const ComplexFn& psi, const Basis& b, const IndexSet& set, const QuadratureSpec& spec,
                   const Window& window) {
    set.require_downward_closed("project");
    const std::size_t n = set.size();
    const QuadResultVec r = integrate_vec(
        [&](const RVec& x) {
            const auto phi = wavepackets_eval(b, set, x);
            const cplx f = psi(x);
            CVec v(static_cast<Eigen::Index>(n + 1));
            for (std::size_t i = 0; i < n; ++i) v(i) = std::conj(phi[i]) * f;
            v(n) = std::norm(f);
            return v;
        },
        window, spec);
    Projection p;
    p.coeffs.set = set;
    p.coeffs.coeffs.assign(r.value.data(), r.value.data() + n);
    p.psi_norm2 = r.value(n).real();
    p.bessel_defect = p.psi_norm2 - p.coeffs.norm2();
    p.max_delta = r.delta;
    p.truncation_warning = r.truncation_warning;
    for (const auto& c : p.coeffs.coeffs)
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
            throw NumericalError("projection produced a non-finite coefficient");
    return p;
}

Projection project(const ComplexFn& psi, const Basis& b, const IndexSet& set, const QuadratureSpec& spec) {
    return project(psi, b, set, spec, wavepacket_window(b, set.max_modulus()));
}

Projection project_samples(const std::vector<std::vector<double>>& axes, const std::vector<cplx>& values,
                           const Basis& b, const IndexSet& set) {
    set.require_downward_closed("project_samples");
    const int d = b.dim();
    if (static_cast<int>(axes.size()) != d) throw StructuralError("sample grid dimension mismatch");
    std::size_t total = 1;
    for (const auto& ax : axes) {
        if (ax.size() < 2) throw StructuralError("sample grid axis needs at least 2 points");
        total *= ax.size();
    }
    if (values.size() != total) throw StructuralError("sample count does not match the grid");
    const std::size_t n = set.size();
    std::vector<cplx> acc(n, 0.0);
    double norm2 = 0.0;
    RVec x(d);
    for (std::size_t t = 0; t < total; ++t) {
        std::size_t r = t;
        double w = 1.0;
        for (int a = d - 1; a >= 0; --a) {
            const auto& ax = axes[a];
            const std::size_t i = r % ax.size();
            r /= ax.size();
            x(a) = ax[i];
            const double h = (ax.back() - ax.front()) / (ax.size() - 1);
            w *= (i == 0 || i + 1 == ax.size()) ? 0.5 * h : h;
        }
        const auto phi = wavepackets_eval(b, set, x);
        for (std::size_t i = 0; i < n; ++i) acc[i] += w * std::conj(phi[i]) * values[t];
        norm2 += w * std::norm(values[t]);
    }
    Projection p;
    p.coeffs.set = set;
    p.coeffs.coeffs = acc;
    p.psi_norm2 = norm2;
    p.bessel_defect = norm2 - p.coeffs.norm2();
    return p;
}

cplx reconstruct(const CoefficientVector& c, const Basis& b, const RVec& x) {
    if (c.coeffs.size() != c.set.size()) throw StructuralError("coefficient vector length mismatch");
    const auto phi = wavepackets_eval(b, c.set, x);
    cplx s = 0.0;
    for (std::size_t i = 0; i < phi.size(); ++i) s += c.coeffs[i] * phi[i];
    return s;
}

ErrorReport error_report(const ComplexFn& psi, const CoefficientVector& c, const Basis& b,
                         const QuadratureSpec& spec, const Window& window) {
    const QuadResultVec r = integrate_vec(
        [&](const RVec& x) {
            const cplx f = psi(x);
            CVec v(2);
            v(0) = std::norm(f - reconstruct(c, b, x));
            v(1) = std::norm(f);
            return v;
        },
        window, spec);
    ErrorReport e;
    e.l2_residual = std::sqrt(std::max(0.0, r.value(0).real()));
    e.psi_norm2 = r.value(1).real();
    e.bessel_defect = e.psi_norm2 - c.norm2();
    e.truncation_warning = r.truncation_warning;
    e.shell_energy.assign(c.set.max_modulus() + 1, 0.0);
    for (std::size_t i = 0; i < c.set.size(); ++i) e.shell_energy[c.set[i].modulus()] += std::norm(c.coeffs[i]);
    return e;
}

std::vector<double> wigner_of_function(const CoefficientVector& c, const Basis& b,
                                       const std::vector<PhasePoint>& points, int workers) {
    return wigner_superposition(b, c, points, workers);
}

}  // namespace hagkit
