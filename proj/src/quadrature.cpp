#include "hagkit/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>

#include "hagkit/errors.hpp"
#include "hagkit/special.hpp"

namespace hagkit {

namespace {

constexpr cplx I(0.0, 1.0);

// Neumaier compensated accumulator for complex vectors.
struct Accumulator {
    CVec sum, comp;
    explicit Accumulator(Eigen::Index n) : sum(CVec::Zero(n)), comp(CVec::Zero(n)) {}
    static void add(double& s, double& c, double v) {
        const double t = s + v;
        if (std::abs(s) >= std::abs(v))
            c += (s - t) + v;
        else
            c += (v - t) + s;
        s = t;
    }
    void add(const CVec& v) {
        for (Eigen::Index i = 0; i < v.size(); ++i) {
            double sr = sum(i).real(), si = sum(i).imag(), cr = comp(i).real(), ci = comp(i).imag();
            add(sr, cr, v(i).real());
            add(si, ci, v(i).imag());
            sum(i) = cplx(sr, si);
            comp(i) = cplx(cr, ci);
        }
    }
    CVec total() const { return sum + comp; }
};

void check_spec(const QuadratureSpec& s) {
    if (s.nodes_per_axis < 2) throw DomainError("quadrature needs at least 2 nodes per axis");
    if (!(s.truncation_radius > 0.0)) throw DomainError("truncation radius must be positive");
}

struct Pass {
    CVec value;
    bool warning = false;
};

Pass run(const VectorFn& f, const Window& w, const QuadratureSpec& spec, int n) {
    const Eigen::Index d = w.center.size();
    if (w.scale.size() != d || d < 1) throw StructuralError("quadrature window has inconsistent dimensions");
    if (d > 2) throw DomainError("quadrature oracles support d <= 2");
    const Rule1D rule = spec.scheme == Scheme::gauss_hermite ? gauss_hermite_rule(n)
                                                             : trapezoid_rule(n, spec.truncation_radius);
    const std::size_t m = rule.nodes.size();
    std::size_t total = 1;
    for (Eigen::Index j = 0; j < d; ++j) total *= m;

    std::optional<Accumulator> acc;
    double boundary = 0.0, interior = 0.0;
    std::vector<std::size_t> idx(d, 0);
    RVec x(d);
    for (std::size_t t = 0; t < total; ++t) {
        std::size_t r = t;
        double weight = 1.0;
        bool edge = false;
        for (Eigen::Index j = d - 1; j >= 0; --j) {
            idx[j] = r % m;
            r /= m;
            x(j) = w.center(j) + w.scale(j) * rule.nodes[idx[j]];
            weight *= w.scale(j) * rule.weights[idx[j]];
            edge = edge || idx[j] == 0 || idx[j] == m - 1;
        }
        const CVec v = f(x);
        if (!acc) acc.emplace(v.size());
        acc->add(weight * v);
        const double mag = v.size() ? v.cwiseAbs().maxCoeff() : 0.0;
        if (edge)
            boundary = std::max(boundary, mag);
        else
            interior = std::max(interior, mag);
    }
    Pass p;
    p.value = acc->total();
    p.warning = spec.scheme == Scheme::trapezoid && boundary > 1e-3 * interior;
    if (!all_finite(p.value)) throw NumericalError("quadrature produced a non-finite value");
    return p;
}

}  // namespace

Rule1D gauss_hermite_rule(int n) {
    if (n < 1) throw DomainError("Gauss-Hermite rule needs n >= 1");
    static std::mutex mu;
    static std::map<int, Rule1D> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(n);
        if (it != cache.end()) return it->second;
    }
    // Golub-Welsch on the Jacobi matrix of the Hermite weight exp(-t^2).
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd sub(std::max(n - 1, 0));
    for (int i = 1; i < n; ++i) sub(i - 1) = std::sqrt(0.5 * i);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    Rule1D r;
    r.nodes.resize(n);
    r.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        double t = es.eigenvalues()(i);
        // Newton polish on the normalized Hermite function psi_n.
        for (int it = 0; it < 3; ++it) {
            const auto psi = hermite_functions(n, t);
            const double f = psi[n];
            const double df = std::sqrt(2.0 * n) * psi[n - 1] - t * psi[n];
            if (df == 0.0) break;
            t -= f / df;
        }
        const auto psi = hermite_functions(n - 1, t);
        double s = 0.0;
        for (double v : psi) s += v * v;
        r.nodes[i] = t;
        r.weights[i] = 1.0 / s;
    }
    // symmetrize
    for (int i = 0; i < n / 2; ++i) {
        const double t = 0.5 * (r.nodes[n - 1 - i] - r.nodes[i]);
        const double w = 0.5 * (r.weights[n - 1 - i] + r.weights[i]);
        r.nodes[i] = -t;
        r.nodes[n - 1 - i] = t;
        r.weights[i] = r.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) r.nodes[n / 2] = 0.0;
    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(n, r);
    return r;
}

Rule1D trapezoid_rule(int n, double radius) {
    if (n < 2) throw DomainError("trapezoid rule needs n >= 2");
    Rule1D r;
    r.nodes.resize(n);
    r.weights.assign(n, 2.0 * radius / (n - 1));
    for (int i = 0; i < n; ++i) r.nodes[i] = -radius + 2.0 * radius * i / (n - 1);
    r.weights.front() *= 0.5;
    r.weights.back() *= 0.5;
    return r;
}

Window wavepacket_window(const Basis& b, int max_degree) {
    const int d = b.dim();
    const RMat cov = 0.5 * b.epsilon() * (b.Q() * b.Q().adjoint()).real();
    Window w;
    w.center = b.q();
    w.scale = RVec(d);
    const double grow = 1.0 + std::sqrt(2.0 * max_degree + 1.0) / 4.0;
    for (int j = 0; j < d; ++j) w.scale(j) = std::sqrt(cov(j, j)) * grow;
    return w;
}

QuadResultVec integrate_vec(const VectorFn& f, const Window& w, const QuadratureSpec& spec) {
    check_spec(spec);
    const Pass full = run(f, w, spec, spec.nodes_per_axis);
    const Pass half = run(f, w, spec, std::max(2, spec.nodes_per_axis / 2));
    QuadResultVec r;
    r.value = full.value;
    r.delta = max_abs(full.value - half.value);
    r.truncation_warning = full.warning;
    return r;
}

QuadResult integrate(const ComplexFn& f, const Window& w, const QuadratureSpec& spec) {
    const QuadResultVec v = integrate_vec(
        [&](const RVec& x) {
            CVec out(1);
            out(0) = f(x);
            return out;
        },
        w, spec);
    return QuadResult{v.value(0), v.delta, v.truncation_warning};
}

QuadResult inner_product(const ComplexFn& f, const ComplexFn& g, const Window& w,
                         const QuadratureSpec& spec) {
    return integrate([&](const RVec& x) { return std::conj(f(x)) * g(x); }, w, spec);
}

QuadResult wigner_quadrature(const ComplexFn& f, const ComplexFn& g, double epsilon,
                             const PhasePoint& pt, const Window& y_window, const QuadratureSpec& spec) {
    const int d = static_cast<int>(pt.x.size());
    QuadResult r = integrate(
        [&](const RVec& y) {
            return std::conj(f(pt.x + 0.5 * y)) * g(pt.x - 0.5 * y) *
                   std::exp(I * y.dot(pt.xi) / epsilon);
        },
        y_window, spec);
    const double c = std::pow(2.0 * kPi * epsilon, -d);
    r.value *= c;
    r.delta *= c;
    return r;
}

QuadResultMat wigner_quadrature_matrix(const VectorFn& F, double epsilon, const PhasePoint& pt,
                                       const Window& y_window, const QuadratureSpec& spec) {
    const int d = static_cast<int>(pt.x.size());
    Eigen::Index n = 0;
    QuadResultVec v = integrate_vec(
        [&](const RVec& y) {
            const CVec a = F(pt.x + 0.5 * y);
            const CVec b = F(pt.x - 0.5 * y);
            n = a.size();
            const cplx ph = std::exp(I * y.dot(pt.xi) / epsilon);
            CMat m = a.conjugate() * b.transpose() * ph;
            return CVec(Eigen::Map<CVec>(m.data(), m.size()));
        },
        y_window, spec);
    const double c = std::pow(2.0 * kPi * epsilon, -d);
    QuadResultMat r;
    r.value = Eigen::Map<CMat>(v.value.data(), n, n) * c;
    r.delta = v.delta * c;
    r.truncation_warning = v.truncation_warning;
    return r;
}

QuadResult fbi_quadrature(const ComplexFn& f, double epsilon, const PhasePoint& pt, const Window& w,
                          const QuadratureSpec& spec) {
    const int d = static_cast<int>(pt.x.size());
    const double c = std::pow(2.0 * kPi * epsilon, -0.5 * d) * std::pow(kPi * epsilon, -0.25 * d);
    QuadResult r = integrate(
        [&](const RVec& y) {
            const RVec s = y - pt.x;
            // conj of the window exp(-|y-x|^2/(2 eps) + i xi.(y-x)/eps)
            return std::exp(cplx(-0.5 * s.squaredNorm() / epsilon, -pt.xi.dot(s) / epsilon)) * f(y);
        },
        w, spec);
    r.value *= c;
    r.delta *= c;
    return r;
}

QuadResult fourier_quadrature(const ComplexFn& f, double epsilon, const RVec& xi, const Window& w,
                              const QuadratureSpec& spec) {
    const int d = static_cast<int>(xi.size());
    const double c = std::pow(2.0 * kPi * epsilon, -0.5 * d);
    QuadResult r = integrate(
        [&](const RVec& x) { return f(x) * std::exp(cplx(0.0, -x.dot(xi) / epsilon)); }, w, spec);
    r.value *= c;
    r.delta *= c;
    return r;
}

PhaseGrid sample_phase_grid(const std::function<double(const PhasePoint&)>& f, int d,
                            const std::vector<double>& lo, const std::vector<double>& hi, int count) {
    if (static_cast<int>(lo.size()) != 2 * d || static_cast<int>(hi.size()) != 2 * d)
        throw StructuralError("phase grid bounds must have 2d entries");
    if (count < 2) throw DomainError("phase grid needs at least 2 samples per axis");
    PhaseGrid g;
    g.axes.resize(2 * d);
    std::size_t total = 1;
    for (int a = 0; a < 2 * d; ++a) {
        g.axes[a].resize(count);
        for (int i = 0; i < count; ++i) g.axes[a][i] = lo[a] + (hi[a] - lo[a]) * i / (count - 1);
        total *= count;
    }
    g.values.resize(total);
    PhasePoint pt{RVec(d), RVec(d)};
    for (std::size_t t = 0; t < total; ++t) {
        std::size_t r = t;
        for (int a = 2 * d - 1; a >= 0; --a) {
            const double v = g.axes[a][r % count];
            r /= count;
            if (a < d)
                pt.x(a) = v;
            else
                pt.xi(a - d) = v;
        }
        g.values[t] = f(pt);
    }
    return g;
}

ConvolutionResult husimi_convolution(const PhaseGrid& grid, double epsilon, const PhasePoint& pt) {
    const int d = static_cast<int>(pt.x.size());
    if (static_cast<int>(grid.axes.size()) != 2 * d) throw StructuralError("phase grid dimension mismatch");
    std::size_t total = 1;
    for (const auto& ax : grid.axes) {
        if (ax.size() < 2) throw StructuralError("phase grid axis with fewer than 2 samples");
        total *= ax.size();
    }
    if (grid.values.size() != total) throw StructuralError("phase grid value count mismatch");

    ConvolutionResult res;
    std::vector<double> centre(2 * d), h(2 * d);
    for (int a = 0; a < 2 * d; ++a) {
        centre[a] = a < d ? pt.x(a) : pt.xi(a - d);
        const auto& ax = grid.axes[a];
        h[a] = (ax.back() - ax.front()) / (ax.size() - 1);
        const double reach = 6.0 * std::sqrt(epsilon);
        if (centre[a] - reach < ax.front() || centre[a] + reach > ax.back()) res.coverage_warning = true;
    }
    const double norm = std::pow(kPi * epsilon, -d);
    double sum = 0.0, comp = 0.0;
    for (std::size_t t = 0; t < total; ++t) {
        std::size_t r = t;
        double dist2 = 0.0, weight = 1.0;
        for (int a = 2 * d - 1; a >= 0; --a) {
            const auto& ax = grid.axes[a];
            const std::size_t i = r % ax.size();
            r /= ax.size();
            const double diff = ax[i] - centre[a];
            dist2 += diff * diff;
            weight *= (i == 0 || i + 1 == ax.size()) ? 0.5 * h[a] : h[a];
        }
        const double v = weight * norm * std::exp(-dist2 / epsilon) * grid.values[t];
        const double s = sum + v;
        comp += std::abs(sum) >= std::abs(v) ? (sum - s) + v : (v - s) + sum;
        sum = s;
    }
    res.value = sum + comp;
    return res;
}

}  // namespace hagkit
