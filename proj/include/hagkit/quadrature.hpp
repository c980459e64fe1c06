#pragma once

#include <functional>
#include <vector>

#include "hagkit/phase_space.hpp"

namespace hagkit {

enum class Scheme { gauss_hermite, trapezoid };

struct QuadratureSpec {
    int nodes_per_axis = 120;
    Scheme scheme = Scheme::trapezoid;
    double truncation_radius = 8.0;  // trapezoid half-width in units of Window::scale
};

// Affine map of the reference rule: x = center + scale * t per axis.
struct Window {
    RVec center;
    RVec scale;
};

// Window around the basis centre, wide enough for wavepackets up to |k| = max_degree.
Window wavepacket_window(const Basis& b, int max_degree = 0);

struct QuadResult {
    cplx value = 0.0;
    double delta = 0.0;              // |I(n) - I(n/2)|
    bool truncation_warning = false; // boundary integrand above 1e-3 of interior max
};

struct QuadResultVec {
    CVec value;
    double delta = 0.0;
    bool truncation_warning = false;
};

using VectorFn = std::function<CVec(const RVec&)>;

// One-dimensional reference rules. Gauss-Hermite weights are returned
// multiplied by exp(t^2) so the rule integrates plain functions.
struct Rule1D {
    std::vector<double> nodes;
    std::vector<double> weights;
};
Rule1D gauss_hermite_rule(int n);
Rule1D trapezoid_rule(int n, double radius);

QuadResultVec integrate_vec(const VectorFn& f, const Window& w, const QuadratureSpec& spec);
QuadResult integrate(const ComplexFn& f, const Window& w, const QuadratureSpec& spec);

// Integral of conj(f) g.
QuadResult inner_product(const ComplexFn& f, const ComplexFn& g, const Window& w,
                         const QuadratureSpec& spec);

// (2 pi eps)^{-d} Integral conj(f(x + y/2)) g(x - y/2) exp(i y.xi / eps) dy,
// integrated over y in the given window.
QuadResult wigner_quadrature(const ComplexFn& f, const ComplexFn& g, double epsilon,
                             const PhasePoint& pt, const Window& y_window, const QuadratureSpec& spec);

struct QuadResultMat {
    CMat value;
    double delta = 0.0;
    bool truncation_warning = false;
};

// Same integral for every pair of components of a vector-valued function:
// value(i, j) = W(F_i, F_j).
QuadResultMat wigner_quadrature_matrix(const VectorFn& F, double epsilon, const PhasePoint& pt,
                                       const Window& y_window, const QuadratureSpec& spec);

// (2 pi eps)^{-d/2} <g_{x,xi}, f> with the normalized Gaussian window g.
QuadResult fbi_quadrature(const ComplexFn& f, double epsilon, const PhasePoint& pt, const Window& w,
                          const QuadratureSpec& spec);

// (2 pi eps)^{-d/2} Integral f(x) exp(-i x.xi / eps) dx
QuadResult fourier_quadrature(const ComplexFn& f, double epsilon, const RVec& xi, const Window& w,
                              const QuadratureSpec& spec);

// Uniform tensor grid over (x, xi) with sampled values, last axis fastest.
struct PhaseGrid {
    std::vector<std::vector<double>> axes;  // 2d axes
    std::vector<double> values;
};

PhaseGrid sample_phase_grid(const std::function<double(const PhasePoint&)>& f, int d,
                            const std::vector<double>& lo, const std::vector<double>& hi, int count);

struct ConvolutionResult {
    double value = 0.0;
    bool coverage_warning = false;
};

// Discrete convolution of a sampled phase-space function with
// G(z) = (pi eps)^{-d} exp(-|z|^2 / eps), evaluated at one point.
ConvolutionResult husimi_convolution(const PhaseGrid& grid, double epsilon, const PhasePoint& pt);

}  // namespace hagkit
