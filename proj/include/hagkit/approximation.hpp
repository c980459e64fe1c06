#pragma once

#include <string>
#include <vector>

#include "hagkit/quadrature.hpp"

namespace hagkit {

// {k : prod_j (1 + k_j) <= K}
IndexSet hyperbolic_set(int d, int K, std::size_t cap = 2'000'000);

// Trapezoid with 160 nodes per axis at eps = 1, scaled by 1/sqrt(eps).
QuadratureSpec default_projection_spec(const Basis& b);

struct Projection {
    CoefficientVector coeffs;
    double psi_norm2 = 0.0;
    double bessel_defect = 0.0;  // ||psi||^2 - sum |c_k|^2
    double max_delta = 0.0;      // largest node-halving delta over the coefficients
    bool truncation_warning = false;
};

// c_k = <phi_k, psi> over the window (default: wavepacket_window for the set).
Projection project(const ComplexFn& psi, const Basis& b, const IndexSet& set, const QuadratureSpec& spec,
                   const Window& window);
Projection project(const ComplexFn& psi, const Basis& b, const IndexSet& set, const QuadratureSpec& spec);

// Projection of samples given on a uniform tensor grid (row-major, last axis
// fastest); the trapezoid rule of that grid is used.
Projection project_samples(const std::vector<std::vector<double>>& axes, const std::vector<cplx>& values,
                           const Basis& b, const IndexSet& set);

cplx reconstruct(const CoefficientVector& c, const Basis& b, const RVec& x);

struct ErrorReport {
    double l2_residual = 0.0;
    double psi_norm2 = 0.0;
    double bessel_defect = 0.0;
    std::vector<double> shell_energy;  // sum |c_k|^2 over |k| = s
    bool truncation_warning = false;
    std::string constant_note = "approximation constant not computed";
};

ErrorReport error_report(const ComplexFn& psi, const CoefficientVector& c, const Basis& b,
                         const QuadratureSpec& spec, const Window& window);

std::vector<double> wigner_of_function(const CoefficientVector& c, const Basis& b,
                                       const std::vector<PhasePoint>& points, int workers = 1);

}  // namespace hagkit
