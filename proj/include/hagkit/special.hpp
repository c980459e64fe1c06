#pragma once

#include <vector>

#include "hagkit/linalg.hpp"

namespace hagkit {

// Physicists' Hermite polynomial h_k by the three-term recurrence.
cplx hermite_poly(int k, cplx x);

// Associated Laguerre polynomial L_k^{(gamma)} by the three-term recurrence.
cplx laguerre_poly(int k, double gamma, cplx x);

// Explicit monomial sum; reference only, cancels badly for large k.
cplx laguerre_monomial(int k, double gamma, cplx x);

// Normalized Hermite function phi_k(x) = h_k(x) e^{-x^2/2} / sqrt(2^k k! sqrt(pi)).
double hermite_function(int k, double x);
// phi_0 .. phi_n at x.
std::vector<double> hermite_functions(int n, double x);

// Wigner transform W(phi_k, phi_l)(x, xi) of Hermite functions, eps = 1.
cplx hermite_wigner(int k, int l, double x, double xi);

// FBI transform of the Hermite function phi_k and its squared modulus.
cplx hermite_fbi(int k, double x, double xi);
double hermite_husimi(int k, double x, double xi);

// Two-argument Laguerre kernel. The first argument belongs to the first
// (conjugated) slot.
cplx laguerre_kernel_two(int m, int n, cplx eta, cplx zeta);

// laguerre_kernel_two(m, n, zeta, -conj(zeta)).
cplx laguerre_kernel_one(int m, int n, cplx zeta);

// laguerre_kernel_one(m, n, zeta) / sqrt(2^{m+n} m! n!), without forming the
// factorials.
cplx laguerre_kernel_one_scaled(int m, int n, cplx zeta);

double factorial(int n);
double binomial(double n, int k);

}  // namespace hagkit
