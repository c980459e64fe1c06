#pragma once

#include <functional>
#include <random>

#include "hagkit/phase_space.hpp"

namespace hagkit::testing {

using Rng = std::mt19937_64;

// Random valid parameters built from a random squeeze matrix and a random
// unitary, so Re C and the off-diagonal couplings are generic.
// epsilon <= 0 draws it from [0.3, 1].
ParameterSet random_params(int d, Rng& rng, double epsilon = 0.0, double squeeze = 0.6);
CMat random_unitary(int d, Rng& rng);
RVec random_vec(int d, Rng& rng, double radius);
PhasePoint random_point(const Basis& b, Rng& rng, double radius_in_sqrt_eps = 2.0);

// phi_k of the basis as a plain callable.
ComplexFn packet(const Basis& b, const MultiIndex& k);

// |a - b| / max(|b|, floor)
double rel_err(cplx a, cplx b, double floor = 1e-300);

// Value, gradient and Hessian of an entire function at a real point from
// trapezoid sums over circles (and tori for the mixed terms) in complex
// coordinates. Errors sit near machine precision for wavepacket-type inputs.
struct Jet {
    cplx f;
    CVec grad;
    CMat hess;
};
using EntireFn = std::function<cplx(const CVec&)>;
Jet cauchy_jet(const EntireFn& f, const RVec& x, double radius, int nodes = 32);

// Grid-side application of differential operators to a single wavepacket,
// using cauchy_jet on the complex continuation of phi_k.
struct PacketOracle {
    const Basis& basis;
    MultiIndex k;
    Jet jet(const RVec& x) const;
    cplx position(const RVec& x, int j) const;   // (x_j - q_j) phi_k
    cplx momentum(const RVec& x, int j) const;   // (-i eps d_j - p_j) phi_k
    // 1/2 sum_j (A_j A_j^dagger + A_j^dagger A_j) phi_k with the operators
    // written out in x and -i eps grad.
    cplx oscillator(const RVec& x) const;
};

}  // namespace hagkit::testing
