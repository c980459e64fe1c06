#pragma once

#include <functional>
#include <vector>

#include "hagkit/multi_index.hpp"
#include "hagkit/params.hpp"

namespace hagkit {

using ComplexFn = std::function<cplx(const RVec&)>;

// A validated parameter set with the derived matrices every evaluation needs.
// Construction validates; everything downstream takes a Basis so that no
// evaluation path sees unvalidated (Q, P).
class Basis {
public:
    explicit Basis(ParameterSet params, double tol = kDefaultTol);

    const ParameterSet& params() const { return ps_; }
    int dim() const { return ps_.dim(); }
    double epsilon() const { return ps_.epsilon; }
    const RVec& q() const { return ps_.q; }
    const RVec& p() const { return ps_.p; }
    const CMat& Q() const { return ps_.Q; }
    const CMat& P() const { return ps_.P; }

    const CMat& Q_inv() const { return q_inv_; }
    const CMat& Q_inv_Q_bar() const { return q_inv_q_bar_; }  // Q^{-1} conj(Q)
    const CMat& C() const { return c_; }                      // P Q^{-1}
    const RMat& Im_C() const { return im_c_; }
    cplx inv_sqrt_det_q() const { return inv_sqrt_det_q_; }
    // (pi eps)^{-d/4} det(Q)^{-1/2}
    cplx gaussian_prefactor() const { return prefactor_; }

private:
    ParameterSet ps_;
    CMat q_inv_;
    CMat q_inv_q_bar_;
    CMat c_;
    RMat im_c_;
    cplx inv_sqrt_det_q_;
    cplx prefactor_;
};

// phi_0 at a real point; the complex overload continues analytically.
cplx gaussian_eval(const Basis& b, const RVec& x);
cplx gaussian_eval(const Basis& b, const CVec& x);
cplx gaussian_eval(const ParameterSet& ps, const RVec& x);

// Values p_nu(x) for nu in a downward-closed set, aligned with the set order.
struct PolynomialTable {
    CVec point;
    std::vector<cplx> values;
};

PolynomialTable polys_eval(const Basis& b, const IndexSet& set, const CVec& x);

// All phi_k(x), k in set, by the normalized three-term recurrence.
std::vector<cplx> wavepackets_eval(const Basis& b, const IndexSet& set, const CVec& x);
std::vector<cplx> wavepackets_eval(const Basis& b, const IndexSet& set, const RVec& x);

// Single wavepacket; polynomial path up to |k| = 100, normalized recurrence beyond.
cplx wavepacket_eval(const Basis& b, const MultiIndex& k, const RVec& x);
cplx wavepacket_eval(const ParameterSet& ps, const MultiIndex& k, const RVec& x);

// p_k(x + z) from a table at x.
cplx poly_translate(const Basis& b, const MultiIndex& k, const CVec& x, const CVec& z);

// |phi_0|^{-2} (-sqrt(eps) Q* grad)^k |phi_0|^2 with exact polynomial algebra.
cplx poly_rodriguez(const Basis& b, const MultiIndex& k, const RVec& x, int cap = 8);

// Integral of p_k(x + z) exp(-(x-q)^T (Im C + M)(x-q) / eps) over R^d.
cplx gaussian_moment(const Basis& b, const CMat& M, const MultiIndex& k, const CVec& z);

// Expansion sum_k c_k phi_k over a downward-closed set.
struct CoefficientVector {
    IndexSet set;
    std::vector<cplx> coeffs;

    static CoefficientVector unit(const IndexSet& set, const MultiIndex& k);
    static CoefficientVector zeros(const IndexSet& set);
    cplx at(const MultiIndex& k) const;  // 0 outside the set
    double norm2() const;
};

// a * x + b * y over the union of the index sets
CoefficientVector combine(cplx a, const CoefficientVector& x, cplx b, const CoefficientVector& y);
double max_abs_difference(const CoefficientVector& x, const CoefficientVector& y);

// A_j^dagger and A_j in coefficient space.
CoefficientVector raise_coeffs(const CoefficientVector& c, int j);
CoefficientVector lower_coeffs(const CoefficientVector& c, int j);

// Multiplication by (x_j - q_j) and application of (-i eps d_j - p_j).
CoefficientVector position_action(const Basis& b, const CoefficientVector& c, int j);
CoefficientVector momentum_action(const Basis& b, const CoefficientVector& c, int j);

// 1/2 sum_j (A_j A_j^dagger + A_j^dagger A_j), assembled from position and
// momentum actions.
CoefficientVector oscillator_action(const Basis& b, const CoefficientVector& c);

// (T_{a,b} f)(x) = exp(i b.(x - a/2) / eps) f(x - a)
ComplexFn heisenberg_weyl(ComplexFn f, const RVec& a, const RVec& b, double epsilon);

// Level-n vector over the redundant enumeration of multi-indices of modulus n
// (slot l * d^n + i extends slot i of level n by e_l). Repeated slots hold 0.
struct EigenspaceVector {
    int n = 0;
    std::vector<MultiIndex> slots;
    std::vector<bool> repeated;
    CVec entries;
};

std::vector<MultiIndex> redundant_enumeration(int d, int n);
EigenspaceVector eigenspace_vector(const Basis& b, int n, const RVec& x, std::size_t cap = 256);

// Same enumeration without normalization or zeroing: slot s holds
// (A^dagger)^{nu_s} phi_0 = sqrt(nu_s!) phi_{nu_s}. This is the vector that
// transforms with the n-fold Kronecker power of U under polar normalization.
CVec eigenspace_vector_raw(const Basis& b, int n, const RVec& x, std::size_t cap = 256);

}  // namespace hagkit
