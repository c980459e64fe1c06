#pragma once

#include <vector>

#include "hagkit/wavepacket.hpp"

namespace hagkit {

struct PhasePoint {
    RVec x;
    RVec xi;
};

struct ZVector {
    CVec z;
    double norm2() const { return z.squaredNorm(); }
};

// z = -i (P^T (x - q) - Q^T (xi - p))
ZVector z_of(const Basis& b, const PhasePoint& pt);
// (Re z, Im z) = F^{-1} (x - q, xi - p)
ZVector z_via_embedding(const Basis& b, const PhasePoint& pt);

// Laguerre closed form of W(phi_k, phi_l).
cplx wigner_closed(const Basis& b, const MultiIndex& k, const MultiIndex& l, const PhasePoint& pt);

enum class FillOrder { l_first, k_first };

// W(phi_k, phi_l) for all k, l in a downward-closed set, built from W_00 by
// the phase-space three-term recurrences. values(i, j) belongs to
// (set[i], set[j]).
struct WignerTable {
    PhasePoint point;
    ZVector z;
    CMat values;

    cplx at(const IndexSet& set, const MultiIndex& k, const MultiIndex& l) const;
};

WignerTable wigner_table(const Basis& b, const IndexSet& set, const PhasePoint& pt,
                         FillOrder order = FillOrder::l_first);

// W(psi) for psi = sum_k c_k phi_k at every point, one table per point.
std::vector<double> wigner_superposition(const Basis& b, const CoefficientVector& c,
                                         const std::vector<PhasePoint>& points, int workers = 1);

// Sum of the diagonal W(phi_k) over |k| = n.
double eigenspace_trace(const Basis& b, int n, const PhasePoint& pt);

// Product of one-dimensional Hermite Wigner functions in the coordinates
// F^{-1}(x - q, xi - p).
cplx wigner_metaplectic(const Basis& b, const MultiIndex& k, const MultiIndex& l, const PhasePoint& pt);

// FBI transform. fbi_closed picks the isotropic formula when C = i Id and the
// general one otherwise; both are exposed for cross-checks.
cplx fbi_closed(const Basis& b, const MultiIndex& k, const PhasePoint& pt);
cplx fbi_general(const Basis& b, const MultiIndex& k, const PhasePoint& pt);
cplx fbi_isotropic(const Basis& b, const MultiIndex& k, const PhasePoint& pt);
bool is_isotropic(const Basis& b, double tol = 1e-14);

double husimi(const Basis& b, const MultiIndex& k, const PhasePoint& pt);

// Sign convention for the first-order phase-space ladder operators. The
// printed variant carries the opposite overall sign on the first-slot
// operators and is kept only to measure the discrepancy.
enum class LadderSigns { resolved, printed };

// Max over axes of the four ladder identities applied to wigner_closed by
// central differences. h <= 0 selects 1e-3 sqrt(eps).
double phase_ladder_residual(const Basis& b, const MultiIndex& k, const MultiIndex& l,
                             const PhasePoint& pt, double h = 0.0,
                             LadderSigns signs = LadderSigns::resolved);

}  // namespace hagkit
