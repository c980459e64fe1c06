#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hagkit/linalg.hpp"

namespace hagkit {

inline constexpr double kDefaultTol = 1e-10;

// The tuple (eps, q, p, Q, P) that fixes a wavepacket family.
//
// sqrt_det_q optionally pins the branch of det(Q)^{1/2}; when empty the
// principal root is used. Trajectories set it to keep the phase continuous.
struct ParameterSet {
    double epsilon = 1.0;
    RVec q;
    RVec p;
    CMat Q;
    CMat P;
    std::optional<cplx> sqrt_det_q;

    int dim() const { return static_cast<int>(q.size()); }

    static ParameterSet standard(int d, double epsilon = 1.0);
};

struct Residual {
    std::string name;
    double value = 0.0;
    double threshold = 0.0;
    bool ok = false;
};

struct ValidationReport {
    std::vector<Residual> residuals;
    bool passed = false;

    const Residual& get(const std::string& name) const;
    std::string to_string() const;
};

// Checks the symplecticity relations, the positivity of Im(PQ^{-1}) and the
// invertibility of Q and P. Throws StructuralError on shape mismatch and
// DataError on non-finite entries; otherwise always returns a full report.
ValidationReport validate(const ParameterSet& params, double tol = kDefaultTol);

// Throws DataError carrying the report text when validation fails.
void require_valid(const ParameterSet& params, double tol = kDefaultTol);

// C = P Q^{-1}, symmetrized.
CMat width_matrix(const ParameterSet& params);

struct SymplecticEmbedding {
    RMat F;
    RMat F_inv;
};

// F = [[Re Q, Im Q], [Re P, Im P]] and F_inv = -J F^T J.
SymplecticEmbedding symplectic_embed(const ParameterSet& params);

struct SqueezeData {
    CMat W;
    CMat V;
};

ParameterSet from_squeeze(const RVec& q, const RVec& p, const CMat& W, double epsilon = 1.0,
                          double tol = kDefaultTol);
SqueezeData to_squeeze(const ParameterSet& params);

struct PolarResult {
    ParameterSet params;  // (eps, q, p, |Q|, PU)
    CMat U;
};

PolarResult polar_normalize(const ParameterSet& params);

struct FourierDual {
    ParameterSet params;  // (eps, p, -q, P, -Q)
    cplx phase;           // exp(-i p.q / eps) times the det-branch factor
};

// The eps-scaled Fourier transform of phi_k[q,p,Q,P] equals
// phase * phi_k[p,-q,P,-Q] for every k. There is no per-index factor.
FourierDual fourier_dual(const ParameterSet& params);

// det(Q)^{1/2} on the branch selected by the parameter set.
cplx sqrt_det_q(const ParameterSet& params);

// Shift the centre by (a, b). T_{a,b} phi_k[q,p] = phase * phi_k[q+a, p+b]
// with phase = exp(i b.(q + a/2) / eps).
struct Translated {
    ParameterSet params;
    cplx phase;
};

Translated translate_params(const ParameterSet& params, const RVec& a, const RVec& b);

// Hash of the canonical serialization (FNV-1a, 64 bit).
std::uint64_t params_hash(const ParameterSet& params);

}  // namespace hagkit
