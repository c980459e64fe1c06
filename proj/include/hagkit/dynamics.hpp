#pragma once

#include <functional>
#include <string>
#include <vector>

#include "hagkit/params.hpp"

namespace hagkit {

class PotentialModel {
public:
    enum class Kind { quadratic, callable };

    // V(x) = x^T H x / 2 + g^T x + v0
    static PotentialModel quadratic(RMat H, RVec g = RVec(), double v0 = 0.0);
    static PotentialModel callable(std::function<double(const RVec&)> V,
                                   std::function<RVec(const RVec&)> grad,
                                   std::function<RMat(const RVec&)> hess);
    static PotentialModel harmonic(int d);  // |x|^2 / 2
    static PotentialModel quartic(int d);   // sum x_j^4 / 4

    Kind kind() const { return kind_; }
    double value(const RVec& x) const;
    RVec gradient(const RVec& x) const;
    RMat hessian(const RVec& x) const;
    const RMat& H() const { return H_; }
    const RVec& g() const { return g_; }
    double v0() const { return v0_; }

private:
    Kind kind_ = Kind::quadratic;
    RMat H_;
    RVec g_;
    double v0_ = 0.0;
    std::function<double(const RVec&)> V_;
    std::function<RVec(const RVec&)> grad_;
    std::function<RMat(const RVec&)> hess_;
};

struct TrajectoryState {
    double t = 0.0;
    ParameterSet params;  // params.sqrt_det_q follows det_phase
    double action = 0.0;
    cplx det_phase;       // det(Q_t)^{-1/2}, continuous in t
};

TrajectoryState initial_state(const ParameterSet& params);

// max of the two symplecticity residuals
double symplectic_residual(const ParameterSet& params);

struct StepOptions {
    double drift_rate = 1e-8;  // allowed residual growth per unit time
    double tol = kDefaultTol;
};

// One kick-drift-kick step for (q, p) and (Q, P). Throws NumericalError if the
// symplecticity residual grows faster than allowed.
TrajectoryState step(const TrajectoryState& s, const PotentialModel& V, double dt,
                     const StepOptions& opt = {});

struct Trajectory {
    std::vector<TrajectoryState> states;
    bool completed = false;
    std::string diagnostic;
    double final_drift = 0.0;  // residual(final) - residual(initial)
};

Trajectory propagate(const TrajectoryState& s0, const PotentialModel& V, double T, double dt,
                     const StepOptions& opt = {});

// Exact flow for V = x^T H x / 2 + g^T x + v0.
TrajectoryState harmonic_reference(const TrajectoryState& s0, double t, const RMat& H,
                                   const RVec& g = RVec(), double v0 = 0.0);

double energy(const TrajectoryState& s, const PotentialModel& V);

// Largest change of arg(det_phase) between consecutive states.
double max_phase_jump(const Trajectory& tr);

}  // namespace hagkit
