#pragma once

#include <memory>

#include "choquard/potentials.hpp"
#include "choquard/riesz.hpp"

namespace chq {

/// A pair (u, v) on a shared grid.
struct Pair {
    Field u;
    Field v;

    Pair(Field u_, Field v_) : u(std::move(u_)), v(std::move(v_)) {
        require_same_grid(u, v);
    }
};

/// Critical exponent 2*_alpha: (N+alpha)/(N-2) for N >= 3, infinity below.
double critical_exponent(int dim, double alpha);

/// Problem data for the coupled Choquard system: dimensions, exponents,
/// potentials and the Riesz operators (order alpha plus the half-order
/// operator used by the semigroup identity). Construction enforces the
/// admissibility window (N+alpha)/N < p, q < 2*_alpha.
class ProblemSpec {
public:
    ProblemSpec(GridSpec grid, double alpha, double p, double q,
                PotentialField potA, PotentialField potB,
                ZeroModePolicy policy = ZeroModePolicy::BallValue);

    const GridSpec& grid() const { return grid_; }
    int dim() const { return grid_.dim(); }
    double alpha() const { return alpha_; }
    double p() const { return p_; }
    double q() const { return q_; }
    const PotentialField& potA() const { return potA_; }
    const PotentialField& potB() const { return potB_; }
    const RieszOperator& riesz() const { return *riesz_; }
    const RieszOperator& riesz_half() const { return *riesz_half_; }
    ZeroModePolicy policy() const { return riesz_->policy(); }

    /// Same problem with the other zero-mode policy on the full-order operator.
    ProblemSpec with_policy(ZeroModePolicy policy) const;

private:
    GridSpec grid_;
    double alpha_, p_, q_;
    PotentialField potA_, potB_;
    std::shared_ptr<const RieszOperator> riesz_;
    std::shared_ptr<const RieszOperator> riesz_half_;
};

/// Energies of one pair: weighted norm square, coupling D, action I,
/// Nehari value P, and the L2 norm of the action gradient.
struct EnergyReport {
    double normSq = 0.0;
    double coupling = 0.0;
    double action = 0.0;
    double nehari = 0.0;
    double gradResidual = 0.0;
    ZeroModePolicy policy = ZeroModePolicy::BallValue;
};

/// Coupling integral D = integral (I_alpha * |u|^p) |v|^q.
double coupling(const ProblemSpec& prob, const Pair& pair);

/// ||(u,v)||^2 = integral (|grad u|^2 + |grad v|^2 + A u^2 + B v^2).
double weighted_norm_sq(const ProblemSpec& prob, const Pair& pair);

/// Full energy report, including the gradient residual.
EnergyReport action(const ProblemSpec& prob, const Pair& pair);

/// normSq and coupling only (the pieces backtracking line search needs).
struct EnergyValues {
    double normSq;
    double coupling;
};
EnergyValues energy_values(const ProblemSpec& prob, const Pair& pair);

double action_from(const ProblemSpec& prob, const EnergyValues& ev);
double nehari_from(const EnergyValues& ev);

/// L2-gradient of the action (the PDE residual pair):
///   -Lap u + A u - (2p/(p+q)) (I_alpha*|v|^q) |u|^{p-2} u   and likewise for v.
Pair gradient(const ProblemSpec& prob, const Pair& pair);

/// h_{uv}(t) = I(tu, tv) = theta1 t^2 - theta2 t^{p+q}, evaluated from one
/// set of energy values without rescaling fields.
double fiber_value(const ProblemSpec& prob, const EnergyValues& ev, double t);
double fiber_value(const ProblemSpec& prob, const Pair& pair, double t);

/// Sign-preserving power |t|^{e-1} t with the 0-at-0 convention.
double signed_power(double t, double e);

} // namespace chq
