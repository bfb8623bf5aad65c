#include "choquard/energy.hpp"

#include <cmath>
#include <limits>

namespace chq {

double critical_exponent(int dim, double alpha) {
    if (dim >= 3) return (dim + alpha) / (dim - 2.0);
    return std::numeric_limits<double>::infinity();
}

double signed_power(double t, double e) {
    if (t == 0.0) return 0.0;
    return std::copysign(std::pow(std::abs(t), e), t);
}

namespace {

Field abs_power(const Field& f, double e) {
    Field out(f.grid());
    for (std::size_t i = 0; i < f.size(); ++i) out[i] = std::pow(std::abs(f[i]), e);
    return out;
}

void check_exponent_window(int dim, double alpha, double e, const char* name) {
    double lo = (dim + alpha) / dim;
    double hi = critical_exponent(dim, alpha);
    if (!(e > lo && e < hi))
        throw DomainError(std::string(name) +
                          " outside the admissibility window ((N+alpha)/N, 2*_alpha)");
}

} // namespace

ProblemSpec::ProblemSpec(GridSpec grid, double alpha, double p, double q,
                         PotentialField potA, PotentialField potB,
                         ZeroModePolicy policy)
    : grid_(grid), alpha_(alpha), p_(p), q_(q),
      potA_(std::move(potA)), potB_(std::move(potB)) {
    if (!(alpha > 0.0 && alpha < static_cast<double>(grid.dim())))
        throw DomainError("ProblemSpec: alpha must lie in (0, N)");
    check_exponent_window(grid.dim(), alpha, p, "p");
    check_exponent_window(grid.dim(), alpha, q, "q");
    if (!(potA_.field.grid() == grid) || !(potB_.field.grid() == grid))
        throw GridMismatch("ProblemSpec: potentials on a different grid");
    riesz_ = std::make_shared<RieszOperator>(grid, alpha, policy);
    riesz_half_ = std::make_shared<RieszOperator>(grid, 0.5 * alpha, ZeroModePolicy::Drop);
}

ProblemSpec ProblemSpec::with_policy(ZeroModePolicy policy) const {
    if (policy == riesz_->policy()) return *this;
    return ProblemSpec(grid_, alpha_, p_, q_, potA_, potB_, policy);
}

double coupling(const ProblemSpec& prob, const Pair& pair) {
    if (!(pair.u.grid() == prob.grid()))
        throw GridMismatch("coupling: pair on a different grid");
    Field up = abs_power(pair.u, prob.p());
    Field vq = abs_power(pair.v, prob.q());
    return inner_product(prob.riesz().apply(up), vq);
}

double weighted_norm_sq(const ProblemSpec& prob, const Pair& pair) {
    if (!(pair.u.grid() == prob.grid()))
        throw GridMismatch("weighted_norm_sq: pair on a different grid");
    return dirichlet_energy(pair.u) + dirichlet_energy(pair.v) +
           weighted_mass(prob.potA(), pair.u) + weighted_mass(prob.potB(), pair.v);
}

EnergyValues energy_values(const ProblemSpec& prob, const Pair& pair) {
    return EnergyValues{weighted_norm_sq(prob, pair), coupling(prob, pair)};
}

double action_from(const ProblemSpec& prob, const EnergyValues& ev) {
    return 0.5 * ev.normSq - (2.0 / (prob.p() + prob.q())) * ev.coupling;
}

double nehari_from(const EnergyValues& ev) {
    return ev.normSq - 2.0 * ev.coupling;
}

EnergyReport action(const ProblemSpec& prob, const Pair& pair) {
    EnergyValues ev = energy_values(prob, pair);
    Pair g = gradient(prob, pair);
    EnergyReport rep;
    rep.normSq = ev.normSq;
    rep.coupling = ev.coupling;
    rep.action = action_from(prob, ev);
    rep.nehari = nehari_from(ev);
    rep.gradResidual = std::sqrt(inner_product(g.u, g.u) + inner_product(g.v, g.v));
    rep.policy = prob.policy();
    return rep;
}

Pair gradient(const ProblemSpec& prob, const Pair& pair) {
    if (!(pair.u.grid() == prob.grid()))
        throw GridMismatch("gradient: pair on a different grid");
    const GridSpec& g = prob.grid();
    const double p = prob.p(), q = prob.q();
    Field conv_up = prob.riesz().apply(abs_power(pair.u, p));
    Field conv_vq = prob.riesz().apply(abs_power(pair.v, q));

    // -Lap via the spectral multiplier |kappa|^2
    auto neg_laplacian = [&g](const Field& f) {
        SpectrumHandle s = forward_transform(f);
        const int n = g.n();
        for (std::size_t i = 0; i < s.coeffs.size(); ++i) {
            std::size_t rem = i;
            double k2 = 0.0;
            for (int d = g.dim() - 1; d >= 0; --d) {
                int j = static_cast<int>(rem % n);
                rem /= n;
                double k = g.wavenumber(g.mode(j));
                k2 += k * k;
            }
            s.coeffs[i] *= k2;
        }
        return backward_transform(s);
    };

    Field gu = neg_laplacian(pair.u);
    Field gv = neg_laplacian(pair.v);
    const double cu = 2.0 * p / (p + q);
    const double cv = 2.0 * q / (p + q);
    for (std::size_t i = 0; i < g.size(); ++i) {
        gu[i] += prob.potA().field[i] * pair.u[i] -
                 cu * conv_vq[i] * signed_power(pair.u[i], p - 1.0);
        gv[i] += prob.potB().field[i] * pair.v[i] -
                 cv * conv_up[i] * signed_power(pair.v[i], q - 1.0);
    }
    return Pair(std::move(gu), std::move(gv));
}

double fiber_value(const ProblemSpec& prob, const EnergyValues& ev, double t) {
    const double pq = prob.p() + prob.q();
    return 0.5 * ev.normSq * t * t - (2.0 / pq) * ev.coupling * std::pow(t, pq);
}

double fiber_value(const ProblemSpec& prob, const Pair& pair, double t) {
    return fiber_value(prob, energy_values(prob, pair), t);
}

} // namespace chq
