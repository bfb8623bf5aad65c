#include "choquard/solver.hpp"

#include <cmath>

namespace chq {

void SolverConfig::validate() const {
    if (!(step0 > 0.0) || !(tol_energy > 0.0) || !(tol_residual > 0.0) ||
        !(precondition_shift > 0.0))
        throw DomainError("SolverConfig: tolerances, step0 and shift must be positive");
    if (!(backtrack > 0.0 && backtrack < 1.0))
        throw DomainError("SolverConfig: backtrack must lie in (0, 1)");
    if (max_backtracks < 1 || max_iters < 1)
        throw DomainError("SolverConfig: iteration counts must be positive");
}

Projection nehari_project(const ProblemSpec& prob, const Pair& pair) {
    const double nu = inner_product(pair.u, pair.u);
    const double nv = inner_product(pair.v, pair.v);
    if (nu == 0.0 || nv == 0.0)
        throw DegeneratePair("nehari_project: a component vanished");
    EnergyValues ev = energy_values(prob, pair);
    if (!(ev.coupling > 0.0))
        throw DegeneratePair("nehari_project: coupling is not positive");
    const double t =
        std::pow(ev.normSq / (2.0 * ev.coupling), 1.0 / (prob.p() + prob.q() - 2.0));
    Field tu(pair.u.grid()), tv(pair.v.grid());
    for (std::size_t i = 0; i < tu.size(); ++i) {
        tu[i] = t * pair.u[i];
        tv[i] = t * pair.v[i];
    }
    return Projection{t, Pair(std::move(tu), std::move(tv))};
}

Field precondition(const Field& g, double c) {
    if (!(c > 0.0)) throw DomainError("precondition: shift must be positive");
    const GridSpec& gr = g.grid();
    SpectrumHandle s = forward_transform(g);
    const int n = gr.n();
    for (std::size_t i = 0; i < s.coeffs.size(); ++i) {
        std::size_t rem = i;
        double k2 = 0.0;
        for (int d = gr.dim() - 1; d >= 0; --d) {
            int j = static_cast<int>(rem % n);
            rem /= n;
            double k = gr.wavenumber(gr.mode(j));
            k2 += k * k;
        }
        s.coeffs[i] /= (k2 + c);
    }
    return backward_transform(s);
}

Pair precondition(const Pair& g, double c) {
    return Pair(precondition(g.u, c), precondition(g.v, c));
}

Pair default_init(const GridSpec& grid) {
    const double L = grid.length();
    const double w = L / 10.0;
    auto bump = [&](double center) {
        Field f(grid);
        std::array<int, 3> idx{0, 0, 0};
        for (std::size_t i = 0; i < grid.size(); ++i) {
            double r2 = 0.0;
            for (int d = 0; d < grid.dim(); ++d) {
                double x = grid.coord(idx[d]) - (d == 0 ? center : 0.0);
                r2 += x * x;
            }
            f[i] = std::exp(-r2 / (2.0 * w * w));
            for (int d = grid.dim() - 1; d >= 0; --d) {
                if (++idx[d] < grid.n()) break;
                idx[d] = 0;
            }
        }
        double norm = std::sqrt(inner_product(f, f));
        for (std::size_t i = 0; i < f.size(); ++i) f[i] /= norm;
        return f;
    };
    return Pair(bump(-L / 8.0), bump(L / 8.0));
}

SolveResult ground_state(const ProblemSpec& prob, const SolverConfig& cfg) {
    return ground_state(prob, cfg, default_init(prob.grid()));
}

SolveResult ground_state(const ProblemSpec& prob, const SolverConfig& cfg,
                         const Pair& init) {
    cfg.validate();

    Pair pair = nehari_project(prob, init).pair;
    EnergyValues ev = energy_values(prob, pair);
    double act = action_from(prob, ev);

    std::vector<IterationRecord> history;
    double step = cfg.step0;
    const double step_cap = 16.0 * cfg.step0;
    bool converged = false;
    double last_decrease = std::numeric_limits<double>::infinity();
    int iter = 0;

    for (; iter < cfg.max_iters; ++iter) {
        Pair grad_pair = gradient(prob, pair);
        double residual =
            std::sqrt(inner_product(grad_pair.u, grad_pair.u) +
                      inner_product(grad_pair.v, grad_pair.v));
        double rel_residual = residual / std::sqrt(ev.normSq);
        history.push_back({iter, act, nehari_from(ev), rel_residual});

        if (rel_residual <= cfg.tol_residual &&
            last_decrease <= cfg.tol_energy * std::max(std::abs(act), 1e-300)) {
            converged = true;
            break;
        }

        Pair dir = precondition(grad_pair, cfg.precondition_shift);

        bool accepted = false;
        for (int bt = 0; bt < cfg.max_backtracks; ++bt) {
            Field cu(prob.grid()), cv(prob.grid());
            for (std::size_t i = 0; i < cu.size(); ++i) {
                double a = pair.u[i] - step * dir.u[i];
                double b = pair.v[i] - step * dir.v[i];
                cu[i] = cfg.enforce_positivity ? std::abs(a) : a;
                cv[i] = cfg.enforce_positivity ? std::abs(b) : b;
            }
            Pair cand(std::move(cu), std::move(cv));
            EnergyValues cev = energy_values(prob, cand);
            if (!(cev.coupling > 0.0) || cev.normSq == 0.0) {
                step *= cfg.backtrack; // collapsed trial; shrink and retry
                continue;
            }
            double t = std::pow(cev.normSq / (2.0 * cev.coupling),
                                1.0 / (prob.p() + prob.q() - 2.0));
            double tpq = std::pow(t, prob.p() + prob.q());
            EnergyValues pev{t * t * cev.normSq, tpq * cev.coupling};
            double cact = action_from(prob, pev);
            if (cact < act) {
                for (std::size_t i = 0; i < cand.u.size(); ++i) {
                    cand.u[i] *= t;
                    cand.v[i] *= t;
                }
                last_decrease = act - cact;
                pair = std::move(cand);
                ev = pev;
                act = cact;
                accepted = true;
                break;
            }
            step *= cfg.backtrack;
        }
        if (accepted) {
            step = std::min(step * 1.5, step_cap);
        } else if (rel_residual <= cfg.tol_residual) {
            converged = true;
            ++iter;
            break;
        } else {
            break; // line search stalled above tolerance
        }
    }

    SolveResult result{pair, act, action(prob, pair), iter, std::move(history),
                       converged, false};
    double amp = std::max(result.pair.u.max_abs(), result.pair.v.max_abs());
    double shell = std::max(boundary_shell_max(result.pair.u),
                            boundary_shell_max(result.pair.v));
    result.boundary_warning = shell > 1e-6 * amp;
    return result;
}

} // namespace chq
