#pragma once

#include <cstdint>
#include <vector>

#include "choquard/energy.hpp"

namespace chq {

struct SolverConfig {
    double step0 = 1.0;
    double backtrack = 0.5;
    int max_backtracks = 30;
    double tol_energy = 1e-10;   // relative per-iteration decrease
    double tol_residual = 1e-6;  // gradResidual / ||(u,v)||
    int max_iters = 5000;
    bool enforce_positivity = true;
    double precondition_shift = 1.0;

    void validate() const;
};

struct IterationRecord {
    int iteration;
    double action;
    double nehari;
    double residual;
};

struct SolveResult {
    Pair pair;
    double c0 = 0.0;
    EnergyReport report;
    int iterations = 0;
    std::vector<IterationRecord> history;
    bool converged = false;
    bool boundary_warning = false;
};

struct Projection {
    double t;
    Pair pair;
};

/// Closed-form Nehari projection: t = (||(u,v)||^2 / (2 D))^{1/(p+q-2)} and
/// (t u, t v), which satisfies P = 0. Throws DegeneratePair when u = 0,
/// v = 0 or D <= 0.
Projection nehari_project(const ProblemSpec& prob, const Pair& pair);

/// (-Lap + c)^{-1} applied componentwise via the multiplier 1/(|kappa|^2 + c).
Field precondition(const Field& g, double c);
Pair precondition(const Pair& g, double c);

/// Deterministic seed pair: unit-mass Gaussians of width L/10 offset by
/// -L/8 and +L/8 along the first axis.
Pair default_init(const GridSpec& grid);

/// Minimize the action over the Nehari manifold by preconditioned projected
/// gradient descent with backtracking; optional positivity enforcement by
/// componentwise absolute value.
SolveResult ground_state(const ProblemSpec& prob, const SolverConfig& cfg,
                         const Pair& init);
SolveResult ground_state(const ProblemSpec& prob, const SolverConfig& cfg);

} // namespace chq
