#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "choquard/solver.hpp"

namespace chq {

struct CheckReport {
    std::string name;
    bool passed = false;
    double measured = 0.0;
    double threshold = 0.0;
    std::string details;
};

/// Smooth seeded random field: white noise pushed through a Gaussian
/// spectral filter (cut at n/4), unit L2 norm. Smoothness keeps the spectral
/// identities at their stated tolerances.
Field random_band_limited_field(const GridSpec& grid, std::mt19937_64& rng);

/// |D - <I_{a/2}*|u|^p, I_{a/2}*|v|^q>| / max(|D|, eps), Drop policy forced
/// on every operator involved. Threshold 1e-12.
CheckReport check_semigroup(const ProblemSpec& prob, const Pair& pair);

/// D(u,v)^2 <= (int (I_a*|u|^p)|u|^p) (int (I_a*|v|^q)|v|^q) within 1e-10,
/// Drop policy.
CheckReport check_cauchy_schwarz(const ProblemSpec& prob, const Pair& pair);

/// Scale invariance of the Hardy-Littlewood-Sobolev ratio
/// R(v) = int |I_a*v|^{Ns/(N-as)} / (int |v|^s)^{N/(N-as)} under v -> lambda v.
/// Requires 1 < s < N/alpha.
CheckReport check_hls_scaling(const ProblemSpec& prob, const Field& v, double s);

/// Nonlocal splitting defect for bump pairs translated by the given lattice
/// separations (grid cells along axis 0): defect must strictly decrease.
CheckReport check_brezis_lieb(const ProblemSpec& prob, const Pair& first,
                              const Pair& second,
                              const std::array<int, 3>& separations);

/// |I - ((p+q-2)/(2(p+q))) ||(u,v)||^2| / I at a converged solution;
/// threshold 1e-8. Reported as skipped when the result did not converge.
CheckReport check_nehari_identity(const ProblemSpec& prob, const SolveResult& result);

/// Solves both problems; requires A_high >= A_low pointwise, same B and
/// exponents. Predicate: c0(low) <= c0(high) + 10 * tol_residual * ||sol||^2.
CheckReport check_comparison(const ProblemSpec& probLow, const ProblemSpec& probHigh,
                             const SolverConfig& cfg);

/// Central-difference directional-derivative check of the action gradient.
CheckReport check_gradient_fd(const ProblemSpec& prob, const Pair& pair,
                              const Pair& dir, double eps);

/// Solves from the default init and from a lattice-shifted init; levels must
/// agree to 1e-8 relative (potentials must be invariant under the shift).
CheckReport check_shift_invariance(const ProblemSpec& prob, const SolverConfig& cfg,
                                   const std::array<int, 3>& shift);

/// Runs every check on seeded instances derived from the problem; failures
/// are data, not exceptions.
std::vector<CheckReport> run_suite(const ProblemSpec& prob, const SolverConfig& cfg,
                                   std::uint64_t seed);

std::string reports_to_json(const std::vector<CheckReport>& reports);
std::string reports_to_table(const std::vector<CheckReport>& reports);
bool all_passed(const std::vector<CheckReport>& reports);

} // namespace chq
