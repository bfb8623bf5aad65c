#pragma once

#include <array>
#include <variant>

#include "choquard/grid.hpp"

namespace chq {

/// Potential families for the coupling coefficients A(x), B(x).
/// Constant:     A(x) = value.
/// BoundedLimit: A(x) = limit - depth * exp(-|x|^2 / width^2); bounded,
///               attains its far-field limit at the box boundary.
/// Periodic:     A(x) = base + amplitude * prod_i sin^2(pi x_i / tau_i);
///               each tau_i must divide the box length exactly.
struct ConstantPotential {
    double value = 1.0;
};

struct BoundedLimitPotential {
    double floor = 0.5;      // lower bound A0
    double limit = 1.0;      // far-field value A_inf
    double well_depth = 0.0;
    double well_width = 1.0;
};

struct PeriodicPotential {
    double base = 1.0;
    double amplitude = 0.0;
    std::array<double, 3> periods = {1.0, 1.0, 1.0}; // tau_i, per axis
};

using PotentialSpec =
    std::variant<ConstantPotential, BoundedLimitPotential, PeriodicPotential>;

/// Sampled potential together with the description it came from.
struct PotentialField {
    Field field;
    PotentialSpec spec;
    double min_value = 0.0;
    double max_value = 0.0;
};

/// Validates spec invariants against the grid and samples the closed form.
/// Throws NonPositivePotential if the sampled minimum is <= 0 and
/// PeriodMismatch if a Periodic tau_i does not divide L.
PotentialField sample_potential(const PotentialSpec& spec, const GridSpec& grid);

/// integral of A(x) f(x)^2.
double weighted_mass(const PotentialField& pot, const Field& f);

} // namespace chq
