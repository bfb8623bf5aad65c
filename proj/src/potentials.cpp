#include "choquard/potentials.hpp"

#include <cmath>
#include <numbers>

namespace chq {

namespace {

double eval_at(const PotentialSpec& spec, const GridSpec& g,
               const std::array<int, 3>& idx) {
    if (const auto* c = std::get_if<ConstantPotential>(&spec)) {
        return c->value;
    }
    if (const auto* b = std::get_if<BoundedLimitPotential>(&spec)) {
        double r2 = 0.0;
        for (int d = 0; d < g.dim(); ++d) {
            double x = g.coord(idx[d]);
            r2 += x * x;
        }
        return b->limit - b->well_depth * std::exp(-r2 / (b->well_width * b->well_width));
    }
    const auto& p = std::get<PeriodicPotential>(spec);
    double prod = 1.0;
    for (int d = 0; d < g.dim(); ++d) {
        double s = std::sin(std::numbers::pi * g.coord(idx[d]) / p.periods[d]);
        prod *= s * s;
    }
    return p.base + p.amplitude * prod;
}

void validate_spec(const PotentialSpec& spec, const GridSpec& g) {
    if (const auto* c = std::get_if<ConstantPotential>(&spec)) {
        if (!(c->value > 0.0))
            throw NonPositivePotential("Constant potential must be positive");
        return;
    }
    if (const auto* b = std::get_if<BoundedLimitPotential>(&spec)) {
        if (!(b->floor > 0.0))
            throw NonPositivePotential("BoundedLimit: floor A0 must be positive");
        if (!(b->limit - b->well_depth >= b->floor))
            throw NonPositivePotential(
                "BoundedLimit: well bottom A_inf - depth must stay >= A0");
        if (!(b->well_depth >= 0.0) || !(b->well_width > 0.0))
            throw DomainError("BoundedLimit: bad well parameters");
        return;
    }
    const auto& p = std::get<PeriodicPotential>(spec);
    if (!(p.base > 0.0))
        throw NonPositivePotential("Periodic: base must be positive");
    if (!(p.amplitude >= 0.0))
        throw DomainError("Periodic: amplitude must be nonnegative");
    for (int d = 0; d < g.dim(); ++d) {
        double tau = p.periods[d];
        if (!(tau > 0.0)) throw PeriodMismatch("Periodic: tau must be positive");
        double k = g.length() / tau;
        if (std::abs(k - std::round(k)) > 1e-9 * std::max(1.0, k) || std::round(k) < 1.0)
            throw PeriodMismatch("Periodic: tau_i must divide L exactly");
    }
}

} // namespace

PotentialField sample_potential(const PotentialSpec& spec, const GridSpec& grid) {
    validate_spec(spec, grid);
    Field f(grid);
    std::array<int, 3> idx{0, 0, 0};
    double mn = std::numeric_limits<double>::infinity();
    double mx = -mn;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        double v = eval_at(spec, grid, idx);
        f[i] = v;
        mn = std::min(mn, v);
        mx = std::max(mx, v);
        for (int d = grid.dim() - 1; d >= 0; --d) {
            if (++idx[d] < grid.n()) break;
            idx[d] = 0;
        }
    }
    if (!(mn > 0.0))
        throw NonPositivePotential("sampled potential minimum is not positive");
    return PotentialField{std::move(f), spec, mn, mx};
}

double weighted_mass(const PotentialField& pot, const Field& f) {
    require_same_grid(pot.field, f);
    double s = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) s += pot.field[i] * f[i] * f[i];
    return s * std::pow(f.grid().spacing(), f.grid().dim());
}

} // namespace chq
