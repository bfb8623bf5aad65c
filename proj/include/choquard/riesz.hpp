#pragma once

#include <vector>

#include "choquard/grid.hpp"

namespace chq {

/// Normalization constant of the Riesz kernel A_alpha |x|^{alpha-N}:
/// Gamma((N-alpha)/2) / (2^alpha * pi^{N/2} * Gamma(alpha/2)),
/// the normalization under which the Fourier symbol of the convolution is
/// |kappa|^{-alpha}. Throws DomainError unless 0 < alpha < N.
double riesz_constant(int dim, double alpha);

enum class ZeroModePolicy {
    Drop,     // zero mode -> 0; multiplier is exactly |kappa|^{-alpha}
    BallValue // free-space convolution via the kernel truncated at |x| = L/2
};

/// Fourier-multiplier realization of f -> I_alpha * f on a periodic grid.
///
/// Drop policy: multiplier |kappa_m|^{-alpha} for m != 0, zero at m = 0.
/// Exact factorization under half_operator, so algebraic identities
/// (semigroup, positivity of the quadratic form) hold to round-off.
///
/// BallValue policy: multiplier is the Fourier transform of the kernel
/// A_alpha |x|^{alpha-N} truncated to the ball |x| <= L/2. For fields
/// concentrated well inside the box this reproduces the free-space
/// convolution to spectral accuracy; at kappa = 0 the value is the kernel
/// mass over the ball, A_alpha * omega_{N-1} * (L/2)^alpha / alpha.
class RieszOperator {
public:
    RieszOperator(const GridSpec& grid, double alpha, ZeroModePolicy policy);

    const GridSpec& grid() const { return grid_; }
    double alpha() const { return alpha_; }
    ZeroModePolicy policy() const { return policy_; }
    const std::vector<double>& multiplier() const { return multiplier_; }
    double zero_mode_value() const { return multiplier_[0]; }

    /// I_alpha * f: inverse transform of multiplier x transform of f.
    Field apply(const Field& f) const;

    /// Operator of order alpha/2 on the same grid, Drop policy; composing it
    /// twice equals the alpha-order Drop operator.
    RieszOperator half_operator() const;

private:
    GridSpec grid_;
    double alpha_;
    ZeroModePolicy policy_;
    std::vector<double> multiplier_;
};

inline RieszOperator build_operator(const GridSpec& grid, double alpha,
                                    ZeroModePolicy policy) {
    return RieszOperator(grid, alpha, policy);
}

/// Fourier transform at wavenumber k of A_alpha |x|^{alpha-N} restricted to
/// |x| <= radius (radial integral, exposed for oracle tests).
double truncated_kernel_symbol(int dim, double alpha, double radius, double k);

} // namespace chq
