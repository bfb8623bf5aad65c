#include "choquard/riesz.hpp"

#include <cmath>
#include <numbers>
#include <unordered_map>

namespace chq {

namespace {

constexpr double kPi = std::numbers::pi;

// 16-point Gauss-Legendre rule on [-1, 1].
constexpr int kGL = 16;
constexpr double kGLx[kGL] = {
    -0.9894009349916499, -0.9445750230732326, -0.8656312023878318,
    -0.7554044083550030, -0.6178762444026438, -0.4580167776572274,
    -0.2816035507792589, -0.0950125098376374, 0.0950125098376374,
    0.2816035507792589,  0.4580167776572274,  0.6178762444026438,
    0.7554044083550030,  0.8656312023878318,  0.9445750230732326,
    0.9894009349916499};
constexpr double kGLw[kGL] = {
    0.0271524594117541, 0.0622535239386479, 0.0951585116824928,
    0.1246289712555339, 0.1495959888165767, 0.1691565193950025,
    0.1826034150449236, 0.1894506104550685, 0.1894506104550685,
    0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
    0.1246289712555339, 0.0951585116824928, 0.0622535239386479,
    0.0271524594117541};

double surface_area(int dim) {
    switch (dim) {
        case 1: return 2.0;
        case 2: return 2.0 * kPi;
        default: return 4.0 * kPi;
    }
}

// Radial integrand of the truncated-kernel transform, without the A_alpha
// and angular prefactors.
double radial_integrand(int dim, double alpha, double k, double r) {
    switch (dim) {
        case 1: return std::pow(r, alpha - 1.0) * std::cos(k * r);
        case 2: return std::pow(r, alpha - 1.0) * std::cyl_bessel_j(0.0, k * r);
        default: return std::pow(r, alpha - 2.0) * std::sin(k * r);
    }
}

// Series for the radial integral over [0, a]; absorbs the integrable
// endpoint singularity at r = 0. Converges fast for k*a <= pi.
double radial_series(int dim, double alpha, double k, double a) {
    double sum = 0.0;
    double term;
    for (int j = 0; j < 80; ++j) {
        double expo = alpha + 2.0 * j;
        switch (dim) {
            case 1:
                term = std::pow(k, 2.0 * j) * std::pow(a, expo) /
                       (std::tgamma(2.0 * j + 1.0) * expo);
                break;
            case 2:
                term = std::pow(0.5 * k, 2.0 * j) * std::pow(a, expo) /
                       (std::tgamma(j + 1.0) * std::tgamma(j + 1.0) * expo);
                break;
            default:
                term = std::pow(k, 2.0 * j + 1.0) * std::pow(a, expo) /
                       (std::tgamma(2.0 * j + 2.0) * expo);
                break;
        }
        if (j % 2 == 1) term = -term;
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum) + 1e-300) break;
    }
    return sum;
}

} // namespace

double riesz_constant(int dim, double alpha) {
    if (!(alpha > 0.0 && alpha < static_cast<double>(dim)))
        throw DomainError("riesz_constant: alpha must lie in (0, N)");
    return std::tgamma((dim - alpha) / 2.0) /
           (std::pow(2.0, alpha) * std::pow(kPi, dim / 2.0) * std::tgamma(alpha / 2.0));
}

double truncated_kernel_symbol(int dim, double alpha, double radius, double k) {
    const double A = riesz_constant(dim, alpha);
    k = std::abs(k);
    if (k * radius <= kPi) {
        double integral = radial_series(dim, alpha, k, radius);
        if (dim == 3) {
            // series already carries one factor of k; S = 4 pi A / k * I
            return k == 0.0 ? A * surface_area(3) * std::pow(radius, alpha) / alpha
                            : 4.0 * kPi * A * integral / k;
        }
        return surface_area(dim) * A * integral;
    }
    const double a = kPi / k; // first half-period, handled by the series
    double integral = radial_series(dim, alpha, k, a);
    // composite Gauss-Legendre on half-period panels over [a, radius]
    int panels = static_cast<int>(std::ceil((radius - a) / a));
    double lo = a;
    for (int pnl = 0; pnl < panels; ++pnl) {
        double hi = std::min(radius, lo + a);
        double mid = 0.5 * (lo + hi), halfw = 0.5 * (hi - lo);
        double acc = 0.0;
        for (int i = 0; i < kGL; ++i)
            acc += kGLw[i] * radial_integrand(dim, alpha, k, mid + halfw * kGLx[i]);
        integral += acc * halfw;
        lo = hi;
    }
    if (dim == 3) return 4.0 * kPi * A * integral / k;
    return surface_area(dim) * A * integral;
}

RieszOperator::RieszOperator(const GridSpec& grid, double alpha, ZeroModePolicy policy)
    : grid_(grid), alpha_(alpha), policy_(policy) {
    if (!(alpha > 0.0 && alpha < static_cast<double>(grid.dim())))
        throw DomainError("RieszOperator: alpha must lie in (0, N)");
    multiplier_.resize(grid.size());
    const int n = grid.n();
    const double kappa1 = 2.0 * kPi / grid.length();
    const double R = 0.5 * grid.length();
    std::unordered_map<long, double> cache;
    std::array<int, 3> idx{0, 0, 0};
    for (std::size_t i = 0; i < grid.size(); ++i) {
        long m2 = 0;
        for (int d = 0; d < grid.dim(); ++d) {
            int m = grid.mode(idx[d]);
            m2 += static_cast<long>(m) * m;
        }
        auto it = cache.find(m2);
        double value;
        if (it != cache.end()) {
            value = it->second;
        } else {
            if (m2 == 0) {
                value = policy == ZeroModePolicy::Drop
                            ? 0.0
                            : truncated_kernel_symbol(grid.dim(), alpha, R, 0.0);
            } else {
                double k = kappa1 * std::sqrt(static_cast<double>(m2));
                value = policy == ZeroModePolicy::Drop
                            ? std::pow(k, -alpha)
                            : truncated_kernel_symbol(grid.dim(), alpha, R, k);
            }
            cache.emplace(m2, value);
        }
        multiplier_[i] = value;
        for (int d = grid.dim() - 1; d >= 0; --d) {
            if (++idx[d] < n) break;
            idx[d] = 0;
        }
    }
}

Field RieszOperator::apply(const Field& f) const {
    if (!(f.grid() == grid_))
        throw GridMismatch("RieszOperator::apply: field on a different grid");
    SpectrumHandle s = forward_transform(f);
    for (std::size_t i = 0; i < s.coeffs.size(); ++i) s.coeffs[i] *= multiplier_[i];
    return backward_transform(s);
}

RieszOperator RieszOperator::half_operator() const {
    return RieszOperator(grid_, 0.5 * alpha_, ZeroModePolicy::Drop);
}

} // namespace chq
