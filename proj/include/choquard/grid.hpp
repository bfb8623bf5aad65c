#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

#include "choquard/errors.hpp"

namespace chq {

/// Uniform periodic grid on the box [-L/2, L/2)^N, n samples per axis.
/// Sample j on an axis sits at x_j = -L/2 + j*h with h = L/n. Values are
/// stored row-major over axes.
class GridSpec {
public:
    GridSpec(int dim, int points_per_axis, double box_length);

    int dim() const { return dim_; }
    int n() const { return n_; }
    double length() const { return length_; }
    double spacing() const { return length_ / n_; }
    std::size_t size() const { return size_; }

    double coord(int j) const { return -0.5 * length_ + j * spacing(); }

    /// Signed integer mode for flat index j on one axis: j <= n/2 ? j : j - n.
    int mode(int j) const { return j <= n_ / 2 ? j : j - n_; }

    /// Angular wavenumber of mode m: 2*pi*m/L.
    double wavenumber(int m) const;

    bool operator==(const GridSpec&) const = default;

private:
    int dim_;
    int n_;
    double length_;
    std::size_t size_;
};

/// Real scalar samples on a GridSpec. Immutable value type; all public
/// operations leave values finite.
class Field {
public:
    explicit Field(const GridSpec& grid, double fill = 0.0);
    Field(const GridSpec& grid, std::vector<double> values);

    const GridSpec& grid() const { return grid_; }
    const std::vector<double>& values() const { return values_; }
    std::vector<double>& values() { return values_; }

    double operator[](std::size_t i) const { return values_[i]; }
    double& operator[](std::size_t i) { return values_[i]; }
    std::size_t size() const { return values_.size(); }

    /// Multi-index of flat index i (row-major), dim entries.
    std::array<int, 3> unflatten(std::size_t i) const;

    double max_abs() const;
    void check_finite() const;

private:
    GridSpec grid_;
    std::vector<double> values_;
};

void require_same_grid(const Field& a, const Field& b);

/// Complex DFT coefficients of a real field, full spectrum, FFTW layout
/// (unnormalized forward transform).
struct SpectrumHandle {
    GridSpec grid;
    std::vector<std::complex<double>> coeffs;
};

SpectrumHandle forward_transform(const Field& f);
/// Inverse of forward_transform (includes the 1/n^N normalization).
Field backward_transform(const SpectrumHandle& s);

/// h^N * sum of samples; the box quadrature of f.
double integrate(const Field& f);

/// h^N * sum f*g. Symmetric, bilinear.
double inner_product(const Field& f, const Field& g);

/// Spectral Dirichlet energy: sum_m |kappa_m|^2 |f_hat_m|^2 with Parseval
/// normalization, equal to the integral of |grad f|^2 for band-limited f.
double dirichlet_energy(const Field& f);

/// Periodic lattice translation by whole grid cells per axis.
Field shift_field(const Field& f, const std::array<int, 3>& offsets);

/// Largest |f| over the outermost node shell (any axis index 0 or n-1);
/// used to audit the box-size approximation of decay at infinity.
double boundary_shell_max(const Field& f);

} // namespace chq
