#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "choquard/grid.hpp"
#include "choquard/verify.hpp"

using namespace chq;

namespace {

Field gaussian_1d(const GridSpec& g) {
    Field f(g);
    for (int j = 0; j < g.n(); ++j) {
        double x = g.coord(j);
        f[j] = std::exp(-x * x);
    }
    return f;
}

} // namespace

TEST_CASE("GridSpec validation") {
    CHECK_NOTHROW(GridSpec(1, 8, 1.0));
    CHECK_THROWS_AS(GridSpec(0, 8, 1.0), DomainError);
    CHECK_THROWS_AS(GridSpec(4, 8, 1.0), DomainError);
    CHECK_THROWS_AS(GridSpec(1, 7, 1.0), DomainError);   // not a power of two
    CHECK_THROWS_AS(GridSpec(1, 4, 1.0), DomainError);   // below minimum
    CHECK_THROWS_AS(GridSpec(1, 8, -1.0), DomainError);
    GridSpec g(2, 16, 3.0);
    CHECK(g.size() == 256);
    CHECK(g.spacing() == doctest::Approx(3.0 / 16).epsilon(1e-15));
}

TEST_CASE("integrate: zero, constant, Gaussian") {
    GridSpec g(1, 256, 20.0);
    CHECK(integrate(Field(g)) == 0.0);
    CHECK(integrate(Field(g, 1.0)) == doctest::Approx(20.0).epsilon(1e-14));
    GridSpec g2(2, 16, 3.0);
    CHECK(integrate(Field(g2, 1.0)) == doctest::Approx(9.0).epsilon(1e-14));
    // spectral accuracy on a Schwartz tail
    double sqrt_pi = std::sqrt(std::numbers::pi);
    CHECK(integrate(gaussian_1d(g)) == doctest::Approx(sqrt_pi).epsilon(1e-12));
}

TEST_CASE("inner_product basics") {
    GridSpec g(1, 64, 10.0);
    std::mt19937_64 rng(7);
    Field f = random_band_limited_field(g, rng);
    CHECK(inner_product(f, Field(g)) == 0.0);
    CHECK(inner_product(f, f) >= 0.0);
    CHECK(inner_product(Field(g, 1.0), Field(g, 1.0)) ==
          doctest::Approx(10.0).epsilon(1e-14));
    GridSpec other(1, 128, 10.0);
    CHECK_THROWS_AS(inner_product(f, Field(other)), GridMismatch);
}

TEST_CASE("dirichlet_energy: constant, single mode, homogeneity") {
    GridSpec g(1, 128, 7.0);
    CHECK(dirichlet_energy(Field(g, 3.5)) == doctest::Approx(0.0).epsilon(1e-13));

    Field s(g);
    double L = g.length();
    for (int j = 0; j < g.n(); ++j)
        s[j] = std::sin(2.0 * std::numbers::pi * g.coord(j) / L);
    double k = 2.0 * std::numbers::pi / L;
    CHECK(dirichlet_energy(s) == doctest::Approx(k * k * L / 2).epsilon(1e-12));

    std::mt19937_64 rng(3);
    Field f = random_band_limited_field(g, rng);
    Field f3(g);
    for (std::size_t i = 0; i < f.size(); ++i) f3[i] = 3.0 * f[i];
    CHECK(dirichlet_energy(f3) ==
          doctest::Approx(9.0 * dirichlet_energy(f)).epsilon(1e-14));
}

TEST_CASE("transform round trip and Parseval") {
    std::mt19937_64 rng(11);
    for (int dim : {1, 2}) {
        GridSpec g(dim, 32, 5.0);
        for (int rep = 0; rep < (dim == 1 ? 100 : 10); ++rep) {
            Field f = random_band_limited_field(g, rng);
            Field back = backward_transform(forward_transform(f));
            double err = 0.0;
            for (std::size_t i = 0; i < f.size(); ++i)
                err = std::max(err, std::abs(back[i] - f[i]));
            CHECK(err <= 1e-12 * f.max_abs());

            Field h = random_band_limited_field(g, rng);
            SpectrumHandle sf = forward_transform(f);
            SpectrumHandle sh = forward_transform(h);
            double spectral = 0.0;
            for (std::size_t i = 0; i < sf.coeffs.size(); ++i)
                spectral += (sf.coeffs[i] * std::conj(sh.coeffs[i])).real();
            spectral *= std::pow(g.spacing(), g.dim()) / static_cast<double>(g.size());
            CHECK(spectral ==
                  doctest::Approx(inner_product(f, h)).epsilon(1e-12));
        }
    }
}

TEST_CASE("Hermitian symmetry of real-field spectra") {
    GridSpec g(1, 64, 4.0);
    std::mt19937_64 rng(5);
    Field f = random_band_limited_field(g, rng);
    SpectrumHandle s = forward_transform(f);
    for (int j = 1; j < g.n(); ++j) {
        auto a = s.coeffs[j];
        auto b = std::conj(s.coeffs[g.n() - j]);
        CHECK(std::abs(a - b) <= 1e-12 * std::abs(a) + 1e-12);
    }
}

TEST_CASE("shift_field: identity, wrap, quadrature invariance") {
    GridSpec g(2, 16, 2.0);
    std::mt19937_64 rng(19);
    Field f = random_band_limited_field(g, rng);
    Field same = shift_field(f, {0, 0, 0});
    Field wrap = shift_field(f, {16, 16, 0});
    for (std::size_t i = 0; i < f.size(); ++i) {
        CHECK(same[i] == f[i]);
        CHECK(wrap[i] == f[i]);
    }
    Field moved = shift_field(f, {3, -5, 0});
    CHECK(integrate(moved) == doctest::Approx(integrate(f)).epsilon(1e-15));
    CHECK(dirichlet_energy(moved) ==
          doctest::Approx(dirichlet_energy(f)).epsilon(1e-12));
}

TEST_CASE("boundary shell max") {
    GridSpec g(1, 16, 2.0);
    Field f(g);
    f[0] = 2.0;
    f[8] = 5.0;
    CHECK(boundary_shell_max(f) == 2.0);
}
