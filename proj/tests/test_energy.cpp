#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "choquard/energy.hpp"
#include "choquard/solver.hpp"
#include "choquard/verify.hpp"

using namespace chq;

namespace {

ProblemSpec make_problem_1d(int n, double L, double alpha, double p, double q,
                            ZeroModePolicy policy = ZeroModePolicy::Drop) {
    GridSpec g(1, n, L);
    return ProblemSpec(g, alpha, p, q, sample_potential(ConstantPotential{1.0}, g),
                       sample_potential(ConstantPotential{1.0}, g), policy);
}

Pair random_pair(const GridSpec& g, std::mt19937_64& rng) {
    return Pair(random_band_limited_field(g, rng), random_band_limited_field(g, rng));
}

// O(n^2) coupling oracle: real-space kernel from a direct mode sum, then the
// double sum h * sum_j (sum_k kern(j-k) |u_k|^p) |v_j|^q.
double coupling_oracle_1d(const ProblemSpec& prob, const Pair& pair) {
    const GridSpec& g = prob.grid();
    const int n = g.n();
    const auto& mult = prob.riesz().multiplier();
    std::vector<double> kern(n, 0.0);
    for (int d = 0; d < n; ++d) {
        std::complex<double> acc = 0.0;
        for (int j = 0; j < n; ++j) {
            double phase = 2.0 * std::numbers::pi * g.mode(j) * d / n;
            acc += mult[j] * std::polar(1.0, phase);
        }
        kern[d] = acc.real() / n;
    }
    double total = 0.0;
    for (int j = 0; j < n; ++j) {
        double conv = 0.0;
        for (int k = 0; k < n; ++k)
            conv += kern[((j - k) % n + n) % n] * std::pow(std::abs(pair.u[k]), prob.p());
        total += conv * std::pow(std::abs(pair.v[j]), prob.q());
    }
    return total * g.spacing();
}

} // namespace

TEST_CASE("ProblemSpec enforces the admissibility window") {
    GridSpec g(1, 32, 10.0);
    auto one = sample_potential(ConstantPotential{1.0}, g);
    // (N+alpha)/N = 1.5 for N=1, alpha=0.5
    CHECK_THROWS_AS(ProblemSpec(g, 0.5, 1.5, 2.0, one, one), DomainError);
    CHECK_THROWS_AS(ProblemSpec(g, 0.5, 2.0, 1.2, one, one), DomainError);
    CHECK_NOTHROW(ProblemSpec(g, 0.5, 2.0, 2.5, one, one));

    GridSpec g3(3, 8, 10.0);
    auto one3 = sample_potential(ConstantPotential{1.0}, g3);
    // 2*_alpha = 5 for N=3, alpha=2
    CHECK_THROWS_AS(ProblemSpec(g3, 2.0, 5.0, 2.0, one3, one3), DomainError);
    CHECK_NOTHROW(ProblemSpec(g3, 2.0, 4.9, 2.0, one3, one3));
}

TEST_CASE("coupling: zero field, homogeneity, symmetry") {
    ProblemSpec prob = make_problem_1d(64, 10.0, 0.5, 2.0, 2.5);
    std::mt19937_64 rng(3);
    Pair pair = random_pair(prob.grid(), rng);

    CHECK(coupling(prob, Pair(Field(prob.grid()), pair.v)) == 0.0);

    double base = coupling(prob, pair);
    Field tu(prob.grid()), tv(prob.grid());
    for (std::size_t i = 0; i < tu.size(); ++i) {
        tu[i] = 2.0 * pair.u[i];
        tv[i] = 2.0 * pair.v[i];
    }
    double scaled = coupling(prob, Pair(std::move(tu), std::move(tv)));
    CHECK(scaled == doctest::Approx(std::pow(2.0, 4.5) * base).epsilon(1e-12));

    // swapped-exponent evaluation: int (I_a * |v|^q) |u|^p
    Field vq(prob.grid()), up(prob.grid());
    for (std::size_t i = 0; i < up.size(); ++i) {
        up[i] = std::pow(std::abs(pair.u[i]), prob.p());
        vq[i] = std::pow(std::abs(pair.v[i]), prob.q());
    }
    double swapped = inner_product(prob.riesz().apply(vq), up);
    CHECK(swapped == doctest::Approx(base).epsilon(1e-12));
}

TEST_CASE("coupling matches the brute-force double sum on a 16-point grid") {
    for (ZeroModePolicy policy : {ZeroModePolicy::Drop, ZeroModePolicy::BallValue}) {
        ProblemSpec prob = make_problem_1d(16, 6.0, 0.5, 2.0, 2.5, policy);
        std::mt19937_64 rng(17);
        Pair pair = random_pair(prob.grid(), rng);
        CHECK(coupling(prob, pair) ==
              doctest::Approx(coupling_oracle_1d(prob, pair)).epsilon(1e-12));
    }
}

TEST_CASE("weighted_norm_sq: zero pair, unweighted match, monotonicity") {
    ProblemSpec prob = make_problem_1d(64, 10.0, 0.5, 2.0, 2.0);
    std::mt19937_64 rng(5);
    Pair pair = random_pair(prob.grid(), rng);

    CHECK(weighted_norm_sq(prob, Pair(Field(prob.grid()), Field(prob.grid()))) == 0.0);
    double expected = dirichlet_energy(pair.u) + dirichlet_energy(pair.v) +
                      inner_product(pair.u, pair.u) + inner_product(pair.v, pair.v);
    CHECK(weighted_norm_sq(prob, pair) == doctest::Approx(expected).epsilon(1e-14));

    GridSpec g = prob.grid();
    ProblemSpec heavier(g, 0.5, 2.0, 2.0, sample_potential(ConstantPotential{1.5}, g),
                        prob.potB(), ZeroModePolicy::Drop);
    CHECK(weighted_norm_sq(heavier, pair) >= weighted_norm_sq(prob, pair));
}

TEST_CASE("action report consistency and the on-manifold identity") {
    ProblemSpec prob = make_problem_1d(64, 12.0, 0.5, 2.0, 2.5);
    std::mt19937_64 rng(9);
    Pair raw(random_band_limited_field(prob.grid(), rng),
             random_band_limited_field(prob.grid(), rng));
    // make components positive so the coupling is comfortably positive
    for (std::size_t i = 0; i < raw.u.size(); ++i) {
        raw.u[i] = std::abs(raw.u[i]);
        raw.v[i] = std::abs(raw.v[i]);
    }

    EnergyReport zero = action(prob, Pair(Field(prob.grid()), Field(prob.grid())));
    CHECK(zero.action == 0.0);
    CHECK(zero.nehari == 0.0);

    EnergyReport half = action(prob, Pair(raw.u, Field(prob.grid())));
    CHECK(half.coupling == 0.0);
    CHECK(half.action == doctest::Approx(0.5 * half.normSq).epsilon(1e-14));
    CHECK(half.action > 0.0);

    EnergyReport rep = action(prob, raw);
    double pq = prob.p() + prob.q();
    CHECK(rep.action ==
          doctest::Approx(0.5 * rep.normSq - 2.0 / pq * rep.coupling).epsilon(1e-12));
    CHECK(rep.nehari ==
          doctest::Approx(rep.normSq - 2.0 * rep.coupling).epsilon(1e-12));

    Pair projected = nehari_project(prob, raw).pair;
    EnergyReport on = action(prob, projected);
    CHECK(on.action ==
          doctest::Approx((pq - 2.0) / (2.0 * pq) * on.normSq).epsilon(1e-10));
}

TEST_CASE("gradient: zero pair, Euler identity, finite differences") {
    ProblemSpec prob = make_problem_1d(32, 10.0, 0.5, 2.0, 2.0);
    std::mt19937_64 rng(13);

    Pair zg = gradient(prob, Pair(Field(prob.grid()), Field(prob.grid())));
    CHECK(zg.u.max_abs() == 0.0);
    CHECK(zg.v.max_abs() == 0.0);

    Pair pair = random_pair(prob.grid(), rng);
    Pair g = gradient(prob, pair);
    double pairing = inner_product(g.u, pair.u) + inner_product(g.v, pair.v);
    EnergyValues ev = energy_values(prob, pair);
    CHECK(pairing == doctest::Approx(nehari_from(ev)).epsilon(1e-10));

    Pair dir = random_pair(prob.grid(), rng);
    CheckReport fd = check_gradient_fd(prob, pair, dir, 1e-5);
    CHECK(fd.passed);
}

TEST_CASE("fiber map: endpoint, rescale cross-check, homogeneity") {
    ProblemSpec prob = make_problem_1d(64, 10.0, 0.5, 2.0, 2.5);
    std::mt19937_64 rng(21);
    Pair pair = random_pair(prob.grid(), rng);
    EnergyValues ev = energy_values(prob, pair);

    CHECK(fiber_value(prob, ev, 1.0) ==
          doctest::Approx(action_from(prob, ev)).epsilon(1e-14));

    for (double t : {0.5, 1.0, 1.7, 2.0}) {
        Field tu(prob.grid()), tv(prob.grid());
        for (std::size_t i = 0; i < tu.size(); ++i) {
            tu[i] = t * pair.u[i];
            tv[i] = t * pair.v[i];
        }
        double direct = action_from(prob, energy_values(prob, Pair(tu, tv)));
        CHECK(fiber_value(prob, ev, t) == doctest::Approx(direct).epsilon(1e-12));
    }
}
