#include "choquard/verify.hpp"

#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

namespace chq {

namespace {

Field abs_power(const Field& f, double e) {
    Field out(f.grid());
    for (std::size_t i = 0; i < f.size(); ++i) out[i] = std::pow(std::abs(f[i]), e);
    return out;
}

Field scaled(const Field& f, double t) {
    Field out(f.grid());
    for (std::size_t i = 0; i < f.size(); ++i) out[i] = t * f[i];
    return out;
}

Field added(const Field& a, const Field& b) {
    Field out(a.grid());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

} // namespace

Field random_band_limited_field(const GridSpec& grid, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Field noise(grid);
    for (std::size_t i = 0; i < noise.size(); ++i) noise[i] = gauss(rng);
    SpectrumHandle s = forward_transform(noise);
    const int n = grid.n();
    const double cutoff = n / 4.0;
    const double sigma = n / 12.0;
    for (std::size_t i = 0; i < s.coeffs.size(); ++i) {
        std::size_t rem = i;
        double m2 = 0.0;
        bool cut = false;
        for (int d = grid.dim() - 1; d >= 0; --d) {
            int j = static_cast<int>(rem % n);
            rem /= n;
            int m = grid.mode(j);
            m2 += static_cast<double>(m) * m;
            if (std::abs(m) > cutoff) cut = true;
        }
        s.coeffs[i] *= cut ? 0.0 : std::exp(-m2 / (2.0 * sigma * sigma));
    }
    Field f = backward_transform(s);
    double norm = std::sqrt(inner_product(f, f));
    for (std::size_t i = 0; i < f.size(); ++i) f[i] /= norm;
    return f;
}

CheckReport check_semigroup(const ProblemSpec& prob, const Pair& pair) {
    ProblemSpec drop = prob.with_policy(ZeroModePolicy::Drop);
    double D = coupling(drop, pair);
    Field hu = drop.riesz_half().apply(abs_power(pair.u, drop.p()));
    Field hv = drop.riesz_half().apply(abs_power(pair.v, drop.q()));
    double Dhalf = inner_product(hu, hv);
    double measured = std::abs(D - Dhalf) / std::max(std::abs(D), 1e-300);
    return {"semigroup", measured <= 1e-12, measured, 1e-12,
            "D vs half-order inner product, Drop policy"};
}

CheckReport check_cauchy_schwarz(const ProblemSpec& prob, const Pair& pair) {
    ProblemSpec drop = prob.with_policy(ZeroModePolicy::Drop);
    Field up = abs_power(pair.u, drop.p());
    Field vq = abs_power(pair.v, drop.q());
    double D = inner_product(drop.riesz().apply(up), vq);
    double Duu = inner_product(drop.riesz().apply(up), up);
    double Dvv = inner_product(drop.riesz().apply(vq), vq);
    double lhs = D * D;
    double rhs = Duu * Dvv;
    bool ok = lhs <= rhs * (1.0 + 1e-10) + 1e-300;
    double measured = rhs > 0.0 ? lhs / rhs : 0.0;
    return {"cauchy_schwarz", ok, measured, 1.0 + 1e-10,
            "D^2 against the product of diagonal couplings"};
}

CheckReport check_hls_scaling(const ProblemSpec& prob, const Field& v, double s) {
    const int N = prob.dim();
    const double alpha = prob.alpha();
    if (!(s > 1.0 && s < N / alpha))
        throw DomainError("check_hls_scaling: s must lie in (1, N/alpha)");
    const double expo = N * s / (N - alpha * s);
    auto ratio = [&](const Field& w) {
        Field conv = prob.riesz().apply(w);
        double num = integrate(abs_power(conv, expo));
        double den = std::pow(integrate(abs_power(w, s)), N / (N - alpha * s));
        return num / den;
    };
    double base = ratio(v);
    double worst = 0.0;
    for (double lambda : {0.5, 3.0}) {
        double r = ratio(scaled(v, lambda)) / base;
        worst = std::max(worst, std::abs(r - 1.0));
    }
    return {"hls_scaling", worst <= 1e-10, worst, 1e-10,
            "ratio invariance under field scaling, lambda in {0.5, 3}"};
}

CheckReport check_brezis_lieb(const ProblemSpec& prob, const Pair& first,
                              const Pair& second,
                              const std::array<int, 3>& separations) {
    double base = coupling(prob, first);
    std::array<double, 3> defect{};
    for (int i = 0; i < 3; ++i) {
        std::array<int, 3> off{separations[i], 0, 0};
        Field wd = shift_field(second.u, off);
        Field zd = shift_field(second.v, off);
        double together =
            coupling(prob, Pair(added(first.u, wd), added(first.v, zd)));
        double apart = coupling(prob, Pair(wd, zd));
        defect[i] = std::abs(together - base - apart);
    }
    bool ok = defect[0] > defect[1] && defect[1] > defect[2];
    std::ostringstream det;
    det << "defects " << defect[0] << ", " << defect[1] << ", " << defect[2];
    return {"brezis_lieb", ok, defect[2], defect[1], det.str()};
}

CheckReport check_nehari_identity(const ProblemSpec& prob, const SolveResult& result) {
    if (!result.converged)
        return {"nehari_identity", true, 0.0, 1e-8, "skipped: result not converged"};
    const double pq = prob.p() + prob.q();
    const double expected = (pq - 2.0) / (2.0 * pq) * result.report.normSq;
    double measured = std::abs(result.report.action - expected) /
                      std::max(std::abs(result.report.action), 1e-300);
    return {"nehari_identity", measured <= 1e-8, measured, 1e-8,
            "action vs ((p+q-2)/(2(p+q))) norm^2 at P=0"};
}

CheckReport check_comparison(const ProblemSpec& probLow, const ProblemSpec& probHigh,
                             const SolverConfig& cfg) {
    for (std::size_t i = 0; i < probLow.potA().field.size(); ++i)
        if (probHigh.potA().field[i] < probLow.potA().field[i] - 1e-14)
            throw DomainError("check_comparison: A_high must dominate A_low");
    SolveResult low = ground_state(probLow, cfg);
    SolveResult high = ground_state(probHigh, cfg);
    double slack = 10.0 * cfg.tol_residual * high.report.normSq;
    bool ok = low.converged && high.converged && low.c0 <= high.c0 + slack;
    std::ostringstream det;
    det << "c0(low)=" << low.c0 << " c0(high)=" << high.c0 << " slack=" << slack;
    return {"comparison", ok, low.c0 - high.c0, slack, det.str()};
}

CheckReport check_gradient_fd(const ProblemSpec& prob, const Pair& pair,
                              const Pair& dir, double eps) {
    auto shifted = [&](double e) {
        return Pair(added(pair.u, scaled(dir.u, e)), added(pair.v, scaled(dir.v, e)));
    };
    double plus = action_from(prob, energy_values(prob, shifted(eps)));
    double minus = action_from(prob, energy_values(prob, shifted(-eps)));
    double fd = (plus - minus) / (2.0 * eps);
    Pair g = gradient(prob, pair);
    double exact = inner_product(g.u, dir.u) + inner_product(g.v, dir.v);
    double measured = std::abs(fd - exact) / std::max(std::abs(exact), 1e-300);
    return {"gradient_fd", measured <= 1e-5, measured, 1e-5,
            "central difference vs <grad, dir>"};
}

CheckReport check_shift_invariance(const ProblemSpec& prob, const SolverConfig& cfg,
                                   const std::array<int, 3>& shift) {
    SolveResult a = ground_state(prob, cfg);
    Pair init = default_init(prob.grid());
    Pair shifted(shift_field(init.u, shift), shift_field(init.v, shift));
    SolveResult b = ground_state(prob, cfg, shifted);
    double measured = std::abs(a.c0 - b.c0) / std::max(std::abs(a.c0), 1e-300);
    bool ok = a.converged && b.converged && measured <= 1e-8;
    std::ostringstream det;
    det << "c0=" << a.c0 << " c0(shifted init)=" << b.c0;
    return {"shift_invariance", ok, measured, 1e-8, det.str()};
}

std::vector<CheckReport> run_suite(const ProblemSpec& prob, const SolverConfig& cfg,
                                   std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const GridSpec& g = prob.grid();
    std::vector<CheckReport> reports;

    Pair random_pair(random_band_limited_field(g, rng),
                     random_band_limited_field(g, rng));
    reports.push_back(check_semigroup(prob, random_pair));
    reports.push_back(check_cauchy_schwarz(prob, random_pair));

    // HLS exponent: midpoint of the admissible interval, capped at 1.5
    double s = std::min(1.5, 0.5 * (1.0 + g.dim() / prob.alpha()));
    reports.push_back(check_hls_scaling(prob, random_pair.u, s));

    // bump pairs for the splitting check
    auto bump = [&](double center, double width) {
        Field f(g);
        std::array<int, 3> idx{0, 0, 0};
        for (std::size_t i = 0; i < g.size(); ++i) {
            double r2 = 0.0;
            for (int d = 0; d < g.dim(); ++d) {
                double x = g.coord(idx[d]) - (d == 0 ? center : 0.0);
                r2 += x * x;
            }
            f[i] = std::exp(-r2 / (2.0 * width * width));
            for (int d = g.dim() - 1; d >= 0; --d) {
                if (++idx[d] < g.n()) break;
                idx[d] = 0;
            }
        }
        return f;
    };
    double w = g.length() / 24.0;
    Pair first(bump(0.0, w), bump(0.0, w));
    Pair second(bump(0.0, w), bump(0.0, w));
    // largest separation L/4 so no periodic image sits inside the kernel range
    int d0 = std::max(1, g.n() / 16);
    reports.push_back(
        check_brezis_lieb(prob, first, second, {d0, 2 * d0, 4 * d0}));

    // gradient finite-difference check on the random pair
    Pair dir(random_band_limited_field(g, rng), random_band_limited_field(g, rng));
    reports.push_back(check_gradient_fd(prob, random_pair, dir, 1e-5));

    // solver-dependent checks
    SolveResult sol = ground_state(prob, cfg);
    reports.push_back(check_nehari_identity(prob, sol));

    // comparison against the constant-floor potential
    ConstantPotential floorA{prob.potA().min_value};
    ProblemSpec low(g, prob.alpha(), prob.p(), prob.q(),
                    sample_potential(floorA, g), prob.potB(), prob.policy());
    bool a_constant = prob.potA().max_value - prob.potA().min_value < 1e-14;
    if (a_constant) {
        // identical floor would make the comparison trivial; raise A instead
        PeriodicPotential bumped{prob.potA().min_value, 1.0,
                                 {g.length(), g.length(), g.length()}};
        ProblemSpec high(g, prob.alpha(), prob.p(), prob.q(),
                         sample_potential(bumped, g), prob.potB(), prob.policy());
        reports.push_back(check_comparison(prob, high, cfg));
    } else {
        reports.push_back(check_comparison(low, prob, cfg));
    }

    // shift by a common lattice period of both potentials (half box for
    // constant potentials)
    auto period_cells = [&](const PotentialField& pot) {
        if (const auto* p = std::get_if<PeriodicPotential>(&pot.spec))
            return static_cast<int>(std::lround(g.n() * p->periods[0] / g.length()));
        return g.n() / 2;
    };
    int ca = period_cells(prob.potA());
    int cb = period_cells(prob.potB());
    int shift = std::lcm(std::max(ca, 1), std::max(cb, 1)) % g.n();
    if (shift == 0) shift = g.n() / 2;
    reports.push_back(check_shift_invariance(prob, cfg, {shift, 0, 0}));
    return reports;
}

std::string reports_to_json(const std::vector<CheckReport>& reports) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : reports) {
        arr.push_back({{"name", r.name},
                       {"passed", r.passed},
                       {"measured", r.measured},
                       {"threshold", r.threshold},
                       {"details", r.details}});
    }
    return arr.dump(2);
}

std::string reports_to_table(const std::vector<CheckReport>& reports) {
    std::ostringstream out;
    for (const auto& r : reports) {
        out << (r.passed ? "PASS " : "FAIL ") << r.name << "  measured="
            << r.measured << "  threshold=" << r.threshold << "  " << r.details
            << "\n";
    }
    return out.str();
}

bool all_passed(const std::vector<CheckReport>& reports) {
    for (const auto& r : reports)
        if (!r.passed) return false;
    return true;
}

} // namespace chq
