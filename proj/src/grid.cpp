#include "choquard/grid.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>

namespace chq {

namespace {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

} // namespace

GridSpec::GridSpec(int dim, int points_per_axis, double box_length)
    : dim_(dim), n_(points_per_axis), length_(box_length) {
    if (dim < 1 || dim > 3)
        throw DomainError("GridSpec: dim must be 1, 2 or 3");
    if (n_ < 8 || !is_power_of_two(n_))
        throw DomainError("GridSpec: points_per_axis must be a power of two >= 8");
    if (!(box_length > 0.0) || !std::isfinite(box_length))
        throw DomainError("GridSpec: box_length must be positive and finite");
    double count = std::pow(static_cast<double>(n_), dim_);
    if (count > 1.0e9)
        throw DomainError("GridSpec: total sample count exceeds array limits");
    size_ = 1;
    for (int d = 0; d < dim_; ++d) size_ *= static_cast<std::size_t>(n_);
}

double GridSpec::wavenumber(int m) const {
    return 2.0 * std::numbers::pi * m / length_;
}

Field::Field(const GridSpec& grid, double fill)
    : grid_(grid), values_(grid.size(), fill) {}

Field::Field(const GridSpec& grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.size())
        throw DomainError("Field: value count does not match grid");
    check_finite();
}

std::array<int, 3> Field::unflatten(std::size_t i) const {
    std::array<int, 3> idx{0, 0, 0};
    const int n = grid_.n();
    for (int d = grid_.dim() - 1; d >= 0; --d) {
        idx[d] = static_cast<int>(i % n);
        i /= n;
    }
    return idx;
}

double Field::max_abs() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

void Field::check_finite() const {
    for (double v : values_)
        if (!std::isfinite(v))
            throw DomainError("Field: non-finite value");
}

void require_same_grid(const Field& a, const Field& b) {
    if (!(a.grid() == b.grid()))
        throw GridMismatch("fields live on different grids");
}

namespace {

// FFTW plan cache keyed by (dim, n, direction). Plans are created with
// FFTW_ESTIMATE on aligned scratch and reused via the new-array interface;
// creation and lookup are serialized, execution is thread-safe.
struct PlanCache {
    std::mutex mu;
    std::map<std::tuple<int, int, int>, fftw_plan> plans;

    fftw_plan get(const GridSpec& g, int sign) {
        std::scoped_lock lock(mu);
        auto key = std::make_tuple(g.dim(), g.n(), sign);
        auto it = plans.find(key);
        if (it != plans.end()) return it->second;
        int n[3] = {g.n(), g.n(), g.n()};
        fftw_complex* scratch = fftw_alloc_complex(g.size());
        fftw_plan p = fftw_plan_dft(g.dim(), n, scratch, scratch, sign,
                                    FFTW_ESTIMATE | FFTW_UNALIGNED);
        fftw_free(scratch);
        plans.emplace(key, p);
        return p;
    }
};

PlanCache& plan_cache() {
    static PlanCache cache;
    return cache;
}

} // namespace

SpectrumHandle forward_transform(const Field& f) {
    const GridSpec& g = f.grid();
    std::vector<std::complex<double>> buf(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) buf[i] = f[i];
    fftw_plan p = plan_cache().get(g, FFTW_FORWARD);
    fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(buf.data()),
                     reinterpret_cast<fftw_complex*>(buf.data()));
    return SpectrumHandle{g, std::move(buf)};
}

Field backward_transform(const SpectrumHandle& s) {
    const GridSpec& g = s.grid;
    std::vector<std::complex<double>> buf = s.coeffs;
    fftw_plan p = plan_cache().get(g, FFTW_BACKWARD);
    fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(buf.data()),
                     reinterpret_cast<fftw_complex*>(buf.data()));
    const double inv = 1.0 / static_cast<double>(g.size());
    std::vector<double> out(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) out[i] = buf[i].real() * inv;
    return Field(g, std::move(out));
}

double integrate(const Field& f) {
    double s = 0.0;
    for (double v : f.values()) s += v;
    return s * std::pow(f.grid().spacing(), f.grid().dim());
}

double inner_product(const Field& f, const Field& g) {
    require_same_grid(f, g);
    double s = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) s += f[i] * g[i];
    return s * std::pow(f.grid().spacing(), f.grid().dim());
}

double dirichlet_energy(const Field& f) {
    const GridSpec& g = f.grid();
    SpectrumHandle s = forward_transform(f);
    const int n = g.n();
    double acc = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        std::size_t rem = i;
        double k2 = 0.0;
        for (int d = g.dim() - 1; d >= 0; --d) {
            int j = static_cast<int>(rem % n);
            rem /= n;
            double k = g.wavenumber(g.mode(j));
            k2 += k * k;
        }
        acc += k2 * std::norm(s.coeffs[i]);
    }
    // h^N / n^N Parseval weight.
    return acc * std::pow(g.spacing(), g.dim()) / static_cast<double>(g.size());
}

Field shift_field(const Field& f, const std::array<int, 3>& offsets) {
    const GridSpec& g = f.grid();
    const int n = g.n();
    Field out(g);
    std::array<int, 3> idx{0, 0, 0};
    for (std::size_t i = 0; i < g.size(); ++i) {
        // source index: (idx - offset) mod n on each axis
        std::size_t src = 0;
        for (int d = 0; d < g.dim(); ++d) {
            int j = ((idx[d] - offsets[d]) % n + n) % n;
            src = src * n + static_cast<std::size_t>(j);
        }
        out[i] = f[src];
        for (int d = g.dim() - 1; d >= 0; --d) {
            if (++idx[d] < n) break;
            idx[d] = 0;
        }
    }
    return out;
}

double boundary_shell_max(const Field& f) {
    const GridSpec& g = f.grid();
    const int n = g.n();
    double m = 0.0;
    std::array<int, 3> idx{0, 0, 0};
    for (std::size_t i = 0; i < g.size(); ++i) {
        for (int d = 0; d < g.dim(); ++d) {
            if (idx[d] == 0 || idx[d] == n - 1) {
                m = std::max(m, std::abs(f[i]));
                break;
            }
        }
        for (int d = g.dim() - 1; d >= 0; --d) {
            if (++idx[d] < n) break;
            idx[d] = 0;
        }
    }
    return m;
}

} // namespace chq
