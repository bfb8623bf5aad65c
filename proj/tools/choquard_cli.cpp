#include <atomic>
#include <cmath>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "choquard/io.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNoConvergence = 3;
constexpr int kExitVerifyFailed = 4;

struct CommonOpts {
    std::string output_dir;
    std::int64_t seed = -1;
    int parallel = 1;
    bool quiet = false;
};

void apply_overrides(chq::RunConfig& cfg, const CommonOpts& opts) {
    if (!opts.output_dir.empty()) cfg.output_dir = opts.output_dir;
    if (opts.seed >= 0) cfg.seed = static_cast<std::uint64_t>(opts.seed);
}

double asymmetry(const chq::Pair& pair) {
    double diff = 0.0, nu = 0.0;
    for (std::size_t i = 0; i < pair.u.size(); ++i) {
        double d = pair.u[i] - pair.v[i];
        diff += d * d;
        nu += pair.u[i] * pair.u[i];
    }
    return std::sqrt(diff / nu);
}

int cmd_solve(const std::string& config_path, const CommonOpts& opts) {
    chq::RunConfig cfg = chq::load_run_config(config_path);
    apply_overrides(cfg, opts);
    chq::ProblemSpec prob = chq::make_problem(cfg);

    std::filesystem::create_directories(cfg.output_dir);
    chq::SolveResult result = chq::ground_state(prob, cfg.solver);

    chq::chq1_write(cfg.output_dir / "fields.chq1", {"u", "v"},
                    {&result.pair.u, &result.pair.v});
    chq::atomic_write(cfg.output_dir / "result.json", chq::result_to_json(result));
    chq::atomic_write(cfg.output_dir / "history.csv",
                      chq::history_to_csv(result.history));

    if (!opts.quiet) {
        std::cout << "c0 = " << result.c0 << "  iterations = " << result.iterations
                  << "  converged = " << (result.converged ? "yes" : "no") << "\n";
        if (result.boundary_warning)
            std::cout << "warning: solution amplitude at the box boundary exceeds "
                         "1e-6 of the peak; consider enlarging L\n";
    }
    return result.converged ? 0 : kExitNoConvergence;
}

int cmd_verify(const std::string& config_path, const CommonOpts& opts) {
    chq::RunConfig cfg = chq::load_run_config(config_path);
    apply_overrides(cfg, opts);
    chq::ProblemSpec prob = chq::make_problem(cfg);

    std::filesystem::create_directories(cfg.output_dir);
    auto reports = chq::run_suite(prob, cfg.solver, cfg.seed);
    chq::atomic_write(cfg.output_dir / "reports.json", chq::reports_to_json(reports));
    if (!opts.quiet) std::cout << chq::reports_to_table(reports);
    return chq::all_passed(reports) ? 0 : kExitVerifyFailed;
}

int cmd_sweep(const std::string& sweep_path, const CommonOpts& opts) {
    chq::SweepSpec sweep = chq::load_sweep_spec(sweep_path);
    apply_overrides(sweep.base, opts);
    std::filesystem::create_directories(sweep.base.output_dir);

    struct Row {
        double value;
        double c0 = 0.0;
        bool converged = false;
        double residual = 0.0;
        double asym = 0.0;
        bool failed = false;
        std::string error;
    };
    std::vector<Row> rows(sweep.values.size());
    for (std::size_t i = 0; i < sweep.values.size(); ++i)
        rows[i].value = sweep.values[i];

    auto run_point = [&](std::size_t i) {
        chq::RunConfig cfg = sweep.base;
        switch (sweep.axis) {
            case chq::SweepAxis::P: cfg.p = sweep.values[i]; break;
            case chq::SweepAxis::Q: cfg.q = sweep.values[i]; break;
            case chq::SweepAxis::Alpha: cfg.alpha = sweep.values[i]; break;
            case chq::SweepAxis::Amplitude: {
                auto* p = std::get_if<chq::PeriodicPotential>(&cfg.potentialA);
                if (!p)
                    throw chq::ConfigError(
                        "amplitude sweep requires a periodic potential A");
                p->amplitude = sweep.values[i];
                break;
            }
        }
        Row& row = rows[i];
        try {
            chq::ProblemSpec prob = chq::make_problem(cfg);
            chq::SolveResult result = chq::ground_state(prob, cfg.solver);
            row.c0 = result.c0;
            row.converged = result.converged;
            row.residual = result.history.empty() ? 0.0
                                                  : result.history.back().residual;
            row.asym = asymmetry(result.pair);
            row.failed = !result.converged;
        } catch (const std::exception& e) {
            row.failed = true;
            row.error = e.what();
        }
    };

    if (opts.parallel > 1) {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (int t = 0; t < opts.parallel; ++t)
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < rows.size(); i = next++)
                    run_point(i);
            });
        for (auto& th : pool) th.join();
    } else {
        for (std::size_t i = 0; i < rows.size(); ++i) run_point(i);
    }

    std::ostringstream csv;
    csv.precision(17);
    csv << "value,c0,converged,residual,asym\n";
    bool any_failed = false;
    for (const Row& row : rows) {
        any_failed = any_failed || row.failed;
        if (row.error.empty())
            csv << row.value << "," << row.c0 << "," << (row.converged ? 1 : 0)
                << "," << row.residual << "," << row.asym << "\n";
        else
            csv << row.value << ",,0,,\n";
        if (!opts.quiet && !row.error.empty())
            std::cerr << "point " << row.value << " failed: " << row.error << "\n";
    }
    chq::atomic_write(sweep.base.output_dir / "sweep.csv", csv.str());
    if (!opts.quiet) std::cout << csv.str();
    return any_failed ? kExitNoConvergence : 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Ground states of the coupled Choquard system on a periodic box"};
    app.require_subcommand(1);

    CommonOpts opts;
    app.add_option("--output-dir", opts.output_dir, "override config output_dir");
    app.add_option("--seed", opts.seed, "override config seed");
    app.add_option("--parallel", opts.parallel, "worker threads for sweeps")
        ->check(CLI::PositiveNumber);
    app.add_flag("--quiet", opts.quiet, "suppress progress output");

    std::string config_path, verify_path, sweep_path;
    CLI::App* solve = app.add_subcommand("solve", "minimize the action on the Nehari manifold");
    solve->add_option("config", config_path, "run config JSON")->required();
    CLI::App* verify = app.add_subcommand("verify", "run the identity/inequality check suite");
    verify->add_option("config", verify_path, "run config JSON")->required();
    CLI::App* sweep = app.add_subcommand("sweep", "solve across a parameter sweep");
    sweep->add_option("sweep", sweep_path, "sweep spec JSON")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve->parsed()) return cmd_solve(config_path, opts);
        if (verify->parsed()) return cmd_verify(verify_path, opts);
        return cmd_sweep(sweep_path, opts);
    } catch (const chq::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const chq::DomainError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNoConvergence;
    }
}
