#include "choquard/io.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace chq {

using nlohmann::json;

void chq1_write(const std::filesystem::path& path,
                const std::vector<std::string>& names,
                const std::vector<const Field*>& fields) {
    if (names.size() != fields.size() || fields.empty())
        throw ConfigError("chq1_write: names and fields must match and be nonempty");
    const GridSpec& g = fields[0]->grid();
    for (const Field* f : fields)
        if (!(f->grid() == g)) throw GridMismatch("chq1_write: mixed grids");
    json header = {{"format", "CHQ1"}, {"dim", g.dim()},   {"n", g.n()},
                   {"L", g.length()},  {"dtype", "f64le"}, {"fields", names}};

    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw ConfigError("chq1_write: cannot open " + tmp.string());
        out << header.dump() << "\n";
        for (const Field* f : fields)
            out.write(reinterpret_cast<const char*>(f->values().data()),
                      static_cast<std::streamsize>(f->size() * sizeof(double)));
    }
    std::filesystem::rename(tmp, path);
}

Chq1Dump chq1_read(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("chq1_read: cannot open " + path.string());
    std::string line;
    std::getline(in, line);
    json header = json::parse(line);
    if (header.value("format", "") != "CHQ1" || header.value("dtype", "") != "f64le")
        throw ConfigError("chq1_read: not a CHQ1 dump");
    GridSpec grid(header.at("dim").get<int>(), header.at("n").get<int>(),
                  header.at("L").get<double>());
    Chq1Dump dump{grid, header.at("fields").get<std::vector<std::string>>(), {}};
    for (std::size_t k = 0; k < dump.names.size(); ++k) {
        std::vector<double> values(grid.size());
        in.read(reinterpret_cast<char*>(values.data()),
                static_cast<std::streamsize>(values.size() * sizeof(double)));
        if (!in) throw ConfigError("chq1_read: truncated payload");
        dump.fields.emplace_back(grid, std::move(values));
    }
    return dump;
}

namespace {

PotentialSpec parse_potential(const json& j) {
    std::string variant = j.at("variant").get<std::string>();
    if (variant == "constant") {
        return ConstantPotential{j.at("value").get<double>()};
    }
    if (variant == "bounded_limit") {
        return BoundedLimitPotential{
            j.at("floor").get<double>(), j.at("limit").get<double>(),
            j.at("well_depth").get<double>(), j.at("well_width").get<double>()};
    }
    if (variant == "periodic") {
        PeriodicPotential p;
        p.base = j.at("base").get<double>();
        p.amplitude = j.at("amplitude").get<double>();
        auto periods = j.at("periods").get<std::vector<double>>();
        for (std::size_t d = 0; d < periods.size() && d < 3; ++d)
            p.periods[d] = periods[d];
        if (periods.size() == 1) p.periods[1] = p.periods[2] = periods[0];
        return p;
    }
    throw ConfigError("unknown potential variant: " + variant);
}

bool is_constant(const PotentialSpec& s) {
    return std::holds_alternative<ConstantPotential>(s);
}

void check_mode(const RunConfig& cfg) {
    if (cfg.mode == RunMode::Theorem11) {
        if (!is_constant(cfg.potentialB))
            throw ConfigError("theorem-1.1 mode requires a constant potential B");
        if (std::holds_alternative<PeriodicPotential>(cfg.potentialA))
            throw ConfigError(
                "theorem-1.1 mode requires potential A constant or bounded_limit");
    } else if (cfg.mode == RunMode::Theorem12) {
        for (const PotentialSpec* s : {&cfg.potentialA, &cfg.potentialB})
            if (!is_constant(*s) && !std::holds_alternative<PeriodicPotential>(*s))
                throw ConfigError(
                    "theorem-1.2 mode requires constant or periodic potentials");
    }
}

void check_window(const RunConfig& cfg) {
    double lo = (cfg.dim + cfg.alpha) / cfg.dim;
    double hi = critical_exponent(cfg.dim, cfg.alpha);
    for (double e : {cfg.p, cfg.q}) {
        if (!(e > lo && e < hi)) {
            std::ostringstream msg;
            msg << "exponent " << e << " outside the admissibility window ("
                << lo << ", " << hi << ") for N=" << cfg.dim
                << ", alpha=" << cfg.alpha;
            throw ConfigError(msg.str());
        }
    }
}

} // namespace

RunConfig parse_run_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    RunConfig cfg;
    try {
        const json& prob = j.at("problem");
        cfg.dim = prob.at("dim").get<int>();
        cfg.alpha = prob.at("alpha").get<double>();
        cfg.p = prob.at("p").get<double>();
        cfg.q = prob.at("q").get<double>();
        cfg.length = prob.at("L").get<double>();
        cfg.n = prob.at("n").get<int>();
        cfg.potentialA = parse_potential(prob.at("potentialA"));
        cfg.potentialB = parse_potential(prob.at("potentialB"));
        std::string pol = prob.value("zero_mode_policy", "ball");
        if (pol == "ball") cfg.policy = ZeroModePolicy::BallValue;
        else if (pol == "drop") cfg.policy = ZeroModePolicy::Drop;
        else throw ConfigError("zero_mode_policy must be \"ball\" or \"drop\"");

        if (j.contains("solver")) {
            const json& s = j.at("solver");
            cfg.solver.step0 = s.value("step0", cfg.solver.step0);
            cfg.solver.backtrack = s.value("backtrack", cfg.solver.backtrack);
            cfg.solver.max_backtracks = s.value("max_backtracks", cfg.solver.max_backtracks);
            cfg.solver.tol_energy = s.value("tol_energy", cfg.solver.tol_energy);
            cfg.solver.tol_residual = s.value("tol_residual", cfg.solver.tol_residual);
            cfg.solver.max_iters = s.value("max_iters", cfg.solver.max_iters);
            cfg.solver.enforce_positivity =
                s.value("enforce_positivity", cfg.solver.enforce_positivity);
            cfg.solver.precondition_shift =
                s.value("precondition_shift", cfg.solver.precondition_shift);
        }
        std::string mode = j.value("mode", "free");
        if (mode == "theorem-1.1") cfg.mode = RunMode::Theorem11;
        else if (mode == "theorem-1.2") cfg.mode = RunMode::Theorem12;
        else if (mode == "free") cfg.mode = RunMode::Free;
        else throw ConfigError("unknown mode: " + mode);
        cfg.seed = j.value("seed", std::uint64_t{1});
        cfg.output_dir = j.value("output_dir", std::string("out"));
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config error: ") + e.what());
    }
    cfg.solver.validate();
    check_window(cfg);
    check_mode(cfg);
    return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_run_config(ss.str());
}

ProblemSpec make_problem(const RunConfig& cfg) {
    GridSpec grid(cfg.dim, cfg.n, cfg.length);
    return ProblemSpec(grid, cfg.alpha, cfg.p, cfg.q,
                       sample_potential(cfg.potentialA, grid),
                       sample_potential(cfg.potentialB, grid), cfg.policy);
}

SweepSpec load_sweep_spec(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open sweep spec " + path.string());
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("sweep parse error: ") + e.what());
    }
    SweepSpec sweep;
    std::string axis = j.at("axis").get<std::string>();
    if (axis == "p") sweep.axis = SweepAxis::P;
    else if (axis == "q") sweep.axis = SweepAxis::Q;
    else if (axis == "alpha") sweep.axis = SweepAxis::Alpha;
    else if (axis == "amplitude") sweep.axis = SweepAxis::Amplitude;
    else throw ConfigError("unknown sweep axis: " + axis);
    sweep.values = j.at("values").get<std::vector<double>>();
    if (sweep.values.empty()) throw ConfigError("sweep value list is empty");
    sweep.base = parse_run_config(j.at("base").dump());
    return sweep;
}

void atomic_write(const std::filesystem::path& path, const std::string& text) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw ConfigError("cannot open " + tmp.string());
        out << text;
    }
    std::filesystem::rename(tmp, path);
}

std::string result_to_json(const SolveResult& result) {
    json j = {{"c0", result.c0},
              {"iterations", result.iterations},
              {"converged", result.converged},
              {"residual", result.history.empty()
                               ? 0.0
                               : result.history.back().residual},
              {"nehari", result.report.nehari},
              {"normSq", result.report.normSq},
              {"boundary_warning", result.boundary_warning}};
    return j.dump(2) + "\n";
}

std::string history_to_csv(const std::vector<IterationRecord>& history) {
    std::ostringstream out;
    out << "iter,action,nehari,residual\n";
    out.precision(17);
    for (const auto& rec : history)
        out << rec.iteration << "," << rec.action << "," << rec.nehari << ","
            << rec.residual << "\n";
    return out.str();
}

} // namespace chq
