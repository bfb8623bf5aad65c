#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "choquard/solver.hpp"
#include "choquard/verify.hpp"

namespace chq {

/// "CHQ1" field dump: one JSON header line
///   {"format":"CHQ1","dim":N,"n":n,"L":L,"dtype":"f64le","fields":[...]}\n
/// followed by the concatenated row-major little-endian f64 payloads in
/// declared order.
void chq1_write(const std::filesystem::path& path,
                const std::vector<std::string>& names,
                const std::vector<const Field*>& fields);

struct Chq1Dump {
    GridSpec grid;
    std::vector<std::string> names;
    std::vector<Field> fields;
};
Chq1Dump chq1_read(const std::filesystem::path& path);

enum class RunMode { Theorem11, Theorem12, Free };

struct RunConfig {
    int dim = 1;
    double alpha = 0.5;
    double p = 2.0;
    double q = 2.0;
    double length = 24.0;
    int n = 256;
    PotentialSpec potentialA = ConstantPotential{1.0};
    PotentialSpec potentialB = ConstantPotential{1.0};
    ZeroModePolicy policy = ZeroModePolicy::BallValue;
    SolverConfig solver;
    RunMode mode = RunMode::Free;
    std::uint64_t seed = 1;
    std::filesystem::path output_dir = "out";
};

/// Parses and validates a run config; throws ConfigError with diagnostics.
RunConfig load_run_config(const std::filesystem::path& path);
RunConfig parse_run_config(const std::string& text);

ProblemSpec make_problem(const RunConfig& cfg);

enum class SweepAxis { P, Q, Alpha, Amplitude };

struct SweepSpec {
    SweepAxis axis = SweepAxis::Q;
    std::vector<double> values;
    RunConfig base;
};

SweepSpec load_sweep_spec(const std::filesystem::path& path);

/// Writes text to path atomically (temp file in the same directory, then
/// rename).
void atomic_write(const std::filesystem::path& path, const std::string& text);

std::string result_to_json(const SolveResult& result);
std::string history_to_csv(const std::vector<IterationRecord>& history);

} // namespace chq
