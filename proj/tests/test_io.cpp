#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "choquard/io.hpp"

using namespace chq;

namespace {

const char* kValidConfig = R"({
  "problem": {
    "dim": 1, "alpha": 0.5, "p": 2.0, "q": 2.5, "L": 24.0, "n": 256,
    "potentialA": {"variant": "constant", "value": 1.0},
    "potentialB": {"variant": "constant", "value": 1.0},
    "zero_mode_policy": "ball"
  },
  "solver": {"tol_residual": 1e-6, "max_iters": 500},
  "mode": "theorem-1.1",
  "seed": 7,
  "output_dir": "out"
})";

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("chqtest-" + std::to_string(std::random_device{}()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
};

} // namespace

TEST_CASE("CHQ1 dump round trips bit-exactly") {
    TempDir tmp;
    GridSpec g(2, 16, 4.0);
    std::mt19937_64 rng(3);
    std::normal_distribution<double> gauss;
    Field u(g), v(g);
    for (std::size_t i = 0; i < g.size(); ++i) {
        u[i] = gauss(rng);
        v[i] = gauss(rng);
    }
    auto path = tmp.path / "fields.chq1";
    chq1_write(path, {"u", "v"}, {&u, &v});

    // header line is a single JSON object
    std::ifstream in(path, std::ios::binary);
    std::string header;
    std::getline(in, header);
    CHECK(header.find("\"format\":\"CHQ1\"") != std::string::npos);
    CHECK(header.find("\"dtype\":\"f64le\"") != std::string::npos);

    Chq1Dump dump = chq1_read(path);
    REQUIRE(dump.names == std::vector<std::string>{"u", "v"});
    REQUIRE(dump.grid == g);
    for (std::size_t i = 0; i < g.size(); ++i) {
        CHECK(dump.fields[0][i] == u[i]);
        CHECK(dump.fields[1][i] == v[i]);
    }
    CHECK_FALSE(std::filesystem::exists(tmp.path / "fields.chq1.tmp"));
}

TEST_CASE("run config parses and validates") {
    RunConfig cfg = parse_run_config(kValidConfig);
    CHECK(cfg.dim == 1);
    CHECK(cfg.q == 2.5);
    CHECK(cfg.solver.max_iters == 500);
    CHECK(cfg.mode == RunMode::Theorem11);
    CHECK(cfg.seed == 7);
    CHECK_NOTHROW(make_problem(cfg));
}

TEST_CASE("corrupted and inadmissible configs are rejected") {
    CHECK_THROWS_AS(parse_run_config("{ not json"), ConfigError);
    CHECK_THROWS_AS(parse_run_config("{}"), ConfigError);

    std::string at_window(kValidConfig);
    // p = (N+alpha)/N = 1.5 sits on the boundary of the open window
    auto pos = at_window.find("\"p\": 2.0");
    at_window.replace(pos, 8, "\"p\": 1.5");
    try {
        parse_run_config(at_window);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("admissibility window") != std::string::npos);
    }

    std::string bad_mode(kValidConfig);
    pos = bad_mode.find("{\"variant\": \"constant\", \"value\": 1.0},");
    // theorem-1.1 forbids a periodic A... replace potentialA with periodic
    bad_mode.replace(pos, 38,
                     "{\"variant\": \"periodic\", \"base\": 1.0, \"amplitude\": 1.0, "
                     "\"periods\": [6.0]},");
    CHECK_THROWS_AS(parse_run_config(bad_mode), ConfigError);
}

TEST_CASE("sweep spec parsing") {
    TempDir tmp;
    auto path = tmp.path / "sweep.json";
    std::string text = std::string(R"({"axis": "q", "values": [1.8, 2.0, 2.2], "base": )") +
                       kValidConfig + "}";
    {
        std::ofstream out(path);
        out << text;
    }
    SweepSpec sweep = load_sweep_spec(path);
    CHECK(sweep.axis == SweepAxis::Q);
    CHECK(sweep.values.size() == 3);

    std::string empty = std::string(R"({"axis": "q", "values": [], "base": )") +
                        kValidConfig + "}";
    {
        std::ofstream out(path);
        out << empty;
    }
    CHECK_THROWS_AS(load_sweep_spec(path), ConfigError);
}

TEST_CASE("atomic_write replaces without leaving temp files") {
    TempDir tmp;
    auto path = tmp.path / "result.json";
    atomic_write(path, "first");
    atomic_write(path, "second");
    std::ifstream in(path);
    std::string content;
    std::getline(in, content);
    CHECK(content == "second");
    CHECK_FALSE(std::filesystem::exists(tmp.path / "result.json.tmp"));
}
