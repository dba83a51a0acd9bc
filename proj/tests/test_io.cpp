#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "stokes/evolution.hpp"
#include "stokes/io.hpp"

using namespace stokes;
namespace fs = std::filesystem;

namespace {

const char* kSampleConfig = R"(
# sample run
[fluids]
mu_plus = 1.5
mu_minus = 0.5
sigma = 1.0
theta = 0.25

[grid]
n = 32

[initial]
cos = [0.1, 0.0, 0.02]
sin = [0.0, 0.05]
mean = 0.3

[stepper]
scheme = "imex1"
dt = 0.001
t_end = 0.01
stride = 2
dealias = true
)";

fs::path temp_file(const std::string& name) {
    return fs::temp_directory_path() / name;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

TEST_CASE("config parsing: sections, types, comments") {
    const Config c = Config::parse_string(kSampleConfig);
    CHECK(c.number("fluids", "mu_plus") == 1.5);
    CHECK(c.number("fluids", "theta") == 0.25);
    CHECK(c.integer("grid", "n", 0) == 32);
    CHECK(c.str("stepper", "scheme", "") == "imex1");
    CHECK(c.boolean("stepper", "dealias", false));
    CHECK(c.array("initial", "cos") == std::vector<double>{0.1, 0.0, 0.02});
    CHECK(c.number("stepper", "cap_abs", 50.0) == 50.0);  // fallback
    CHECK_FALSE(c.has("output", "dir"));
}

TEST_CASE("config parsing rejects malformed input") {
    CHECK_THROWS_AS(Config::parse_string("[a\nx = 1\n"), ConfigError);
    CHECK_THROWS_AS(Config::parse_string("x = 1\n"), ConfigError);        // no section
    CHECK_THROWS_AS(Config::parse_string("[a]\nx 1\n"), ConfigError);     // no '='
    CHECK_THROWS_AS(Config::parse_string("[a]\nx = 1\nx = 2\n"), ConfigError);
    const Config c = Config::parse_string("[a]\nx = nope\ny = 1.5z\n");
    CHECK_THROWS_AS(c.number("a", "x"), ConfigError);
    CHECK_THROWS_AS(c.number("a", "y"), ConfigError);
    CHECK_THROWS_AS(c.number("a", "missing"), ConfigError);
}

TEST_CASE("fluid parameters load in both forms and are validated") {
    const Config c = Config::parse_string(kSampleConfig);
    const FluidParams p = load_fluid_params(c);
    CHECK(p.mu_plus == 1.5);
    CHECK(p.theta() == doctest::Approx(0.25).epsilon(1e-14));

    const Config raw = Config::parse_string(
        "[fluids]\nmu_plus = 1\nmu_minus = 1\nsigma = 2\n"
        "rho_plus = 3\nrho_minus = 1\ng = 0.5\n");
    CHECK(load_fluid_params(raw).theta() == doctest::Approx(-1.0));

    const Config bad = Config::parse_string(
        "[fluids]\nmu_plus = -1\nmu_minus = 1\nsigma = 1\ntheta = 0\n");
    CHECK_THROWS_AS(load_fluid_params(bad), ConfigError);
}

TEST_CASE("initial profile loads modes and rejects oversized lists") {
    const Config c = Config::parse_string(kSampleConfig);
    const InterfaceProfile f = load_initial_profile(c);
    CHECK(f.n() == 32);
    CHECK(f.mean() == doctest::Approx(0.3).epsilon(1e-14));
    CHECK(f.cos_amplitude(1) == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(f.sin_amplitude(2) == doctest::Approx(0.05).epsilon(1e-12));

    std::string text = "[grid]\nn = 16\n[initial]\ncos = [";
    for (int k = 0; k < 8; ++k) text += (k ? ", 0.1" : "0.1");
    text += "]\n";
    CHECK_THROWS_AS(load_initial_profile(Config::parse_string(text)),
                    ConfigError);
}

TEST_CASE("stepper config loads and rejects unknown schemes") {
    const Config c = Config::parse_string(kSampleConfig);
    const TimeStepperConfig sc = load_stepper_config(c);
    CHECK(sc.scheme == Scheme::imex1);
    CHECK(sc.dt == 0.001);
    CHECK(sc.stride == 2);
    CHECK(sc.dealias);

    const Config bad =
        Config::parse_string("[stepper]\nscheme = \"leapfrog\"\n");
    CHECK_THROWS_AS(load_stepper_config(bad), ConfigError);
}

TEST_CASE("snapshot round-trips exactly") {
    const auto f = InterfaceProfile::from_modes(
        32, std::vector<double>{0.123456789012345, 0.0, 1e-17},
        std::vector<double>{0.7}, -0.25);
    const fs::path path = temp_file("stokes_snapshot_roundtrip.csv");
    write_snapshot(path, f);
    const InterfaceProfile back = read_snapshot(path);
    REQUIRE(back.n() == f.n());
    for (int j = 0; j < f.n(); ++j)
        CHECK(back.samples()[j] == f.samples()[j]);
    fs::remove(path);
}

TEST_CASE("resuming from a snapshot continues the trajectory") {
    const int n = 32;
    const auto f0 = InterfaceProfile::from_modes(n, std::vector<double>{0.2},
                                               std::vector<double>{0.1});
    const FluidParams params = FluidParams::from_theta(1.0, 1.0, 1.0, 0.4);
    TimeStepperConfig sc;
    sc.scheme = Scheme::imex1;  // single-step scheme: no history to rebuild
    sc.dt = 1e-3;
    sc.t_end = 1.0;

    TimeStepper full(f0, sc, params);
    for (int i = 0; i < 3; ++i) REQUIRE(full.step());
    const fs::path path = temp_file("stokes_snapshot_resume.csv");
    write_snapshot(path, full.state().profile);
    REQUIRE(full.step());

    TimeStepper resumed(read_snapshot(path), sc, params);
    REQUIRE(resumed.step());
    for (int j = 0; j < n; ++j)
        CHECK(std::abs(resumed.state().profile.samples()[j] -
                       full.state().profile.samples()[j]) < 1e-12);
    fs::remove(path);
}

TEST_CASE("time-series output is deterministic and conserves the mean") {
    const auto f0 = InterfaceProfile::from_modes(32, std::vector<double>{0.1}, {}, 0.05);
    const FluidParams params = FluidParams::from_theta(1.0, 1.0, 1.0, 0.3);
    TimeStepperConfig sc;
    sc.dt = 5e-3;
    sc.t_end = 0.05;
    const Trajectory traj = simulate(f0, sc, params);

    const fs::path a = temp_file("stokes_ts_a.csv");
    const fs::path b = temp_file("stokes_ts_b.csv");
    write_timeseries(a, traj, params, 4);
    write_timeseries(b, traj, params, 4);
    const std::string text = slurp(a);
    CHECK(text == slurp(b));

    std::istringstream in(text);
    std::string line;
    REQUIRE(std::getline(in, line));
    CHECK(line == "t,mean,amp_max,slope_max,c1,c3,a1,a2,a3,a4");
    int rows = 0;
    while (std::getline(in, line)) {
        const std::size_t c1 = line.find(',');
        const std::size_t c2 = line.find(',', c1 + 1);
        const double mean = std::stod(line.substr(c1 + 1, c2 - c1 - 1));
        CHECK(std::abs(mean - 0.05) < 1e-10);
        ++rows;
    }
    CHECK(rows == static_cast<int>(traj.states.size()));
    fs::remove(a);
    fs::remove(b);
}

TEST_CASE("flat simulation emits all-zero snapshots") {
    const InterfaceProfile f0(16);
    const FluidParams params = FluidParams::from_theta(1.0, 1.0, 1.0, 0.2);
    TimeStepperConfig sc;
    sc.dt = 0.01;
    sc.t_end = 0.05;
    const Trajectory traj = simulate(f0, sc, params);
    for (const EvolutionState& st : traj.states)
        CHECK(st.profile.max_abs() == 0.0);
}
