#include <cmath>
#include <cstdio>
#include <filesystem>
#include <numbers>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "stokes/bie.hpp"
#include "stokes/equilibria.hpp"
#include "stokes/evolution.hpp"
#include "stokes/io.hpp"
#include "stokes/layer_potentials.hpp"

namespace fs = std::filesystem;
using namespace stokes;

namespace {

constexpr double kPi = std::numbers::pi;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitBreakdown = 3;
constexpr int kExitValidation = 4;

fs::path prepare_out_dir(const std::string& out_dir) {
    const fs::path dir = out_dir.empty() ? fs::path("out") : fs::path(out_dir);
    fs::create_directories(dir);
    return dir;
}

int cmd_simulate(const Config& config, const std::string& out_dir) {
    const FluidParams params = load_fluid_params(config);
    const InterfaceProfile f0 = load_initial_profile(config);
    const TimeStepperConfig sc = load_stepper_config(config);
    const int mode_count = config.integer("output", "mode_count", 8);
    const bool snapshots = config.boolean("output", "snapshots", true);

    const Trajectory traj = simulate(f0, sc, params);

    const fs::path dir = prepare_out_dir(out_dir);
    write_timeseries(dir / "timeseries.csv", traj, params, mode_count);
    if (snapshots) {
        for (std::size_t i = 0; i < traj.states.size(); ++i) {
            char name[32];
            std::snprintf(name, sizeof name, "snapshot_%06zu.csv", i);
            write_snapshot(dir / name, traj.states[i].profile);
        }
    }
    write_metadata(dir / "meta.json", config, "simulate",
                   {{"t_final", traj.states.back().t}});
    if (traj.breakdown) {
        std::fprintf(stderr, "breakdown at t = %.6g: %s\n",
                     traj.states.back().t, traj.breakdown_reason.c_str());
        return kExitBreakdown;
    }
    return kExitOk;
}

int cmd_spectrum(const Config& config, const std::string& out_dir) {
    const FluidParams params = load_fluid_params(config);
    const int n = config.integer("grid", "n", 256);
    const int modes = config.integer("spectrum", "modes", n / 8);
    if (modes < 1 || modes >= n / 2)
        throw ConfigError("spectrum.modes must be in [1, n/2)");

    const SpectrumReport report = flat_spectrum(params, modes, n);

    const fs::path dir = prepare_out_dir(out_dir);
    write_spectrum(dir / "spectrum.csv", report);
    write_metadata(dir / "meta.json", config, "spectrum",
                   {{"theta0", report.theta0},
                    {"unstable", report.unstable ? 1.0 : 0.0}});
    return kExitOk;
}

int cmd_branch(const Config& config, const std::string& out_dir) {
    const int ell = config.integer("branch", "ell", 1);
    const double s_max = config.number("branch", "s_max");
    const double ds = config.number("branch", "ds", 0.02);
    const int n = config.integer("branch", "n", 128);
    const double slope_cap = config.number("branch", "slope_cap", 15.0);
    const bool stability = config.boolean("branch", "stability", false);
    const double mu_plus = config.number("fluids", "mu_plus", 1.0);
    const double mu_minus = config.number("fluids", "mu_minus", 1.0);
    const double sigma = config.number("fluids", "sigma", 1.0);

    std::vector<BranchPoint> branch;
    branch.push_back(BranchPoint{ell, 0.0, static_cast<double>(ell) * ell,
                                 InterfaceProfile(n), 0.0});
    std::vector<BranchPoint> tail = continue_branch(ell, s_max, ds, n, slope_cap);
    const bool stalled = tail.empty() && s_max != 0.0;
    for (BranchPoint& pt : tail) branch.push_back(std::move(pt));

    std::vector<double> eig_lead;
    if (stability) {
        for (const BranchPoint& pt : branch) {
            // the stability question pairs each branch point with the fluid
            // state whose bifurcation parameter matches: Theta = -sigma lambda
            const FluidParams params = FluidParams::from_theta(
                mu_plus, mu_minus, sigma, -sigma * pt.lambda);
            eig_lead.push_back(
                stability_eigenvalues(pt.profile, params).front().real());
        }
    }

    const fs::path dir = prepare_out_dir(out_dir);
    write_branch(dir / "branch.csv", branch, eig_lead);
    write_metadata(dir / "meta.json", config, "branch",
                   {{"lambda_star", lambda_star()},
                    {"points", static_cast<double>(branch.size())}});
    if (stalled) {
        std::fprintf(stderr, "branch continuation stalled at s = 0\n");
        return kExitBreakdown;
    }
    return kExitOk;
}

int cmd_fields(const Config& config, const std::string& out_dir) {
    const FluidParams params = load_fluid_params(config);
    const InterfaceProfile f = load_initial_profile(config);
    const double x1_min = config.number("fields", "x1_min", -kPi);
    const double x1_max = config.number("fields", "x1_max", kPi);
    const double x2_min = config.number("fields", "x2_min", -2.0);
    const double x2_max = config.number("fields", "x2_max", 2.0);
    const int nx1 = config.integer("fields", "nx1", 16);
    const int nx2 = config.integer("fields", "nx2", 16);
    if (nx1 < 1 || nx2 < 1)
        throw ConfigError("fields.nx1 and fields.nx2 must be >= 1");

    const BieSolution sol = solve_density(f, params);

    std::vector<FieldRow> rows;
    rows.reserve(static_cast<std::size_t>(nx1) * nx2);
    for (int i = 0; i < nx1; ++i) {
        const double x1 =
            nx1 == 1 ? x1_min : x1_min + (x1_max - x1_min) * i / (nx1 - 1);
        for (int j = 0; j < nx2; ++j) {
            const double x2 =
                nx2 == 1 ? x2_min : x2_min + (x2_max - x2_min) * j / (nx2 - 1);
            if (std::abs(x2 - f.value_at(x1)) < 1e-12) continue;
            const BulkField bf = eval_fields(f, sol.beta.beta1, sol.beta.beta2,
                                             params, x1, x2);
            rows.push_back(FieldRow{x1, x2, bf.velocity[0], bf.velocity[1],
                                    bf.pressure, bf.side});
        }
    }

    const fs::path dir = prepare_out_dir(out_dir);
    write_fields(dir / "fields.csv", rows);
    write_metadata(dir / "meta.json", config, "fields",
                   {{"rows", static_cast<double>(rows.size())}});
    return kExitOk;
}

struct CheckResult {
    std::string name;
    double tolerance = 0.0;
    double value = 0.0;  ///< measured defect; passes when <= tolerance
};

int cmd_validate() {
    std::vector<CheckResult> results;

    {  // the flat-interface trace operator is the Hilbert transform
        const int n = 64;
        const TraceOps ops = trace_ops(InterfaceProfile(n));
        double worst = 0.0;
        for (int k = 1; k <= 8; ++k) {
            Eigen::VectorXd c(n), s(n);
            for (int j = 0; j < n; ++j) {
                const double xi = InterfaceProfile::grid_point(j, n);
                c[j] = std::cos(k * xi);
                s[j] = std::sin(k * xi);
            }
            worst = std::max(worst, (ops.B1 * c - s).cwiseAbs().maxCoeff());
        }
        results.push_back({"hilbert-symbol", 1e-10, worst});
    }
    {  // the double-layer operator vanishes at the flat interface
        const BlockOperator d = double_layer(InterfaceProfile(64));
        results.push_back(
            {"double-layer-flat", 1e-10, d.mat.cwiseAbs().maxCoeff()});
    }
    {  // matched viscosities decouple the integral equation
        const int n = 64;
        const auto f = InterfaceProfile::from_modes(n, std::vector<double>{0.3});
        FluidParams params = FluidParams::from_theta(1.0, 1.0, 1.0, 0.5);
        const BieSolution sol = solve_density(f, params);
        const RhsV v = rhs_V(f, params);
        double worst = 0.0;
        for (int j = 0; j < n; ++j) {
            worst = std::max(worst, std::abs(sol.beta.beta1[j] - v.v1[j]));
            worst = std::max(worst, std::abs(sol.beta.beta2[j] - v.v2[j]));
        }
        results.push_back({"bie-matched-viscosity", 1e-13, worst});
    }
    {  // numeric flat-state rate of mode 1
        const FluidParams params = FluidParams::from_theta(1.0, 1.0, 1.0, 0.0);
        const SpectrumReport rep = flat_spectrum(params, 1, 64);
        double dist = std::numeric_limits<double>::infinity();
        for (const Complex& ev : rep.numeric)
            dist = std::min(dist, std::abs(ev - Complex(-0.25, 0.0)));
        results.push_back({"flat-rate-mode-1", 1e-6, dist});
    }
    {  // fold parameter of the capillarity equation
        results.push_back(
            {"fold-parameter", 5e-5, std::abs(lambda_star() - 0.2909)});
    }
    {  // far-field pressure offset c3 = -theta <f> / 2
        const int n = 64;
        const auto f = InterfaceProfile::from_modes(n, std::vector<double>{0.3}, {}, 0.2);
        const FluidParams params = FluidParams::from_theta(1.0, 1.0, 1.0, 0.5);
        const BieSolution sol = solve_density(f, params);
        const FarFieldConstants c = far_field_constants(f, sol.beta, params);
        results.push_back(
            {"far-field-c3", 1e-12, std::abs(c.c3 - (-0.5 * 0.2 / 2.0))});
    }
    {  // mean conservation along a short trajectory
        const int n = 32;
        const auto f0 = InterfaceProfile::from_modes(n, std::vector<double>{0.1}, {}, 0.05);
        const FluidParams params = FluidParams::from_theta(1.0, 1.0, 1.0, 0.3);
        TimeStepperConfig sc;
        sc.t_end = 0.2;
        const Trajectory traj = simulate(f0, sc, params);
        double worst = 0.0;
        for (const EvolutionState& st : traj.states)
            worst = std::max(worst, std::abs(st.profile.mean() - 0.05));
        results.push_back({"mean-conservation", 1e-10, worst});
    }
    {  // quadratic law of the first bifurcation branch
        const auto branch = continue_branch(1, 0.1, 0.02, 64);
        double num = 0.0, den = 0.0;
        for (const BranchPoint& pt : branch) {
            num += (pt.lambda - 1.0) * pt.s * pt.s;
            den += std::pow(pt.s, 4);
        }
        const double c = num / den;
        results.push_back(
            {"branch-curvature", 0.05, std::abs(c / (-0.375) - 1.0)});
    }

    bool all_ok = true;
    for (const CheckResult& r : results) {
        const bool ok = r.value <= r.tolerance;
        all_ok = all_ok && ok;
        std::printf("%-24s tol=%-8.1e value=%-12.3e %s\n", r.name.c_str(),
                    r.tolerance, r.value, ok ? "PASS" : "FAIL");
    }
    std::printf("%zu checks, %s\n", results.size(),
                all_ok ? "all passed" : "FAILURES present");
    return all_ok ? kExitOk : kExitValidation;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Boundary-integral simulator for two-phase periodic Stokes "
                 "interfaces"};
    app.require_subcommand(1);

    std::string config_path, out_dir;

    CLI::App* simulate = app.add_subcommand("simulate", "integrate df/dt = Psi(f)");
    simulate->add_option("--config", config_path)->required();
    simulate->add_option("--out", out_dir);

    CLI::App* spectrum = app.add_subcommand("spectrum", "flat-state linearization spectrum");
    spectrum->add_option("--config", config_path)->required();
    spectrum->add_option("--out", out_dir);

    CLI::App* branch = app.add_subcommand("branch", "equilibrium branch continuation");
    branch->add_option("--config", config_path)->required();
    branch->add_option("--out", out_dir);

    CLI::App* fields = app.add_subcommand("fields", "bulk velocity/pressure grid");
    fields->add_option("--config", config_path)->required();
    fields->add_option("--out", out_dir);

    CLI::App* validate = app.add_subcommand("validate", "built-in invariant checks");
    validate->add_option("--config", config_path);
    validate->add_option("--out", out_dir);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (validate->parsed()) return cmd_validate();
        const Config config = Config::parse_file(config_path);
        if (simulate->parsed()) return cmd_simulate(config, out_dir);
        if (spectrum->parsed()) return cmd_spectrum(config, out_dir);
        if (branch->parsed()) return cmd_branch(config, out_dir);
        if (fields->parsed()) return cmd_fields(config, out_dir);
    } catch (const ConfigError& err) {
        std::fprintf(stderr, "config error: %s\n", err.what());
        return kExitConfig;
    } catch (const std::invalid_argument& err) {
        std::fprintf(stderr, "config error: %s\n", err.what());
        return kExitConfig;
    } catch (const std::exception& err) {
        std::fprintf(stderr, "numerical failure: %s\n", err.what());
        return kExitBreakdown;
    }
    return kExitOk;
}
