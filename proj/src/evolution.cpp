#include "stokes/evolution.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace stokes {

namespace {

constexpr double kPi = std::numbers::pi;

/// Explicit residual N(f) = Psi(f) + alpha0 |D| f in coefficient space.
std::vector<Complex> explicit_part(const InterfaceProfile& f,
                                   const FluidParams& params, double alpha0) {
    const int n = f.n();
    const GridFn p = psi(f, params);
    std::vector<Complex> out = spectrum(p);
    const auto& fc = f.coeffs();
    for (int i = 0; i < n; ++i)
        out[i] += alpha0 * std::abs(wavenumber(i, n)) * fc[i];
    return out;
}

bool finite_profile(const InterfaceProfile& f) {
    for (double v : f.samples())
        if (!std::isfinite(v)) return false;
    return true;
}

void dealias_filter(std::vector<Complex>& coeffs) {
    const int n = static_cast<int>(coeffs.size());
    for (int i = 0; i < n; ++i)
        if (std::abs(wavenumber(i, n)) > n / 3) coeffs[i] = 0.0;
}

}  // namespace

GridFn psi(const InterfaceProfile& f, const FluidParams& params) {
    const int n = f.n();
    const BieSolution sol = solve_density(f, params);
    const std::vector<double> fp = spectral_derivative(f, 1);
    GridFn out(n);
    const double scale = 2.0 / params.mu_sum();
    for (int j = 0; j < n; ++j)
        out[j] = scale * (sol.beta.beta2[j] - fp[j] * sol.beta.beta1[j]);
    return out;
}

double flat_mode_rate(int k, const FluidParams& params) {
    if (k < 1) throw std::invalid_argument("flat_mode_rate: k must be >= 1");
    return -(params.theta() + params.sigma * k * k) /
           (2.0 * params.mu_sum() * k);
}

double implicit_rate(const FluidParams& params) {
    return params.sigma / (2.0 * params.mu_sum());
}

double default_dt(const InterfaceProfile& f0, const FluidParams& params) {
    const double alpha0 = implicit_rate(params);
    return 0.5 * (2.0 * kPi / f0.n()) / alpha0 /
           std::max(1.0, f0.max_slope());
}

void TimeStepperConfig::validate() const {
    if (!(t_end > 0.0))
        throw std::invalid_argument("TimeStepperConfig: t_end must be positive");
    if (dt > 0.0 && dt > t_end)
        throw std::invalid_argument("TimeStepperConfig: dt exceeds t_end");
    if (stride < 1)
        throw std::invalid_argument("TimeStepperConfig: stride must be >= 1");
    if (!(cap_abs > 0.0) || !(cap_slope > 0.0))
        throw std::invalid_argument("TimeStepperConfig: caps must be positive");
}

Diagnostics diagnostics(const InterfaceProfile& f, const FluidParams& params,
                        int mode_count) {
    Diagnostics d;
    d.mean = f.mean();
    d.amp_max = f.max_abs();
    d.slope_max = f.max_slope();
    const BieSolution sol = solve_density(f, params);
    const FarFieldConstants c = far_field_constants(f, sol.beta, params);
    d.c1 = c.c1;
    d.c3 = c.c3;
    d.amplitudes.resize(mode_count);
    for (int k = 1; k <= mode_count && k < f.n() / 2; ++k)
        d.amplitudes[k - 1] = std::hypot(f.cos_amplitude(k), f.sin_amplitude(k));
    return d;
}

TimeStepper::TimeStepper(InterfaceProfile f0, TimeStepperConfig config,
                         FluidParams params)
    : config_(config), params_(params), state_{0.0, std::move(f0)} {
    params_.validate();
    config_.validate();
    alpha0_ = implicit_rate(params_);
    if (config_.dt <= 0.0) config_.dt = default_dt(state_.profile, params_);
    if (config_.scheme == Scheme::rk4) {
        const double cap = 0.8 * (2.0 * kPi / state_.profile.n()) / alpha0_;
        if (config_.dt > cap)
            throw std::invalid_argument(
                "TimeStepperConfig: rk4 step exceeds the stiffness bound");
    }
}

bool TimeStepper::accept(std::vector<Complex> coeffs) {
    // The mean is conserved by the equation; hold mode 0 exactly.
    coeffs[0] = state_.profile.coeffs()[0];
    if (config_.dealias) dealias_filter(coeffs);
    InterfaceProfile next =
        InterfaceProfile::from_samples(from_spectrum(coeffs));
    if (!finite_profile(next)) {
        breakdown_reason_ = "non-finite profile";
        return false;
    }
    if (next.max_abs() > config_.cap_abs) {
        breakdown_reason_ = "amplitude cap exceeded";
        return false;
    }
    if (next.max_slope() > config_.cap_slope) {
        breakdown_reason_ = "slope cap exceeded";
        return false;
    }
    prev_coeffs_ = state_.profile.coeffs();
    state_.profile = std::move(next);
    state_.t += config_.dt;
    return true;
}

bool TimeStepper::step() {
    if (broken_down()) return false;
    const int n = state_.profile.n();
    const double dt = config_.dt;

    if (config_.scheme == Scheme::rk4) {
        auto rhs = [&](const std::vector<double>& samples) {
            return psi(InterfaceProfile::from_samples(samples), params_);
        };
        const auto& y = state_.profile.samples();
        const GridFn k1 = rhs(y);
        std::vector<double> tmp(n);
        for (int j = 0; j < n; ++j) tmp[j] = y[j] + 0.5 * dt * k1[j];
        const GridFn k2 = rhs(tmp);
        for (int j = 0; j < n; ++j) tmp[j] = y[j] + 0.5 * dt * k2[j];
        const GridFn k3 = rhs(tmp);
        for (int j = 0; j < n; ++j) tmp[j] = y[j] + dt * k3[j];
        const GridFn k4 = rhs(tmp);
        for (int j = 0; j < n; ++j)
            tmp[j] = y[j] + dt / 6.0 * (k1[j] + 2 * k2[j] + 2 * k3[j] + k4[j]);
        return accept(spectrum(tmp));
    }

    const std::vector<Complex> fc = state_.profile.coeffs();
    const std::vector<Complex> N = explicit_part(state_.profile, params_, alpha0_);

    std::vector<Complex> next(n);
    if (config_.scheme == Scheme::imex1 || !have_history_) {
        for (int i = 0; i < n; ++i) {
            const double lam = alpha0_ * std::abs(wavenumber(i, n));
            next[i] = (fc[i] + dt * N[i]) / (1.0 + dt * lam);
        }
    } else {
        for (int i = 0; i < n; ++i) {
            const double lam = alpha0_ * std::abs(wavenumber(i, n));
            next[i] = (2.0 * fc[i] - 0.5 * prev_coeffs_[i] +
                       dt * (2.0 * N[i] - prev_explicit_[i])) /
                      (1.5 + dt * lam);
        }
    }
    const bool ok = accept(std::move(next));
    if (ok && config_.scheme == Scheme::imex2) {
        prev_explicit_ = N;
        have_history_ = true;
    }
    return ok;
}

Trajectory simulate(const InterfaceProfile& f0, TimeStepperConfig config,
                    const FluidParams& params) {
    config.validate();
    TimeStepper stepper(f0, config, params);
    const double dt = config.dt > 0.0 ? config.dt : default_dt(f0, params);
    const long nsteps = std::lround(config.t_end / dt);

    Trajectory traj;
    traj.states.push_back(stepper.state());
    for (long i = 0; i < nsteps; ++i) {
        if (!stepper.step()) {
            traj.breakdown = true;
            traj.breakdown_reason = stepper.breakdown_reason();
            break;
        }
        if ((i + 1) % config.stride == 0 || i + 1 == nsteps)
            traj.states.push_back(stepper.state());
    }
    return traj;
}

}  // namespace stokes
