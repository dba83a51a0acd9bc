#ifndef STOKES_EVOLUTION_HPP
#define STOKES_EVOLUTION_HPP

#include <string>
#include <vector>

#include "stokes/bie.hpp"
#include "stokes/params.hpp"
#include "stokes/profile.hpp"

namespace stokes {

/// Interface velocity Psi(f) = 2/(mu+ + mu-) (beta2 - f' beta1) with beta
/// from the boundary integral equation; the right-hand side of df/dt = Psi(f).
GridFn psi(const InterfaceProfile& f, const FluidParams& params);

/// Linear decay rate of the k-th Fourier mode at the flat state,
/// -(theta + sigma k^2) / (2 (mu+ + mu-) k).
double flat_mode_rate(int k, const FluidParams& params);

enum class Scheme { imex1, imex2, rk4 };

struct TimeStepperConfig {
    Scheme scheme = Scheme::imex2;
    double dt = 0.0;          ///< <= 0 selects default_dt()
    double t_end = 1.0;
    int stride = 1;           ///< record every stride-th step
    bool dealias = false;     ///< two-thirds-rule mode filter after each step
    double cap_abs = 50.0;    ///< breakdown threshold on ||f||_inf
    double cap_slope = 20.0;  ///< breakdown threshold on ||f'||_inf

    void validate() const;
};

/// Stiffness scale of the implicit part: alpha0 = sigma / (2 (mu+ + mu-)).
double implicit_rate(const FluidParams& params);

/// Default step 0.5 (2 pi / n) / alpha0, reduced by the initial slope.
double default_dt(const InterfaceProfile& f0, const FluidParams& params);

struct EvolutionState {
    double t = 0.0;
    InterfaceProfile profile;
};

/// Scalar summary of one state; recomputed from the profile on demand.
struct Diagnostics {
    double mean = 0.0;
    double amp_max = 0.0;    ///< ||f||_inf
    double slope_max = 0.0;  ///< ||f'||_inf
    double c1 = 0.0, c3 = 0.0;
    std::vector<double> amplitudes;  ///< modulus of modes 1..K
};

Diagnostics diagnostics(const InterfaceProfile& f, const FluidParams& params,
                        int mode_count = 8);

/// One trajectory of df/dt = Psi(f). The IMEX schemes treat the flat-state
/// principal part alpha0 |D| implicitly (diagonal in Fourier space) and the
/// remainder explicitly; mode 0 is held fixed (the mean is conserved by the
/// equation). rk4 is fully explicit and enforces the first-order CFL bound
/// dt <= 0.8 (2 pi / n) / alpha0.
class TimeStepper {
public:
    TimeStepper(InterfaceProfile f0, TimeStepperConfig config,
                FluidParams params);

    const EvolutionState& state() const { return state_; }
    bool broken_down() const { return !breakdown_reason_.empty(); }
    const std::string& breakdown_reason() const { return breakdown_reason_; }

    /// Advance one step; returns false (and keeps the last good state) on
    /// breakdown.
    bool step();

private:
    bool accept(std::vector<Complex> coeffs);

    TimeStepperConfig config_;
    FluidParams params_;
    EvolutionState state_;
    double alpha0_ = 0.0;
    std::string breakdown_reason_;
    // previous-step data for the two-step scheme
    bool have_history_ = false;
    std::vector<Complex> prev_coeffs_, prev_explicit_;
};

struct Trajectory {
    std::vector<EvolutionState> states;
    bool breakdown = false;
    std::string breakdown_reason;
};

/// Integrate to t_end (or breakdown), recording every stride-th state.
Trajectory simulate(const InterfaceProfile& f0, TimeStepperConfig config,
                    const FluidParams& params);

}  // namespace stokes

#endif
