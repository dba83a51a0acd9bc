#ifndef STOKES_BIE_HPP
#define STOKES_BIE_HPP

#include "stokes/layer_potentials.hpp"
#include "stokes/params.hpp"
#include "stokes/profile.hpp"

namespace stokes {

/// The two components of the traction density beta on the collocation grid.
struct TractionDensity {
    GridFn beta1, beta2;
};

/// Solution of the boundary integral equation
///   (I + 2 a_mu D(f)) beta = V(f)
/// together with solver diagnostics.
struct BieSolution {
    TractionDensity beta;
    double residual = 0.0;    ///< inf-norm of the back-substituted residual
    double condition = 0.0;   ///< 1-norm condition estimate of the system
};

/// Dense LU solve of the boundary integral equation. Throws std::runtime_error
/// if the residual exceeds 1e-10 times the inf-norm of the right-hand side.
BieSolution solve_density(const InterfaceProfile& f, const FluidParams& params);
BieSolution solve_density(const InterfaceProfile& f, const FluidParams& params,
                          const TraceOps& ops);

/// Far-field constants of the two-phase flow: the velocity tends to
/// (+-c1/mu^+-, +-c2/mu^+-) and the pressure to +-c3 as x2 -> +-infinity.
struct FarFieldConstants {
    double c1 = 0.0, c2 = 0.0, c3 = 0.0;
};

FarFieldConstants far_field_constants(const InterfaceProfile& f,
                                      const TractionDensity& beta,
                                      const FluidParams& params);

/// Cross-check of c1 against the truncated bulk vorticity integral
///   -mu+ mu- / (2 pi (mu+ + mu-)) int_{|x2|<L} curl v dx
/// with curl v by central differences of eval_fields on a uniform bulk grid.
/// Since the velocity is C^1 up to the interface from either side, bulk
/// points whose difference stencil touches the interface collar are
/// re-evaluated at the collar edge on their own side (and counted); points
/// that still cannot be resolved are dropped.
struct VorticityCheck {
    double value = 0.0;
    int collar_hits = 0;  ///< points moved to the collar edge
    int dropped = 0;      ///< points abandoned entirely
};

VorticityCheck vorticity_check(const InterfaceProfile& f,
                               const TractionDensity& beta,
                               const FluidParams& params, double height = 8.0,
                               int bulk_grid = 64);

}  // namespace stokes

#endif
