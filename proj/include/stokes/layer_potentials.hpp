#ifndef STOKES_LAYER_POTENTIALS_HPP
#define STOKES_LAYER_POTENTIALS_HPP

#include <Eigen/Dense>
#include <span>

#include "stokes/operators.hpp"
#include "stokes/params.hpp"
#include "stokes/profile.hpp"

namespace stokes {

/// The composite trace operators built from the B_{n,m}^{p,q} family with all
/// slots equal to f, plus the weakly singular log operator B0. At f = 0,
/// B1 is the Hilbert transform and B2..B6 vanish.
struct TraceOps {
    int n = 0;
    Eigen::MatrixXd B0, B1, B2, B3, B4, B5, B6;
};

TraceOps trace_ops(const InterfaceProfile& f);

/// Dense 2x2-block operator on two-component grid densities, stored as the
/// full (2n x 2n) matrix with component-major layout (beta1 stacked over
/// beta2).
struct BlockOperator {
    int n = 0;
    Eigen::MatrixXd mat;

    Eigen::VectorXd apply(std::span<const double> b1,
                          std::span<const double> b2) const;
};

/// Stack/unstack helpers for two-component densities.
Eigen::VectorXd stack_density(std::span<const double> b1,
                              std::span<const double> b2);

/// The double-layer potential operator D(f) and its L^2-adjoint D(f)*.
BlockOperator double_layer(const InterfaceProfile& f);
BlockOperator double_layer(const InterfaceProfile& f, const TraceOps& ops);
BlockOperator double_layer_adjoint(const InterfaceProfile& f);
BlockOperator double_layer_adjoint(const InterfaceProfile& f, const TraceOps& ops);

/// Right-hand side V(f) of the boundary integral equation, combining the
/// capillarity terms (through phi = (1/omega - 1, f'/omega)) and the gravity
/// terms.
struct RhsV {
    GridFn v1, v2;
};

RhsV rhs_V(const InterfaceProfile& f, const FluidParams& params);
RhsV rhs_V(const InterfaceProfile& f, const FluidParams& params,
           const TraceOps& ops);

/// True when x lies within the collar |x2 - f(x1)| < 2*pi/n around the
/// interface, where the plain trapezoid rule for the off-interface kernels is
/// not accurate.
bool near_interface(const InterfaceProfile& f, double x1, double x2);

/// Off-interface kernel average Z_i(f)[phi](x) = (1/2pi) int z_i(x - (s,f(s)))
/// phi(s) ds by the trapezoid rule, i in 1..4. Accuracy degrades inside the
/// collar flagged by near_interface().
double eval_Z(int i, const InterfaceProfile& f, std::span<const double> phi,
              double x1, double x2);

/// Velocity, pressure and bookkeeping of one off-interface evaluation.
struct BulkField {
    double x1 = 0.0, x2 = 0.0;
    Eigen::Vector2d velocity = Eigen::Vector2d::Zero();
    double pressure = 0.0;
    int side = 0;              ///< +1 above the interface, -1 below
    bool in_collar = false;    ///< accuracy warning, see near_interface()
};

/// Evaluate the full two-phase velocity and pressure at x off the interface:
/// single-layer part driven by G(f) = theta (-f f', f) - sigma phi(f)' plus
/// double-layer part with density 2 a_mu beta, divided by the viscosity of
/// the phase containing x. Throws if x is within 1e-12 of the interface
/// (side ambiguity).
BulkField eval_fields(const InterfaceProfile& f, std::span<const double> beta1,
                      std::span<const double> beta2, const FluidParams& params,
                      double x1, double x2);

}  // namespace stokes

#endif
