#ifndef STOKES_EQUILIBRIA_HPP
#define STOKES_EQUILIBRIA_HPP

#include <Eigen/Dense>
#include <vector>

#include "stokes/operators.hpp"
#include "stokes/params.hpp"
#include "stokes/profile.hpp"

namespace stokes {

/// Fold value of the bifurcation parameter, B(3/4, 1/2)^2 / (2 pi^2).
double lambda_star();

/// Decay-rate bound of the flat state for sigma + theta > 0:
/// (sigma+theta)/(2(mu+ + mu-)) when sigma >= theta, sqrt(sigma theta)/(mu+ + mu-)
/// otherwise.
double theta0(const FluidParams& params);

/// Central finite-difference Jacobian of Psi at f on the grid basis
/// (h = 1e-6 max(1, ||f||_inf)), restricted to the resolved zero-mean band by
/// deflating the constant direction and the modes beyond the two-thirds rule.
Eigen::MatrixXd psi_jacobian(const InterfaceProfile& f,
                             const FluidParams& params);

/// Eigenvalues of psi_jacobian sorted by descending real part. The deflated
/// mean direction contributes one exact zero.
std::vector<Complex> stability_eigenvalues(const InterfaceProfile& f,
                                           const FluidParams& params);

/// Spectrum of the linearization at the flat state.
struct SpectrumReport {
    std::vector<double> analytic;   ///< -(theta + sigma k^2)/(2(mu+ + mu-)k), k = 1..K
    std::vector<Complex> numeric;   ///< eigenvalues of the discrete Jacobian
    double theta0 = 0.0;
    bool unstable = false;          ///< sigma + theta < 0
};

SpectrumReport flat_spectrum(const FluidParams& params, int mode_count,
                             int grid_n = 256);

/// Residual of the capillarity equation F(lambda, f) = (f'/omega)' + lambda f.
GridFn capillary_residual(double lambda, const InterfaceProfile& f);

struct EquilibriumResult {
    InterfaceProfile profile;
    double residual = 0.0;  ///< grid inf-norm of F at the returned profile
    bool converged = false;
    int iterations = 0;
};

/// Newton iteration on the cosine coefficients (even, zero-mean class);
/// converged when the grid residual is <= 1e-11.
EquilibriumResult solve_equilibrium(double lambda,
                                    const InterfaceProfile& guess,
                                    int max_iter = 50);

/// One point of a bifurcation branch, parametrized by the cos(ell xi)
/// amplitude s of the profile.
struct BranchPoint {
    int ell = 0;
    double s = 0.0;
    double lambda = 0.0;
    InterfaceProfile profile;
    double residual = 0.0;
};

/// Continuation of the branch bifurcating from (lambda, f) = (ell^2, 0) in the
/// direction cos(ell xi). The sign of s_max selects the branch direction.
/// Stops at s_max, at the slope cap, or after 6 consecutive step halvings.
std::vector<BranchPoint> continue_branch(int ell, double s_max, double ds,
                                         int grid_n = 128,
                                         double slope_cap = 15.0);

}  // namespace stokes

#endif
