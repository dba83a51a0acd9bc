#ifndef STOKES_PARAMS_HPP
#define STOKES_PARAMS_HPP

#include <cmath>
#include <stdexcept>

namespace stokes {

/// Physical constants of the two fluid layers. The plus phase sits above
/// the interface, the minus phase below.
struct FluidParams {
    double mu_plus   = 1.0;  ///< viscosity above
    double mu_minus  = 1.0;  ///< viscosity below
    double rho_plus  = 1.0;  ///< density above
    double rho_minus = 1.0;  ///< density below
    double sigma     = 1.0;  ///< surface tension
    double g         = 0.0;  ///< gravity (>= 0)

    void validate() const {
        if (!(mu_plus > 0.0) || !(mu_minus > 0.0))
            throw std::invalid_argument("FluidParams: viscosities must be positive");
        if (!(rho_plus > 0.0) || !(rho_minus > 0.0))
            throw std::invalid_argument("FluidParams: densities must be positive");
        if (!(sigma > 0.0))
            throw std::invalid_argument("FluidParams: surface tension must be positive");
        if (!(g >= 0.0))
            throw std::invalid_argument("FluidParams: gravity must be non-negative");
    }

    /// theta = -g [rho] with [rho] = rho_plus - rho_minus.
    double theta() const { return -g * (rho_plus - rho_minus); }

    /// Viscosity contrast (mu+ - mu-)/(mu+ + mu-), in (-1,1).
    double a_mu() const { return (mu_plus - mu_minus) / (mu_plus + mu_minus); }

    double mu_sum() const { return mu_plus + mu_minus; }

    /// Bifurcation parameter lambda = -theta/sigma = g [rho]/sigma.
    double lambda() const { return -theta() / sigma; }

    /// Convenience constructor fixing theta directly (densities and g are
    /// chosen to realize it; g = 0 when theta = 0).
    static FluidParams from_theta(double mu_plus, double mu_minus,
                                  double sigma, double theta) {
        FluidParams p;
        p.mu_plus = mu_plus;
        p.mu_minus = mu_minus;
        p.sigma = sigma;
        if (theta == 0.0) {
            p.g = 0.0;
            p.rho_plus = p.rho_minus = 1.0;
        } else {
            p.g = std::abs(theta);
            // theta = -g (rho+ - rho-)
            if (theta < 0.0) { p.rho_plus = 2.0; p.rho_minus = 1.0; }
            else             { p.rho_plus = 1.0; p.rho_minus = 2.0; }
        }
        p.validate();
        return p;
    }
};

}  // namespace stokes

#endif
