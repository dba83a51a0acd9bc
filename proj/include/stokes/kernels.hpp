#ifndef STOKES_KERNELS_HPP
#define STOKES_KERNELS_HPP

#include <Eigen/Dense>

namespace stokes {

/// The seven scalar building blocks z_0..z_6 of the x1-periodic Stokeslet,
/// evaluated at a point x != 0 (mod 2*pi in x1). All formulas are written in
/// terms of cos(x1/2), sin(x1/2), tanh(x2/2) and sech^2(x2/2) so they stay
/// finite for x1 -> +-pi and |x2| -> infinity.
struct KernelPoint {
    double x1 = 0.0, x2 = 0.0;
    double z0 = 0.0, z1 = 0.0, z2 = 0.0, z3 = 0.0, z4 = 0.0, z5 = 0.0, z6 = 0.0;
};

KernelPoint kernel_point(double x1, double x2);

/// Velocity part U of the periodic Stokeslet.
Eigen::Matrix2d stokeslet_velocity(const KernelPoint& k);
/// Pressure part P of the periodic Stokeslet.
Eigen::Vector2d stokeslet_pressure(const KernelPoint& k);

/// Stress tensors W_1, W_2 (rows/cols over the i,k indices) and the
/// associated pressure matrix Q of the stresslet.
Eigen::Matrix2d stresslet_w1(const KernelPoint& k);
Eigen::Matrix2d stresslet_w2(const KernelPoint& k);
Eigen::Matrix2d stresslet_q(const KernelPoint& k);

}  // namespace stokes

#endif
