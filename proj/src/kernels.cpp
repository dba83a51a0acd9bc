#include "stokes/kernels.hpp"

#include <cmath>
#include <numbers>

namespace stokes {

namespace {

// log(cosh(y)) without overflow
double lncosh(double y) {
    const double a = std::abs(y);
    return a + std::log1p(std::exp(-2.0 * a)) - std::numbers::ln2;
}

}  // namespace

KernelPoint kernel_point(double x1, double x2) {
    KernelPoint k;
    k.x1 = x1;
    k.x2 = x2;
    const double c = std::cos(0.5 * x1);
    const double s = std::sin(0.5 * x1);
    const double T = std::tanh(0.5 * x2);
    const double ch = std::cosh(0.5 * x2);
    const double sech2 = 1.0 / (ch * ch);
    // t^2 + T^2 = denom / c^2 with t = tan(x1/2)
    const double denom = s * s + c * c * T * T;

    k.z0 = std::log(denom) + 2.0 * lncosh(0.5 * x2);
    k.z1 = s * c * sech2 / denom;
    k.z2 = T / denom;
    k.z5 = sech2 * (s * s - c * c * T * T) / (2.0 * denom * denom);
    k.z6 = s * c * T * sech2 / (2.0 * denom * denom);
    k.z3 = x2 * k.z5;
    k.z4 = x2 * k.z6;
    return k;
}

Eigen::Matrix2d stokeslet_velocity(const KernelPoint& k) {
    const double f = 1.0 / (8.0 * std::numbers::pi);
    Eigen::Matrix2d u;
    u << k.z0 + k.x2 * k.z2, -k.x2 * k.z1,
         -k.x2 * k.z1,       k.z0 - k.x2 * k.z2;
    return f * u;
}

Eigen::Vector2d stokeslet_pressure(const KernelPoint& k) {
    const double f = -1.0 / (4.0 * std::numbers::pi);
    return f * Eigen::Vector2d(k.z1, k.z2);
}

Eigen::Matrix2d stresslet_w1(const KernelPoint& k) {
    const double f = 1.0 / (4.0 * std::numbers::pi);
    Eigen::Matrix2d w;
    w << 2.0 * k.z1 - 2.0 * k.z4, k.z2 + k.z3,
         k.z2 + k.z3,             2.0 * k.z4;
    return f * w;
}

Eigen::Matrix2d stresslet_w2(const KernelPoint& k) {
    const double f = 1.0 / (4.0 * std::numbers::pi);
    Eigen::Matrix2d w;
    w << k.z2 + k.z3, 2.0 * k.z4,
         2.0 * k.z4,  k.z2 - k.z3;
    return f * w;
}

Eigen::Matrix2d stresslet_q(const KernelPoint& k) {
    const double f = 1.0 / (2.0 * std::numbers::pi);
    Eigen::Matrix2d q;
    q << k.z5,       2.0 * k.z6,
         2.0 * k.z6, -k.z5;
    return f * q;
}

}  // namespace stokes
