#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "stokes/bie.hpp"
#include "stokes/layer_potentials.hpp"
#include "stokes/profile.hpp"

using namespace stokes;

namespace {

/// Richardson extrapolation to d = 0 from values at d, d/2, d/4, ...
double extrapolate(std::vector<double> v) {
    double factor = 2.0;
    while (v.size() > 1) {
        for (std::size_t i = 0; i + 1 < v.size(); ++i)
            v[i] = (factor * v[i + 1] - v[i]) / (factor - 1.0);
        v.pop_back();
        factor *= 2.0;
    }
    return v[0];
}

}  // namespace

TEST_CASE("flat interface has zero traction density and far-field constants") {
    const int n = 128;
    const InterfaceProfile flat(n);
    const FluidParams p = FluidParams::from_theta(2.0, 1.0, 1.0, -0.5);
    const BieSolution sol = solve_density(flat, p);
    for (int j = 0; j < n; ++j) {
        CHECK(std::abs(sol.beta.beta1[j]) < 1e-12);
        CHECK(std::abs(sol.beta.beta2[j]) < 1e-12);
    }
    const FarFieldConstants c = far_field_constants(flat, sol.beta, p);
    CHECK(c.c1 == 0.0);
    CHECK(c.c2 == 0.0);
    CHECK(c.c3 == 0.0);
}

TEST_CASE("equal viscosities reduce the equation to beta = V") {
    const int n = 128;
    const auto f = InterfaceProfile::from_modes(
        n, std::vector<double>{0.3, -0.1}, std::vector<double>{0.2});
    const FluidParams p = FluidParams::from_theta(1.5, 1.5, 1.0, -0.7);
    REQUIRE(p.a_mu() == 0.0);
    const TraceOps ops = trace_ops(f);
    const RhsV rhs = rhs_V(f, p, ops);
    const BieSolution sol = solve_density(f, p, ops);
    for (int j = 0; j < n; ++j) {
        CHECK(sol.beta.beta1[j] == doctest::Approx(rhs.v1[j]).epsilon(1e-13));
        CHECK(sol.beta.beta2[j] == doctest::Approx(rhs.v2[j]).epsilon(1e-13));
    }
}

TEST_CASE("LU solution matches the Neumann series") {
    const int n = 256;
    const auto f = InterfaceProfile::from_modes(n, std::vector<double>{0.3});
    const FluidParams p = FluidParams::from_theta(3.0, 1.0, 1.0, 0.0);
    REQUIRE(p.a_mu() == doctest::Approx(0.5));

    const TraceOps ops = trace_ops(f);
    const BieSolution sol = solve_density(f, p, ops);
    CHECK(sol.residual <= 1e-10);
    CHECK(sol.condition < 1e4);

    const RhsV rhs = rhs_V(f, p, ops);
    const Eigen::MatrixXd M = -2.0 * p.a_mu() * double_layer(f, ops).mat;
    Eigen::VectorXd term = stack_density(rhs.v1, rhs.v2);
    Eigen::VectorXd sum = term;
    for (int k = 1; k <= 60; ++k) {
        term = M * term;
        sum += term;
    }
    const Eigen::VectorXd x = stack_density(sol.beta.beta1, sol.beta.beta2);
    CHECK((x - sum).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("solution scales linearly with the right-hand side") {
    const int n = 128;
    const auto f = InterfaceProfile::from_modes(n, std::vector<double>{0.25});
    // theta = 0, so doubling sigma doubles V while the operator is unchanged.
    const FluidParams pa = FluidParams::from_theta(3.0, 1.0, 1.0, 0.0);
    const FluidParams pb = FluidParams::from_theta(3.0, 1.0, 2.0, 0.0);
    const TraceOps ops = trace_ops(f);
    const BieSolution a = solve_density(f, pa, ops);
    const BieSolution b = solve_density(f, pb, ops);
    for (int j = 0; j < n; ++j) {
        CHECK(b.beta.beta1[j] == doctest::Approx(2.0 * a.beta.beta1[j]).epsilon(1e-11));
        CHECK(b.beta.beta2[j] == doctest::Approx(2.0 * a.beta.beta2[j]).epsilon(1e-11));
    }
}

TEST_CASE("even interfaces give odd beta1 and even beta2") {
    const int n = 256;
    const auto f = InterfaceProfile::from_modes(n, std::vector<double>{0.3, 0.1});
    const FluidParams p = FluidParams::from_theta(2.0, 1.0, 1.3, -0.4);
    const BieSolution sol = solve_density(f, p);
    for (int j = 1; j < n; ++j) {
        const int jr = n - j;  // index of -xi_j
        CHECK(std::abs(sol.beta.beta1[j] + sol.beta.beta1[jr]) < 1e-9);
        CHECK(std::abs(sol.beta.beta2[j] - sol.beta.beta2[jr]) < 1e-9);
    }
    CHECK(std::abs(sol.beta.beta1[0]) < 1e-9);  // xi_0 = -pi is a fixed point
}

TEST_CASE("resolvent of the double layer stays bounded away from zero") {
    const int n = 256;
    const auto f = InterfaceProfile::from_modes(
        n, std::vector<double>{0.8}, std::vector<double>{0.0, 0.4});
    REQUIRE(f.max_slope() <= 2.0);
    const Eigen::MatrixXd D = double_layer(f).mat;
    const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(2 * n, 2 * n);
    for (double lambda : {0.6, 0.75, 1.0, -0.75}) {
        Eigen::BDCSVD<Eigen::MatrixXd> svd(lambda * I - D);
        CHECK(svd.singularValues().minCoeff() >= 1e-3);
    }
}

TEST_CASE("far-field constants follow their closed forms") {
    const int n = 128;
    const auto f = InterfaceProfile::from_modes(n, std::vector<double>{0.3}, {}, 0.2);
    const FluidParams p = FluidParams::from_theta(1.0, 1.0, 1.0, -0.8);
    const BieSolution sol = solve_density(f, p);
    const FarFieldConstants c = far_field_constants(f, sol.beta, p);
    // a_mu = 0 and f even: f'/omega is odd, so c1 = 0 by parity.
    CHECK(std::abs(c.c1) < 1e-12);
    CHECK(c.c2 == 0.0);
    CHECK(c.c3 == doctest::Approx(0.5 * 0.8 * 0.2).epsilon(1e-12));
}

TEST_CASE("bulk velocity trace matches the interface velocity 2 beta / (mu+ + mu-)") {
    const int n = 256;
    const auto f = InterfaceProfile::from_modes(n, std::vector<double>{0.2});
    const FluidParams p = FluidParams::from_theta(3.0, 1.0, 1.0, -0.5);
    const BieSolution sol = solve_density(f, p);

    const int j0 = n / 3;
    const double xi0 = InterfaceProfile::grid_point(j0, n);
    const double f0 = f.samples()[j0];
    for (int comp = 0; comp < 2; ++comp) {
        std::vector<double> vals;
        for (double d = 0.2; d > 0.02; d /= 2)
            vals.push_back(eval_fields(f, sol.beta.beta1, sol.beta.beta2, p,
                                       xi0, f0 + d).velocity[comp]);
        const double trace = 2.0 / p.mu_sum() *
                             (comp == 0 ? sol.beta.beta1[j0] : sol.beta.beta2[j0]);
        CHECK(std::abs(extrapolate(vals) - trace) < 1e-3);
    }
}

TEST_CASE("vorticity integral reproduces the far-field constant c1") {
    // c1 vanishes by parity for even profiles, so use an asymmetric one.
    const int n = 128;
    const auto f = InterfaceProfile::from_modes(
        n, std::vector<double>{0.2}, std::vector<double>{0.0, 0.15});
    const FluidParams p = FluidParams::from_theta(3.0, 1.0, 1.0, -0.5);
    const BieSolution sol = solve_density(f, p);
    const FarFieldConstants c = far_field_constants(f, sol.beta, p);
    REQUIRE(std::abs(c.c1) > 1e-4);

    const VorticityCheck chk = vorticity_check(f, sol.beta, p, 8.0, 64);
    CHECK(chk.collar_hits > 0);
    CHECK(chk.dropped == 0);
    CHECK(std::abs(chk.value - c.c1) / std::abs(c.c1) < 5e-2);

    // The truncated tail decays exponentially in the height.
    const VorticityCheck tall = vorticity_check(f, sol.beta, p, 12.0, 96);
    CHECK(std::abs(tall.value - chk.value) < 1e-3);
}
