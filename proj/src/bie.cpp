#include "stokes/bie.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace stokes {

namespace {

constexpr double kPi = std::numbers::pi;

double grid_mean(const Eigen::VectorXd& v) { return v.mean(); }

}  // namespace

BieSolution solve_density(const InterfaceProfile& f, const FluidParams& params,
                          const TraceOps& ops) {
    params.validate();
    const int n = f.n();
    const RhsV rhs = rhs_V(f, params, ops);
    const Eigen::VectorXd b = stack_density(rhs.v1, rhs.v2);

    const BlockOperator D = double_layer(f, ops);
    Eigen::MatrixXd A = 2.0 * params.a_mu() * D.mat;
    A.diagonal().array() += 1.0;

    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
    const Eigen::VectorXd x = lu.solve(b);

    BieSolution sol;
    sol.residual = (A * x - b).cwiseAbs().maxCoeff();
    sol.condition = 1.0 / std::max(lu.rcond(), 1e-300);

    const double scale = b.cwiseAbs().maxCoeff();
    if (scale > 0.0 && sol.residual > 1e-10 * scale)
        throw std::runtime_error("solve_density: residual target not met");

    sol.beta.beta1.assign(x.data(), x.data() + n);
    sol.beta.beta2.assign(x.data() + n, x.data() + 2 * n);
    return sol;
}

BieSolution solve_density(const InterfaceProfile& f, const FluidParams& params) {
    return solve_density(f, params, trace_ops(f));
}

FarFieldConstants far_field_constants(const InterfaceProfile& f,
                                      const TractionDensity& beta,
                                      const FluidParams& params) {
    const int n = f.n();
    if (static_cast<int>(beta.beta1.size()) != n ||
        static_cast<int>(beta.beta2.size()) != n)
        throw std::invalid_argument("far_field_constants: density size mismatch");

    const Eigen::Map<const Eigen::VectorXd> b1(beta.beta1.data(), n);
    const Eigen::Map<const Eigen::VectorXd> b2(beta.beta2.data(), n);
    const Eigen::VectorXd fp =
        Eigen::Map<const Eigen::VectorXd>(spectral_derivative(f, 1).data(), n);
    const Eigen::VectorXd slope =
        (fp.array() / (1.0 + fp.array().square()).sqrt()).matrix();

    FarFieldConstants c;
    c.c1 = -0.5 * params.sigma * grid_mean(slope) +
           params.a_mu() * grid_mean(b1 - fp.cwiseProduct(b2));
    c.c2 = 0.0;
    c.c3 = -0.5 * params.theta() * f.mean();
    return c;
}

VorticityCheck vorticity_check(const InterfaceProfile& f,
                               const TractionDensity& beta,
                               const FluidParams& params, double height,
                               int bulk_grid) {
    if (height <= f.max_abs())
        throw std::invalid_argument("vorticity_check: height inside the interface range");
    const double dx = 2.0 * kPi / bulk_grid;
    const double dy = 2.0 * height / bulk_grid;
    const double h = 1e-3;

    auto vel = [&](double x1, double x2) {
        return eval_fields(f, beta.beta1, beta.beta2, params, x1, x2).velocity;
    };

    auto stencil_clear = [&](double x1, double x2) {
        return !near_interface(f, x1, x2 + h) && !near_interface(f, x1, x2 - h) &&
               !near_interface(f, x1 + h, x2) && !near_interface(f, x1 - h, x2);
    };
    const double edge = 2.0 * kPi / f.n() + 4.0 * h;

    VorticityCheck out;
    double integral = 0.0;
    for (int i = 0; i < bulk_grid; ++i) {
        const double x1 = -kPi + (i + 0.5) * dx;
        const double fx = f.value_at(x1);

        // One midpoint sample of curl v, weight = segment length. Samples
        // inside the interface collar are moved to the collar edge on their
        // own side; curl v is continuous up to the interface there.
        auto add_segment = [&](double y0, double y1) {
            if (y1 <= y0) return;
            double x2 = 0.5 * (y0 + y1);
            if (!stencil_clear(x1, x2)) {
                const double side = x2 >= fx ? 1.0 : -1.0;
                x2 = fx + side * edge;
                ++out.collar_hits;
                if (!stencil_clear(x1, x2)) {
                    ++out.dropped;
                    --out.collar_hits;
                    return;
                }
            }
            const double curl =
                (vel(x1 + h, x2)[1] - vel(x1 - h, x2)[1]) / (2 * h) -
                (vel(x1, x2 + h)[0] - vel(x1, x2 - h)[0]) / (2 * h);
            integral += curl * dx * (y1 - y0);
        };

        for (int j = 0; j < bulk_grid; ++j) {
            const double y0 = -height + j * dy;
            const double y1 = y0 + dy;
            if (y0 < fx && fx < y1) {
                // Cell straddles the interface: split there, since curl v
                // jumps across it.
                add_segment(y0, fx);
                add_segment(fx, y1);
            } else {
                add_segment(y0, y1);
            }
        }
    }
    out.value = -params.mu_plus * params.mu_minus /
                (2.0 * kPi * params.mu_sum()) * integral;
    return out;
}

}  // namespace stokes
