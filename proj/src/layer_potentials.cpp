#include "stokes/layer_potentials.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "stokes/kernels.hpp"

namespace stokes {

namespace {

constexpr double kPi = std::numbers::pi;

Eigen::Map<const Eigen::VectorXd> as_vec(std::span<const double> v) {
    return {v.data(), static_cast<Eigen::Index>(v.size())};
}

}  // namespace

TraceOps trace_ops(const InterfaceProfile& f) {
    const BFamily fam(f);
    const Eigen::MatrixXd& S = fam.shift();

    TraceOps ops;
    ops.n = f.n();
    ops.B0 = assemble_B0(f);
    ops.B1 = (fam.ptilde(0, 1, 0, 0) - fam.ptilde(2, 1, 2, 0)) * S;
    ops.B2 = (fam.ptilde(1, 1, 0, 0) + fam.ptilde(1, 1, 2, 0)) * S;
    ops.B3 = (fam.ptilde(0, 2, 0, 1) + fam.ptilde(0, 2, 2, 1) -
              fam.ptilde(2, 2, 0, 1) - 2.0 * fam.ptilde(2, 2, 2, 1) -
              fam.ptilde(2, 2, 4, 1) + fam.ptilde(4, 2, 2, 1) +
              fam.ptilde(4, 2, 4, 1)) * S;
    ops.B4 = (fam.ptilde(1, 2, 0, 1) + fam.ptilde(1, 2, 2, 1) -
              fam.ptilde(3, 2, 2, 1) - fam.ptilde(3, 2, 4, 1)) * S;
    ops.B5 = 2.0 * (fam.ptilde(0, 1, 1, 1) - fam.ptilde(2, 1, 3, 1)) * S;
    ops.B6 = 2.0 * (fam.ptilde(1, 1, 1, 1) + fam.ptilde(1, 1, 3, 1)) * S;
    return ops;
}

Eigen::VectorXd stack_density(std::span<const double> b1,
                              std::span<const double> b2) {
    if (b1.size() != b2.size())
        throw std::invalid_argument("stack_density: component size mismatch");
    Eigen::VectorXd v(2 * b1.size());
    v.head(b1.size()) = as_vec(b1);
    v.tail(b2.size()) = as_vec(b2);
    return v;
}

Eigen::VectorXd BlockOperator::apply(std::span<const double> b1,
                                     std::span<const double> b2) const {
    return mat * stack_density(b1, b2);
}

namespace {

/// The two 2x2-block matrices of the double-layer operator: D(f) =
/// -1/2 M_A + 1/2 M_B diag(f'), with M_A = [[B2+B3, 2B4],[2B4, B2-B3]] and
/// M_B = [[2B1-2B4, B2+B3],[B2+B3, 2B4]].
struct DlBlocks {
    Eigen::MatrixXd a11, a12, a22;        // M_A (symmetric block structure)
    Eigen::MatrixXd b11, b12, b22;        // M_B (symmetric block structure)
};

DlBlocks dl_blocks(const TraceOps& ops) {
    DlBlocks bl;
    bl.a11 = ops.B2 + ops.B3;
    bl.a12 = 2.0 * ops.B4;
    bl.a22 = ops.B2 - ops.B3;
    bl.b11 = 2.0 * (ops.B1 - ops.B4);
    bl.b12 = ops.B2 + ops.B3;
    bl.b22 = 2.0 * ops.B4;
    return bl;
}

}  // namespace

BlockOperator double_layer(const InterfaceProfile& f, const TraceOps& ops) {
    const int n = f.n();
    const Eigen::VectorXd fp = as_vec(spectral_derivative(f, 1));
    const DlBlocks bl = dl_blocks(ops);

    BlockOperator op;
    op.n = n;
    op.mat.resize(2 * n, 2 * n);
    op.mat.topLeftCorner(n, n) = -0.5 * bl.a11 + 0.5 * bl.b11 * fp.asDiagonal();
    op.mat.topRightCorner(n, n) = -0.5 * bl.a12 + 0.5 * bl.b12 * fp.asDiagonal();
    op.mat.bottomLeftCorner(n, n) = -0.5 * bl.a12 + 0.5 * bl.b12 * fp.asDiagonal();
    op.mat.bottomRightCorner(n, n) = -0.5 * bl.a22 + 0.5 * bl.b22 * fp.asDiagonal();
    return op;
}

BlockOperator double_layer(const InterfaceProfile& f) {
    return double_layer(f, trace_ops(f));
}

BlockOperator double_layer_adjoint(const InterfaceProfile& f,
                                   const TraceOps& ops) {
    const int n = f.n();
    const Eigen::VectorXd fp = as_vec(spectral_derivative(f, 1));
    const DlBlocks bl = dl_blocks(ops);

    BlockOperator op;
    op.n = n;
    op.mat.resize(2 * n, 2 * n);
    op.mat.topLeftCorner(n, n) = 0.5 * bl.a11 - 0.5 * fp.asDiagonal() * bl.b11;
    op.mat.topRightCorner(n, n) = 0.5 * bl.a12 - 0.5 * fp.asDiagonal() * bl.b12;
    op.mat.bottomLeftCorner(n, n) = 0.5 * bl.a12 - 0.5 * fp.asDiagonal() * bl.b12;
    op.mat.bottomRightCorner(n, n) = 0.5 * bl.a22 - 0.5 * fp.asDiagonal() * bl.b22;
    return op;
}

BlockOperator double_layer_adjoint(const InterfaceProfile& f) {
    return double_layer_adjoint(f, trace_ops(f));
}

RhsV rhs_V(const InterfaceProfile& f, const FluidParams& params,
           const TraceOps& ops) {
    const int n = f.n();
    const double sigma = params.sigma;
    const double theta = params.theta();

    const Eigen::VectorXd fs = as_vec(f.samples());
    const Eigen::VectorXd fp = as_vec(spectral_derivative(f, 1));
    const Eigen::VectorXd omega = (1.0 + fp.array().square()).sqrt().matrix();
    const Eigen::VectorXd phi1 = (omega.array().inverse() - 1.0).matrix();
    const Eigen::VectorXd phi2 = (fp.array() / omega.array()).matrix();
    const Eigen::VectorXd ffp = fs.cwiseProduct(fp);

    const Eigen::VectorXd v1 =
        (ops.B1 - 2.0 * ops.B4) * (phi1 - fp.cwiseProduct(phi2)) +
        (2.0 * ops.B2 + ops.B3) * fp.cwiseProduct(phi1) + ops.B3 * phi2;
    const Eigen::VectorXd v2 =
        ops.B1 * (phi2 - fp.cwiseProduct(phi1)) +
        ops.B3 * (phi1 - fp.cwiseProduct(phi2)) +
        2.0 * ops.B4 * (fp.cwiseProduct(phi1) + phi2);
    const Eigen::VectorXd v3 = (ops.B0 + ops.B6) * ffp + ops.B5 * fs;
    const Eigen::VectorXd v4 = (ops.B0 - ops.B6) * fs + ops.B5 * ffp;

    const double mean_term = theta * std::log(4.0) * f.mean();

    RhsV out;
    out.v1.resize(n);
    out.v2.resize(n);
    for (int j = 0; j < n; ++j) {
        out.v1[j] = 0.25 * (-sigma * v1[j] - theta * v3[j]);
        out.v2[j] = 0.25 * (-sigma * v2[j] + theta * v4[j] + mean_term);
    }
    return out;
}

RhsV rhs_V(const InterfaceProfile& f, const FluidParams& params) {
    return rhs_V(f, params, trace_ops(f));
}

bool near_interface(const InterfaceProfile& f, double x1, double x2) {
    return std::abs(x2 - f.value_at(x1)) < 2.0 * kPi / f.n();
}

double eval_Z(int i, const InterfaceProfile& f, std::span<const double> phi,
              double x1, double x2) {
    if (i < 1 || i > 4) throw std::invalid_argument("eval_Z: i must be in 1..4");
    const int n = f.n();
    if (static_cast<int>(phi.size()) != n)
        throw std::invalid_argument("eval_Z: density size mismatch");
    const auto& fs = f.samples();
    double sum = 0.0;
    for (int m = 0; m < n; ++m) {
        const KernelPoint k =
            kernel_point(x1 - InterfaceProfile::grid_point(m, n), x2 - fs[m]);
        const double zi = (i == 1) ? k.z1 : (i == 2) ? k.z2 : (i == 3) ? k.z3 : k.z4;
        sum += zi * phi[m];
    }
    return sum / n;
}

BulkField eval_fields(const InterfaceProfile& f, std::span<const double> beta1,
                      std::span<const double> beta2, const FluidParams& params,
                      double x1, double x2) {
    const int n = f.n();
    if (static_cast<int>(beta1.size()) != n ||
        static_cast<int>(beta2.size()) != n)
        throw std::invalid_argument("eval_fields: density size mismatch");

    const double gap = x2 - f.value_at(x1);
    if (std::abs(gap) < 1e-12)
        throw std::invalid_argument("eval_fields: point on the interface");

    BulkField out;
    out.x1 = x1;
    out.x2 = x2;
    out.side = gap > 0.0 ? 1 : -1;
    out.in_collar = near_interface(f, x1, x2);

    const double theta = params.theta();
    const double sigma = params.sigma;
    const double two_amu = 2.0 * params.a_mu();

    const auto& fs = f.samples();
    const std::vector<double> fpv = spectral_derivative(f, 1);

    // Single-layer density G(f) = theta (-f f', f) - sigma phi(f)'.
    std::vector<double> phi1(n), phi2(n);
    for (int m = 0; m < n; ++m) {
        const double om = std::sqrt(1.0 + fpv[m] * fpv[m]);
        phi1[m] = 1.0 / om - 1.0;
        phi2[m] = fpv[m] / om;
    }
    const std::vector<double> dphi1 = spectral_derivative(phi1, 1);
    const std::vector<double> dphi2 = spectral_derivative(phi2, 1);

    // Double-layer density 2 a_mu beta and the functions Z_i acts on.
    std::vector<double> g1(n), g2(n);
    for (int m = 0; m < n; ++m) {
        g1[m] = two_amu * beta1[m];
        g2[m] = two_amu * beta2[m];
    }
    const std::vector<double> dg1 = spectral_derivative(g1, 1);
    const std::vector<double> dg2 = spectral_derivative(g2, 1);

    Eigen::Vector2d vs = Eigen::Vector2d::Zero();
    double qs = 0.0;
    // Z_i[rho] sums for rho in {g1, g2, f' g1, f' g2, g1', g2'} (columns)
    // and i in 1..4 (rows).
    Eigen::Matrix<double, 4, 6> zsum = Eigen::Matrix<double, 4, 6>::Zero();

    for (int m = 0; m < n; ++m) {
        const double G1 = theta * (-fs[m] * fpv[m]) - sigma * dphi1[m];
        const double G2 = theta * fs[m] - sigma * dphi2[m];
        const KernelPoint k =
            kernel_point(x1 - InterfaceProfile::grid_point(m, n), x2 - fs[m]);
        const Eigen::Vector2d G(G1, G2);
        vs += stokeslet_velocity(k) * G;
        qs += stokeslet_pressure(k).dot(G);

        const Eigen::Vector4d zv(k.z1, k.z2, k.z3, k.z4);
        Eigen::Matrix<double, 1, 6> dens;
        dens << g1[m], g2[m], fpv[m] * g1[m], fpv[m] * g2[m], dg1[m], dg2[m];
        zsum += zv * dens;
    }
    const double h = 2.0 * kPi / n;
    vs *= h;
    qs *= h;
    // The x1-average of z0 at height x2 is |x2| - ln 4; the velocity traces
    // on the interface are normalized against the log kernel with that
    // constant removed, so the mean of the density G2 (= theta <f>) must be
    // compensated in the vertical single-layer component.
    vs[1] += 0.25 * std::log(4.0) * theta * f.mean();
    zsum *= 1.0 / n;  // trapezoid weight h divided by the 1/(2 pi) prefactor

    auto Z = [&zsum](int i, int col) { return zsum(i - 1, col); };
    // columns: 0 = g1, 1 = g2, 2 = f' g1, 3 = f' g2, 4 = g1', 5 = g2'
    Eigen::Vector2d vd;
    vd[0] = 0.5 * ((Z(2, 0) + Z(3, 0)) + 2.0 * Z(4, 1)) -
            0.5 * (2.0 * (Z(1, 2) - Z(4, 2)) + (Z(2, 3) + Z(3, 3)));
    vd[1] = 0.5 * (2.0 * Z(4, 0) + (Z(2, 1) - Z(3, 1))) -
            0.5 * ((Z(2, 2) + Z(3, 2)) + 2.0 * Z(4, 3));
    const double qd = Z(1, 5) - Z(2, 4);

    const double mu = out.side > 0 ? params.mu_plus : params.mu_minus;
    out.velocity = (vs + vd) / mu;
    out.pressure = qs + qd;
    return out;
}

}  // namespace stokes
