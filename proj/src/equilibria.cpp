#include "stokes/equilibria.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "stokes/evolution.hpp"

namespace stokes {

namespace {

constexpr double kPi = std::numbers::pi;

/// Coefficients of cos(k xi), k = 1..K, of a grid function.
Eigen::VectorXd cos_projection(const GridFn& g, int K) {
    const std::vector<Complex> c = spectrum(g);
    Eigen::VectorXd r(K);
    for (int k = 1; k <= K; ++k) r[k - 1] = 2.0 * c[k].real();
    return r;
}

InterfaceProfile even_profile(int n, const Eigen::VectorXd& a) {
    std::vector<double> amps(a.data(), a.data() + a.size());
    return InterfaceProfile::from_modes(n, amps);
}

double grid_inf_norm(const GridFn& g) {
    double m = 0.0;
    for (double v : g) m = std::max(m, std::abs(v));
    return m;
}

}  // namespace

double lambda_star() {
    const double log_beta =
        std::lgamma(0.75) + std::lgamma(0.5) - std::lgamma(1.25);
    return std::exp(2.0 * log_beta) / (2.0 * kPi * kPi);
}

double theta0(const FluidParams& params) {
    const double sigma = params.sigma, th = params.theta();
    if (sigma >= th) return (sigma + th) / (2.0 * params.mu_sum());
    return std::sqrt(sigma * th) / params.mu_sum();
}

Eigen::MatrixXd psi_jacobian(const InterfaceProfile& f,
                             const FluidParams& params) {
    const int n = f.n();
    const double h = 1e-6 * std::max(1.0, f.max_abs());
    Eigen::MatrixXd J(n, n);
    std::vector<double> samples = f.samples();
    for (int j = 0; j < n; ++j) {
        const double base = samples[j];
        samples[j] = base + h;
        const GridFn plus = psi(InterfaceProfile::from_samples(samples), params);
        samples[j] = base - h;
        const GridFn minus = psi(InterfaceProfile::from_samples(samples), params);
        samples[j] = base;
        for (int i = 0; i < n; ++i) J(i, j) = (plus[i] - minus[i]) / (2.0 * h);
    }
    // Restrict to the resolved band: deflate the constant direction (mode 0
    // is conserved) and the unresolved modes beyond the two-thirds rule,
    // whose grid-scale rates are quadrature artifacts.
    Eigen::MatrixXd P(n, n);
    for (int j = 0; j < n; ++j) {
        std::vector<double> e(n, 0.0);
        e[j] = 1.0;
        std::vector<Complex> c = spectrum(e);
        for (int i = 0; i < n; ++i) {
            const int k = std::abs(wavenumber(i, n));
            if (k == 0 || k > n / 3) c[i] = 0.0;
        }
        const std::vector<double> col = from_spectrum(c);
        for (int i = 0; i < n; ++i) P(i, j) = col[i];
    }
    return P * J * P;
}

std::vector<Complex> stability_eigenvalues(const InterfaceProfile& f,
                                           const FluidParams& params) {
    const Eigen::MatrixXd J = psi_jacobian(f, params);
    const Eigen::EigenSolver<Eigen::MatrixXd> es(J);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("stability_eigenvalues: eigensolver failed");
    std::vector<Complex> ev(J.rows());
    for (int i = 0; i < J.rows(); ++i) ev[i] = es.eigenvalues()[i];
    std::sort(ev.begin(), ev.end(), [](const Complex& a, const Complex& b) {
        return a.real() > b.real();
    });
    return ev;
}

SpectrumReport flat_spectrum(const FluidParams& params, int mode_count,
                             int grid_n) {
    if (mode_count < 1)
        throw std::invalid_argument("flat_spectrum: mode_count must be >= 1");
    SpectrumReport rep;
    rep.analytic.resize(mode_count);
    for (int k = 1; k <= mode_count; ++k)
        rep.analytic[k - 1] = flat_mode_rate(k, params);
    rep.numeric = stability_eigenvalues(InterfaceProfile(grid_n), params);
    rep.theta0 = theta0(params);
    rep.unstable = params.sigma + params.theta() < 0.0;
    return rep;
}

GridFn capillary_residual(double lambda, const InterfaceProfile& f) {
    const int n = f.n();
    const std::vector<double> fp = spectral_derivative(f, 1);
    std::vector<double> slope(n);
    for (int j = 0; j < n; ++j)
        slope[j] = fp[j] / std::sqrt(1.0 + fp[j] * fp[j]);
    GridFn out = spectral_derivative(slope, 1);
    for (int j = 0; j < n; ++j) out[j] += lambda * f.samples()[j];
    return out;
}

namespace {

constexpr double kNewtonTol = 1e-11;

struct NewtonOutcome {
    Eigen::VectorXd a;
    double lambda = 0.0;
    double residual = 0.0;
    bool converged = false;
    int iterations = 0;
};

/// Newton iteration on r(y) = cosine projection of F(lambda, f); fixed_mode
/// < 0 solves for the coefficients at fixed lambda, otherwise coefficient
/// fixed_mode (1-based) is held fixed and lambda becomes an unknown.
NewtonOutcome newton_solve(int n, double lambda, Eigen::VectorXd a,
                           int fixed_mode, int max_iter) {
    const int K = static_cast<int>(a.size());
    NewtonOutcome out;

    auto residual_of = [&](double lam, const Eigen::VectorXd& coeffs) {
        return capillary_residual(lam, even_profile(n, coeffs));
    };

    for (int iter = 1; iter <= max_iter; ++iter) {
        const GridFn Fg = residual_of(lambda, a);
        out.residual = grid_inf_norm(Fg);
        out.iterations = iter - 1;
        if (out.residual <= kNewtonTol) {
            out.converged = true;
            break;
        }
        const Eigen::VectorXd r = cos_projection(Fg, K);

        Eigen::MatrixXd J(K, K);
        int col = 0;
        if (fixed_mode >= 1) {
            const double h = 1e-7 * std::max(1.0, std::abs(lambda));
            J.col(col++) = (cos_projection(residual_of(lambda + h, a), K) -
                            cos_projection(residual_of(lambda - h, a), K)) /
                           (2.0 * h);
        }
        for (int k = 1; k <= K; ++k) {
            if (k == fixed_mode) continue;
            const double h = 1e-7 * std::max(1.0, a.cwiseAbs().maxCoeff());
            Eigen::VectorXd ap = a, am = a;
            ap[k - 1] += h;
            am[k - 1] -= h;
            J.col(col++) = (cos_projection(residual_of(lambda, ap), K) -
                            cos_projection(residual_of(lambda, am), K)) /
                           (2.0 * h);
        }

        const Eigen::VectorXd dy = Eigen::PartialPivLU<Eigen::MatrixXd>(J).solve(-r);
        if (!dy.allFinite()) break;
        col = 0;
        if (fixed_mode >= 1) lambda += dy[col++];
        for (int k = 1; k <= K; ++k) {
            if (k == fixed_mode) continue;
            a[k - 1] += dy[col++];
        }
    }
    out.a = a;
    out.lambda = lambda;
    return out;
}

}  // namespace

EquilibriumResult solve_equilibrium(double lambda,
                                    const InterfaceProfile& guess,
                                    int max_iter) {
    const int n = guess.n();
    const int K = n / 2 - 1;
    // Project the guess onto the even zero-mean class.
    Eigen::VectorXd a(K);
    for (int k = 1; k <= K; ++k) a[k - 1] = guess.cos_amplitude(k);

    const NewtonOutcome res = newton_solve(n, lambda, a, -1, max_iter);
    EquilibriumResult out{even_profile(n, res.a), res.residual, res.converged,
                          res.iterations};
    return out;
}

std::vector<BranchPoint> continue_branch(int ell, double s_max, double ds,
                                         int grid_n, double slope_cap) {
    if (ell < 1) throw std::invalid_argument("continue_branch: ell must be >= 1");
    if (!(ds > 0.0)) throw std::invalid_argument("continue_branch: ds must be positive");
    const int K = grid_n / 2 - 1;
    if (ell > K) throw std::invalid_argument("continue_branch: ell unresolved on grid");
    const double dir = s_max >= 0.0 ? 1.0 : -1.0;

    std::vector<BranchPoint> branch;
    double lambda = static_cast<double>(ell) * ell;
    Eigen::VectorXd a = Eigen::VectorXd::Zero(K);
    double s = 0.0;
    double step = dir * ds;
    int halvings = 0;

    while (std::abs(s) < std::abs(s_max) - 1e-14) {
        double s_next = s + step;
        if (std::abs(s_next) > std::abs(s_max)) s_next = s_max;

        Eigen::VectorXd a_try = a;
        a_try[ell - 1] = s_next;
        const NewtonOutcome res = newton_solve(grid_n, lambda, a_try, ell, 25);
        if (!res.converged) {
            if (++halvings > 6) break;
            step *= 0.5;
            continue;
        }
        halvings = 0;
        s = s_next;
        lambda = res.lambda;
        a = res.a;

        BranchPoint pt{ell, s, lambda, even_profile(grid_n, a), res.residual};
        const bool over_cap = pt.profile.max_slope() > slope_cap;
        branch.push_back(std::move(pt));
        if (over_cap) break;
    }
    return branch;
}

}  // namespace stokes
