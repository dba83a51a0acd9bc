#include "stokes/operators.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace stokes {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kLn4 = 2.0 * std::numbers::ln2;

// midpoint integration node s_k = 2 pi (k + 1/2)/n - pi
double midpoint(int k, int n) { return 2.0 * kPi * (k + 0.5) / n - kPi; }

// column index -> integration node: row j, column m of the resampled density
// corresponds to s_k with k = (j - m - 1 + n/2) mod n; the node therefore
// depends only on the diagonal offset d = (j - m) mod n
int node_of_offset(int d, int n) { return (d - 1 + n / 2 + n) % n; }

double lncosh(double y) {
    const double a = std::abs(y);
    return a + std::log1p(std::exp(-2.0 * a)) - std::numbers::ln2;
}

Eigen::MatrixXd circulant_from_column(const std::vector<double>& col) {
    const int n = static_cast<int>(col.size());
    Eigen::MatrixXd m(n, n);
    for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l) m(j, l) = col[(j - l + n) % n];
    return m;
}

std::vector<double> unit_vector(int n) {
    std::vector<double> e(n, 0.0);
    e[0] = 1.0;
    return e;
}

}  // namespace

GridFn hilbert(std::span<const double> phi) {
    const int n = static_cast<int>(phi.size());
    auto c = spectrum(phi);
    for (int i = 0; i < n; ++i) {
        const int k = wavenumber(i, n);
        if (k == 0 || i == n / 2)
            c[i] = 0.0;
        else
            c[i] *= Complex(0.0, k > 0 ? -1.0 : 1.0);
    }
    return from_spectrum(c);
}

Eigen::MatrixXd hilbert_matrix(int grid_n) {
    return circulant_from_column(hilbert(unit_vector(grid_n)));
}

Eigen::MatrixXd half_shift_matrix(int grid_n) {
    return circulant_from_column(half_shift(unit_vector(grid_n)));
}

void OperatorSpec::validate() const {
    if (n < 0 || m < 0 || p < 0 || q < 0)
        throw std::invalid_argument("OperatorSpec: negative index");
    if (p > n + q + 1)
        throw std::invalid_argument("OperatorSpec: requires p <= n+q+1");
    if (static_cast<int>(a.size()) != m || static_cast<int>(b.size()) != n ||
        static_cast<int>(c.size()) != q)
        throw std::invalid_argument("OperatorSpec: slot count mismatch");
    if (grid_size < 2)
        throw std::invalid_argument("OperatorSpec: grid_size not set");
    for (const auto* slots : {&a, &b, &c})
        for (const auto& g : *slots)
            if (static_cast<int>(g.size()) != grid_size)
                throw std::invalid_argument("OperatorSpec: slot on wrong grid");
}

Eigen::MatrixXd assemble_B(const OperatorSpec& spec) {
    spec.validate();
    const int N = spec.grid_size;

    std::vector<GridFn> ah, bh, ch;
    for (const auto& g : spec.a) ah.push_back(half_shift(g));
    for (const auto& g : spec.b) bh.push_back(half_shift(g));
    for (const auto& g : spec.c) ch.push_back(half_shift(g));

    std::vector<double> t(N), tp(N);
    for (int d = 0; d < N; ++d) {
        t[d] = std::tan(0.5 * midpoint(node_of_offset(d, N), N));
        tp[d] = std::pow(t[d], spec.p - 1);
    }

    Eigen::MatrixXd ptil(N, N);
    for (int j = 0; j < N; ++j) {
        for (int m = 0; m < N; ++m) {
            const int d = (j - m + N) % N;
            double num = 1.0, den = 1.0;
            for (int i = 0; i < spec.n; ++i)
                num *= std::tanh(0.5 * (spec.b[i][j] - bh[i][m])) / t[d];
            for (int i = 0; i < spec.q; ++i)
                num *= 0.5 * (spec.c[i][j] - ch[i][m]) / t[d];
            for (int i = 0; i < spec.m; ++i) {
                const double r = std::tanh(0.5 * (spec.a[i][j] - ah[i][m])) / t[d];
                den *= 1.0 + r * r;
            }
            ptil(j, m) = num / den * tp[d] / N;
        }
    }
    return ptil * half_shift_matrix(N);
}

namespace {

// Odd periodizing map s = S(u) on [-pi, pi] (Kress-type, order kKressP):
// S(+-pi) = +-pi, S(0) = 0, and S' vanishes to order kKressP - 1 at the
// endpoints. The 1/s-type kernels below are not 2 pi-periodic-smooth in s;
// after substitution the transformed integrand extends to a C^{p-2} periodic
// function, so the uniform rules in u converge at high order.
constexpr int kKressP = 8;

double kress_v(double t) {
    constexpr double p = kKressP;
    const double r = (kPi - t) / kPi;
    return (1.0 / p - 0.5) * r * r * r + (t - kPi) / (p * kPi) + 0.5;
}

double kress_vp(double t) {
    constexpr double p = kKressP;
    const double r = (kPi - t) / kPi;
    return -3.0 * (1.0 / p - 0.5) * r * r / kPi + 1.0 / (p * kPi);
}

// s and ds/du at u in [-pi, pi]
std::pair<double, double> kress_map(double u) {
    const double t = u + kPi;
    const double v1 = kress_v(t), v2 = kress_v(2.0 * kPi - t);
    double w1p = 1.0, w2p = 1.0;  // v^(p-1)
    for (int i = 0; i < kKressP - 1; ++i) {
        w1p *= v1;
        w2p *= v2;
    }
    const double w1 = w1p * v1, w2 = w2p * v2;
    const double denom = w1 + w2;
    const double s = 2.0 * kPi * w1 / denom - kPi;
    const double d1 = kKressP * w1p * kress_vp(t);
    const double d2 = -kKressP * w2p * kress_vp(2.0 * kPi - t);
    const double sp = 2.0 * kPi * (d1 * w2 - w1 * d2) / (denom * denom);
    return {s, sp};
}

// circulant matrix resampling a grid function at xi_j - shift
Eigen::MatrixXd translation_matrix(int N, double shift) {
    std::vector<double> e(N, 0.0);
    e[0] = 1.0;
    auto col = translate(InterfaceProfile::from_samples(std::move(e)), shift, 0.0);
    return circulant_from_column(col.samples());
}

}  // namespace

Eigen::MatrixXd assemble_C(const std::vector<GridFn>& a,
                           const std::vector<GridFn>& b, int grid_n) {
    const int N = grid_n;
    for (const auto* slots : {&a, &b})
        for (const auto& g : *slots)
            if (static_cast<int>(g.size()) != N)
                throw std::invalid_argument("assemble_C: slot on wrong grid");

    // slot interpolants: the transformed nodes are off the grid
    std::vector<InterfaceProfile> ai, bi;
    for (const auto& g : a) ai.push_back(InterfaceProfile::from_samples(g));
    for (const auto& g : b) bi.push_back(InterfaceProfile::from_samples(g));

    Eigen::MatrixXd mat = Eigen::MatrixXd::Zero(N, N);
    Eigen::VectorXd coef(N);
    for (int k = 0; k < N; ++k) {
        const double u = midpoint(k, N);
        auto [s, sp] = kress_map(u);
        std::vector<GridFn> as, bs;  // slot values at xi_j - s
        for (const auto& g : ai) as.push_back(translate(g, s, 0.0).samples());
        for (const auto& g : bi) bs.push_back(translate(g, s, 0.0).samples());
        for (int j = 0; j < N; ++j) {
            double num = 1.0, den = 1.0;
            for (int i = 0; i < static_cast<int>(b.size()); ++i)
                num *= (b[i][j] - bs[i][j]) / s;
            for (int i = 0; i < static_cast<int>(a.size()); ++i) {
                const double r = (a[i][j] - as[i][j]) / s;
                den *= 1.0 + r * r;
            }
            coef(j) = 2.0 * num * sp / (den * s * N);
        }
        mat.noalias() += coef.asDiagonal() * translation_matrix(N, s);
    }
    return mat;
}

Eigen::MatrixXd assemble_A1(const OperatorSpec& spec) {
    spec.validate();
    const int N = spec.grid_size;

    // generic kernel from slot differences; s != 0
    auto kernel = [&](std::span<const double> da, std::span<const double> db,
                      std::span<const double> dc, double s) {
        const double t = std::tan(0.5 * s);
        double numB = 1.0, denB = 1.0, numC = 1.0, denC = 1.0;
        for (double d : db) {
            numB *= std::tanh(0.5 * d) / t;
            numC *= d / s;
        }
        for (double d : dc) {
            numB *= 0.5 * d / t;
            numC *= d / s;
        }
        for (double d : da) {
            const double rB = std::tanh(0.5 * d) / t;
            const double rC = d / s;
            denB *= 1.0 + rB * rB;
            denC *= 1.0 + rC * rC;
        }
        return numB / (denB * t) - 2.0 * numC / (denC * s);
    };

    std::vector<InterfaceProfile> ai, bi, ci;
    for (const auto& g : spec.a) ai.push_back(InterfaceProfile::from_samples(g));
    for (const auto& g : spec.b) bi.push_back(InterfaceProfile::from_samples(g));
    for (const auto& g : spec.c) ci.push_back(InterfaceProfile::from_samples(g));

    // trapezoid in the periodizing variable (same substitution as assemble_C);
    // the kernel is bounded, so the full u-grid including u = 0 is usable
    Eigen::MatrixXd mat = Eigen::MatrixXd::Zero(N, N);
    Eigen::VectorXd coef(N);
    std::vector<double> da(spec.m), db(spec.n), dc(spec.q);
    const double h = 1e-5;
    for (int l = 0; l < N; ++l) {
        const double u = InterfaceProfile::grid_point(l, N);
        auto [s, sp] = kress_map(u);
        if (sp == 0.0) continue;  // endpoint u = -pi carries zero weight
        if (l == N / 2) {
            // s = 0: symmetric average of the kernel limit at +-h
            for (int j = 0; j < N; ++j) {
                const double xi = InterfaceProfile::grid_point(j, N);
                double v = 0.0;
                for (double ss : {h, -h}) {
                    for (int i = 0; i < spec.m; ++i)
                        da[i] = spec.a[i][j] - ai[i].value_at(xi - ss);
                    for (int i = 0; i < spec.n; ++i)
                        db[i] = spec.b[i][j] - bi[i].value_at(xi - ss);
                    for (int i = 0; i < spec.q; ++i)
                        dc[i] = spec.c[i][j] - ci[i].value_at(xi - ss);
                    v += 0.5 * kernel(da, db, dc, ss);
                }
                coef(j) = v * sp / N;
            }
            mat.diagonal() += coef;  // translation by s = 0 is the identity
            continue;
        }
        std::vector<GridFn> as, bs, cs;
        for (const auto& g : ai) as.push_back(translate(g, s, 0.0).samples());
        for (const auto& g : bi) bs.push_back(translate(g, s, 0.0).samples());
        for (const auto& g : ci) cs.push_back(translate(g, s, 0.0).samples());
        for (int j = 0; j < N; ++j) {
            for (int i = 0; i < spec.m; ++i) da[i] = spec.a[i][j] - as[i][j];
            for (int i = 0; i < spec.n; ++i) db[i] = spec.b[i][j] - bs[i][j];
            for (int i = 0; i < spec.q; ++i) dc[i] = spec.c[i][j] - cs[i][j];
            coef(j) = kernel(da, db, dc, s) * sp / N;
        }
        mat.noalias() += coef.asDiagonal() * translation_matrix(N, s);
    }
    return mat;
}

Eigen::MatrixXd assemble_B0(const InterfaceProfile& f) {
    const int N = f.n();
    const auto& fs = f.samples();
    auto fp = spectral_derivative(f, 1);

    Eigen::MatrixXd smooth(N, N);
    for (int j = 0; j < N; ++j) {
        for (int m = 0; m < N; ++m) {
            const int l = (j - m + N / 2 + N) % N;
            double r;
            if (l == N / 2) {
                r = std::log1p(fp[j] * fp[j]) - kLn4;
            } else {
                const double s = InterfaceProfile::grid_point(l, N);
                const double df = fs[j] - fs[m];
                const double T = std::tanh(0.5 * df);
                const double rt = T / std::tan(0.5 * s);
                r = std::log1p(rt * rt) + 2.0 * lncosh(0.5 * df) - kLn4;
            }
            smooth(j, m) = r / N;
        }
    }

    // exact quadrature of the ln(4 sin^2(s/2)) part: Fourier multiplier -1/|k|
    auto e0 = unit_vector(N);
    auto c = spectrum(e0);
    for (int i = 0; i < N; ++i) {
        const int k = wavenumber(i, N);
        c[i] *= (k == 0) ? 0.0 : -1.0 / std::abs(k);
    }
    Eigen::MatrixXd logpart = circulant_from_column(from_spectrum(c));

    return smooth + logpart;
}

BFamily::BFamily(const InterfaceProfile& f) : grid_n_(f.n()) {
    const int N = grid_n_;
    const auto& fs = f.samples();
    auto fh = half_shift(fs);

    t_.resize(N);
    for (int d = 0; d < N; ++d)
        t_(d) = std::tan(0.5 * midpoint(node_of_offset(d, N), N));

    R_.resize(N, N);
    D_.resize(N, N);
    for (int j = 0; j < N; ++j) {
        for (int m = 0; m < N; ++m) {
            const int d = (j - m + N) % N;
            const double df2 = 0.5 * (fs[j] - fh[m]);
            R_(j, m) = std::tanh(df2) / t_(d);
            D_(j, m) = df2 / t_(d);
        }
    }
    shift_ = half_shift_matrix(N);
}

Eigen::MatrixXd BFamily::ptilde(int n, int m, int p, int q) const {
    if (p > n + q + 1 || n < 0 || m < 0 || p < 0 || q < 0)
        throw std::invalid_argument("BFamily: requires 0 <= p <= n+q+1");
    const int N = grid_n_;
    std::vector<double> tp(N);
    for (int d = 0; d < N; ++d) tp[d] = std::pow(t_(d), p - 1);

    Eigen::MatrixXd ptil(N, N);
    for (int j = 0; j < N; ++j) {
        for (int mm = 0; mm < N; ++mm) {
            const double r = R_(j, mm);
            double num = 1.0;
            for (int i = 0; i < n; ++i) num *= r;
            for (int i = 0; i < q; ++i) num *= D_(j, mm);
            double den = 1.0;
            const double opr2 = 1.0 + r * r;
            for (int i = 0; i < m; ++i) den *= opr2;
            ptil(j, mm) = num / den * tp[(j - mm + N) % N] / N;
        }
    }
    return ptil;
}

Eigen::MatrixXd BFamily::matrix(int n, int m, int p, int q) const {
    return ptilde(n, m, p, q) * shift_;
}

}  // namespace stokes
