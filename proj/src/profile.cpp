#include "stokes/profile.hpp"

#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace stokes {

namespace {

constexpr double kPi = std::numbers::pi;

bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

void check_grid_size(int n) {
    if (!is_pow2(n) || n < 16)
        throw std::invalid_argument("grid size must be a power of two >= 16");
}

std::vector<Complex> fft_forward(std::span<const Complex> x) {
    Eigen::FFT<double> fft;
    std::vector<Complex> in(x.begin(), x.end()), out(x.size());
    fft.fwd(out, in);
    return out;
}

std::vector<Complex> fft_inverse_unscaled(std::span<const Complex> x) {
    // conj-fwd-conj gives the unnormalized inverse DFT
    std::vector<Complex> in(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) in[i] = std::conj(x[i]);
    auto out = fft_forward(in);
    for (auto& v : out) v = std::conj(v);
    return out;
}

}  // namespace

int wavenumber(int i, int n) { return i <= n / 2 ? i : i - n; }

std::vector<Complex> spectrum(std::span<const double> samples) {
    const int n = static_cast<int>(samples.size());
    std::vector<Complex> in(n);
    for (int j = 0; j < n; ++j) in[j] = samples[j];
    auto out = fft_forward(in);
    // grid starts at -pi: c_k = (-1)^k DFT_k / n
    for (int k = 0; k < n; ++k) out[k] *= (k % 2 == 0 ? 1.0 : -1.0) / double(n);
    return out;
}

std::vector<double> from_spectrum(std::span<const Complex> coeffs) {
    const int n = static_cast<int>(coeffs.size());
    std::vector<Complex> in(n);
    for (int k = 0; k < n; ++k) in[k] = coeffs[k] * (k % 2 == 0 ? 1.0 : -1.0);
    auto out = fft_inverse_unscaled(in);
    std::vector<double> res(n);
    for (int j = 0; j < n; ++j) res[j] = out[j].real();
    return res;
}

InterfaceProfile::InterfaceProfile(int n) {
    check_grid_size(n);
    n_ = n;
    samples_.assign(n, 0.0);
    coeffs_.assign(n, Complex(0.0, 0.0));
}

InterfaceProfile InterfaceProfile::from_samples(std::vector<double> samples) {
    check_grid_size(static_cast<int>(samples.size()));
    InterfaceProfile p;
    p.n_ = static_cast<int>(samples.size());
    p.coeffs_ = spectrum(samples);
    p.samples_ = std::move(samples);
    return p;
}

InterfaceProfile InterfaceProfile::from_modes(int n,
                                              std::span<const double> cos_amps,
                                              std::span<const double> sin_amps,
                                              double mean) {
    check_grid_size(n);
    if (static_cast<int>(cos_amps.size()) >= n / 2 ||
        static_cast<int>(sin_amps.size()) >= n / 2)
        throw std::invalid_argument("mode list must be shorter than n/2");
    std::vector<double> s(n, mean);
    for (int j = 0; j < n; ++j) {
        const double xi = grid_point(j, n);
        for (std::size_t k = 0; k < cos_amps.size(); ++k)
            s[j] += cos_amps[k] * std::cos(double(k + 1) * xi);
        for (std::size_t k = 0; k < sin_amps.size(); ++k)
            s[j] += sin_amps[k] * std::sin(double(k + 1) * xi);
    }
    return from_samples(std::move(s));
}

double InterfaceProfile::grid_point(int j, int n) { return 2.0 * kPi * j / n - kPi; }

std::vector<double> InterfaceProfile::grid() const {
    std::vector<double> xs(n_);
    for (int j = 0; j < n_; ++j) xs[j] = grid_point(j, n_);
    return xs;
}

double InterfaceProfile::mean() const { return coeffs_[0].real(); }

double InterfaceProfile::cos_amplitude(int k) const {
    if (k < 1 || k >= n_ / 2) throw std::out_of_range("cos_amplitude: bad mode");
    return 2.0 * coeffs_[k].real();
}

double InterfaceProfile::sin_amplitude(int k) const {
    if (k < 1 || k >= n_ / 2) throw std::out_of_range("sin_amplitude: bad mode");
    return -2.0 * coeffs_[k].imag();
}

double InterfaceProfile::value_at(double xi) const {
    // real form; Nyquist as pure cosine
    double v = coeffs_[0].real();
    for (int k = 1; k < n_ / 2; ++k) {
        v += 2.0 * (coeffs_[k].real() * std::cos(k * xi) -
                    coeffs_[k].imag() * std::sin(k * xi));
    }
    v += coeffs_[n_ / 2].real() * std::cos((n_ / 2) * xi);
    return v;
}

double InterfaceProfile::max_abs() const {
    double m = 0.0;
    for (double v : samples_) m = std::max(m, std::abs(v));
    return m;
}

double InterfaceProfile::max_slope() const {
    auto d = spectral_derivative(*this, 1);
    double m = 0.0;
    for (double v : d) m = std::max(m, std::abs(v));
    return m;
}

std::vector<double> spectral_derivative(std::span<const double> samples, int order) {
    if (order < 1 || order > 3)
        throw std::invalid_argument("spectral_derivative: order must be 1, 2 or 3");
    const int n = static_cast<int>(samples.size());
    auto c = spectrum(samples);
    for (int i = 0; i < n; ++i) {
        const Complex ik(0.0, double(wavenumber(i, n)));
        Complex m = 1.0;
        for (int o = 0; o < order; ++o) m *= ik;
        c[i] *= m;
    }
    if (order % 2 == 1) c[n / 2] = 0.0;  // keep real symmetry
    return from_spectrum(c);
}

std::vector<double> spectral_derivative(const InterfaceProfile& f, int order) {
    if (order < 1 || order > 3)
        throw std::invalid_argument("spectral_derivative: order must be 1, 2 or 3");
    const int n = f.n();
    auto c = f.coeffs();
    for (int i = 0; i < n; ++i) {
        const Complex ik(0.0, double(wavenumber(i, n)));
        Complex m = 1.0;
        for (int o = 0; o < order; ++o) m *= ik;
        c[i] *= m;
    }
    if (order % 2 == 1) c[n / 2] = 0.0;
    return from_spectrum(c);
}

std::vector<double> half_shift(std::span<const double> samples) {
    const int n = static_cast<int>(samples.size());
    auto c = spectrum(samples);
    const double h = kPi / n;
    for (int i = 0; i < n; ++i) {
        const int k = wavenumber(i, n);
        c[i] *= Complex(std::cos(k * h), std::sin(k * h));
    }
    c[n / 2] = 0.0;  // half-shifted Nyquist is not representable as a real mode
    return from_spectrum(c);
}

std::vector<double> dealias_product(std::span<const double> a, std::span<const double> b) {
    const int n = static_cast<int>(a.size());
    if (static_cast<int>(b.size()) != n)
        throw std::invalid_argument("dealias_product: size mismatch");
    const int m = (3 * n) / 2;
    auto ca = spectrum(a);
    auto cb = spectrum(b);
    auto pad = [&](const std::vector<Complex>& c) {
        std::vector<Complex> p(m, Complex(0.0));
        for (int i = 0; i < n; ++i) {
            int k = wavenumber(i, n);
            p[(k + m) % m] = c[i];
        }
        return p;
    };
    auto pa = pad(ca), pb = pad(cb);
    // the fine grid shares the left endpoint -pi (m is even), so the same
    // transform convention applies
    auto fa = from_spectrum(pa);
    auto fb = from_spectrum(pb);
    std::vector<double> fine(m);
    for (int j = 0; j < m; ++j) fine[j] = fa[j] * fb[j];
    auto cf = spectrum(fine);
    std::vector<Complex> cres(n, Complex(0.0));
    for (int i = 0; i < n; ++i) {
        int k = wavenumber(i, n);
        if (std::abs(k) < n / 2) cres[i] = cf[(k + m) % m];
    }
    return from_spectrum(cres);
}

GeometryBundle geometry(const InterfaceProfile& f) {
    const int n = f.n();
    GeometryBundle g;
    g.fprime = spectral_derivative(f, 1);
    auto fpp = spectral_derivative(f, 2);
    g.omega.resize(n);
    g.nu1.resize(n);
    g.nu2.resize(n);
    g.tau1.resize(n);
    g.tau2.resize(n);
    g.kappa.resize(n);
    for (int j = 0; j < n; ++j) {
        const double fp = g.fprime[j];
        const double w = std::sqrt(1.0 + fp * fp);
        g.omega[j] = w;
        g.nu1[j] = -fp / w;
        g.nu2[j] = 1.0 / w;
        g.tau1[j] = 1.0 / w;
        g.tau2[j] = fp / w;
        g.kappa[j] = fpp[j] / (w * w * w);
    }
    return g;
}

InterfaceProfile translate(const InterfaceProfile& f, double a, double c) {
    const int n = f.n();
    auto co = f.coeffs();
    for (int i = 0; i < n; ++i) {
        const int k = wavenumber(i, n);
        if (i == n / 2) {
            co[i] *= std::cos(k * a);  // Nyquist kept as a cosine mode
        } else {
            co[i] *= Complex(std::cos(k * a), -std::sin(k * a));
        }
    }
    co[0] += c;
    return InterfaceProfile::from_samples(from_spectrum(co));
}

}  // namespace stokes
