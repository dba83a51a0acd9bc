#ifndef STOKES_PROFILE_HPP
#define STOKES_PROFILE_HPP

#include <complex>
#include <span>
#include <vector>

namespace stokes {

using Complex = std::complex<double>;

/// A 2*pi-periodic interface graph f sampled on the uniform grid
/// xi_j = 2*pi*j/n - pi, together with its (cached) Fourier coefficients.
/// Immutable after construction.
class InterfaceProfile {
public:
    /// Flat profile f = 0.
    explicit InterfaceProfile(int n);

    static InterfaceProfile from_samples(std::vector<double> samples);

    /// Construct from coefficient data: f = mean + sum_k cos_amps[k-1] cos(k xi)
    ///                                          + sum_k sin_amps[k-1] sin(k xi).
    static InterfaceProfile from_modes(int n,
                                       std::span<const double> cos_amps,
                                       std::span<const double> sin_amps = {},
                                       double mean = 0.0);

    int n() const { return n_; }
    const std::vector<double>& samples() const { return samples_; }

    /// Coefficients in FFT storage order: coeffs()[i] multiplies
    /// exp(i * wavenumber(i) * xi) with wavenumber(i) = i for i <= n/2
    /// and i - n otherwise.
    const std::vector<Complex>& coeffs() const { return coeffs_; }

    double mean() const;

    /// Amplitude of cos(k xi) (2 Re c_k for 1 <= k < n/2).
    double cos_amplitude(int k) const;
    /// Amplitude of sin(k xi) (-2 Im c_k for 1 <= k < n/2).
    double sin_amplitude(int k) const;

    /// Trigonometric interpolation at an arbitrary point.
    double value_at(double xi) const;

    double max_abs() const;        ///< ||f||_inf on the grid
    double max_slope() const;      ///< ||f'||_inf on the grid

    static double grid_point(int j, int n);
    std::vector<double> grid() const;

private:
    InterfaceProfile() = default;
    int n_ = 0;
    std::vector<double> samples_;
    std::vector<Complex> coeffs_;
};

/// Signed wavenumber for FFT index i (Nyquist mapped to +n/2).
int wavenumber(int i, int n);

/// Forward transform of grid samples (our grid convention).
std::vector<Complex> spectrum(std::span<const double> samples);
/// Inverse transform back to grid samples (imaginary parts discarded).
std::vector<double> from_spectrum(std::span<const Complex> coeffs);

/// d^order f / d xi^order by Fourier multiplication, order in {1,2,3}.
/// Nyquist is zeroed for odd orders.
std::vector<double> spectral_derivative(const InterfaceProfile& f, int order);
std::vector<double> spectral_derivative(std::span<const double> samples, int order);

/// Samples of f at the half-shifted grid xi_j + pi/n (spectral interpolation).
std::vector<double> half_shift(std::span<const double> samples);

/// Pointwise product with 3/2-rule zero padding (dealiased).
std::vector<double> dealias_product(std::span<const double> a, std::span<const double> b);

/// Pointwise geometric quantities of the interface graph.
struct GeometryBundle {
    std::vector<double> fprime;  ///< f'
    std::vector<double> omega;   ///< (1 + f'^2)^{1/2}
    std::vector<double> nu1, nu2;   ///< unit normal (-f',1)/omega
    std::vector<double> tau1, tau2; ///< unit tangent (1,f')/omega
    std::vector<double> kappa;   ///< curvature f''/omega^3
};

GeometryBundle geometry(const InterfaceProfile& f);

/// f(. - a) + c via Fourier phase factors.
InterfaceProfile translate(const InterfaceProfile& f, double a, double c);

}  // namespace stokes

#endif
