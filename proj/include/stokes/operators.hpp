#ifndef STOKES_OPERATORS_HPP
#define STOKES_OPERATORS_HPP

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "stokes/profile.hpp"

namespace stokes {

using GridFn = std::vector<double>;

/// Periodic Hilbert transform (Fourier symbol -i sign(k); modes 0 and the
/// Nyquist map to 0).
GridFn hilbert(std::span<const double> phi);
Eigen::MatrixXd hilbert_matrix(int grid_n);

/// Matrix of the spectral interpolation that resamples a grid function at the
/// half-shifted points xi_j + pi/n.
Eigen::MatrixXd half_shift_matrix(int grid_n);

/// Index family of one operator
///
///   B_{n,m}^{p,q}(a|b)[c, phi](xi)
///     = (1/2pi) PV int  prod_i tanh(db_i/2)/t  *  prod_i (dc_i/2)/t
///                      ------------------------------------------  t^p
///                            prod_i [1 + (tanh(da_i/2)/t)^2]
///                      * phi(xi - s)/t  ds,
///
/// where t = tan(s/2) and dg = g(xi) - g(xi - s). The slot functions a, b, c
/// are grid samples; their counts give the indices m, n, q.
struct OperatorSpec {
    int n = 0, m = 0, p = 0, q = 0;
    std::vector<GridFn> a, b, c;
    int grid_size = 0;

    /// throws std::invalid_argument unless p <= n+q+1, the slot counts match
    /// n, m, q and all slot functions live on the same grid
    void validate() const;
};

/// Nystrom matrix of B_{n,m}^{p,q}(a|b)[c, .]. Collocation at xi_j, PV
/// integration over the interlaced midpoint grid (s never hits 0 or +-pi),
/// densities resampled by spectral interpolation.
Eigen::MatrixXd assemble_B(const OperatorSpec& spec);

/// Nystrom matrix of C_{n,m}(a)[b, .], the difference-quotient analogue with
/// kernel factors dg/s and prefactor 1/pi. Slot counts give n (from b) and
/// m (from a).
Eigen::MatrixXd assemble_C(const std::vector<GridFn>& a,
                           const std::vector<GridFn>& b, int grid_n);

/// Bounded-kernel difference operator A_{n,m}^{1,q}; satisfies
/// B_{n,m}^{0,q}(a|b)[c,.] = A_{n,m}^{1,q}(a|b)[c,.] + C_{n+q,m}(a)[(b,c),.].
/// Used as an internal consistency check of the two quadratures.
Eigen::MatrixXd assemble_A1(const OperatorSpec& spec);

/// Weakly singular log-kernel operator
///   B_0(f)[phi](xi) = (1/2pi) int ln( (t^2+T^2) / ((1+t^2)(1-T^2)) )
///                               phi(xi-s) ds,   T = tanh(df/2).
/// The ln(4 sin^2(s/2)) part is integrated exactly by its Fourier weights
/// (-1/|k|); the smooth remainder by the trapezoid rule.
Eigen::MatrixXd assemble_B0(const InterfaceProfile& f);

/// Shared kernel tables for the common all-slots-equal-f case; lets callers
/// assemble many index combinations cheaply and defer the interpolation
/// product.
class BFamily {
public:
    explicit BFamily(const InterfaceProfile& f);

    /// Full Nystrom matrix (ptilde * shift).
    Eigen::MatrixXd matrix(int n, int m, int p, int q) const;
    /// Kernel-value factor only; a sum of these right-multiplied by shift()
    /// equals the corresponding sum of matrices.
    Eigen::MatrixXd ptilde(int n, int m, int p, int q) const;
    const Eigen::MatrixXd& shift() const { return shift_; }
    int grid_n() const { return grid_n_; }

private:
    int grid_n_ = 0;
    Eigen::MatrixXd R_;     // tanh(df/2)/t at (row j, col m)
    Eigen::MatrixXd D_;     // (df/2)/t
    Eigen::VectorXd t_;     // tan(s_k/2) by diagonal offset (j - m) mod n
    Eigen::MatrixXd shift_;
};

}  // namespace stokes

#endif
