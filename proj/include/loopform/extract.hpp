#ifndef LOOPFORM_EXTRACT_HPP
#define LOOPFORM_EXTRACT_HPP

#include "loopform/green.hpp"
#include "loopform/kernel_coefficients.hpp"

namespace loopform {

struct ExtractOptions {
    int nmin = 0;
    int nmax = 16;
    int mmin = 0;
    int mmax = 16;
    double rho_z = 0.35;
    double rho_t = 0.35;
    int samples = 256;
};

/// K(rho_z e^{i theta_j}, rho_t e^{i phi_k}) with theta_j = phi_j = 2 pi j / N.
/// Synthetic kernels are sampled through a factored matrix product, the
/// others point by point via derivative_kernel. Throws std::runtime_error on
/// a non-finite sample.
ComplexMatrix sample_on_circles(const SurfaceKernel& kernel, double rho_z, double rho_t, int samples);

/// Cauchy-formula extraction of the coefficient window by 2D trapezoidal
/// Fourier analysis on a pair of circles:
///
///   a_{n,m} = 1 / (N^2 rho_z^n rho_t^m) sum_{j,k} K(z_j, t_k) e^{-i n theta_j} e^{+i m phi_k}
///
/// The +i on the t index matches the conj(t)^m dependence. Requires radii in
/// (0,1) and samples > 2 max|index| + 1; throws std::invalid_argument
/// otherwise.
KernelCoefficients extract(const SurfaceKernel& kernel, const ExtractOptions& options = {});

}  // namespace loopform

#endif  // LOOPFORM_EXTRACT_HPP
