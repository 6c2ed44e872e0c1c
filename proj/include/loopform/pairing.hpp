#ifndef LOOPFORM_PAIRING_HPP
#define LOOPFORM_PAIRING_HPP

#include <string_view>

#include "loopform/green.hpp"
#include "loopform/kernel_coefficients.hpp"
#include "loopform/series.hpp"

namespace loopform {

enum class PairingMethod { series, quadrature, derham };

std::string_view to_string(PairingMethod m) noexcept;

struct PairingResult {
    /// Re(complex_value).
    double value = 0.0;
    Complex complex_value{};
    double truncation_estimate = 0.0;
    PairingMethod method = PairingMethod::series;
};

/// Measure convention for the circle integrals. The first circle carries
/// dz-bar and the second dt, so that
///
///   int int z^n conj(t)^m conj(z)^r t^l dz-bar dt = (2 pi)^2 delta_{n-1,r} delta_{m-1,l}
///
/// on the unit circles (and picks up rho^{2n} rho^{2m} on circles of
/// radius rho).
///
/// moment_integral evaluates that integral by the trapezoid rule. Throws
/// std::invalid_argument unless nodes > |n| + |r| + 1 and > |m| + |l| + 1.
Complex moment_integral(int n, int m, int r, int l, int nodes);

/// Coefficient form of the pairing:
///
///   (2 pi)^2 sum_{n,m} a_{n,m} rho^{2(n+m)} tr([f1_{n-1}]^* f2_{m-1})
///
/// over the table window. radius = 1 is the plain formula; other radii give
/// the value the contour quadrature on circles of that radius converges to.
/// Throws std::invalid_argument on a rank mismatch.
PairingResult omega_series(const KernelCoefficients& c, const MatrixLaurentSeries& f1,
                           const MatrixLaurentSeries& f2, double radius = 1.0);

struct QuadratureOptions {
    int nodes = 512;
    /// Common radius of both contours.
    double radius = 1.0;
};

/// Smallest admissible node count: 2 max|exponent| + effective degree + 2.
int min_quadrature_nodes(const SurfaceKernel& kernel, const MatrixLaurentSeries& f1,
                         const MatrixLaurentSeries& f2);

/// Trapezoidal evaluation of
///
///   int_{|z| = rho} int_{|t| = rho} tr(f1(z)^* f2(t)) K(z, t) dz-bar dt
///
/// with the truncation estimate taken from the same rule at half the nodes
/// (or double, when half would alias). Throws std::invalid_argument on a
/// rank mismatch or too few nodes.
PairingResult omega_quadrature(const SurfaceKernel& kernel, const MatrixLaurentSeries& f1,
                               const MatrixLaurentSeries& f2, const QuadratureOptions& options = {});

/// |a - b| / |b| on the complex values; |a - b| when b vanishes.
double relative_deviation(const PairingResult& a, const PairingResult& b);

}  // namespace loopform

#endif  // LOOPFORM_PAIRING_HPP
