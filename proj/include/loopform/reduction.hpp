#ifndef LOOPFORM_REDUCTION_HPP
#define LOOPFORM_REDUCTION_HPP

#include <optional>
#include <vector>

#include "loopform/green.hpp"
#include "loopform/pairing.hpp"
#include "loopform/series.hpp"

namespace loopform {

/// Radial cutoff rho(|z|): 1 on |z| <= r0, 0 on |z| >= r1, and in between
/// 1 - S((|z| - r0) / (r1 - r0)) with S the polynomial smoothstep whose
/// first `order` derivatives vanish at both ends (S' ~ x^order (1 - x)^order).
class BumpProfile {
public:
    /// Throws std::invalid_argument unless 0 < r0 < r1 < 1 and order >= 2.
    BumpProfile(double r0, double r1, int order = 2);

    double r0() const noexcept { return r0_; }
    double r1() const noexcept { return r1_; }
    int order() const noexcept { return order_; }

    double value(double radius) const;
    /// d rho / d|z|.
    double radial_derivative(double radius) const;
    /// d rho / d z-bar = rho'(|z|) z / (2 |z|).
    Complex dbar(Complex z) const;

private:
    double smoothstep(double x) const;
    double smoothstep_derivative(double x) const;

    double r0_;
    double r1_;
    int order_;
    double norm_;  // (2k+1)! / (k!)^2
};

/// n x n chart grid centered at `center` with the given half width.
/// Point (i, j) sits at row i (imaginary direction), column j; storage is
/// row-major.
struct TargetGrid {
    Complex center{0.0, 0.0};
    double half_width = 0.12;
    int n = 9;

    std::vector<Complex> points() const;
};

/// Tensor rule on the bump annulus: Gauss-Legendre in the radius times the
/// trapezoid in the angle.
struct AnnulusQuadrature {
    int radial = 32;
    int angular = 128;
};

/// The (0,1)-form phi(Q) dQ-bar sampled on a target grid, entrywise matrix
/// valued. The harmonic representative is Re(phi).
struct SampledForm {
    int rank = 1;
    TargetGrid grid;
    std::vector<Complex> points;
    std::vector<ComplexMatrix> values;

    /// Entrywise real part of values[k].
    ComplexMatrix harmonic(std::size_t k) const;
    double max_abs() const;
};

/// max over points and entries of |a - b|. Throws std::invalid_argument when
/// the grids differ.
double max_difference(const SampledForm& a, const SampledForm& b);

/// Harmonic reduction of the cocycle f d-bar(rho):
///
///   phi(Q) = 2i int_{r0 < |P| < r1} f(P) d_{P-bar} rho(P) d_P d_{Q-bar} h(P, Q) dA(P)
///
/// (the 2i converts d-bar P ^ dP to area). The mixed derivative is the
/// kernel's K off the diagonal. Sphere and torus only; targets must avoid
/// the closed annulus [r0, r1]. Throws std::invalid_argument or
/// std::domain_error on violations.
SampledForm reduce_cocycle(const SurfaceKernel& kernel, const MatrixLaurentSeries& f, const BumpProfile& bump,
                           const TargetGrid& targets = {}, const AnnulusQuadrature& quad = {});

struct DerhamOptions {
    /// Points per side of the fundamental-domain grid.
    int grid = 32;
    AnnulusQuadrature quadrature;
};

struct DerhamReport {
    /// Calibrated pairing, method derham.
    PairingResult result;
    /// int tr(phi1^* phi2) dA over the fundamental domain.
    Complex raw{};
    /// series / raw measured on the reference pair (z^-1, z^-1).
    Complex calibration{};
    /// raw / series.complex_value for this input; empty when the series
    /// pairing vanishes.
    std::optional<Complex> ratio;
    PairingResult series;
};

/// Surface-integral cross-check on the torus: reduces f1 and f2, integrates
/// tr(phi1^* phi2) over a grid of the centered fundamental domain (which must
/// lie in the chart disc) and compares with omega_series on a table
/// extracted from the same kernel. Throws std::domain_error for other
/// kernels.
DerhamReport omega_derham(const SurfaceKernel& kernel, const MatrixLaurentSeries& f1, const MatrixLaurentSeries& f2,
                          const BumpProfile& bump, const DerhamOptions& options = {});

}  // namespace loopform

#endif  // LOOPFORM_REDUCTION_HPP
