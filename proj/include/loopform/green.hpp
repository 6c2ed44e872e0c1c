#ifndef LOOPFORM_GREEN_HPP
#define LOOPFORM_GREEN_HPP

#include <functional>
#include <memory>
#include <string_view>
#include <variant>

#include "loopform/kernel_coefficients.hpp"
#include "loopform/series.hpp"
#include "loopform/torus_green.hpp"

namespace loopform {

/// Green function of a model surface written in a chart z on the unit disc
/// around the marked point, together with the renormalized kernel and the
/// mixed derivative K(z, t) = d_z dbar_t :h:(z, t).
///
/// Conventions: h ~ +ln|P - Q| on the diagonal, :h: = h - ln|z - t| in chart
/// distance.
class SurfaceKernel {
public:
    enum class Kind { sphere, plane, torus, synthetic };

    /// Round sphere in the stereographic chart.
    static SurfaceKernel sphere();
    /// Flat plane, h = ln|z - t|; :h: vanishes identically.
    static SurfaceKernel plane();
    /// Flat torus C / (Z + tau Z) with the marked point at the origin.
    static SurfaceKernel torus(Complex tau, TorusOptions options = {});
    /// Kernel given only through its coefficient table.
    static SurfaceKernel synthetic(KernelCoefficients table);

    Kind kind() const noexcept;
    std::string_view name() const noexcept;

    /// Throws std::domain_error unless kind() == torus.
    const TorusGreen& torus_green() const;
    /// Throws std::domain_error unless kind() == synthetic.
    const KernelCoefficients& table() const;

    /// Largest |index| present in K's expansion: the synthetic table's window,
    /// zero for the sphere, plane and torus whose K is constant.
    int effective_degree() const noexcept;

private:
    struct Sphere {};
    struct Plane {};
    struct Torus {
        std::shared_ptr<const TorusGreen> green;
    };
    struct Synthetic {
        KernelCoefficients table;
    };
    using Variant = std::variant<Sphere, Plane, Torus, Synthetic>;

    explicit SurfaceKernel(Variant v) : v_(std::move(v)) {}
    Variant v_;
};

/// h(P, Q). Throws std::domain_error at coincident points and for synthetic
/// kernels.
double green_eval(const SurfaceKernel& kernel, Complex p, Complex q);

/// :h:(z, t) = h(z, t) - ln|z - t|, continuous across z = t.
double renormalized_eval(const SurfaceKernel& kernel, Complex z, Complex t);

enum class KernelPath { analytic, finite_difference };

/// Step used by the finite-difference path.
inline constexpr double kKernelFdStep = 4e-3;

/// K(z, t) for |z|, |t| <= 1. The finite-difference path differentiates
/// renormalized_eval (or, for synthetic kernels, the real potential
/// 2 Re sum a_{n,m} z^{n+1} conj(t)^{m+1} / ((n+1)(m+1))) and needs the
/// stencil to stay inside the chart disc. On the torus the analytic value is
/// the smooth part pi / (2A); the finite-difference path reproduces it only
/// while z - t stays away from the nonzero lattice vectors.
Complex derivative_kernel(const SurfaceKernel& kernel, Complex z, Complex t,
                          KernelPath path = KernelPath::analytic);

/// Richardson-extrapolated central differences of
///   d_z dbar_t F = (F_xa + F_yb + i (F_xb - F_ya)) / 4,   z = x + iy, t = a + ib.
Complex mixed_derivative_fd(const std::function<double(Complex, Complex)>& f, Complex z, Complex t,
                            double step = kKernelFdStep);

struct LaplaceGrid {
    int n = 64;
    /// Chart box [-w, w]^2 for sphere and plane; the torus grid spans its
    /// fundamental domain instead.
    double half_width = 1.0;
    /// Second point of h for sphere and plane.
    Complex source{0.25, 0.1};
    /// Grid points closer than this to the singularity are skipped.
    double exclusion = 0.25;
    double stencil = 2e-3;
    /// Diagonal sweep: diagonal_n^2 chart points within diagonal_radius,
    /// each paired with itself and with a point diagonal_offset away.
    int diagonal_n = 16;
    double diagonal_radius = 0.35;
    double diagonal_offset = 1e-4;
};

struct LaplaceReport {
    /// max |Laplacian_P h - expected| off the diagonal, where expected is
    /// -2 pi / A (torus), -2 / (1 + |P|^2)^2 (sphere) or 0 (plane).
    double max_residual = 0.0;
    /// max |K| from finite differences of :h: across the diagonal.
    double max_diagonal_mixed = 0.0;
    /// max |K_fd - K_analytic| across the diagonal.
    double max_diagonal_deviation = 0.0;
    int points = 0;
    int diagonal_points = 0;
};

/// Throws std::domain_error for synthetic kernels.
LaplaceReport verify_laplace(const SurfaceKernel& kernel, const LaplaceGrid& grid = {});

struct ReproducingGrid {
    int n = 128;
    /// Composition checked at targets^2 grid offsets.
    int targets = 16;
};

struct ReproducingReport {
    /// Measure normalization lambda with lambda * (kernel o kernel) = kernel,
    /// read off the first nonzero Fourier mode of the kernel.
    double calibration = 0.0;
    /// Imaginary part of 1 / kernel-hat at that mode (should vanish).
    double calibration_imag = 0.0;
    /// max |lambda * composition - kernel| over the target offsets.
    double residual = 0.0;
    /// Mean of the smooth part of d_P dbar_Q h over the grid.
    Complex smooth_mean{};
    int n = 0;
    int targets = 0;
};

/// Torus only: checks  int_Q [d_P dbar_Q h(P,Q)] [d_Q dbar_Q' h(Q,Q')] dA(Q)
/// = lambda^{-1} d_P dbar_Q' h(P,Q') by discrete convolution of the
/// finite-difference smooth part on an n x n grid of the fundamental domain.
/// The delta part -(pi/2) delta of d_P dbar_Q ln|P - Q| is added in closed
/// form. Throws std::domain_error for other kernels.
ReproducingReport verify_reproducing(const SurfaceKernel& kernel, const ReproducingGrid& grid = {});

}  // namespace loopform

#endif  // LOOPFORM_GREEN_HPP
