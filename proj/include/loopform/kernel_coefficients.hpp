#ifndef LOOPFORM_KERNEL_COEFFICIENTS_HPP
#define LOOPFORM_KERNEL_COEFFICIENTS_HPP

#include <vector>

#include "loopform/series.hpp"

namespace loopform {

/// Truncated table of the bianalytic expansion
///
///     K(z, t) = sum_{n >= nmin} sum_{m >= mmin} a_{n,m} z^n conj(t)^m
///
/// Entry table(i, j) holds a_{nmin + i, mmin + j}. rho_z / rho_t and samples
/// record how the table was obtained; samples == 0 marks a table given
/// exactly rather than extracted from samples.
struct KernelCoefficients {
    int nmin = 0;
    int mmin = 0;
    ComplexMatrix table;
    double rho_z = 0.35;
    double rho_t = 0.35;
    int samples = 0;

    int nmax() const noexcept { return nmin + static_cast<int>(table.rows()) - 1; }
    int mmax() const noexcept { return mmin + static_cast<int>(table.cols()) - 1; }

    /// a_{n,m}, zero outside the stored window.
    Complex at(int n, int m) const noexcept;

    bool is_exact() const noexcept { return samples == 0; }
};

/// Validates the invariants (non-empty table, finite entries, radii in (0,1),
/// samples >= 0). Throws std::invalid_argument.
KernelCoefficients make_coefficients(int nmin, int mmin, ComplexMatrix table, double rho_z = 0.35,
                                     double rho_t = 0.35, int samples = 0);

/// Returns a copy whose window is widened to [nmin, nmax] x [mmin, mmax]
/// (which must contain the current window); new entries are zero.
KernelCoefficients enlarge_window(const KernelCoefficients& c, int nmin, int nmax, int mmin, int mmax);

/// sum a_{n,m} z^n conj(t)^m over the stored table.
Complex synthesize(const KernelCoefficients& c, Complex z, Complex t);

struct DecayReport {
    /// Max |a_{n,m}| over each antidiagonal (n - nmin) + (m - mmin) = d.
    std::vector<double> antidiagonal_max;
    /// Geometric rate q from a least-squares fit of log(max) against d over
    /// the antidiagonals above the noise floor; 0 when fewer than two remain.
    double rate = 0.0;
    /// Estimate of sum |a_{n,m}| over indices beyond the table.
    double tail_bound = 0.0;
    /// False when the fitted rate is >= 1 and the tail could not be summed.
    bool converged = true;
};

DecayReport decay_report(const KernelCoefficients& c);

}  // namespace loopform

#endif  // LOOPFORM_KERNEL_COEFFICIENTS_HPP
