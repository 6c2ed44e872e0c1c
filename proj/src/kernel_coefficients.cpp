#include "loopform/kernel_coefficients.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace loopform {

Complex KernelCoefficients::at(int n, int m) const noexcept {
    if (n < nmin || n > nmax() || m < mmin || m > mmax()) return 0.0;
    return table(n - nmin, m - mmin);
}

KernelCoefficients make_coefficients(int nmin, int mmin, ComplexMatrix table, double rho_z, double rho_t,
                                     int samples) {
    if (table.rows() < 1 || table.cols() < 1) throw std::invalid_argument("coefficient table is empty");
    if (!table.allFinite()) throw std::invalid_argument("coefficient table has non-finite entries");
    if (!(rho_z > 0.0 && rho_z < 1.0)) throw std::invalid_argument("rho_z must lie in (0,1)");
    if (!(rho_t > 0.0 && rho_t < 1.0)) throw std::invalid_argument("rho_t must lie in (0,1)");
    if (samples < 0) throw std::invalid_argument("samples must be >= 0");
    return KernelCoefficients{nmin, mmin, std::move(table), rho_z, rho_t, samples};
}

KernelCoefficients enlarge_window(const KernelCoefficients& c, int nmin, int nmax, int mmin, int mmax) {
    if (nmin > c.nmin || mmin > c.mmin || nmax < c.nmax() || mmax < c.mmax()) {
        throw std::invalid_argument("enlarged window must contain the current window");
    }
    ComplexMatrix t = ComplexMatrix::Zero(nmax - nmin + 1, mmax - mmin + 1);
    t.block(c.nmin - nmin, c.mmin - mmin, c.table.rows(), c.table.cols()) = c.table;
    KernelCoefficients out = c;
    out.nmin = nmin;
    out.mmin = mmin;
    out.table = std::move(t);
    return out;
}

Complex synthesize(const KernelCoefficients& c, Complex z, Complex t) {
    // Horner in conj(t) for each row, then in z.
    const Complex tb = std::conj(t);
    Complex acc = 0.0;
    for (Eigen::Index i = c.table.rows() - 1; i >= 0; --i) {
        Complex row = 0.0;
        for (Eigen::Index j = c.table.cols() - 1; j >= 0; --j) row = row * tb + c.table(i, j);
        acc = acc * z + row;
    }
    return acc * ipow(z, c.nmin) * ipow(tb, c.mmin);
}

DecayReport decay_report(const KernelCoefficients& c) {
    DecayReport rep;
    const auto rows = c.table.rows();
    const auto cols = c.table.cols();
    rep.antidiagonal_max.assign(static_cast<std::size_t>(rows + cols - 1), 0.0);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) {
            auto& slot = rep.antidiagonal_max[static_cast<std::size_t>(i + j)];
            slot = std::max(slot, std::abs(c.table(i, j)));
        }

    const double global = *std::max_element(rep.antidiagonal_max.begin(), rep.antidiagonal_max.end());
    const double floor = 1e-13 * global;

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int count = 0;
    for (std::size_t d = 0; d < rep.antidiagonal_max.size(); ++d) {
        const double v = rep.antidiagonal_max[d];
        if (global == 0.0 || v <= floor) continue;
        const double x = static_cast<double>(d);
        const double y = std::log(v);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++count;
    }
    if (count >= 2) {
        const double slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
        rep.rate = std::exp(slope);
    }

    // Sum of the geometric continuation past the last antidiagonal D, whose
    // j-th successor holds D + j + 1 entries.
    const double last = rep.antidiagonal_max.back();
    const double big_d = static_cast<double>(rep.antidiagonal_max.size() - 1);
    if (last == 0.0 || rep.rate == 0.0) {
        rep.tail_bound = 0.0;
    } else if (rep.rate < 1.0) {
        const double q = rep.rate;
        // sum_{j>=1} (D + 1 + j) q^j = (D + 1) q / (1 - q) + q / (1 - q)^2
        rep.tail_bound = last * ((big_d + 1.0) * q / (1.0 - q) + q / ((1.0 - q) * (1.0 - q)));
    } else {
        rep.converged = false;
        rep.tail_bound = last * (big_d + 2.0);
    }
    return rep;
}

}  // namespace loopform
