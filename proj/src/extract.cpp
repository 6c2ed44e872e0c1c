#include "loopform/extract.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "loopform/parallel.hpp"

namespace loopform {

namespace {

// e^{i 2 pi (k mod N) / N}, with the index reduced before the angle is formed.
Complex root_of_unity(long long k, int n) {
    const long long r = ((k % n) + n) % n;
    return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(r) / n);
}

}  // namespace

ComplexMatrix sample_on_circles(const SurfaceKernel& kernel, double rho_z, double rho_t, int samples) {
    if (samples < 1) throw std::invalid_argument("samples must be positive");
    ComplexMatrix grid(samples, samples);

    if (kernel.kind() == SurfaceKernel::Kind::synthetic) {
        const auto& c = kernel.table();
        ComplexMatrix zpow(samples, c.table.rows());
        ComplexMatrix tpow(samples, c.table.cols());
        for (int j = 0; j < samples; ++j) {
            for (Eigen::Index i = 0; i < c.table.rows(); ++i) {
                const int n = c.nmin + static_cast<int>(i);
                zpow(j, i) = std::pow(rho_z, n) * root_of_unity(static_cast<long long>(n) * j, samples);
            }
            for (Eigen::Index i = 0; i < c.table.cols(); ++i) {
                const int m = c.mmin + static_cast<int>(i);
                tpow(j, i) = std::pow(rho_t, m) * root_of_unity(-static_cast<long long>(m) * j, samples);
            }
        }
        grid.noalias() = zpow * c.table * tpow.transpose();
    } else {
        parallel_for(static_cast<std::size_t>(samples), [&](std::size_t begin, std::size_t end) {
            for (std::size_t j = begin; j < end; ++j) {
                const Complex z = rho_z * root_of_unity(static_cast<long long>(j), samples);
                for (int k = 0; k < samples; ++k) {
                    const Complex t = rho_t * root_of_unity(k, samples);
                    grid(static_cast<Eigen::Index>(j), k) = derivative_kernel(kernel, z, t);
                }
            }
        });
    }
    if (!grid.allFinite()) throw std::runtime_error("non-finite kernel sample on the extraction circles");
    return grid;
}

KernelCoefficients extract(const SurfaceKernel& kernel, const ExtractOptions& o) {
    if (!(o.rho_z > 0.0 && o.rho_z < 1.0) || !(o.rho_t > 0.0 && o.rho_t < 1.0)) {
        throw std::invalid_argument("extraction radii must lie in (0,1)");
    }
    if (o.nmax < o.nmin || o.mmax < o.mmin) throw std::invalid_argument("empty extraction window");
    const int reach = std::max({std::abs(o.nmin), std::abs(o.nmax), std::abs(o.mmin), std::abs(o.mmax)});
    if (o.samples <= 2 * reach + 1) {
        throw std::invalid_argument("samples = " + std::to_string(o.samples) + " too small for degree " +
                                    std::to_string(reach) + " (need > " + std::to_string(2 * reach + 1) + ")");
    }

    const int ns = o.samples;
    const ComplexMatrix grid = sample_on_circles(kernel, o.rho_z, o.rho_t, ns);
    const int rows = o.nmax - o.nmin + 1;
    const int cols = o.mmax - o.mmin + 1;

    ComplexMatrix fz(rows, ns);
    ComplexMatrix ft(ns, cols);
    for (int i = 0; i < rows; ++i) {
        const int n = o.nmin + i;
        for (int j = 0; j < ns; ++j) fz(i, j) = root_of_unity(-static_cast<long long>(n) * j, ns);
    }
    for (int i = 0; i < cols; ++i) {
        const int m = o.mmin + i;
        for (int k = 0; k < ns; ++k) ft(k, i) = root_of_unity(static_cast<long long>(m) * k, ns);
    }
    ComplexMatrix table = fz * grid * ft / (static_cast<double>(ns) * ns);
    for (int i = 0; i < rows; ++i) table.row(i) /= std::pow(o.rho_z, o.nmin + i);
    for (int i = 0; i < cols; ++i) table.col(i) /= std::pow(o.rho_t, o.mmin + i);

    return make_coefficients(o.nmin, o.mmin, std::move(table), o.rho_z, o.rho_t, o.samples);
}

}  // namespace loopform
