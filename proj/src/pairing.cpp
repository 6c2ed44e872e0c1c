#include "loopform/pairing.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "loopform/extract.hpp"

namespace loopform {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kFourPiSq = 4.0 * kPi * kPi;

Complex root_of_unity(long long k, int n) {
    const long long r = ((k % n) + n) % n;
    return std::polar(1.0, 2.0 * kPi * static_cast<double>(r) / n);
}

void require_same_rank(const MatrixLaurentSeries& f1, const MatrixLaurentSeries& f2) {
    if (f1.rank() != f2.rank()) {
        throw std::invalid_argument("pairing rank mismatch: " + std::to_string(f1.rank()) + " vs " +
                                    std::to_string(f2.rank()));
    }
}

PairingResult zero_result(PairingMethod method) { return PairingResult{0.0, 0.0, 0.0, method}; }

// Columns are vec(f(rho e^{2 pi i j / N})), j = 0..N-1.
ComplexMatrix sample_series(const MatrixLaurentSeries& f, double rho, int nodes) {
    const int rank = f.rank();
    ComplexMatrix out = ComplexMatrix::Zero(static_cast<Eigen::Index>(rank) * rank, nodes);
    for (int r = f.lead(); r <= f.last(); ++r) {
        const ComplexMatrix& c = f.coeffs()[static_cast<std::size_t>(r - f.lead())];
        const Eigen::Map<const Eigen::VectorXcd> flat(c.data(), c.size());
        const double scale = std::pow(rho, r);
        for (int j = 0; j < nodes; ++j) out.col(j) += flat * (scale * root_of_unity(static_cast<long long>(r) * j, nodes));
    }
    return out;
}

Complex contour_sum(const SurfaceKernel& kernel, const MatrixLaurentSeries& f1, const MatrixLaurentSeries& f2,
                    double rho, int nodes) {
    const ComplexMatrix kgrid = sample_on_circles(kernel, rho, rho, nodes);
    const ComplexMatrix b1 = sample_series(f1, rho, nodes);
    const ComplexMatrix b2 = sample_series(f2, rho, nodes);
    // traces(j, k) = tr(f1(z_j)^* f2(t_k))
    const ComplexMatrix traces = b1.adjoint() * b2;

    const double h = 2.0 * kPi / nodes;
    Eigen::VectorXcd wz(nodes);
    Eigen::VectorXcd wt(nodes);
    for (int j = 0; j < nodes; ++j) {
        wz(j) = Complex(0.0, -rho * h) * root_of_unity(-j, nodes);  // dz-bar
        wt(j) = Complex(0.0, rho * h) * root_of_unity(j, nodes);    // dt
    }
    const ComplexMatrix weighted = traces.cwiseProduct(kgrid);
    return wz.transpose() * weighted * wt;
}

}  // namespace

std::string_view to_string(PairingMethod m) noexcept {
    switch (m) {
        case PairingMethod::series: return "series";
        case PairingMethod::quadrature: return "quadrature";
        case PairingMethod::derham: return "derham";
    }
    return "unknown";
}

Complex moment_integral(int n, int m, int r, int l, int nodes) {
    if (nodes <= std::abs(n) + std::abs(r) + 1 || nodes <= std::abs(m) + std::abs(l) + 1) {
        throw std::invalid_argument("moment_integral: " + std::to_string(nodes) + " nodes alias indices (" +
                                    std::to_string(n) + "," + std::to_string(m) + "," + std::to_string(r) + "," +
                                    std::to_string(l) + ")");
    }
    const double h = 2.0 * kPi / nodes;
    // z^n conj(z)^r dz-bar = e^{i (n - r - 1) theta} (-i) d theta on |z| = 1
    Complex first = 0.0;
    Complex second = 0.0;
    for (int j = 0; j < nodes; ++j) {
        first += root_of_unity(static_cast<long long>(n - r - 1) * j, nodes);
        second += root_of_unity(static_cast<long long>(l - m + 1) * j, nodes);
    }
    first *= Complex(0.0, -h);
    second *= Complex(0.0, h);
    return first * second;
}

PairingResult omega_series(const KernelCoefficients& c, const MatrixLaurentSeries& f1,
                           const MatrixLaurentSeries& f2, double radius) {
    require_same_rank(f1, f2);
    if (!(radius > 0.0)) throw std::invalid_argument("omega_series radius must be positive");
    if (f1.is_zero() || f2.is_zero()) return zero_result(PairingMethod::series);

    // a_{n,m} meets f1_{n-1} and f2_{m-1}; only rows/columns hitting stored
    // coefficients can contribute.
    const int nlo = std::max(c.nmin, f1.lead() + 1);
    const int nhi = std::min(c.nmax(), f1.last() + 1);
    const int mlo = std::max(c.mmin, f2.lead() + 1);
    const int mhi = std::min(c.mmax(), f2.last() + 1);

    Complex sum = 0.0;
    for (int n = nlo; n <= nhi; ++n) {
        const ComplexMatrix& a1 = f1.coeffs()[static_cast<std::size_t>(n - 1 - f1.lead())];
        for (int m = mlo; m <= mhi; ++m) {
            const ComplexMatrix& a2 = f2.coeffs()[static_cast<std::size_t>(m - 1 - f2.lead())];
            Complex term = c.at(n, m) * trace_pair(a1, a2);
            if (radius != 1.0) term *= std::pow(radius, 2 * (n + m));
            sum += term;
        }
    }

    PairingResult res;
    res.method = PairingMethod::series;
    res.complex_value = kFourPiSq * sum;
    res.value = res.complex_value.real();

    const bool covered = f1.lead() + 1 >= c.nmin && f1.last() + 1 <= c.nmax() && f2.lead() + 1 >= c.mmin &&
                         f2.last() + 1 <= c.mmax();
    if (!c.is_exact() && !covered) {
        res.truncation_estimate =
            kFourPiSq * decay_report(c).tail_bound * f1.max_coefficient_norm() * f2.max_coefficient_norm();
    }
    return res;
}

int min_quadrature_nodes(const SurfaceKernel& kernel, const MatrixLaurentSeries& f1, const MatrixLaurentSeries& f2) {
    return 2 * std::max(f1.max_abs_exponent(), f2.max_abs_exponent()) + kernel.effective_degree() + 2;
}

PairingResult omega_quadrature(const SurfaceKernel& kernel, const MatrixLaurentSeries& f1,
                               const MatrixLaurentSeries& f2, const QuadratureOptions& options) {
    require_same_rank(f1, f2);
    if (!(options.radius > 0.0 && options.radius <= 1.0)) {
        throw std::invalid_argument("quadrature radius must lie in (0,1]");
    }
    const int needed = min_quadrature_nodes(kernel, f1, f2);
    if (options.nodes < needed) {
        throw std::invalid_argument("omega_quadrature: " + std::to_string(options.nodes) +
                                    " nodes insufficient, need at least " + std::to_string(needed));
    }
    if (f1.is_zero() || f2.is_zero()) return zero_result(PairingMethod::quadrature);

    const Complex full = contour_sum(kernel, f1, f2, options.radius, options.nodes);
    const int check_nodes = options.nodes / 2 >= needed ? options.nodes / 2 : 2 * options.nodes;
    const Complex check = contour_sum(kernel, f1, f2, options.radius, check_nodes);

    PairingResult res;
    res.method = PairingMethod::quadrature;
    res.complex_value = full;
    res.value = full.real();
    res.truncation_estimate = std::abs(full - check);
    return res;
}

double relative_deviation(const PairingResult& a, const PairingResult& b) {
    const double diff = std::abs(a.complex_value - b.complex_value);
    const double scale = std::abs(b.complex_value);
    return scale > 0.0 ? diff / scale : diff;
}

}  // namespace loopform
