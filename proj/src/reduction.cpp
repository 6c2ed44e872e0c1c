#include "loopform/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "loopform/extract.hpp"
#include "loopform/parallel.hpp"
#include "loopform/quadrature.hpp"

namespace loopform {

namespace {

constexpr double kPi = std::numbers::pi;

double binomial(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

void require_reducible(const SurfaceKernel& kernel) {
    const auto kind = kernel.kind();
    if (kind != SurfaceKernel::Kind::sphere && kind != SurfaceKernel::Kind::torus) {
        throw std::domain_error("cocycle reduction needs a sphere or torus kernel, got '" +
                                std::string(kernel.name()) + "'");
    }
}

struct AnnulusNode {
    Complex point;
    ComplexMatrix weight;  // 2i w f(P) d_{P-bar} rho(P)
};

std::vector<AnnulusNode> annulus_nodes(const MatrixLaurentSeries& f, const BumpProfile& bump,
                                       const AnnulusQuadrature& quad) {
    const QuadratureRule radial = gauss_legendre(quad.radial, bump.r0(), bump.r1());
    const double dtheta = 2.0 * kPi / quad.angular;
    std::vector<AnnulusNode> nodes;
    nodes.reserve(static_cast<std::size_t>(quad.radial) * quad.angular);
    for (std::size_t a = 0; a < radial.nodes.size(); ++a) {
        const double rho = radial.nodes[a];
        for (int b = 0; b < quad.angular; ++b) {
            const Complex p = std::polar(rho, dtheta * b);
            const Complex scalar = Complex(0.0, 2.0) * (radial.weights[a] * rho * dtheta) * bump.dbar(p);
            nodes.push_back({p, f.evaluate(p) * scalar});
        }
    }
    return nodes;
}

std::vector<ComplexMatrix> reduce_at(const SurfaceKernel& kernel, const MatrixLaurentSeries& f,
                                     const BumpProfile& bump, const std::vector<Complex>& targets,
                                     const AnnulusQuadrature& quad) {
    if (quad.radial < 1) throw std::invalid_argument("annulus quadrature needs radial nodes");
    const int needed = f.max_abs_exponent() + kernel.effective_degree() + 2;
    if (quad.angular < needed) {
        throw std::invalid_argument("annulus quadrature: " + std::to_string(quad.angular) +
                                    " angular nodes insufficient, need " + std::to_string(needed));
    }
    const auto nodes = annulus_nodes(f, bump, quad);
    std::vector<ComplexMatrix> out(targets.size(), ComplexMatrix::Zero(f.rank(), f.rank()));
    parallel_for(targets.size(), [&](std::size_t begin, std::size_t end) {
        for (std::size_t k = begin; k < end; ++k) {
            ComplexMatrix& acc = out[k];
            for (const auto& node : nodes) acc += node.weight * derivative_kernel(kernel, node.point, targets[k]);
        }
    });
    return out;
}

}  // namespace

BumpProfile::BumpProfile(double r0, double r1, int order) : r0_(r0), r1_(r1), order_(order) {
    if (!(r0 > 0.0 && r0 < r1 && r1 < 1.0)) {
        throw std::invalid_argument("bump radii need 0 < r0 < r1 < 1, got (" + std::to_string(r0) + ", " +
                                    std::to_string(r1) + ")");
    }
    if (order < 2) throw std::invalid_argument("bump smoothstep order must be >= 2");
    norm_ = 1.0;
    for (int i = order + 1; i <= 2 * order + 1; ++i) norm_ *= i;
    for (int i = 2; i <= order; ++i) norm_ /= i;
}

double BumpProfile::smoothstep(double x) const {
    const int k = order_;
    double sum = 0.0;
    for (int j = 0; j <= k; ++j) sum += binomial(k + j, j) * binomial(2 * k + 1, k - j) * std::pow(-x, j);
    return std::pow(x, k + 1) * sum;
}

double BumpProfile::smoothstep_derivative(double x) const {
    return norm_ * std::pow(x * (1.0 - x), order_);
}

double BumpProfile::value(double radius) const {
    if (radius <= r0_) return 1.0;
    if (radius >= r1_) return 0.0;
    return 1.0 - smoothstep((radius - r0_) / (r1_ - r0_));
}

double BumpProfile::radial_derivative(double radius) const {
    if (radius <= r0_ || radius >= r1_) return 0.0;
    return -smoothstep_derivative((radius - r0_) / (r1_ - r0_)) / (r1_ - r0_);
}

Complex BumpProfile::dbar(Complex z) const {
    const double r = std::abs(z);
    if (r == 0.0) return 0.0;
    return 0.5 * radial_derivative(r) * z / r;
}

std::vector<Complex> TargetGrid::points() const {
    if (n < 1) throw std::invalid_argument("target grid needs n >= 1");
    std::vector<Complex> pts;
    pts.reserve(static_cast<std::size_t>(n) * n);
    const double step = n == 1 ? 0.0 : 2.0 * half_width / (n - 1);
    const double start = n == 1 ? 0.0 : -half_width;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) pts.push_back(center + Complex(start + step * j, start + step * i));
    return pts;
}

ComplexMatrix SampledForm::harmonic(std::size_t k) const { return values.at(k).real().cast<Complex>(); }

double SampledForm::max_abs() const {
    double best = 0.0;
    for (const auto& v : values) best = std::max(best, v.cwiseAbs().maxCoeff());
    return best;
}

double max_difference(const SampledForm& a, const SampledForm& b) {
    if (a.points != b.points || a.rank != b.rank) throw std::invalid_argument("sampled forms live on different grids");
    double best = 0.0;
    for (std::size_t k = 0; k < a.values.size(); ++k) {
        best = std::max(best, (a.values[k] - b.values[k]).cwiseAbs().maxCoeff());
    }
    return best;
}

SampledForm reduce_cocycle(const SurfaceKernel& kernel, const MatrixLaurentSeries& f, const BumpProfile& bump,
                           const TargetGrid& targets, const AnnulusQuadrature& quad) {
    require_reducible(kernel);
    SampledForm form;
    form.rank = f.rank();
    form.grid = targets;
    form.points = targets.points();
    for (const Complex q : form.points) {
        const double r = std::abs(q);
        if (r >= bump.r0() && r <= bump.r1()) {
            throw std::invalid_argument("target point (" + std::to_string(q.real()) + ", " +
                                        std::to_string(q.imag()) + ") lies in the bump annulus [" +
                                        std::to_string(bump.r0()) + ", " + std::to_string(bump.r1()) + "]");
        }
    }
    form.values = reduce_at(kernel, f, bump, form.points, quad);
    return form;
}

DerhamReport omega_derham(const SurfaceKernel& kernel, const MatrixLaurentSeries& f1, const MatrixLaurentSeries& f2,
                          const BumpProfile& bump, const DerhamOptions& options) {
    if (kernel.kind() != SurfaceKernel::Kind::torus) {
        throw std::domain_error("omega_derham is defined on the torus only, got '" + std::string(kernel.name()) + "'");
    }
    if (f1.rank() != f2.rank()) throw std::invalid_argument("pairing rank mismatch");
    if (options.grid < 2) throw std::invalid_argument("de Rham grid needs at least 2 points per side");

    const TorusGreen& tg = kernel.torus_green();
    auto domain_grid = [&](int n) {
        std::vector<Complex> pts;
        pts.reserve(static_cast<std::size_t>(n) * n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const double a = (j + 0.5) / n - 0.5;
                const double b = (i + 0.5) / n - 0.5;
                pts.push_back(a + b * tg.tau());
            }
        return pts;
    };
    auto surface_integral = [&](const MatrixLaurentSeries& g1, const MatrixLaurentSeries& g2, int n) {
        const auto pts = domain_grid(n);
        const auto phi1 = reduce_at(kernel, g1, bump, pts, options.quadrature);
        const auto phi2 = reduce_at(kernel, g2, bump, pts, options.quadrature);
        Complex sum = 0.0;
        for (std::size_t k = 0; k < pts.size(); ++k) sum += trace_pair(phi1[k], phi2[k]);
        return sum * (tg.area() / (static_cast<double>(n) * n));
    };

    const int top = std::max({f1.is_zero() ? -1 : f1.last(), f2.is_zero() ? -1 : f2.last(), -1}) + 1;
    ExtractOptions eo;
    eo.nmin = eo.mmin = 0;
    eo.nmax = eo.mmax = top;
    eo.samples = 4 * top + 8;
    const KernelCoefficients table = extract(kernel, eo);

    const auto reference = MatrixLaurentSeries::monomial(1, -1);
    const Complex raw_ref = surface_integral(reference, reference, options.grid);
    const PairingResult series_ref = omega_series(table, reference, reference);

    DerhamReport rep;
    rep.calibration = series_ref.complex_value / raw_ref;
    rep.series = omega_series(table, f1, f2);
    rep.raw = surface_integral(f1, f2, options.grid);
    const Complex coarse = surface_integral(f1, f2, std::max(1, options.grid / 2));

    rep.result.method = PairingMethod::derham;
    rep.result.complex_value = rep.calibration * rep.raw;
    rep.result.value = rep.result.complex_value.real();
    rep.result.truncation_estimate = std::abs(rep.calibration) * std::abs(rep.raw - coarse);
    if (std::abs(rep.series.complex_value) > 0.0) rep.ratio = rep.raw / rep.series.complex_value;
    return rep;
}

}  // namespace loopform
