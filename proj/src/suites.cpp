#include "loopform/suites.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>

#include "loopform/extract.hpp"
#include "loopform/green.hpp"
#include "loopform/pairing.hpp"
#include "loopform/random_cases.hpp"
#include "loopform/reduction.hpp"

namespace loopform {

namespace {

constexpr double kPi = std::numbers::pi;

class Checks {
public:
    explicit Checks(const SuiteConfig& config) : config_(config) {}

    void add(std::string name, double measured, double tolerance) {
        const double tol = config_.tolerance.value_or(tolerance);
        out_.push_back({std::move(name), measured, tol, std::isfinite(measured) && measured <= tol});
    }

    std::vector<CheckResult> take() { return std::move(out_); }

private:
    const SuiteConfig& config_;
    std::vector<CheckResult> out_;
};

double relative(Complex got, Complex want) { return std::abs(got - want) / std::abs(want); }

void moments(const SuiteConfig& cfg, Checks& checks) {
    double worst = 0.0;
    for (int n = -8; n <= 8; ++n)
        for (int m = -8; m <= 8; ++m)
            for (int r = -8; r <= 8; ++r)
                for (int l = -8; l <= 8; ++l) {
                    const double want = (n - 1 == r && m - 1 == l) ? 4.0 * kPi * kPi : 0.0;
                    worst = std::max(worst, std::abs(moment_integral(n, m, r, l, cfg.nodes) - want));
                }
    checks.add("moments: (2pi)^2 delta pattern, indices in [-8,8]^4", worst, 1e-12);
}

void oracle(const SuiteConfig& cfg, Checks& checks) {
    Rng rng(cfg.seed);
    double worst = 0.0;
    for (int c = 0; c < cfg.cases; ++c) {
        const auto oc = random_oracle_case(rng);
        const auto kernel = SurfaceKernel::synthetic(oc.table);
        const auto s = omega_series(oc.table, oc.f1, oc.f2);
        const auto q = omega_quadrature(kernel, oc.f1, oc.f2, {cfg.nodes, 1.0});
        worst = std::max(worst, relative_deviation(q, s));
    }
    checks.add("oracle: max relative deviation series vs quadrature over " + std::to_string(cfg.cases) + " cases",
               worst, 1e-8);
}

void bilinear(const SuiteConfig& cfg, Checks& checks) {
    Rng rng(cfg.seed + 1);
    double worst_series = 0.0;
    double worst_quad = 0.0;
    double window = 0.0;
    for (int c = 0; c < 10; ++c) {
        const auto oc = random_oracle_case(rng);
        const auto g = random_series(rng, oc.f1.rank(), -2, 5);
        const double scale = 2.0 * random_complex(rng).real() + 0.5;
        const auto kernel = SurfaceKernel::synthetic(oc.table);
        const QuadratureOptions qo{cfg.nodes, 1.0};

        auto check = [&](const std::function<PairingResult(const MatrixLaurentSeries&, const MatrixLaurentSeries&)>& w,
                         double& worst) {
            const double base = std::abs(w(oc.f1, oc.f2).value) + std::abs(w(g, oc.f2).value);
            const double add = std::abs(w(oc.f1 + g, oc.f2).value - w(oc.f1, oc.f2).value - w(g, oc.f2).value);
            const double mul = std::abs(w(oc.f1 * scale, oc.f2).value - scale * w(oc.f1, oc.f2).value);
            worst = std::max({worst, add / base, mul / (std::abs(scale) * base)});
        };
        check([&](const auto& a, const auto& b) { return omega_series(oc.table, a, b); }, worst_series);
        check([&](const auto& a, const auto& b) { return omega_quadrature(kernel, a, b, qo); }, worst_quad);

        const auto wide = enlarge_window(oc.table, oc.table.nmin - 3, oc.table.nmax() + 5, oc.table.mmin - 2,
                                         oc.table.mmax() + 4);
        window = std::max(window, std::abs(omega_series(wide, oc.f1, oc.f2).complex_value -
                                           omega_series(oc.table, oc.f1, oc.f2).complex_value));
    }
    checks.add("bilinear: series path real-linearity (relative)", worst_series, 1e-10);
    checks.add("bilinear: quadrature path real-linearity (relative)", worst_quad, 1e-10);
    checks.add("bilinear: enlarged table window changes omega_series by", window, 0.0);
}

void roundtrip(const SuiteConfig& cfg, Checks& checks) {
    Rng rng(cfg.seed + 2);
    double synth = 0.0;
    double radius_spread = 0.0;
    for (int c = 0; c < 5; ++c) {
        const auto table = random_synthetic_table(rng, 8);
        const auto kernel = SurfaceKernel::synthetic(table);
        ExtractOptions eo;
        eo.nmax = eo.mmax = 8;
        eo.samples = 64;
        eo.rho_z = eo.rho_t = 0.5;
        const auto got = extract(kernel, eo);
        for (int p = 0; p < 20; ++p) {
            const Complex z = 0.5 * std::sqrt(std::uniform_real_distribution<>(0, 1)(rng)) *
                              std::polar(1.0, 2 * kPi * std::uniform_real_distribution<>(0, 1)(rng));
            const Complex t = 0.5 * std::sqrt(std::uniform_real_distribution<>(0, 1)(rng)) *
                              std::polar(1.0, 2 * kPi * std::uniform_real_distribution<>(0, 1)(rng));
            synth = std::max(synth, std::abs(synthesize(got, z, t) - synthesize(table, z, t)));
        }
        for (double rz : {0.2, 0.5, 0.8})
            for (double rt : {0.2, 0.5, 0.8}) {
                eo.rho_z = rz;
                eo.rho_t = rt;
                const auto other = extract(kernel, eo);
                for (int n = 0; n <= 8; ++n)
                    for (int m = 0; n + m <= 8; ++m)
                        radius_spread = std::max(radius_spread, std::abs(other.at(n, m) - table.at(n, m)));
            }
    }
    checks.add("roundtrip: synthesize(extract(T)) vs T at 100 bidisc points", synth, 1e-10);
    checks.add("roundtrip: radius independence over {0.2,0.5,0.8}^2 (degree <= 8 support)", radius_spread, 1e-9);
}

void sphere_null(const SuiteConfig& cfg, Checks& checks) {
    const auto sphere = SurfaceKernel::sphere();
    ExtractOptions eo;
    eo.nmax = eo.mmax = cfg.nmax;
    eo.samples = cfg.samples;
    eo.rho_z = eo.rho_t = cfg.radius;
    const auto table = extract(sphere, eo);
    checks.add("sphere-null: max |a_{n,m}|", table.table.cwiseAbs().maxCoeff(), 1e-10);

    Rng rng(cfg.seed + 3);
    double worst = 0.0;
    for (int c = 0; c < 20; ++c) {
        const int rank = std::uniform_int_distribution<int>(1, 3)(rng);
        const auto f1 = random_series(rng, rank, -4, 8);
        const auto f2 = random_series(rng, rank, -4, 8);
        worst = std::max(worst, std::abs(omega_series(table, f1, f2).value));
        worst = std::max(worst, std::abs(omega_quadrature(sphere, f1, f2, {cfg.nodes, 1.0}).value));
    }
    checks.add("sphere-null: max |omega| over 20 pairs, both paths", worst, 1e-8);
}

void torus_const(const SuiteConfig& cfg, Checks& checks) {
    const auto torus = SurfaceKernel::torus(cfg.tau);
    const double area = cfg.tau.imag();
    const double k0 = kPi / (2.0 * area);

    const Complex fd = derivative_kernel(torus, 0.1, Complex(0.0, 0.3), KernelPath::finite_difference);
    checks.add("torus-const: lattice-sum finite-difference K(0.1, 0.3i) vs pi/(2A)", std::abs(fd - k0), 1e-6);
    // The same oracle over the sample points of the extraction circles.
    double circles = 0.0;
    const int probe = 24;
    for (int j = 0; j < probe; ++j)
        for (int k = 0; k < probe; ++k) {
            const Complex z = std::polar(cfg.radius, 2.0 * kPi * j / probe);
            const Complex t = std::polar(cfg.radius, 2.0 * kPi * k / probe);
            circles = std::max(circles, std::abs(derivative_kernel(torus, z, t, KernelPath::finite_difference) - k0));
        }
    checks.add("torus-const: finite-difference K vs pi/(2A) on the extraction circles", circles, 1e-6);

    ExtractOptions eo;
    eo.nmax = eo.mmax = cfg.nmax;
    eo.samples = cfg.samples;
    eo.rho_z = eo.rho_t = cfg.radius;
    const auto table = extract(torus, eo);
    checks.add("torus-const: a_{0,0} relative to pi/(2A)", relative(table.at(0, 0), k0), 1e-6);
    double others = 0.0;
    for (int n = 0; n <= table.nmax(); ++n)
        for (int m = 0; m <= table.mmax(); ++m)
            if (n != 0 || m != 0) others = std::max(others, std::abs(table.at(n, m)));
    checks.add("torus-const: max |a_{n,m}| off (0,0)", others, 1e-8);

    const auto inv = MatrixLaurentSeries::monomial(1, -1);
    const double want = 2.0 * kPi * kPi * kPi / area;
    checks.add("torus-const: omega_series(z^-1, z^-1) vs 2 pi^3 / A",
               relative(omega_series(table, inv, inv).complex_value, want), 1e-5);
    checks.add("torus-const: omega_quadrature(z^-1, z^-1) vs 2 pi^3 / A",
               relative(omega_quadrature(torus, inv, inv, {cfg.nodes, 1.0}).complex_value, want), 1e-5);
}

void laplace(const SuiteConfig& cfg, Checks& checks) {
    const auto torus = verify_laplace(SurfaceKernel::torus(cfg.tau));
    checks.add("laplace: torus five-point residual against -2pi/A", torus.max_residual, 1e-5);
    checks.add("laplace: torus diagonal mixed derivative vs pi/(2A)", torus.max_diagonal_deviation, 1e-6);
    const auto sphere = verify_laplace(SurfaceKernel::sphere());
    checks.add("laplace: sphere residual against curvature term", sphere.max_residual, 1e-5);
    checks.add("laplace: sphere mixed derivative of :h: across diagonal", sphere.max_diagonal_mixed, 1e-8);
    const auto plane = verify_laplace(SurfaceKernel::plane());
    checks.add("laplace: plane residual", plane.max_residual, 1e-5);
    checks.add("laplace: plane mixed derivative of :h:", plane.max_diagonal_mixed, 0.0);
}

void reproducing(const SuiteConfig& cfg, Checks& checks) {
    const auto torus = SurfaceKernel::torus(cfg.tau);
    double lo = 1e300;
    double hi = -1e300;
    for (int n : {64, 128, 256}) {
        const auto rep = verify_reproducing(torus, {n, 16});
        lo = std::min(lo, rep.calibration);
        hi = std::max(hi, rep.calibration);
        if (n == 128) checks.add("reproducing: composition residual on 128x128", rep.residual, 1e-4);
    }
    checks.add("reproducing: calibration spread across 64/128/256", hi - lo, 1e-6);
}

void reduce(const SuiteConfig& cfg, Checks& checks) {
    const auto torus = SurfaceKernel::torus(cfg.tau);
    const auto sphere = SurfaceKernel::sphere();
    const BumpProfile narrow(0.3, 0.6);
    const BumpProfile wide(0.2, 0.8);
    const TargetGrid targets;
    const auto constant = MatrixLaurentSeries::monomial(2, 0, Complex(1.0, 0.5));
    const auto inv = MatrixLaurentSeries::monomial(1, -1);

    checks.add("reduce: torus constant cocycle max |phi|", reduce_cocycle(torus, constant, narrow, targets).max_abs(),
               1e-6);
    checks.add("reduce: sphere z^-1 max |phi|", reduce_cocycle(sphere, inv, narrow, targets).max_abs(), 1e-6);
    checks.add("reduce: torus z^-1 bump independence",
               max_difference(reduce_cocycle(torus, inv, narrow, targets), reduce_cocycle(torus, inv, wide, targets)),
               1e-6);

    // Mixed exponents: only the z^-1 parts survive on the torus, in both the
    // surface integral and the series.
    const auto f1 = MatrixLaurentSeries::make(1, -2, {ComplexMatrix::Constant(1, 1, 0.5),
                                                      ComplexMatrix::Constant(1, 1, 1.0),
                                                      ComplexMatrix::Zero(1, 1),
                                                      ComplexMatrix::Constant(1, 1, 0.3)});
    const auto f2 = MatrixLaurentSeries::make(1, -1, {ComplexMatrix::Constant(1, 1, Complex(0.0, 2.0)),
                                                      ComplexMatrix::Zero(1, 1), ComplexMatrix::Zero(1, 1),
                                                      ComplexMatrix::Constant(1, 1, 1.0)});
    double lo = 1e300;
    double hi = -1e300;
    double calibration = 0.0;
    for (int n : {8, 16, 32}) {
        const auto rep = omega_derham(torus, f1, f2, narrow, {n, {}});
        const double r = rep.ratio ? std::abs(*rep.ratio) : 0.0;
        lo = std::min(lo, r);
        hi = std::max(hi, r);
        calibration = std::max(calibration, std::abs(rep.calibration - 2.0 / kPi));
    }
    checks.add("reduce: de Rham ratio spread across grids 8/16/32", hi - lo, 1e-3);
    checks.add("reduce: de Rham calibration vs 2/pi", calibration, 1e-6);
    const auto a = omega_derham(torus, f1, f2, narrow, {16, {}});
    const auto b = omega_derham(torus, f1, f2, wide, {16, {}});
    checks.add("reduce: de Rham bump independence (relative)",
               std::abs(a.raw - b.raw) / std::abs(a.raw), 1e-4);
}

using SuiteFn = void (*)(const SuiteConfig&, Checks&);

const std::map<std::string_view, SuiteFn>& registry() {
    static const std::map<std::string_view, SuiteFn> r{
        {"moments", moments},       {"oracle", oracle},
        {"bilinear", bilinear},     {"roundtrip", roundtrip},
        {"sphere-null", sphere_null}, {"torus-const", torus_const},
        {"laplace", laplace},       {"reproducing", reproducing},
        {"reduce", reduce},
    };
    return r;
}

}  // namespace

const std::vector<std::string_view>& suite_names() {
    static const std::vector<std::string_view> names{"moments",     "oracle",  "bilinear",
                                                     "roundtrip",   "sphere-null", "torus-const",
                                                     "laplace",     "reproducing", "reduce"};
    return names;
}

std::vector<CheckResult> run_suite(std::string_view name, const SuiteConfig& config) {
    Checks checks(config);
    if (name == "all") {
        for (auto n : suite_names()) registry().at(n)(config, checks);
        return checks.take();
    }
    auto it = registry().find(name);
    if (it == registry().end()) throw std::invalid_argument("unknown verify suite '" + std::string(name) + "'");
    it->second(config, checks);
    return checks.take();
}

}  // namespace loopform
