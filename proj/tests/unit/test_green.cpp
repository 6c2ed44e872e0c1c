#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "loopform/green.hpp"
#include "loopform/kernel_coefficients.hpp"
#include "loopform/random_cases.hpp"
#include "loopform/torus_green.hpp"

using namespace loopform;

namespace {

constexpr double kPi = std::numbers::pi;

// Independent torus Green function from the Jacobi theta function:
// ln|theta_1(u | tau)| - pi (Im u)^2 / Im tau, up to an additive constant.
double theta_green(Complex u, Complex tau) {
    const Complex q = std::exp(Complex(0.0, kPi) * tau);
    Complex sum = 0.0;
    for (int n = 0; n < 40; ++n) {
        const double e = (n + 0.5) * (n + 0.5);
        sum += (n % 2 == 0 ? 1.0 : -1.0) * std::pow(q, e) * std::sin((2.0 * n + 1.0) * kPi * u);
    }
    return std::log(std::abs(2.0 * sum)) - kPi * u.imag() * u.imag() / tau.imag();
}

// Plain central mixed difference, no extrapolation.
Complex mixed_fd(const std::function<double(Complex, Complex)>& f, Complex z, Complex t, double h) {
    auto d2 = [&](Complex dz, Complex dt) {
        return (f(z + dz, t + dt) - f(z + dz, t - dt) - f(z - dz, t + dt) + f(z - dz, t - dt)) / (4.0 * h * h);
    };
    const Complex i(0.0, 1.0);
    const double xa = d2(h, h), yb = d2(h * i, h * i), xb = d2(h, h * i), ya = d2(h * i, h);
    return 0.25 * Complex(xa + yb, xb - ya);
}

Complex random_in_disc(Rng& rng, double radius) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    return radius * std::sqrt(u(rng)) * std::polar(1.0, 2.0 * kPi * u(rng));
}

}  // namespace

TEST_CASE("sphere Green function closed form") {
    const auto s = SurfaceKernel::sphere();
    CHECK(green_eval(s, 0.0, 1.0) == doctest::Approx(std::log(1.0 / std::sqrt(2.0))).epsilon(1e-14));
    CHECK(renormalized_eval(s, 0.0, 0.0) == 0.0);
    CHECK_THROWS_AS(green_eval(s, 0.3, 0.3), std::domain_error);
}

TEST_CASE("plane stub renormalizes to zero") {
    const auto p = SurfaceKernel::plane();
    CHECK(renormalized_eval(p, 0.1, Complex(0.3, -0.2)) == 0.0);
    CHECK(std::abs(derivative_kernel(p, 0.1, 0.2, KernelPath::finite_difference)) == 0.0);
}

TEST_CASE("torus Green function agrees with the theta-function oracle up to a constant") {
    Rng rng(21);
    for (const Complex tau : {Complex(0.0, 1.0), Complex(0.3, 1.4)}) {
        const TorusGreen g(tau);
        const Complex u0(0.21, 0.17);
        const double offset = g.green(u0) - theta_green(u0, tau);
        for (int k = 0; k < 30; ++k) {
            const Complex u = random_in_disc(rng, 0.7) + Complex(0.05, 0.0);
            CHECK(std::abs(g.green(u) - theta_green(u, tau) - offset) < 1e-12);
        }
    }
}

TEST_CASE("torus Green function symmetries") {
    const TorusGreen g(Complex(0.0, 1.0));
    Rng rng(4);
    for (int k = 0; k < 20; ++k) {
        const Complex u = random_in_disc(rng, 0.9);
        if (std::abs(u) < 1e-3) continue;
        CHECK(std::abs(g.green(u) - g.green(-u)) < 1e-13);
        CHECK(std::abs(g.green(u) - g.green(u + 1.0)) < 1e-12);
        CHECK(std::abs(g.green(u) - g.green(u + Complex(0.0, 1.0))) < 1e-12);
    }
    CHECK(g.green(0.5) == doctest::Approx(g.green(Complex(0.0, 0.5))).epsilon(1e-14));
    CHECK_THROWS_AS(g.green(Complex(1.0, 1.0)), std::domain_error);
    CHECK_THROWS_AS(TorusGreen(Complex(1.0, 0.0)), std::invalid_argument);
}

TEST_CASE("torus Green function has zero mean") {
    const TorusGreen g(Complex(0.2, 1.1));
    const int n = 240;
    double sum = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) sum += g.green((j + 0.5) / n + ((i + 0.5) / n) * g.tau());
    CHECK(std::abs(sum / (n * n)) < 1e-3);
}

TEST_CASE("torus renormalized value is independent of the Ewald split") {
    const Complex tau(0.0, 1.0);
    const auto coarse = SurfaceKernel::torus(tau);
    const auto fine = SurfaceKernel::torus(tau, {60.0, 0.6});
    CHECK(std::abs(renormalized_eval(coarse, 0.0, 0.0) - renormalized_eval(fine, 0.0, 0.0)) < 1e-8);
    CHECK(std::abs(renormalized_eval(coarse, 0.2, Complex(0.1, -0.3)) -
                   renormalized_eval(fine, 0.2, Complex(0.1, -0.3))) < 1e-8);
}

TEST_CASE("green_eval is symmetric") {
    Rng rng(9);
    for (const auto& k : {SurfaceKernel::sphere(), SurfaceKernel::torus(Complex(0.1, 0.9))}) {
        for (int c = 0; c < 50; ++c) {
            const Complex p = random_in_disc(rng, 0.9);
            const Complex q = random_in_disc(rng, 0.9);
            CHECK(std::abs(green_eval(k, p, q) - green_eval(k, q, p)) < 1e-10);
        }
    }
}

TEST_CASE("renormalized value is continuous across the diagonal") {
    for (const auto& k : {SurfaceKernel::sphere(), SurfaceKernel::torus(Complex(0.0, 1.0))}) {
        const Complex z(0.2, 0.1);
        const double at = renormalized_eval(k, z, z);
        for (double eps : {1e-2, 1e-3, 1e-4, 1e-5, 1e-6}) {
            const double diff = std::abs(renormalized_eval(k, z, z + Complex(eps, 0.5 * eps)) - at);
            CHECK(diff < 2.0 * eps);
        }
    }
}

TEST_CASE("torus kernel sign and value from an independent finite difference") {
    // K = d_z dbar_t of the theta-based :h:, differentiated without the
    // library's extrapolation. Positive: h ~ +ln|P - Q|.
    for (const Complex tau : {Complex(0.0, 1.0), Complex(0.3, 1.4)}) {
        auto renorm = [&](Complex z, Complex t) {
            return theta_green(z - t, tau) - std::log(std::abs(z - t));
        };
        const Complex k = mixed_fd(renorm, 0.1, Complex(0.0, 0.3), 1e-3);
        const double want = kPi / (2.0 * tau.imag());
        CHECK(std::abs(k - want) < 1e-5);
        const auto torus = SurfaceKernel::torus(tau);
        CHECK(std::abs(derivative_kernel(torus, 0.1, Complex(0.0, 0.3)) - want) < 1e-14);
        CHECK(std::abs(derivative_kernel(torus, 0.1, Complex(0.0, 0.3), KernelPath::finite_difference) - want) <
              1e-6);
    }
}

TEST_CASE("sphere kernel vanishes under finite differences") {
    const auto s = SurfaceKernel::sphere();
    Rng rng(2);
    for (int c = 0; c < 20; ++c) {
        const Complex z = random_in_disc(rng, 0.8);
        const Complex t = random_in_disc(rng, 0.8);
        CHECK(std::abs(derivative_kernel(s, z, t, KernelPath::finite_difference)) < 1e-10);
    }
}

TEST_CASE("synthetic kernel evaluation") {
    ComplexMatrix a = ComplexMatrix::Zero(2, 3);
    a(1, 2) = 1.0;
    const auto k = SurfaceKernel::synthetic(make_coefficients(0, 0, a));
    CHECK(std::abs(derivative_kernel(k, 0.1, 0.2) - 0.004) < 1e-16);
    CHECK(std::abs(derivative_kernel(k, 0.1, 0.2, KernelPath::finite_difference) - 0.004) < 1e-9);
    CHECK(k.effective_degree() == 2);
    CHECK_THROWS_AS(green_eval(k, 0.1, 0.2), std::domain_error);
}

TEST_CASE("analytic and finite-difference kernels agree at random interior points") {
    Rng rng(13);
    const auto synth = SurfaceKernel::synthetic(random_synthetic_table(rng, 6));
    for (const auto& k : {SurfaceKernel::sphere(), SurfaceKernel::torus(Complex(0.0, 1.0)), synth}) {
        // On the torus z - t must stay clear of the nonzero lattice vectors,
        // where :h: picks up further log singularities.
        const double radius = k.kind() == SurfaceKernel::Kind::torus ? 0.45 : 0.85;
        double worst = 0.0;
        for (int c = 0; c < 100; ++c) {
            const Complex z = random_in_disc(rng, radius);
            const Complex t = random_in_disc(rng, radius);
            worst = std::max(worst, std::abs(derivative_kernel(k, z, t) -
                                             derivative_kernel(k, z, t, KernelPath::finite_difference)));
        }
        INFO(k.name());
        CHECK(worst < 1e-6);
    }
}

TEST_CASE("kernel is conjugate symmetric") {
    Rng rng(17);
    for (const auto& k : {SurfaceKernel::sphere(), SurfaceKernel::torus(Complex(0.2, 1.1))}) {
        for (int c = 0; c < 20; ++c) {
            const Complex z = random_in_disc(rng, 0.45);
            const Complex t = random_in_disc(rng, 0.45);
            const Complex kzt = derivative_kernel(k, z, t, KernelPath::finite_difference);
            const Complex ktz = derivative_kernel(k, t, z, KernelPath::finite_difference);
            CHECK(std::abs(ktz - std::conj(kzt)) < 1e-8);
        }
    }
}

TEST_CASE("derivative_kernel domain") {
    const auto s = SurfaceKernel::sphere();
    CHECK_NOTHROW(derivative_kernel(s, 1.0, Complex(0.0, 1.0)));
    CHECK_THROWS_AS(derivative_kernel(s, 1.2, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(derivative_kernel(s, 0.999, 0.0, KernelPath::finite_difference), std::invalid_argument);
}

TEST_CASE("Laplacian residuals") {
    const auto torus = verify_laplace(SurfaceKernel::torus(Complex(0.0, 1.0)));
    CHECK(torus.max_residual < 1e-5);
    CHECK(torus.points > 3000);
    const auto sphere = verify_laplace(SurfaceKernel::sphere());
    CHECK(sphere.max_diagonal_mixed < 1e-8);
    CHECK(sphere.max_residual < 1e-5);
    const auto plane = verify_laplace(SurfaceKernel::plane());
    CHECK(plane.max_diagonal_mixed == 0.0);
    CHECK_THROWS_AS(verify_laplace(SurfaceKernel::synthetic(make_coefficients(0, 0, ComplexMatrix::Ones(1, 1)))),
                    std::domain_error);
}

TEST_CASE("reproducing property on the torus") {
    const auto torus = SurfaceKernel::torus(Complex(0.0, 1.0));
    const auto r64 = verify_reproducing(torus, {64, 16});
    const auto r128 = verify_reproducing(torus, {128, 16});
    CHECK(r128.residual < 1e-4);
    CHECK(std::abs(r64.calibration - r128.calibration) < 1e-6);
    CHECK(std::abs(r128.calibration_imag) < 1e-8);
    CHECK_THROWS_AS(verify_reproducing(SurfaceKernel::sphere()), std::domain_error);
}
