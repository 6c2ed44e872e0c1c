#include <doctest.h>

#include <cmath>
#include <numbers>

#include "loopform/quadrature.hpp"
#include "loopform/reduction.hpp"

using namespace loopform;

namespace {

constexpr double kPi = std::numbers::pi;

// Midpoint rule on a Cartesian grid over the square [-1, 1]^2 for
// int f(z) d_{z-bar} rho dA, an oracle independent of the polar rule.
Complex cartesian_integral(const BumpProfile& bump, int power, int n) {
    const double h = 2.0 / n;
    Complex sum = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const Complex z(-1.0 + (j + 0.5) * h, -1.0 + (i + 0.5) * h);
            sum += std::pow(z, power) * bump.dbar(z);
        }
    return sum * h * h;
}

}  // namespace

TEST_CASE("Gauss-Legendre rule") {
    const auto rule = gauss_legendre(8, 0.0, 2.0);
    double s = 0.0;
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) s += rule.weights[k] * std::pow(rule.nodes[k], 15);
    CHECK(s == doctest::Approx(std::pow(2.0, 16) / 16).epsilon(1e-13));
    CHECK_THROWS_AS(gauss_legendre(0, 0.0, 1.0), std::invalid_argument);
}

TEST_CASE("bump profile") {
    const BumpProfile b(0.3, 0.6);
    CHECK(b.value(0.1) == 1.0);
    CHECK(b.value(0.7) == 0.0);
    CHECK(b.value(0.45) == doctest::Approx(0.5));
    // derivative is consistent with the value
    const double h = 1e-6;
    for (double r : {0.35, 0.42, 0.51, 0.58})
        CHECK(b.radial_derivative(r) == doctest::Approx((b.value(r + h) - b.value(r - h)) / (2 * h)).epsilon(1e-7));
    CHECK_THROWS_AS(BumpProfile(0.6, 0.3), std::invalid_argument);
    CHECK_THROWS_AS(BumpProfile(0.3, 0.6, 1), std::invalid_argument);
}

TEST_CASE("z^-1 against the bump derivative integrates to -pi") {
    for (const auto& bump : {BumpProfile(0.3, 0.6), BumpProfile(0.2, 0.8, 3)}) {
        CHECK(std::abs(cartesian_integral(bump, -1, 1200) + kPi) < 1e-4);
        CHECK(std::abs(cartesian_integral(bump, 0, 1200)) < 1e-4);
    }
}

TEST_CASE("torus z^-1 reduces to the constant -i pi^2 / A") {
    // phi = 2i K int z^-1 dbar(rho) dA = 2i (pi / 2A)(-pi).
    for (const Complex tau : {Complex(0.0, 1.0), Complex(0.3, 1.4)}) {
        const auto torus = SurfaceKernel::torus(tau);
        const auto form = reduce_cocycle(torus, MatrixLaurentSeries::monomial(1, -1), BumpProfile(0.3, 0.6));
        const Complex want(0.0, -kPi * kPi / tau.imag());
        for (const auto& v : form.values) CHECK(std::abs(v(0, 0) - want) < 1e-10);
        CHECK(form.points.size() == 81);
        CHECK(form.harmonic(0).norm() < 1e-10);
    }
}

TEST_CASE("constant and positive-power cocycles reduce to zero") {
    const auto torus = SurfaceKernel::torus(Complex(0.0, 1.0));
    const BumpProfile bump(0.3, 0.6);
    ComplexMatrix c(2, 2);
    c << 1.0, Complex(0, 2), -0.5, 3.0;
    CHECK(reduce_cocycle(torus, MatrixLaurentSeries::make(2, 0, {c}), bump).max_abs() < 1e-6);
    CHECK(reduce_cocycle(torus, MatrixLaurentSeries::monomial(1, 3), bump).max_abs() < 1e-6);
}

TEST_CASE("sphere cocycles reduce to zero") {
    const auto form = reduce_cocycle(SurfaceKernel::sphere(), MatrixLaurentSeries::monomial(1, -1), BumpProfile(0.3, 0.6));
    CHECK(form.max_abs() <= 1e-6);
}

TEST_CASE("reduction is independent of the bump") {
    const auto torus = SurfaceKernel::torus(Complex(0.0, 1.0));
    const MatrixLaurentSeries f = MatrixLaurentSeries::monomial(1, -1) + MatrixLaurentSeries::monomial(1, -2, 0.4);
    const auto a = reduce_cocycle(torus, f, BumpProfile(0.3, 0.6));
    const auto b = reduce_cocycle(torus, f, BumpProfile(0.2, 0.8));
    const auto c = reduce_cocycle(torus, f, BumpProfile(0.25, 0.7, 4));
    CHECK(max_difference(a, b) <= 1e-6);
    CHECK(max_difference(a, c) <= 1e-6);
}

TEST_CASE("reduction preconditions") {
    const auto inv = MatrixLaurentSeries::monomial(1, -1);
    const BumpProfile bump(0.3, 0.6);
    CHECK_THROWS_AS(reduce_cocycle(SurfaceKernel::plane(), inv, bump), std::domain_error);
    TargetGrid bad;
    bad.center = 0.4;
    CHECK_THROWS_AS(reduce_cocycle(SurfaceKernel::sphere(), inv, bump, bad), std::invalid_argument);
    AnnulusQuadrature coarse{8, 4};
    CHECK_THROWS_AS(reduce_cocycle(SurfaceKernel::sphere(), MatrixLaurentSeries::monomial(1, -5), bump, {}, coarse),
                    std::invalid_argument);
}

TEST_CASE("de Rham cross-check on the torus") {
    const auto torus = SurfaceKernel::torus(Complex(0.0, 1.0));
    const auto inv = MatrixLaurentSeries::monomial(1, -1);
    const BumpProfile bump(0.3, 0.6);
    const auto rep = omega_derham(torus, inv, inv, bump, {16, {}});
    REQUIRE(rep.ratio.has_value());
    CHECK(std::abs(*rep.ratio - kPi / 2) < 1e-9);
    CHECK(std::abs(rep.result.value - 2 * kPi * kPi * kPi) / (2 * kPi * kPi * kPi) < 1e-5);
    CHECK(rep.result.method == PairingMethod::derham);

    const auto constant = MatrixLaurentSeries::monomial(1, 0);
    CHECK(std::abs(omega_derham(torus, constant, inv, bump, {16, {}}).result.value) < 1e-6);
    CHECK_THROWS_AS(omega_derham(SurfaceKernel::sphere(), inv, inv, bump), std::domain_error);
}
