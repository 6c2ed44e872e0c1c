#include "loopform/torus_green.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace loopform {

namespace {

double e1(double x) { return -std::expint(-x); }

// -E1(x)/2 - ln(x)/2, the origin term with its logarithm removed. The
// power series avoids the cancellation between E1 and the log for small x.
double regular_origin_term(double x) {
    if (x >= 1.0) return -0.5 * e1(x) - 0.5 * std::log(x);
    double sum = 0.0;
    double term = 1.0;  // (-x)^j / j!
    for (int j = 1; j < 40; ++j) {
        term *= -x / j;
        const double add = term / j;
        sum += add;
        if (std::abs(add) < 1e-18) break;
    }
    return 0.5 * (std::numbers::egamma + sum);
}

}  // namespace

TorusGreen::TorusGreen(Complex tau, TorusOptions options) : tau_(tau), options_(options) {
    if (!(tau.imag() > 0.0)) throw std::invalid_argument("torus modulus needs Im tau > 0");
    if (!(options.cutoff > 0.0) || !(options.alpha_scale > 0.0)) {
        throw std::invalid_argument("torus cutoff and alpha_scale must be positive");
    }
    const double pi = std::numbers::pi;
    const double tx = tau.real();
    const double ty = tau.imag();
    area_ = ty;
    alpha_ = options.alpha_scale * pi / area_;
    constant_ = pi / (2.0 * alpha_ * area_);

    // Real space: every L that can come within sqrt(cutoff / alpha) of a
    // reduced point.
    const double reach = std::sqrt(options.cutoff / alpha_) + 0.5 * (1.0 + std::abs(tau));
    const int nspan = static_cast<int>(std::ceil(reach / ty));
    real_.push_back(0.0);
    for (int n = -nspan; n <= nspan; ++n) {
        const int mspan = static_cast<int>(std::ceil(reach + std::abs(n * tx)));
        for (int m = -mspan; m <= mspan; ++m) {
            if (m == 0 && n == 0) continue;
            const Complex lat = static_cast<double>(m) + static_cast<double>(n) * tau;
            if (std::abs(lat) <= reach) real_.push_back(lat);
        }
    }

    // Reciprocal lattice k = 2 pi (p, (q - p tx) / ty); one of each +-k pair.
    const double kmax = std::sqrt(4.0 * alpha_ * options.cutoff);
    const int pspan = static_cast<int>(std::ceil(kmax / (2.0 * pi)));
    for (int p = 0; p <= pspan; ++p) {
        const double qlo = p * tx - kmax * ty / (2.0 * pi);
        const double qhi = p * tx + kmax * ty / (2.0 * pi);
        for (int q = static_cast<int>(std::ceil(qlo)); q <= static_cast<int>(std::floor(qhi)); ++q) {
            if (p == 0 && q <= 0) continue;
            const double kx = 2.0 * pi * p;
            const double ky = 2.0 * pi * (q - p * tx) / ty;
            const double k2 = kx * kx + ky * ky;
            const double damp = k2 / (4.0 * alpha_);
            if (damp > options.cutoff) continue;
            recip_.push_back({kx, ky, 2.0 * (2.0 * pi / area_) * std::exp(-damp) / k2});
        }
    }
}

Complex TorusGreen::reduce(Complex u, int* m, int* n) const {
    const double b = u.imag() / tau_.imag();
    const double a = u.real() - b * tau_.real();
    const double nb = std::round(b);
    const double ma = std::round(a);
    if (m) *m = static_cast<int>(ma);
    if (n) *n = static_cast<int>(nb);
    return (a - ma) + (b - nb) * tau_;
}

double TorusGreen::distance_to_lattice(Complex u) const {
    const Complex r = reduce(u);
    double best = std::abs(r);
    for (int i = -1; i <= 1; ++i)
        for (int j = -1; j <= 1; ++j) best = std::min(best, std::abs(r - (static_cast<double>(i) + static_cast<double>(j) * tau_)));
    return best;
}

double TorusGreen::lattice_sum(Complex reduced, bool regular_at_origin) const {
    double real_part = 0.0;
    for (std::size_t i = 0; i < real_.size(); ++i) {
        const double x = alpha_ * std::norm(reduced + real_[i]);
        if (i == 0 && regular_at_origin) {
            real_part += regular_origin_term(x);
            continue;
        }
        if (x > options_.cutoff) continue;
        if (x == 0.0) throw std::domain_error("torus Green function is singular at lattice points");
        real_part -= 0.5 * e1(x);
    }
    double recip_part = 0.0;
    for (const auto& k : recip_) recip_part -= k.weight * std::cos(k.kx * reduced.real() + k.ky * reduced.imag());
    return real_part + recip_part + constant_;
}

double TorusGreen::green(Complex u) const { return lattice_sum(reduce(u), false); }

double TorusGreen::renormalized(Complex u) const {
    int m = 0;
    int n = 0;
    const Complex r = reduce(u, &m, &n);
    if (m == 0 && n == 0) return lattice_sum(r, true) + 0.5 * std::log(alpha_);
    return lattice_sum(r, false) - std::log(std::abs(u));
}

}  // namespace loopform
