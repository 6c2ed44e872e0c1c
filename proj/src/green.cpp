#include "loopform/green.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "loopform/parallel.hpp"

namespace loopform {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr Complex kI{0.0, 1.0};

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

// Analytic evaluation accepts the closed unit disc; the finite-difference
// stencil must stay strictly inside it.
void require_in_chart(Complex z, Complex t, double margin) {
    const double reach = std::max(std::abs(z), std::abs(t)) + margin;
    const bool inside = margin > 0.0 ? reach < 1.0 : reach <= 1.0 + 1e-12;
    if (!inside) {
        throw std::invalid_argument("kernel point outside the chart disc (|z| = " + std::to_string(std::abs(z)) +
                                    ", |t| = " + std::to_string(std::abs(t)) + ")");
    }
}

double synthetic_potential(const KernelCoefficients& c, Complex z, Complex t) {
    const Complex tb = std::conj(t);
    Complex acc = 0.0;
    for (int n = c.nmin; n <= c.nmax(); ++n) {
        const Complex zn = ipow(z, n + 1) / static_cast<double>(n + 1);
        for (int m = c.mmin; m <= c.mmax(); ++m) {
            acc += c.at(n, m) * zn * ipow(tb, m + 1) / static_cast<double>(m + 1);
        }
    }
    return 2.0 * acc.real();
}

double five_point(const std::function<double(Complex)>& h, Complex p, double d) {
    return (h(p + d) + h(p - d) + h(p + kI * d) + h(p - kI * d) - 4.0 * h(p)) / (d * d);
}

double laplacian(const std::function<double(Complex)>& h, Complex p, double d) {
    return (4.0 * five_point(h, p, 0.5 * d) - five_point(h, p, d)) / 3.0;
}

}  // namespace

SurfaceKernel SurfaceKernel::sphere() { return SurfaceKernel(Sphere{}); }

SurfaceKernel SurfaceKernel::plane() { return SurfaceKernel(Plane{}); }

SurfaceKernel SurfaceKernel::torus(Complex tau, TorusOptions options) {
    return SurfaceKernel(Torus{std::make_shared<const TorusGreen>(tau, options)});
}

SurfaceKernel SurfaceKernel::synthetic(KernelCoefficients table) {
    return SurfaceKernel(Synthetic{std::move(table)});
}

SurfaceKernel::Kind SurfaceKernel::kind() const noexcept {
    return std::visit(overloaded{[](const Sphere&) { return Kind::sphere; },
                                 [](const Plane&) { return Kind::plane; },
                                 [](const Torus&) { return Kind::torus; },
                                 [](const Synthetic&) { return Kind::synthetic; }},
                      v_);
}

std::string_view SurfaceKernel::name() const noexcept {
    switch (kind()) {
        case Kind::sphere: return "sphere";
        case Kind::plane: return "plane";
        case Kind::torus: return "torus";
        case Kind::synthetic: return "synthetic";
    }
    return "unknown";
}

const TorusGreen& SurfaceKernel::torus_green() const {
    if (const auto* t = std::get_if<Torus>(&v_)) return *t->green;
    throw std::domain_error("kernel '" + std::string(name()) + "' is not a torus");
}

const KernelCoefficients& SurfaceKernel::table() const {
    if (const auto* s = std::get_if<Synthetic>(&v_)) return s->table;
    throw std::domain_error("kernel '" + std::string(name()) + "' has no coefficient table");
}

int SurfaceKernel::effective_degree() const noexcept {
    if (const auto* s = std::get_if<Synthetic>(&v_)) {
        const auto& c = s->table;
        return std::max({std::abs(c.nmin), std::abs(c.nmax()), std::abs(c.mmin), std::abs(c.mmax())});
    }
    return 0;
}

double green_eval(const SurfaceKernel& kernel, Complex p, Complex q) {
    switch (kernel.kind()) {
        case SurfaceKernel::Kind::sphere:
        case SurfaceKernel::Kind::plane: {
            if (p == q) throw std::domain_error("Green function is singular at coincident points");
            double h = std::log(std::abs(p - q));
            if (kernel.kind() == SurfaceKernel::Kind::sphere) {
                h -= 0.5 * std::log1p(std::norm(p)) + 0.5 * std::log1p(std::norm(q));
            }
            return h;
        }
        case SurfaceKernel::Kind::torus: return kernel.torus_green().green(p - q);
        case SurfaceKernel::Kind::synthetic: break;
    }
    throw std::domain_error("synthetic kernels define only K, not h");
}

double renormalized_eval(const SurfaceKernel& kernel, Complex z, Complex t) {
    switch (kernel.kind()) {
        case SurfaceKernel::Kind::sphere: return -0.5 * std::log1p(std::norm(z)) - 0.5 * std::log1p(std::norm(t));
        case SurfaceKernel::Kind::plane: return 0.0;
        case SurfaceKernel::Kind::torus: return kernel.torus_green().renormalized(z - t);
        case SurfaceKernel::Kind::synthetic: break;
    }
    throw std::domain_error("synthetic kernels define only K, not :h:");
}

Complex mixed_derivative_fd(const std::function<double(Complex, Complex)>& f, Complex z, Complex t, double step) {
    auto central = [&](Complex ez, Complex et, double h) {
        return (f(z + h * ez, t + h * et) - f(z + h * ez, t - h * et) - f(z - h * ez, t + h * et) +
                f(z - h * ez, t - h * et)) /
               (4.0 * h * h);
    };
    auto partial = [&](Complex ez, Complex et) {
        return (4.0 * central(ez, et, 0.5 * step) - central(ez, et, step)) / 3.0;
    };
    const double xa = partial(1.0, 1.0);
    const double yb = partial(kI, kI);
    const double xb = partial(1.0, kI);
    const double ya = partial(kI, 1.0);
    return 0.25 * Complex(xa + yb, xb - ya);
}

Complex derivative_kernel(const SurfaceKernel& kernel, Complex z, Complex t, KernelPath path) {
    if (path == KernelPath::analytic) {
        require_in_chart(z, t, 0.0);
        switch (kernel.kind()) {
            case SurfaceKernel::Kind::sphere:
            case SurfaceKernel::Kind::plane: return 0.0;
            case SurfaceKernel::Kind::torus: return kPi / (2.0 * kernel.torus_green().area());
            case SurfaceKernel::Kind::synthetic: return synthesize(kernel.table(), z, t);
        }
    }

    require_in_chart(z, t, kKernelFdStep);
    if (kernel.kind() == SurfaceKernel::Kind::synthetic) {
        const auto& table = kernel.table();
        if (table.nmin < 0 || table.mmin < 0) {
            throw std::domain_error("finite-difference path needs a synthetic table without negative indices");
        }
        return mixed_derivative_fd([&](Complex a, Complex b) { return synthetic_potential(table, a, b); }, z, t);
    }
    return mixed_derivative_fd([&](Complex a, Complex b) { return renormalized_eval(kernel, a, b); }, z, t);
}

LaplaceReport verify_laplace(const SurfaceKernel& kernel, const LaplaceGrid& grid) {
    if (kernel.kind() == SurfaceKernel::Kind::synthetic) {
        throw std::domain_error("verify_laplace needs a Green function; synthetic kernels define only K");
    }
    if (grid.n < 2 || grid.diagonal_n < 1) throw std::invalid_argument("laplace grid too small");

    const bool torus = kernel.kind() == SurfaceKernel::Kind::torus;
    std::vector<Complex> points;
    if (torus) {
        const TorusGreen& tg = kernel.torus_green();
        for (int i = 0; i < grid.n; ++i)
            for (int j = 0; j < grid.n; ++j) {
                const Complex u = static_cast<double>(i) / grid.n + (static_cast<double>(j) / grid.n) * tg.tau();
                if (tg.distance_to_lattice(u) >= grid.exclusion) points.push_back(u);
            }
    } else {
        for (int i = 0; i < grid.n; ++i)
            for (int j = 0; j < grid.n; ++j) {
                const double x = -grid.half_width + 2.0 * grid.half_width * i / (grid.n - 1);
                const double y = -grid.half_width + 2.0 * grid.half_width * j / (grid.n - 1);
                const Complex p{x, y};
                if (std::abs(p - grid.source) >= grid.exclusion) points.push_back(p);
            }
    }

    std::vector<double> residual(points.size());
    parallel_for(points.size(), [&](std::size_t begin, std::size_t end) {
        for (std::size_t k = begin; k < end; ++k) {
            const Complex p = points[k];
            double lap;
            double expected;
            if (torus) {
                const TorusGreen& tg = kernel.torus_green();
                lap = laplacian([&](Complex u) { return tg.green(u); }, p, grid.stencil);
                expected = -2.0 * kPi / tg.area();
            } else {
                lap = laplacian([&](Complex u) { return green_eval(kernel, u, grid.source); }, p, grid.stencil);
                const double s = 1.0 + std::norm(p);
                expected = kernel.kind() == SurfaceKernel::Kind::sphere ? -2.0 / (s * s) : 0.0;
            }
            residual[k] = std::abs(lap - expected);
        }
    });

    std::vector<std::pair<Complex, Complex>> pairs;
    const Complex offset = grid.diagonal_offset * std::polar(1.0, 0.7);
    for (int i = 0; i < grid.diagonal_n; ++i)
        for (int j = 0; j < grid.diagonal_n; ++j) {
            const double s = grid.diagonal_n == 1 ? 0.0 : 2.0 / (grid.diagonal_n - 1);
            const Complex z{grid.diagonal_radius * (-1.0 + s * i), grid.diagonal_radius * (-1.0 + s * j)};
            if (std::abs(z) > grid.diagonal_radius) continue;
            pairs.emplace_back(z, z);
            pairs.emplace_back(z, z + offset);
        }
    std::vector<Complex> fd(pairs.size());
    std::vector<Complex> exact(pairs.size());
    parallel_for(pairs.size(), [&](std::size_t begin, std::size_t end) {
        for (std::size_t k = begin; k < end; ++k) {
            fd[k] = derivative_kernel(kernel, pairs[k].first, pairs[k].second, KernelPath::finite_difference);
            exact[k] = derivative_kernel(kernel, pairs[k].first, pairs[k].second, KernelPath::analytic);
        }
    });

    LaplaceReport rep;
    rep.points = static_cast<int>(points.size());
    rep.diagonal_points = static_cast<int>(pairs.size());
    for (double r : residual) rep.max_residual = std::max(rep.max_residual, r);
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        rep.max_diagonal_mixed = std::max(rep.max_diagonal_mixed, std::abs(fd[k]));
        rep.max_diagonal_deviation = std::max(rep.max_diagonal_deviation, std::abs(fd[k] - exact[k]));
    }
    return rep;
}

ReproducingReport verify_reproducing(const SurfaceKernel& kernel, const ReproducingGrid& grid) {
    if (kernel.kind() != SurfaceKernel::Kind::torus) {
        throw std::domain_error("verify_reproducing is defined on the torus only, got '" +
                                std::string(kernel.name()) + "'");
    }
    if (grid.n < 4 || grid.targets < 1 || grid.targets > grid.n) {
        throw std::invalid_argument("reproducing grid needs n >= 4 and 1 <= targets <= n");
    }
    const TorusGreen& tg = kernel.torus_green();
    const int n = grid.n;
    const double cell = tg.area() / (static_cast<double>(n) * n);
    auto offset = [&](int i, int j) {
        return static_cast<double>(i) / n + (static_cast<double>(j) / n) * tg.tau();
    };

    // Smooth part of d_P dbar_Q h(P, Q) at grid offset v = P - Q: the mixed
    // derivative of :h:, which differs from h by ln|P - Q| only.
    std::vector<Complex> smooth(static_cast<std::size_t>(n) * n);
    auto renorm = [&](Complex a, Complex b) { return tg.renormalized(a - b); };
    parallel_for(smooth.size(), [&](std::size_t begin, std::size_t end) {
        for (std::size_t k = begin; k < end; ++k) {
            const int i = static_cast<int>(k) / n;
            const int j = static_cast<int>(k) % n;
            smooth[k] = mixed_derivative_fd(renorm, tg.reduce(offset(i, j)), 0.0);
        }
    });
    auto s_at = [&](int i, int j) {
        return smooth[static_cast<std::size_t>(((i % n) + n) % n) * n + static_cast<std::size_t>(((j % n) + n) % n)];
    };

    // d_P dbar_Q ln|P - Q| = -(pi/2) delta(P - Q) in area measure.
    const double delta_weight = -kPi / 2.0;

    // Fourier side: first reciprocal mode k1 with k1 . (i/n + j/n tau) = 2 pi i / n.
    Complex hat = delta_weight;
    Complex mean = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            hat += cell * s_at(i, j) * std::polar(1.0, -2.0 * kPi * i / n);
            mean += s_at(i, j);
        }
    const Complex inv = 1.0 / hat;

    ReproducingReport rep;
    rep.calibration = inv.real();
    rep.calibration_imag = inv.imag();
    rep.smooth_mean = mean / (static_cast<double>(n) * n);
    rep.n = n;
    rep.targets = grid.targets;

    const int stride = n / grid.targets;
    std::vector<std::pair<int, int>> targets;
    for (int a = 0; a < grid.targets; ++a)
        for (int b = 0; b < grid.targets; ++b)
            if (a != 0 || b != 0) targets.emplace_back(a * stride, b * stride);

    std::vector<double> resid(targets.size());
    parallel_for(targets.size(), [&](std::size_t begin, std::size_t end) {
        for (std::size_t k = begin; k < end; ++k) {
            const auto [wi, wj] = targets[k];
            Complex conv = 0.0;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) conv += s_at(i, j) * s_at(wi - i, wj - j);
            conv *= cell;
            // (w delta + S) o (w delta + S) off the diagonal: S o S + 2 w S
            const Complex composed = conv + 2.0 * delta_weight * s_at(wi, wj);
            resid[k] = std::abs(rep.calibration * composed - s_at(wi, wj));
        }
    });
    for (double r : resid) rep.residual = std::max(rep.residual, r);
    return rep;
}

}  // namespace loopform
