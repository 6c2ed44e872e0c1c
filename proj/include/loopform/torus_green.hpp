#ifndef LOOPFORM_TORUS_GREEN_HPP
#define LOOPFORM_TORUS_GREEN_HPP

#include <vector>

#include "loopform/series.hpp"

namespace loopform {

struct TorusOptions {
    /// Terms are dropped once their Gaussian factor falls below exp(-cutoff).
    double cutoff = 40.0;
    /// Ewald splitting parameter in units of pi / area.
    double alpha_scale = 1.0;
};

/// Periodic Green function of the flat torus C / (Z + tau Z),
///
///     Laplacian h = 2 pi delta - 2 pi / A,   A = Im tau,
///
/// normalized to zero mean and behaving like +ln|u| at the lattice points.
/// Evaluated by Ewald splitting: a real-space sum of -E1(alpha |u + L|^2) / 2
/// over lattice vectors plus a Gaussian-damped reciprocal sum.
class TorusGreen {
public:
    explicit TorusGreen(Complex tau, TorusOptions options = {});

    Complex tau() const noexcept { return tau_; }
    double area() const noexcept { return area_; }
    double alpha() const noexcept { return alpha_; }
    const TorusOptions& options() const noexcept { return options_; }

    /// Representative of u in the centered fundamental parallelogram
    /// {a + b tau : a, b in [-1/2, 1/2]}; the removed lattice vector is
    /// m + n tau.
    Complex reduce(Complex u, int* m = nullptr, int* n = nullptr) const;

    /// Distance from u to the nearest lattice point.
    double distance_to_lattice(Complex u) const;

    /// h(u). Throws std::domain_error at lattice points.
    double green(Complex u) const;

    /// h(u) - ln|u|, continuous at u = 0 (singular at the other lattice
    /// points).
    double renormalized(Complex u) const;

    std::size_t real_space_terms() const noexcept { return real_.size(); }
    std::size_t reciprocal_terms() const noexcept { return recip_.size(); }

private:
    struct Reciprocal {
        double kx, ky, weight;
    };

    double lattice_sum(Complex reduced, bool regular_at_origin) const;

    Complex tau_;
    double area_;
    double alpha_;
    TorusOptions options_;
    double constant_;
    std::vector<Complex> real_;  // real_[0] is the origin
    std::vector<Reciprocal> recip_;
};

}  // namespace loopform

#endif  // LOOPFORM_TORUS_GREEN_HPP
