#ifndef LOOPFORM_QUADRATURE_HPP
#define LOOPFORM_QUADRATURE_HPP

#include <vector>

namespace loopform {

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// n-point Gauss-Legendre rule mapped to [a, b].
QuadratureRule gauss_legendre(int n, double a, double b);

}  // namespace loopform

#endif  // LOOPFORM_QUADRATURE_HPP
