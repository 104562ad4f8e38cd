#pragma once

#include <vector>

namespace fkdv {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1].
QuadratureRule gauss_legendre(int n);

/// Composite rule on [a, b] with `panels` equal panels of `order` nodes.
QuadratureRule composite_gauss_legendre(double a, double b, int order, int panels);

}  // namespace fkdv
