#pragma once

#include <vector>

#include "curvedfem/types.hpp"

namespace curvedfem {

/// Symmetric quadrature rule on the reference triangle (0,0), (1,0), (0,1).
/// Weights sum to the triangle area 1/2.
struct QuadratureRule {
  /// Polynomial degree integrated exactly (may exceed the requested degree).
  int degree{0};
  std::vector<Point2d> points;
  std::vector<double> weights;

  std::size_t size() const { return points.size(); }
};

/// Positive-weight rule exact for all polynomials of total degree <= `degree`.
/// Supported degrees are 1..8; throws UnsupportedDegree otherwise.
const QuadratureRule &quadrature_rule(int degree);

} // namespace curvedfem
