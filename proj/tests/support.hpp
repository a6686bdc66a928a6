#pragma once

#include <functional>
#include <random>
#include <vector>

#include "curvedfem/geometry.hpp"

namespace curvedfem::testing {

using VecFn = std::function<Point2d(const Point2d &)>;
using ScalarFn = std::function<double(const Point2d &)>;

// Points with all barycentric coordinates >= margin.
inline std::vector<Point2d> random_reference_points(int n, unsigned seed,
                                                    double margin = 0.02) {
  std::mt19937 gen(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Point2d> out;
  while (static_cast<int>(out.size()) < n) {
    const Point2d p(u(gen), u(gen));
    if (std::min({1.0 - p.x() - p.y(), p.x(), p.y()}) >= margin)
      out.push_back(p);
  }
  return out;
}

inline Mat2d fd_jacobian(const VecFn &f, const Point2d &x, double step) {
  Mat2d J;
  for (int j = 0; j < 2; ++j) {
    Point2d e = Point2d::Zero();
    e[j] = step;
    J.col(j) = (f(x + e) - f(x - e)) / (2 * step);
  }
  return J;
}

inline Point2d fd_gradient(const ScalarFn &f, const Point2d &x, double step) {
  Point2d g;
  for (int j = 0; j < 2; ++j) {
    Point2d e = Point2d::Zero();
    e[j] = step;
    g[j] = (f(x + e) - f(x - e)) / (2 * step);
  }
  return g;
}

// Second-order central differences of a vector map; out[m](i, j) = d2 f_m / dx_i dx_j.
inline Tensor222d fd_hessian(const VecFn &f, const Point2d &x, double step) {
  Tensor222d out = zero_tensor<double>();
  const Point2d f0 = f(x);
  for (int i = 0; i < 2; ++i) {
    Point2d ei = Point2d::Zero();
    ei[i] = step;
    const Point2d d2 = (f(x + ei) - 2 * f0 + f(x - ei)) / (step * step);
    for (int m = 0; m < 2; ++m)
      out[m](i, i) = d2[m];
  }
  const Point2d e0(step, 0), e1(0, step);
  const Point2d mixed = (f(x + e0 + e1) - f(x + e0 - e1) - f(x - e0 + e1) +
                         f(x - e0 - e1)) /
                        (4 * step * step);
  for (int m = 0; m < 2; ++m)
    out[m](0, 1) = out[m](1, 0) = mixed[m];
  return out;
}

inline Mat2d fd_scalar_hessian(const ScalarFn &f, const Point2d &x, double step) {
  const Tensor222d t = fd_hessian(
      [&](const Point2d &p) { return Point2d(f(p), 0.0); }, x, step);
  return t[0];
}

inline double tensor_diff(const Tensor222d &a, const Tensor222d &b) {
  return std::sqrt((a[0] - b[0]).squaredNorm() + (a[1] - b[1]).squaredNorm());
}

inline double tensor_norm(const Tensor222d &a) { return frobenius_norm(a); }

inline double rel_err(double diff, double ref) {
  return ref > 0 ? diff / ref : diff;
}

} // namespace curvedfem::testing
