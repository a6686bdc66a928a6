#pragma once

#include <array>
#include <cmath>

#include "curvedfem/geometry/affine_map.hpp"
#include "curvedfem/geometry/curved_correction.hpp"
#include "curvedfem/geometry/element_map.hpp"
#include "curvedfem/types.hpp"

namespace curvedfem {

/// Straight triangle underlying a curved element, with vertices ordered so
/// that p2-p3 is the longest edge and h2 = |p1 - p3| <= h1 = |p1 - p2|.
template <typename Scalar> struct AffineCore {
  std::array<Index, 3> ids{0, 1, 2};
  std::array<Point2<Scalar>, 3> p;
  Scalar h1{0}, h2{0}, hT{0};
  Scalar area{0};
  /// H_T = h1 h2 hT / |T|.
  Scalar HT{0};
  Point2<Scalar> r1{Point2<Scalar>::UnitX()}, r2{Point2<Scalar>::UnitY()};
  AffineFactorization<Scalar> factorization;
  AffineMap<Scalar> map;

  const Point2<Scalar> &direction(int i) const { return i == 1 ? r1 : r2; }
  Scalar edge_length(int i) const { return i == 1 ? h1 : h2; }
};

using AffineCored = AffineCore<double>;

template <typename Scalar>
AffineCore<Scalar> make_affine_core(const std::array<Index, 3> &ids,
                                    const Point2<Scalar> &q0,
                                    const Point2<Scalar> &q1,
                                    const Point2<Scalar> &q2) {
  const auto ordered = build_affine_factorization(q0, q1, q2);
  AffineCore<Scalar> core;
  for (int i = 0; i < 3; ++i) {
    core.ids[i] = ids[ordered.order[i]];
    core.p[i] = ordered.p[i];
  }
  core.factorization = ordered.factorization;
  core.map = ordered.map;
  core.h1 = ordered.factorization.h1;
  core.h2 = ordered.factorization.h2;
  core.hT = (core.p[1] - core.p[2]).norm();
  core.area = std::abs(cross<Scalar>(core.p[1] - core.p[0],
                                     core.p[2] - core.p[0])) /
              Scalar(2);
  core.HT = core.h1 * core.h2 * core.hT / core.area;
  core.r1 = (core.p[1] - core.p[0]) / core.h1;
  core.r2 = (core.p[2] - core.p[0]) / core.h2;
  return core;
}

template <typename Scalar>
ElementMap<Scalar> element_map(const AffineCore<Scalar> &core,
                               const CurvedCorrection<Scalar> &correction) {
  return ElementMap<Scalar>{core.map, correction};
}

/// tau_i at the core point y: DPsi(y) r_i.
template <typename Scalar>
Point2<Scalar> transported_direction_at(const AffineCore<Scalar> &core,
                                        const CurvedCorrection<Scalar> &corr,
                                        int i, const Point2<Scalar> &y) {
  return corr.jacobian(y) * core.direction(i);
}

/// tau_i(x) = DPsi(Psi^{-1}(x)) r_i. Not normalized.
template <typename Scalar>
Point2<Scalar> transported_direction(const AffineCore<Scalar> &core,
                                     const CurvedCorrection<Scalar> &corr,
                                     int i, const Point2<Scalar> &x) {
  return transported_direction_at(core, corr, i, corr.inverse(x));
}

/// b_ij at the core point y: D^2Psi(y)[r_i, r_j].
template <typename Scalar>
Point2<Scalar> curvature_field_at(const AffineCore<Scalar> &core,
                                  const CurvedCorrection<Scalar> &corr, int i,
                                  int j, const Point2<Scalar> &y) {
  return contract(corr.hessian(y), core.direction(i), core.direction(j));
}

template <typename Scalar>
Point2<Scalar> curvature_field(const AffineCore<Scalar> &core,
                               const CurvedCorrection<Scalar> &corr, int i,
                               int j, const Point2<Scalar> &x) {
  return curvature_field_at(core, corr, i, j, corr.inverse(x));
}

/// Physical Jacobian of the transported field, d tau_i / dx, evaluated at the
/// core point y. Row m is (D^2Psi_m r_i)^T DPsi(y)^{-1}.
template <typename Scalar>
Mat2<Scalar> transported_direction_jacobian_at(
    const AffineCore<Scalar> &core, const CurvedCorrection<Scalar> &corr,
    int i, const Point2<Scalar> &y) {
  const Tensor222<Scalar> H = corr.hessian(y);
  Mat2<Scalar> dy;
  dy.row(0) = (H[0] * core.direction(i)).transpose();
  dy.row(1) = (H[1] * core.direction(i)).transpose();
  return dy * corr.jacobian(y).inverse();
}

} // namespace curvedfem
