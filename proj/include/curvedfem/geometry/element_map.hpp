#pragma once

#include <algorithm>
#include <sstream>

#include "curvedfem/errors.hpp"
#include "curvedfem/geometry/affine_map.hpp"
#include "curvedfem/geometry/curved_correction.hpp"
#include "curvedfem/types.hpp"

namespace curvedfem {

/// Element map F = Psi o Phi from the reference triangle (0,0), (1,0), (0,1)
/// onto a curved element.
template <typename Scalar> struct ElementMap {
  AffineMap<Scalar> affine;
  CurvedCorrection<Scalar> correction;

  /// Longest edge of the affine core; sets the length scale of tolerances.
  Scalar core_diameter() const {
    const Mat2<Scalar> &A = affine.A;
    return std::max({A.col(0).norm(), A.col(1).norm(),
                     (A.col(0) - A.col(1)).norm()});
  }
};

using ElementMapd = ElementMap<double>;

/// Smallest barycentric coordinate of a reference point.
template <typename Scalar> Scalar min_barycentric(const Point2<Scalar> &xhat) {
  return std::min({Scalar(1) - xhat.x() - xhat.y(), xhat.x(), xhat.y()});
}

template <typename Scalar>
Point2<Scalar> eval_F(const ElementMap<Scalar> &map, const Point2<Scalar> &xhat) {
  return map.correction(map.affine(xhat));
}

/// DF = DPsi(Phi(xhat)) A. Throws NonpositiveJacobian when det DPsi <= 0; the
/// sign of det DF itself may be negative through a mirrored affine part.
template <typename Scalar>
Mat2<Scalar> jacobian_F(const ElementMap<Scalar> &map,
                        const Point2<Scalar> &xhat) {
  const Mat2<Scalar> dpsi = map.correction.jacobian(map.affine(xhat));
  if (!(dpsi.determinant() > Scalar(0))) {
    std::ostringstream os;
    os << "det DPsi = " << dpsi.determinant() << " at reference point ("
       << xhat.transpose() << ")";
    throw NonpositiveJacobian(os.str());
  }
  return dpsi * map.affine.A;
}

/// D^2F[j, k] = sum_{r,s} D^2Psi[r, s](Phi(xhat)) A_rj A_sk.
template <typename Scalar>
Tensor222<Scalar> hessian_F(const ElementMap<Scalar> &map,
                            const Point2<Scalar> &xhat) {
  return congruence(map.correction.hessian(map.affine(xhat)), map.affine.A);
}

/// G = F^{-1} = Phi^{-1} o Psi^{-1}. Throws NewtonDivergence when Psi cannot be
/// inverted at x or when x lies outside the element.
template <typename Scalar>
Point2<Scalar> eval_G(const ElementMap<Scalar> &map, const Point2<Scalar> &x) {
  const Point2<Scalar> xhat = map.affine.inverse(map.correction.inverse(x));
  if (min_barycentric(xhat) < Scalar(-1e-9)) {
    std::ostringstream os;
    os << "point (" << x.transpose() << ") lies outside the element (xhat = "
       << xhat.transpose() << ")";
    throw NewtonDivergence(os.str());
  }
  return xhat;
}

/// DG(x) = A^{-1} DPsi^{-1}(x).
template <typename Scalar>
Mat2<Scalar> jacobian_G(const ElementMap<Scalar> &map, const Point2<Scalar> &x) {
  return map.affine.A.inverse() * map.correction.inverse_jacobian(x);
}

/// D^2G_m(x) = sum_r (A^{-1})_mr D^2(Psi^{-1})_r(x).
template <typename Scalar>
Tensor222<Scalar> hessian_G(const ElementMap<Scalar> &map,
                            const Point2<Scalar> &x) {
  return left_apply<Scalar>(map.affine.A.inverse(),
                            map.correction.inverse_hessian(x));
}

/// Gradient of vhat = v o F from the physical gradient of v at F(xhat).
template <typename Scalar>
Point2<Scalar> pullback_gradient(const ElementMap<Scalar> &map,
                                 const Point2<Scalar> &xhat,
                                 const Point2<Scalar> &grad_v) {
  return jacobian_F(map, xhat).transpose() * grad_v;
}

/// Hessian of vhat = v o F: DF^T D^2v DF plus the curvature term
/// sum_m dv/dx_m D^2F_m.
template <typename Scalar>
Mat2<Scalar> pullback_hessian(const ElementMap<Scalar> &map,
                              const Point2<Scalar> &xhat,
                              const Point2<Scalar> &grad_v,
                              const Mat2<Scalar> &hess_v) {
  const Mat2<Scalar> J = jacobian_F(map, xhat);
  const Tensor222<Scalar> H = hessian_F(map, xhat);
  return J.transpose() * hess_v * J + grad_v.x() * H[0] + grad_v.y() * H[1];
}

/// Gradient of v = vhat o G at x, given the reference gradient at G(x).
template <typename Scalar>
Point2<Scalar> pushforward_gradient(const ElementMap<Scalar> &map,
                                    const Point2<Scalar> &x,
                                    const Point2<Scalar> &grad_vhat) {
  return jacobian_G(map, x).transpose() * grad_vhat;
}

template <typename Scalar>
Mat2<Scalar> pushforward_hessian(const ElementMap<Scalar> &map,
                                 const Point2<Scalar> &x,
                                 const Point2<Scalar> &grad_vhat,
                                 const Mat2<Scalar> &hess_vhat) {
  const Mat2<Scalar> J = jacobian_G(map, x);
  const Tensor222<Scalar> H = hessian_G(map, x);
  return J.transpose() * hess_vhat * J + grad_vhat.x() * H[0] +
         grad_vhat.y() * H[1];
}

} // namespace curvedfem
