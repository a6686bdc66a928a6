#pragma once

#include <array>
#include <cstdint>

#include <Eigen/Core>
#include <Eigen/LU>

namespace curvedfem {

using Index = std::int32_t;

template <typename Scalar> using Point2 = Eigen::Matrix<Scalar, 2, 1>;
template <typename Scalar> using Mat2 = Eigen::Matrix<Scalar, 2, 2>;

/// Second derivative of a map R^2 -> R^2: `t[i](j, k)` is the derivative of
/// component i in directions j and k.
template <typename Scalar> using Tensor222 = std::array<Mat2<Scalar>, 2>;

using Point2d = Point2<double>;
using Mat2d = Mat2<double>;
using Tensor222d = Tensor222<double>;

template <typename Scalar> Tensor222<Scalar> zero_tensor() {
  return {Mat2<Scalar>::Zero(), Mat2<Scalar>::Zero()};
}

/// Contraction t[u, v] = (u^T t[0] v, u^T t[1] v).
template <typename Scalar>
Point2<Scalar> contract(const Tensor222<Scalar> &t, const Point2<Scalar> &u,
                        const Point2<Scalar> &v) {
  return Point2<Scalar>(u.dot(t[0] * v), u.dot(t[1] * v));
}

/// Congruence of both slots: result[i] = B^T t[i] B.
template <typename Scalar>
Tensor222<Scalar> congruence(const Tensor222<Scalar> &t, const Mat2<Scalar> &B) {
  return {B.transpose() * t[0] * B, B.transpose() * t[1] * B};
}

/// Applies a matrix on the output index: result[m] = sum_r M(m, r) t[r].
template <typename Scalar>
Tensor222<Scalar> left_apply(const Mat2<Scalar> &M, const Tensor222<Scalar> &t) {
  return {M(0, 0) * t[0] + M(0, 1) * t[1], M(1, 0) * t[0] + M(1, 1) * t[1]};
}

template <typename Scalar> Scalar spectral_norm(const Mat2<Scalar> &m) {
  // Largest singular value of a 2x2 matrix in closed form.
  using std::sqrt;
  const Scalar f = m.squaredNorm();
  const Scalar d = m.determinant();
  const Scalar disc = f * f - Scalar(4) * d * d;
  return sqrt((f + sqrt(disc > Scalar(0) ? disc : Scalar(0))) / Scalar(2));
}

template <typename Scalar> Scalar frobenius_norm(const Tensor222<Scalar> &t) {
  using std::sqrt;
  return sqrt(t[0].squaredNorm() + t[1].squaredNorm());
}

template <typename Scalar> Scalar max_abs(const Tensor222<Scalar> &t) {
  return std::max(t[0].cwiseAbs().maxCoeff(), t[1].cwiseAbs().maxCoeff());
}

/// 2D cross product (z component).
template <typename Scalar>
Scalar cross(const Point2<Scalar> &u, const Point2<Scalar> &v) {
  return u.x() * v.y() - u.y() * v.x();
}

} // namespace curvedfem
