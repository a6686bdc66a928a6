#pragma once

#include <array>
#include <cmath>
#include <sstream>

#include "curvedfem/errors.hpp"
#include "curvedfem/types.hpp"

namespace curvedfem {

/// Parameters of the two-step affine map A = A_T * Atilde * Ahat with
/// Ahat = diag(h1, h2), Atilde = [[1, s], [0, t]] and A_T a rotation by
/// `theta`, followed by a reflection of the second axis when `mirror` is set.
template <typename Scalar> struct AffineFactorization {
  Scalar h1{1};
  Scalar h2{1};
  Scalar s{0};
  Scalar t{1};
  Scalar theta{0};
  bool mirror{false};
  Point2<Scalar> bT{Point2<Scalar>::Zero()};

  Mat2<Scalar> scaling() const {
    Mat2<Scalar> m;
    m << h1, Scalar(0), Scalar(0), h2;
    return m;
  }

  Mat2<Scalar> shear() const {
    Mat2<Scalar> m;
    m << Scalar(1), s, Scalar(0), t;
    return m;
  }

  Mat2<Scalar> orthogonal() const {
    using std::cos;
    using std::sin;
    const Scalar c = cos(theta), sn = sin(theta);
    Mat2<Scalar> m;
    if (mirror)
      m << c, sn, sn, -c;
    else
      m << c, -sn, sn, c;
    return m;
  }

  Mat2<Scalar> matrix() const { return orthogonal() * shear() * scaling(); }
};

/// y = A x + b.
template <typename Scalar> struct AffineMap {
  Mat2<Scalar> A{Mat2<Scalar>::Identity()};
  Point2<Scalar> b{Point2<Scalar>::Zero()};

  Point2<Scalar> operator()(const Point2<Scalar> &x) const { return A * x + b; }
  Point2<Scalar> inverse(const Point2<Scalar> &y) const {
    return A.inverse() * (y - b);
  }
};

/// Result of ordering a triangle so that p2-p3 is the longest edge and
/// |p1 - p3| <= |p1 - p2|. `order[i]` is the input index of vertex p_{i+1}.
template <typename Scalar> struct OrderedTriangle {
  std::array<int, 3> order{0, 1, 2};
  std::array<Point2<Scalar>, 3> p;
  AffineFactorization<Scalar> factorization;
  AffineMap<Scalar> map;
};

template <typename Scalar>
OrderedTriangle<Scalar> build_affine_factorization(const Point2<Scalar> &q0,
                                                   const Point2<Scalar> &q1,
                                                   const Point2<Scalar> &q2) {
  using std::atan2;
  using std::abs;
  const std::array<Point2<Scalar>, 3> q{q0, q1, q2};
  // edge[i] is the edge opposite input vertex i.
  std::array<Scalar, 3> edge;
  for (int i = 0; i < 3; ++i)
    edge[i] = (q[(i + 1) % 3] - q[(i + 2) % 3]).norm();
  const Scalar longest = std::max({edge[0], edge[1], edge[2]});
  const Scalar area2 = cross<Scalar>(q1 - q0, q2 - q0);
  if (!(abs(area2) / 2 > Scalar(1e-14) * longest * longest)) {
    std::ostringstream os;
    os << "degenerate triangle (" << q0.transpose() << "), (" << q1.transpose()
       << "), (" << q2.transpose() << ")";
    throw DegenerateTriangle(os.str());
  }

  int apex = 0;
  for (int i = 1; i < 3; ++i)
    if (edge[i] > edge[apex])
      apex = i;
  // Keep the cyclic input order unless it violates h2 <= h1.
  int second = (apex + 1) % 3, third = (apex + 2) % 3;
  if ((q[third] - q[apex]).norm() > (q[second] - q[apex]).norm())
    std::swap(second, third);

  OrderedTriangle<Scalar> out;
  out.order = {apex, second, third};
  out.p = {q[apex], q[second], q[third]};

  const Point2<Scalar> e1 = out.p[1] - out.p[0];
  const Point2<Scalar> e2 = out.p[2] - out.p[0];
  auto &f = out.factorization;
  f.h1 = e1.norm();
  f.h2 = e2.norm();
  const Point2<Scalar> r1 = e1 / f.h1;
  const Point2<Scalar> r2 = e2 / f.h2;
  f.theta = atan2(r1.y(), r1.x());
  f.s = r1.dot(r2);
  const Scalar orient = cross<Scalar>(r1, r2);
  f.mirror = orient < Scalar(0);
  f.t = abs(orient);
  f.bT = out.p[0];

  // Assemble A from the edge vectors directly; the factorization reproduces
  // it up to round-off.
  out.map.A.col(0) = e1;
  out.map.A.col(1) = e2;
  out.map.b = out.p[0];
  return out;
}

} // namespace curvedfem
