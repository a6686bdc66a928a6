#include "curvedfem/fem.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "curvedfem/errors.hpp"
#include "curvedfem/parallel.hpp"

namespace curvedfem {

LagrangeNodes lagrange_nodes(int k) {
  if (k < 1 || k > 10)
    throw UnsupportedDegree("Lagrange degree must be in 1..10, got " +
                            std::to_string(k));
  LagrangeNodes out;
  out.degree = k;
  for (int a3 = 0; a3 <= k; ++a3)
    for (int a2 = 0; a2 + a3 <= k; ++a2)
      out.nodes.emplace_back(double(a2) / k, double(a3) / k);
  return out;
}

FeSpace::FeSpace(const Triangulation &tri, int degree,
                 DirichletBoundary boundary)
    : tri_(&tri), boundary_(tri.vertices.size(), false) {
  if (degree != 1)
    throw UnsupportedDegree("only P1 spaces can be assembled, got degree " +
                            std::to_string(degree));
  if (boundary == DirichletBoundary::UnitCircle) {
    for (std::size_t i = 0; i < tri.vertices.size(); ++i)
      boundary_[i] = std::abs(tri.vertices[i].norm() - 1.0) <= 1e-12;
  } else {
    for (Index e : tri.boundary_edges) {
      boundary_[tri.edges[e].v0] = true;
      boundary_[tri.edges[e].v1] = true;
    }
  }
}

int FeSpace::boundary_count() const {
  return static_cast<int>(std::count(boundary_.begin(), boundary_.end(), true));
}

Eigen::VectorXd interpolate_p1(const FeSpace &space, const ScalarField &v) {
  Eigen::VectorXd c(space.size());
  for (int i = 0; i < space.size(); ++i)
    c[i] = v(space.node(i));
  return c;
}

Eigen::Matrix3d local_stiffness(const ElementMapd &map,
                                const QuadratureRule &quad) {
  const Eigen::Matrix<double, 2, 3> ref_grad = ReferenceBasisP1::gradients();
  Eigen::Matrix3d K = Eigen::Matrix3d::Zero();
  for (std::size_t q = 0; q < quad.size(); ++q) {
    const Mat2d J = jacobian_F(map, quad.points[q]);
    const double w = std::abs(J.determinant()) * quad.weights[q];
    const Eigen::Matrix<double, 2, 3> grad = J.transpose().inverse() * ref_grad;
    K.noalias() += w * grad.transpose() * grad;
  }
  return K;
}

Eigen::Vector3d local_load(const ElementMapd &map, const ScalarField &f,
                           const QuadratureRule &quad) {
  Eigen::Vector3d b = Eigen::Vector3d::Zero();
  for (std::size_t q = 0; q < quad.size(); ++q) {
    const Point2d &xhat = quad.points[q];
    const Mat2d J = jacobian_F(map, xhat);
    const double w = std::abs(J.determinant()) * quad.weights[q];
    b += w * f(eval_F(map, xhat)) * ReferenceBasisP1::values(xhat);
  }
  return b;
}

FeSystem assemble(const FeSpace &space, const ScalarField &f,
                  const QuadratureRule &quad) {
  const Triangulation &tri = space.triangulation();
  const std::size_t n_elem = tri.elements.size();
  const int chunks = worker_count();
  std::vector<Eigen::Matrix3d> stiffness(n_elem);
  std::vector<Eigen::Vector3d> load(n_elem);
  parallel_chunks(n_elem, chunks, [&](std::size_t begin, std::size_t end, int) {
    for (std::size_t e = begin; e < end; ++e) {
      const ElementMapd map = tri.elements[e].map();
      try {
        stiffness[e] = local_stiffness(map, quad);
      } catch (const NonpositiveJacobian &err) {
        throw NonpositiveJacobian("element " + std::to_string(e) + ": " +
                                      err.what(),
                                  static_cast<long>(e));
      }
      load[e] = local_load(map, f, quad);
    }
  });

  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(9 * n_elem);
  FeSystem sys;
  sys.load = Eigen::VectorXd::Zero(space.size());
  for (std::size_t e = 0; e < n_elem; ++e) {
    const auto &dofs = space.element_dofs(e);
    for (int i = 0; i < 3; ++i) {
      sys.load[dofs[i]] += load[e][i];
      for (int j = 0; j < 3; ++j)
        triplets.emplace_back(dofs[i], dofs[j], stiffness[e](i, j));
    }
  }
  sys.stiffness = SparseSym::from_triplets(space.size(), triplets);
  sys.dirichlet_mask = space.boundary_mask();
  return sys;
}

FeSystem apply_dirichlet(const FeSystem &sys, const FeSpace &space) {
  const std::vector<bool> &mask = space.boundary_mask();
  const CsrMatrix &m = sys.stiffness.csr();
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(m.nonZeros());
  for (int i = 0; i < m.outerSize(); ++i) {
    if (mask[i]) {
      triplets.emplace_back(i, i, 1.0);
      continue;
    }
    for (CsrMatrix::InnerIterator it(m, i); it; ++it)
      if (!mask[it.col()])
        triplets.emplace_back(i, it.col(), it.value());
  }
  FeSystem out;
  out.stiffness = SparseSym::from_triplets(space.size(), triplets);
  out.load = sys.load;
  for (int i = 0; i < space.size(); ++i)
    if (mask[i])
      out.load[i] = 0.0;
  out.dirichlet_mask = mask;
  return out;
}

CgResult solve(const FeSystem &sys, double tol, int maxit) {
  return cg_solve(sys.stiffness, sys.load, tol, maxit);
}

ErrorNorms error_norms(const FeSpace &space, const Eigen::VectorXd &coeffs,
                       const ScalarField &v, const VectorField &grad_v,
                       const QuadratureRule &quad) {
  if (coeffs.size() != space.size())
    throw DimensionMismatch("coefficient vector does not match the space");
  const Triangulation &tri = space.triangulation();
  const std::size_t n_elem = tri.elements.size();
  const Eigen::Matrix<double, 2, 3> ref_grad = ReferenceBasisP1::gradients();
  std::vector<double> l2(n_elem), h1(n_elem);
  parallel_chunks(n_elem, worker_count(),
                  [&](std::size_t begin, std::size_t end, int) {
    for (std::size_t e = begin; e < end; ++e) {
      const ElementMapd map = tri.elements[e].map();
      const auto &dofs = space.element_dofs(e);
      const Eigen::Vector3d u(coeffs[dofs[0]], coeffs[dofs[1]], coeffs[dofs[2]]);
      double el2 = 0, eh1 = 0;
      for (std::size_t q = 0; q < quad.size(); ++q) {
        const Point2d &xhat = quad.points[q];
        const Mat2d J = jacobian_F(map, xhat);
        const double w = std::abs(J.determinant()) * quad.weights[q];
        const Point2d x = eval_F(map, xhat);
        const double uh = ReferenceBasisP1::values(xhat).dot(u);
        const Point2d grad_uh = J.transpose().inverse() * (ref_grad * u);
        el2 += w * std::pow(v(x) - uh, 2);
        eh1 += w * (grad_v(x) - grad_uh).squaredNorm();
      }
      l2[e] = el2;
      h1[e] = eh1;
    }
  });
  ErrorNorms out;
  for (std::size_t e = 0; e < n_elem; ++e) {
    out.l2 += l2[e];
    out.h1_semi += h1[e];
  }
  out.l2 = std::sqrt(out.l2);
  out.h1_semi = std::sqrt(out.h1_semi);
  return out;
}

} // namespace curvedfem
