#pragma once

#include <array>
#include <functional>
#include <vector>

#include <Eigen/Core>

#include "curvedfem/linalg.hpp"
#include "curvedfem/mesh.hpp"
#include "curvedfem/quadrature.hpp"
#include "curvedfem/types.hpp"

namespace curvedfem {

using ScalarField = std::function<double(const Point2d &)>;
using VectorField = std::function<Point2d(const Point2d &)>;
using MatrixField = std::function<Mat2d(const Point2d &)>;

/// Linear Lagrange basis on the reference triangle:
/// phi_1 = 1 - x - y, phi_2 = x, phi_3 = y.
struct ReferenceBasisP1 {
  static Eigen::Vector3d values(const Point2d &xhat) {
    return {1.0 - xhat.x() - xhat.y(), xhat.x(), xhat.y()};
  }
  /// Column i is the gradient of phi_{i+1}.
  static Eigen::Matrix<double, 2, 3> gradients() {
    Eigen::Matrix<double, 2, 3> g;
    g << -1, 1, 0, -1, 0, 1;
    return g;
  }
};

/// Reference Lagrange nodes (alpha_2 / k, alpha_3 / k) for
/// alpha_1 + alpha_2 + alpha_3 = k, ordered by alpha_3 then alpha_2.
struct LagrangeNodes {
  int degree{1};
  std::vector<Point2d> nodes;

  std::size_t count() const { return nodes.size(); }
};

/// Supported for 1 <= k <= 10.
LagrangeNodes lagrange_nodes(int k);

/// Which nodes carry the homogeneous Dirichlet condition.
enum class DirichletBoundary {
  /// Nodes on the unit circle, | |p| - 1 | <= 1e-12.
  UnitCircle,
  /// Nodes on mesh boundary edges.
  MeshBoundary,
};

/// Conforming P1 space on a triangulation. Global nodes are the mesh
/// vertices; the triangulation must outlive the space.
class FeSpace {
public:
  /// Throws UnsupportedDegree for degree != 1.
  explicit FeSpace(const Triangulation &tri, int degree = 1,
                   DirichletBoundary boundary = DirichletBoundary::UnitCircle);

  const Triangulation &triangulation() const { return *tri_; }
  int degree() const { return 1; }
  int size() const { return static_cast<int>(tri_->vertices.size()); }
  const Point2d &node(int i) const { return tri_->vertices[i]; }
  /// Global DOFs of element e, in reference-vertex order.
  const std::array<Index, 3> &element_dofs(std::size_t e) const {
    return tri_->elements[e].core.ids;
  }
  const std::vector<bool> &boundary_mask() const { return boundary_; }
  int boundary_count() const;

private:
  const Triangulation *tri_;
  std::vector<bool> boundary_;
};

struct FeSystem {
  SparseSym stiffness;
  Eigen::VectorXd load;
  std::vector<bool> dirichlet_mask;
};

/// Coefficient i = v(node_i).
Eigen::VectorXd interpolate_p1(const FeSpace &space, const ScalarField &v);

/// Element stiffness matrix of the pulled-back P1 basis.
Eigen::Matrix3d local_stiffness(const ElementMapd &map,
                                const QuadratureRule &quad);
Eigen::Vector3d local_load(const ElementMapd &map, const ScalarField &f,
                           const QuadratureRule &quad);

/// Global stiffness matrix and load vector for -Laplace(u) = f. Elements are
/// processed in parallel chunks and merged in element order, so the result is
/// independent of the worker count.
FeSystem assemble(const FeSpace &space, const ScalarField &f,
                  const QuadratureRule &quad);

/// Symmetric elimination of the homogeneous Dirichlet condition: boundary
/// rows and columns are zeroed, their diagonal set to 1 and load to 0.
FeSystem apply_dirichlet(const FeSystem &sys, const FeSpace &space);

CgResult solve(const FeSystem &sys, double tol = 1e-12, int maxit = 0);

struct ErrorNorms {
  double l2{0};
  double h1_semi{0};
};

/// ||v - u_h||_{L2} and |v - u_h|_{H1} over the curved elements, by
/// quadrature pulled back through each element map.
ErrorNorms error_norms(const FeSpace &space, const Eigen::VectorXd &coeffs,
                       const ScalarField &v, const VectorField &grad_v,
                       const QuadratureRule &quad);

} // namespace curvedfem
