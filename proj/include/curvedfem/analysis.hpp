#pragma once

#include <optional>
#include <vector>

#include "curvedfem/fem.hpp"
#include "curvedfem/mesh.hpp"
#include "curvedfem/quadrature.hpp"

namespace curvedfem {

struct GeometricErrors {
  /// | |Omega_h| - pi |, with |Omega_h| = sum_K int |det DF_K|.
  double area_error{0};
  /// max | |x| - 1 | over sampled boundary-edge images.
  double bdry_error{0};
};

/// `bdry_samples` uniform parameter steps per boundary edge (the endpoints and
/// the midpoint are included for even counts). Requires bdry_samples >= 10.
GeometricErrors geometric_errors(const Triangulation &tri,
                                 const QuadratureRule &quad,
                                 int bdry_samples = 64);

/// Area of the discrete domain, sum_K int_That |det DF_K|.
double domain_area(const Triangulation &tri, const QuadratureRule &quad);

/// Exact solution with its data and reference norms.
struct ExactSolution {
  ScalarField u;
  VectorField grad;
  ScalarField f;
  double h1_seminorm{1};
  double l2_norm{1};
};

/// u = 1 - x1^2 - x2^2 on the unit disk with f = 4.
/// |u|_{H1}^2 = int_0^{2pi} int_0^1 4 r^2 r dr dtheta = 2 pi and
/// ||u||_{L2}^2 = 2 pi int_0^1 (1 - r^2)^2 r dr = pi / 3.
ExactSolution manufactured_disk_solution();

struct FemErrors {
  double e_h1_rel{0};
  double e_l2_rel{0};
  double h{0};
};

FemErrors fem_errors(const FeSpace &space, const Eigen::VectorXd &uh,
                     const ExactSolution &exact, const QuadratureRule &quad);

/// log(e_old / e_new) / log(h_old / h_new). Throws InvalidRateInput for
/// non-positive inputs or h_old == h_new.
double rate(double e_old, double e_new, double h_old, double h_new);

/// C^2 test function with analytic derivatives.
struct SmoothFunction {
  ScalarField value;
  VectorField grad;
  MatrixField hess;
};

/// sin(x1) cos(x2).
SmoothFunction sin_cos_function();

/// Both sides of the curved-element interpolation estimates on one element.
///
///   L2:  ||v - I v||_{L2(K)}  vs  sum_{i,j} h_i h_j (||D^2v[tau_i, tau_j]||
///                                                   + ||grad v . b_ij||)
///   H1:  |v - I v|_{H1(K)}    vs  sum_i h_i |tau_i . grad v|_{H1(K)}
///
/// The constants are not included, so the ratios estimate them.
struct ElementBound {
  double lhs_l2{0}, rhs_l2{0};
  double lhs_h1{0}, rhs_h1{0};
};

struct BoundCheckReport {
  std::vector<ElementBound> elements;
  double max_ratio_l2{0};
  double max_ratio_h1{0};
};

ElementBound element_bound(const CurvedTriangle &elem, const SmoothFunction &v,
                           const QuadratureRule &quad);

/// Throws DegenerateRHS when an element has RHS = 0 but LHS > 1e-12.
BoundCheckReport interpolation_bound_check(const Triangulation &tri,
                                           const SmoothFunction &v,
                                           const QuadratureRule &quad);

/// LHS / RHS with the convention 0 / 0 = 0.
double bound_ratio(double lhs, double rhs);

/// Interpolation estimates on a straight core T for a function w given in
/// core coordinates:
///
///   L2:  ||w - I w||  vs  h1^2 ||w_r1r1|| + 2 h1 h2 ||w_r1r2|| + h2^2 ||w_r2r2||
///   H1:  |w - I w|_1  vs  (H_T / h_T) (h1 |w_r1|_1 + h2 |w_r2|_1)
struct AffineCoreBound {
  double lhs_l2{0}, rhs_l2{0};
  double lhs_h1{0}, rhs_h1{0};
};

AffineCoreBound affine_core_bound(const AffineCored &core,
                                  const SmoothFunction &w,
                                  const QuadratureRule &quad);

struct ConvergenceRow {
  GeometryOrder geo{GeometryOrder::Order1};
  int level{0};
  double h{0};
  GeometricErrors geometric;
  FemErrors fem;
  std::optional<double> rate_h1;
  std::optional<double> rate_l2;
  int cg_iterations{0};
  std::size_t elements{0};
  std::size_t vertices{0};
};

/// disk_mesh -> assemble -> apply_dirichlet -> cg_solve -> fem_errors for
/// levels 0..max_level (max_level <= 6), with rates between consecutive
/// levels computed from the measured mesh sizes.
std::vector<ConvergenceRow>
convergence_study(GeometryOrder geo, int max_level, int quad_degree = 8,
                  BoundaryResolution resolution = BoundaryResolution::MeshSize);

} // namespace curvedfem
