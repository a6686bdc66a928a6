#include "curvedfem/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "curvedfem/errors.hpp"
#include "curvedfem/parallel.hpp"

namespace curvedfem {
namespace {

constexpr double kPi = std::numbers::pi;
// 1e-12 is below the round-off floor of the true residual from level 5 on.
constexpr double kStudyTolerance = 1e-10;

/// Nodal P1 interpolation error of v on one element, squared norms.
struct LocalInterpolation {
  Eigen::Vector3d nodal;
  Eigen::Matrix<double, 2, 3> ref_grad = ReferenceBasisP1::gradients();

  LocalInterpolation(const ElementMapd &map, const ScalarField &v) {
    const LagrangeNodes vertices = lagrange_nodes(1);
    for (int i = 0; i < 3; ++i)
      nodal[i] = v(eval_F(map, vertices.nodes[i]));
  }

  double value(const Point2d &xhat) const {
    return ReferenceBasisP1::values(xhat).dot(nodal);
  }
  Point2d gradient(const Mat2d &J) const {
    return J.transpose().inverse() * (ref_grad * nodal);
  }
};

} // namespace

double domain_area(const Triangulation &tri, const QuadratureRule &quad) {
  double area = 0;
  for (const auto &elem : tri.elements) {
    const ElementMapd map = elem.map();
    double local = 0;
    for (std::size_t q = 0; q < quad.size(); ++q)
      local += std::abs(jacobian_F(map, quad.points[q]).determinant()) *
               quad.weights[q];
    area += local;
  }
  return area;
}

GeometricErrors geometric_errors(const Triangulation &tri,
                                 const QuadratureRule &quad, int bdry_samples) {
  if (bdry_samples < 10)
    throw Error("geometric_errors needs at least 10 samples per edge");
  GeometricErrors out;
  out.area_error = std::abs(domain_area(tri, quad) - kPi);
  for (Index id : tri.boundary_edges) {
    const Edge &edge = tri.edges[id];
    const CurvedCorrectiond &corr = tri.elements[edge.elements[0]].correction;
    const Point2d &a = tri.vertices[edge.v0];
    const Point2d &b = tri.vertices[edge.v1];
    for (int k = 0; k <= bdry_samples; ++k) {
      const double s = double(k) / bdry_samples;
      const Point2d x = corr((1 - s) * a + s * b);
      out.bdry_error = std::max(out.bdry_error, std::abs(x.norm() - 1.0));
    }
  }
  return out;
}

ExactSolution manufactured_disk_solution() {
  ExactSolution s;
  s.u = [](const Point2d &x) { return 1.0 - x.squaredNorm(); };
  s.grad = [](const Point2d &x) -> Point2d { return -2.0 * x; };
  s.f = [](const Point2d &) { return 4.0; };
  s.h1_seminorm = std::sqrt(2 * kPi);
  s.l2_norm = std::sqrt(kPi / 3);
  return s;
}

FemErrors fem_errors(const FeSpace &space, const Eigen::VectorXd &uh,
                     const ExactSolution &exact, const QuadratureRule &quad) {
  const ErrorNorms norms = error_norms(space, uh, exact.u, exact.grad, quad);
  FemErrors out;
  out.e_h1_rel = norms.h1_semi / exact.h1_seminorm;
  out.e_l2_rel = norms.l2 / exact.l2_norm;
  out.h = space.triangulation().h;
  return out;
}

double rate(double e_old, double e_new, double h_old, double h_new) {
  if (!(e_old > 0) || !(e_new > 0) || !(h_old > 0) || !(h_new > 0) ||
      h_old == h_new) {
    std::ostringstream os;
    os << "invalid rate input: e = (" << e_old << ", " << e_new << "), h = ("
       << h_old << ", " << h_new << ")";
    throw InvalidRateInput(os.str());
  }
  return std::log(e_old / e_new) / std::log(h_old / h_new);
}

SmoothFunction sin_cos_function() {
  SmoothFunction f;
  f.value = [](const Point2d &x) { return std::sin(x.x()) * std::cos(x.y()); };
  f.grad = [](const Point2d &x) -> Point2d {
    return {std::cos(x.x()) * std::cos(x.y()), -std::sin(x.x()) * std::sin(x.y())};
  };
  f.hess = [](const Point2d &x) -> Mat2d {
    const double s1 = std::sin(x.x()), c1 = std::cos(x.x());
    const double s2 = std::sin(x.y()), c2 = std::cos(x.y());
    Mat2d h;
    h << -s1 * c2, -c1 * s2, -c1 * s2, -s1 * c2;
    return h;
  };
  return f;
}

double bound_ratio(double lhs, double rhs) {
  if (rhs > 0)
    return lhs / rhs;
  return 0.0;
}

ElementBound element_bound(const CurvedTriangle &elem, const SmoothFunction &v,
                           const QuadratureRule &quad) {
  const AffineCored &core = elem.core;
  const CurvedCorrectiond &corr = elem.correction;
  const ElementMapd map = elem.map();
  const LocalInterpolation interp(map, v.value);

  double lhs_l2 = 0, lhs_h1 = 0;
  double second[2][2] = {{0, 0}, {0, 0}};
  double curvature[2][2] = {{0, 0}, {0, 0}};
  double directional[2] = {0, 0};
  for (std::size_t q = 0; q < quad.size(); ++q) {
    const Point2d &xhat = quad.points[q];
    const Point2d y = core.map(xhat);
    const Point2d x = corr(y);
    const Mat2d dpsi = corr.jacobian(y);
    const Mat2d J = dpsi * core.map.A;
    const double w = std::abs(J.determinant()) * quad.weights[q];

    const Point2d grad = v.grad(x);
    const Mat2d hess = v.hess(x);
    lhs_l2 += w * std::pow(v.value(x) - interp.value(xhat), 2);
    lhs_h1 += w * (grad - interp.gradient(J)).squaredNorm();

    const Tensor222d d2psi = corr.hessian(y);
    const Point2d tau[2] = {dpsi * core.r1, dpsi * core.r2};
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        const Point2d b = contract(d2psi, core.direction(i + 1),
                                   core.direction(j + 1));
        second[i][j] += w * std::pow(tau[i].dot(hess * tau[j]), 2);
        curvature[i][j] += w * std::pow(grad.dot(b), 2);
      }
      const Mat2d dtau =
          transported_direction_jacobian_at(core, corr, i + 1, y);
      const Point2d g = dtau.transpose() * grad + hess * tau[i];
      directional[i] += w * g.squaredNorm();
    }
  }

  ElementBound out;
  out.lhs_l2 = std::sqrt(lhs_l2);
  out.lhs_h1 = std::sqrt(lhs_h1);
  for (int i = 0; i < 2; ++i) {
    const double hi = core.edge_length(i + 1);
    for (int j = 0; j < 2; ++j)
      out.rhs_l2 += hi * core.edge_length(j + 1) *
                    (std::sqrt(second[i][j]) + std::sqrt(curvature[i][j]));
    out.rhs_h1 += hi * std::sqrt(directional[i]);
  }
  return out;
}

BoundCheckReport interpolation_bound_check(const Triangulation &tri,
                                           const SmoothFunction &v,
                                           const QuadratureRule &quad) {
  BoundCheckReport report;
  report.elements.resize(tri.elements.size());
  parallel_chunks(tri.elements.size(), worker_count(),
                  [&](std::size_t begin, std::size_t end, int) {
                    for (std::size_t e = begin; e < end; ++e)
                      report.elements[e] = element_bound(tri.elements[e], v, quad);
                  });
  constexpr double kZero = 1e-12;
  for (std::size_t e = 0; e < report.elements.size(); ++e) {
    const ElementBound &b = report.elements[e];
    if ((b.rhs_l2 == 0 && b.lhs_l2 > kZero) ||
        (b.rhs_h1 == 0 && b.lhs_h1 > kZero)) {
      std::ostringstream os;
      os << "element " << e << ": estimate right-hand side vanishes while the "
         << "interpolation error is " << std::max(b.lhs_l2, b.lhs_h1);
      throw DegenerateRHS(os.str());
    }
    report.max_ratio_l2 =
        std::max(report.max_ratio_l2, bound_ratio(b.lhs_l2, b.rhs_l2));
    report.max_ratio_h1 =
        std::max(report.max_ratio_h1, bound_ratio(b.lhs_h1, b.rhs_h1));
  }
  return report;
}

AffineCoreBound affine_core_bound(const AffineCored &core,
                                  const SmoothFunction &w,
                                  const QuadratureRule &quad) {
  const ElementMapd map{core.map, CurvedCorrectiond::identity()};
  const LocalInterpolation interp(map, w.value);
  const Mat2d &A = core.map.A;
  const double jac = std::abs(A.determinant());

  double lhs_l2 = 0, lhs_h1 = 0;
  double d11 = 0, d12 = 0, d22 = 0, d1 = 0, d2 = 0;
  for (std::size_t q = 0; q < quad.size(); ++q) {
    const Point2d &xhat = quad.points[q];
    const Point2d y = core.map(xhat);
    const double wt = jac * quad.weights[q];
    const Mat2d hess = w.hess(y);
    lhs_l2 += wt * std::pow(w.value(y) - interp.value(xhat), 2);
    lhs_h1 += wt * (w.grad(y) - interp.gradient(A)).squaredNorm();
    d11 += wt * std::pow(core.r1.dot(hess * core.r1), 2);
    d12 += wt * std::pow(core.r1.dot(hess * core.r2), 2);
    d22 += wt * std::pow(core.r2.dot(hess * core.r2), 2);
    d1 += wt * (hess * core.r1).squaredNorm();
    d2 += wt * (hess * core.r2).squaredNorm();
  }
  AffineCoreBound out;
  out.lhs_l2 = std::sqrt(lhs_l2);
  out.lhs_h1 = std::sqrt(lhs_h1);
  out.rhs_l2 = core.h1 * core.h1 * std::sqrt(d11) +
               2 * core.h1 * core.h2 * std::sqrt(d12) +
               core.h2 * core.h2 * std::sqrt(d22);
  out.rhs_h1 = core.HT / core.hT *
               (core.h1 * std::sqrt(d1) + core.h2 * std::sqrt(d2));
  return out;
}

std::vector<ConvergenceRow> convergence_study(GeometryOrder geo, int max_level,
                                              int quad_degree,
                                              BoundaryResolution resolution) {
  if (max_level < 0 || max_level > 6)
    throw Error("convergence study supports levels 0..6, got " +
                std::to_string(max_level));
  const QuadratureRule &quad = quadrature_rule(quad_degree);
  const ExactSolution exact = manufactured_disk_solution();
  std::vector<ConvergenceRow> rows;
  for (int level = 0; level <= max_level; ++level) {
    const Triangulation tri = disk_mesh(level, geo, resolution);
    const FeSpace space(tri);
    const FeSystem sys = apply_dirichlet(assemble(space, exact.f, quad), space);
    const CgResult sol = solve(sys, kStudyTolerance);

    ConvergenceRow row;
    row.geo = geo;
    row.level = level;
    row.h = tri.h;
    row.geometric = geometric_errors(tri, quad);
    row.fem = fem_errors(space, sol.x, exact, quad);
    row.cg_iterations = sol.stats.iterations;
    row.elements = tri.elements.size();
    row.vertices = tri.vertices.size();
    if (!rows.empty()) {
      const ConvergenceRow &prev = rows.back();
      row.rate_h1 = rate(prev.fem.e_h1_rel, row.fem.e_h1_rel, prev.h, row.h);
      row.rate_l2 = rate(prev.fem.e_l2_rel, row.fem.e_l2_rel, prev.h, row.h);
    }
    rows.push_back(row);
  }
  return rows;
}

} // namespace curvedfem
