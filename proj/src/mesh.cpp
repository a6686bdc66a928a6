#include "curvedfem/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

#include "curvedfem/errors.hpp"
#include "curvedfem/quadrature.hpp"

namespace curvedfem {
namespace {

constexpr double kPi = std::numbers::pi;

bool on_unit_circle(const Point2d &p, double tol) {
  return std::abs(p.norm() - 1.0) <= tol;
}

/// Orders the endpoints of a boundary chord so that theta_a < theta_b spans
/// the shorter arc.
struct ArcEdge {
  Index a, b;
  double theta_a, theta_b;
};

ArcEdge orient_arc(Index i, Index j, const std::vector<Point2d> &v) {
  double ti = std::atan2(v[i].y(), v[i].x());
  double tj = std::atan2(v[j].y(), v[j].x());
  double d = tj - ti;
  while (d > kPi)
    d -= 2 * kPi;
  while (d <= -kPi)
    d += 2 * kPi;
  if (d > 0)
    return {i, j, ti, ti + d};
  return {j, i, tj, tj - d};
}

CurvedCorrectiond make_correction(GeometryOrder geo, const Point2d &a,
                                  const Point2d &b, const Point2d &c,
                                  double theta_a, double theta_b) {
  switch (geo) {
  case GeometryOrder::Order1:
    return CurvedCorrectiond::identity();
  case GeometryOrder::Order2:
    return CurvedCorrectiond::poly_blend(a, b, c, theta_a, theta_b, 2);
  case GeometryOrder::Order3:
    return CurvedCorrectiond::poly_blend(a, b, c, theta_a, theta_b, 3);
  case GeometryOrder::ExactArc:
    return CurvedCorrectiond::arc_blend(a, b, c, theta_a, theta_b);
  }
  return CurvedCorrectiond::identity();
}

/// Fills `cells` with the strip between two concentric rings, given as
/// vertex ids in increasing angle. Picks the shorter diagonal at each step.
void stitch_rings(const std::vector<Index> &inner,
                  const std::vector<Index> &outer,
                  const std::vector<Point2d> &v,
                  std::vector<std::array<Index, 3>> &cells) {
  const std::size_t ni = inner.size(), no = outer.size();
  std::size_t i = 0, k = 0;
  auto in = [&](std::size_t idx) { return inner[idx % ni]; };
  auto out = [&](std::size_t idx) { return outer[idx % no]; };
  while (i < ni || k < no) {
    bool advance_inner;
    if (i == ni)
      advance_inner = false;
    else if (k == no)
      advance_inner = true;
    else
      advance_inner = (v[in(i + 1)] - v[out(k)]).squaredNorm() <
                      (v[in(i)] - v[out(k + 1)]).squaredNorm();
    if (advance_inner) {
      cells.push_back({in(i), out(k), in(i + 1)});
      ++i;
    } else {
      cells.push_back({in(i), out(k), out(k + 1)});
      ++k;
    }
  }
}

} // namespace

std::string to_string(GeometryOrder geo) {
  switch (geo) {
  case GeometryOrder::Order1:
    return "1";
  case GeometryOrder::Order2:
    return "2";
  case GeometryOrder::Order3:
    return "3";
  case GeometryOrder::ExactArc:
    return "exact";
  }
  return "?";
}

std::optional<GeometryOrder> parse_geometry_order(std::string_view text) {
  if (text == "1" || text == "order1")
    return GeometryOrder::Order1;
  if (text == "2" || text == "order2")
    return GeometryOrder::Order2;
  if (text == "3" || text == "order3")
    return GeometryOrder::Order3;
  if (text == "exact" || text == "exact_arc")
    return GeometryOrder::ExactArc;
  return std::nullopt;
}

Triangulation build_triangulation(std::vector<Point2d> vertices,
                                  std::vector<std::array<Index, 3>> cells,
                                  GeometryOrder geo, double circle_tol) {
  Triangulation tri;
  tri.geometry = geo;
  tri.vertices = std::move(vertices);
  const auto &v = tri.vertices;
  for (auto &c : cells) {
    for (Index id : c)
      if (id < 0 || static_cast<std::size_t>(id) >= v.size())
        throw Error("cell references vertex " + std::to_string(id) +
                    " out of range");
    if (cross<double>(v[c[1]] - v[c[0]], v[c[2]] - v[c[0]]) < 0)
      std::swap(c[1], c[2]);
  }
  tri.cells = std::move(cells);

  std::map<std::pair<Index, Index>, Index> edge_index;
  for (std::size_t e = 0; e < tri.cells.size(); ++e) {
    const auto &c = tri.cells[e];
    for (int l = 0; l < 3; ++l) {
      const Index a = c[(l + 1) % 3], b = c[(l + 2) % 3];
      const auto key = std::minmax(a, b);
      auto [it, inserted] =
          edge_index.try_emplace({key.first, key.second},
                                 static_cast<Index>(tri.edges.size()));
      if (inserted) {
        Edge edge;
        edge.v0 = a;
        edge.v1 = b;
        edge.elements[0] = static_cast<Index>(e);
        tri.edges.push_back(edge);
      } else {
        Edge &edge = tri.edges[it->second];
        if (edge.elements[1] >= 0)
          throw Error("non-manifold edge (" + std::to_string(a) + ", " +
                      std::to_string(b) + ")");
        edge.elements[1] = static_cast<Index>(e);
      }
    }
  }
  for (std::size_t i = 0; i < tri.edges.size(); ++i)
    if (tri.edges[i].on_boundary())
      tri.boundary_edges.push_back(static_cast<Index>(i));

  tri.elements.reserve(tri.cells.size());
  for (std::size_t e = 0; e < tri.cells.size(); ++e) {
    const auto &c = tri.cells[e];
    CurvedTriangle elem;
    elem.core = make_affine_core<double>(c, v[c[0]], v[c[1]], v[c[2]]);
    if (geo != GeometryOrder::Order1) {
      for (int l = 0; l < 3; ++l) {
        const Index a = elem.core.ids[(l + 1) % 3];
        const Index b = elem.core.ids[(l + 2) % 3];
        const auto key = std::minmax(a, b);
        const Edge &edge = tri.edges[edge_index.at({key.first, key.second})];
        if (!edge.on_boundary() || !on_unit_circle(v[a], circle_tol) ||
            !on_unit_circle(v[b], circle_tol))
          continue;
        if (elem.boundary_edge)
          throw Error("element " + std::to_string(e) +
                      " has more than one curved boundary edge");
        const ArcEdge arc = orient_arc(a, b, v);
        elem.boundary_edge = l;
        elem.correction =
            make_correction(geo, v[arc.a], v[arc.b], elem.core.p[l],
                            arc.theta_a, arc.theta_b);
      }
    }
    tri.h = std::max(tri.h, elem.core.hT);
    tri.elements.push_back(std::move(elem));
  }
  return tri;
}

double nominal_mesh_size(int level) { return 0.4 * std::ldexp(1.0, -level); }

int disk_boundary_segments(int level, BoundaryResolution resolution) {
  if (resolution == BoundaryResolution::Doubling)
    return 16 << level;
  return static_cast<int>(std::ceil(2 * kPi / nominal_mesh_size(level) - 1e-9));
}

Triangulation disk_mesh(int level, GeometryOrder geo,
                        BoundaryResolution resolution) {
  if (level < 0 || level > 8)
    throw Error("disk mesh level must be in 0..8, got " + std::to_string(level));
  const double h = nominal_mesh_size(level);
  const int n_boundary = disk_boundary_segments(level, resolution);
  // Rings 0.6 h apart with tangential spacing at most h.
  const int rings = std::max(2, static_cast<int>(std::ceil(1.0 / (0.6 * h) - 1e-9)));

  std::vector<Point2d> vertices{Point2d::Zero()};
  std::vector<std::vector<Index>> ring_ids(rings + 1);
  ring_ids[0] = {0};
  for (int j = 1; j <= rings; ++j) {
    const double r = double(j) / rings;
    const int n = j == rings
                      ? n_boundary
                      : std::max(4, static_cast<int>(std::ceil(2 * kPi * r / h - 1e-9)));
    for (int i = 0; i < n; ++i) {
      const double theta = 2 * kPi * i / n;
      ring_ids[j].push_back(static_cast<Index>(vertices.size()));
      if (j == rings)
        vertices.emplace_back(std::cos(theta), std::sin(theta));
      else
        vertices.emplace_back(r * std::cos(theta), r * std::sin(theta));
    }
  }

  std::vector<std::array<Index, 3>> cells;
  const auto &first = ring_ids[1];
  for (std::size_t i = 0; i < first.size(); ++i)
    cells.push_back({0, first[i], first[(i + 1) % first.size()]});
  for (int j = 1; j < rings; ++j)
    stitch_rings(ring_ids[j], ring_ids[j + 1], vertices, cells);

  return build_triangulation(std::move(vertices), std::move(cells), geo);
}

double mesh_size(const Triangulation &tri) {
  if (tri.elements.empty())
    throw EmptyMesh("mesh has no elements");
  double h = 0;
  for (const auto &e : tri.elements)
    h = std::max(h, e.core.hT);
  return h;
}

RegularityReport validate(const Triangulation &tri) {
  RegularityReport report;
  report.min_det_dpsi = std::numeric_limits<double>::infinity();
  const QuadratureRule &rule = quadrature_rule(8);
  for (std::size_t e = 0; e < tri.elements.size(); ++e) {
    const CurvedTriangle &elem = tri.elements[e];
    report.gamma = std::max(report.gamma, elem.core.HT / elem.core.hT);
    if (!elem.correction.is_identity())
      ++report.curved_elements;
    for (const Point2d &xhat : rule.points) {
      const Point2d y = elem.core.map(xhat);
      const Mat2d J = elem.correction.jacobian(y);
      const double det = J.determinant();
      report.min_det_dpsi = std::min(report.min_det_dpsi, det);
      if (!(det > 0)) {
        std::ostringstream os;
        os << "element " << e << ": det DPsi = " << det << " at core point ("
           << y.transpose() << ")";
        throw NonpositiveJacobian(os.str(), static_cast<long>(e));
      }
      const Mat2d B = J.inverse();
      report.cpsi1 =
          std::max(report.cpsi1, spectral_norm<double>(J) + spectral_norm<double>(B));
      const Tensor222d H = elem.correction.hessian(y);
      const Tensor222d Hinv = left_apply<double>(B, congruence(H, B));
      report.cpsi2 = std::max(report.cpsi2, frobenius_norm<double>(H) +
                                                frobenius_norm<double>(Hinv));
    }
  }
  return report;
}

} // namespace curvedfem
