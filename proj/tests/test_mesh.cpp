#include <cmath>
#include <map>
#include <numbers>
#include <utility>

#include <gtest/gtest.h>
#include <json.hpp>

#include "curvedfem/analysis.hpp"
#include "curvedfem/errors.hpp"
#include "curvedfem/mesh.hpp"

using namespace curvedfem;

namespace {

constexpr double kPi = std::numbers::pi;
const GeometryOrder kAllGeos[] = {GeometryOrder::Order1, GeometryOrder::Order2,
                                  GeometryOrder::Order3, GeometryOrder::ExactArc};

std::size_t boundary_vertex_count(const Triangulation &tri) {
  std::size_t n = 0;
  for (const auto &p : tri.vertices)
    n += std::abs(p.norm() - 1.0) <= 1e-13;
  return n;
}

} // namespace

TEST(DiskMesh, BoundaryResolution) {
  for (int level = 0; level <= 4; ++level) {
    const Triangulation tri = disk_mesh(level, GeometryOrder::Order1);
    const int n = static_cast<int>(std::ceil(2 * kPi / (0.4 * std::pow(2.0, -level))));
    EXPECT_EQ(boundary_vertex_count(tri), static_cast<std::size_t>(n));
    EXPECT_EQ(tri.boundary_edges.size(), static_cast<std::size_t>(n));
    const Triangulation doubled =
        disk_mesh(level, GeometryOrder::Order1, BoundaryResolution::Doubling);
    EXPECT_EQ(doubled.boundary_edges.size(), static_cast<std::size_t>(16 << level));
  }
  EXPECT_EQ(disk_boundary_segments(0, BoundaryResolution::MeshSize), 16);
  EXPECT_EQ(disk_boundary_segments(3, BoundaryResolution::MeshSize), 126);
  EXPECT_THROW(disk_mesh(9, GeometryOrder::Order1), Error);
  EXPECT_THROW(disk_mesh(-1, GeometryOrder::Order1), Error);
}

TEST(DiskMesh, LevelZeroPolygon) {
  const Triangulation tri = disk_mesh(0, GeometryOrder::Order1);
  const GeometricErrors g = geometric_errors(tri, quadrature_rule(8));
  EXPECT_NEAR(g.area_error, kPi - 8 * std::sin(kPi / 8), 1e-13);
  EXPECT_NEAR(g.area_error, 8.0125e-2, 1e-5);
  EXPECT_NEAR(g.bdry_error, 1 - std::cos(kPi / 16), 1e-15);
  EXPECT_NEAR(g.bdry_error, 1.9215e-2, 1e-5);
}

TEST(DiskMesh, BoundaryVerticesOnCircle) {
  for (int level = 0; level <= 3; ++level) {
    const Triangulation tri = disk_mesh(level, GeometryOrder::ExactArc);
    for (Index e : tri.boundary_edges)
      for (Index v : {tri.edges[e].v0, tri.edges[e].v1})
        EXPECT_NEAR(tri.vertices[v].norm(), 1.0, 1e-13);
  }
}

TEST(DiskMesh, Conformity) {
  for (int level = 0; level <= 3; ++level) {
    const Triangulation tri = disk_mesh(level, GeometryOrder::ExactArc);
    std::map<std::pair<Index, Index>, int> directed;
    for (const auto &c : tri.cells)
      for (int l = 0; l < 3; ++l)
        ++directed[{c[l], c[(l + 1) % 3]}];
    std::size_t boundary = 0;
    for (const auto &[edge, count] : directed) {
      EXPECT_EQ(count, 1);
      const auto reverse = directed.find({edge.second, edge.first});
      if (reverse == directed.end())
        ++boundary;
      else
        EXPECT_EQ(reverse->second, 1);
    }
    EXPECT_EQ(boundary, tri.boundary_edges.size());
    // Euler characteristic of a disk.
    EXPECT_EQ(static_cast<long>(tri.vertices.size()) -
                  static_cast<long>(tri.edges.size()) +
                  static_cast<long>(tri.cells.size()),
              1);
  }
}

TEST(DiskMesh, CellsAreCounterClockwise) {
  const Triangulation tri = disk_mesh(2, GeometryOrder::Order1);
  for (const auto &c : tri.cells) {
    const Point2d &a = tri.vertices[c[0]], &b = tri.vertices[c[1]],
                  &d = tri.vertices[c[2]];
    EXPECT_GT(cross<double>(b - a, d - a), 0.0);
  }
}

TEST(DiskMesh, OnlyBoundaryElementsAreCurved) {
  for (GeometryOrder geo : kAllGeos) {
    const Triangulation tri = disk_mesh(1, geo);
    std::size_t curved = 0;
    for (const auto &e : tri.elements) {
      if (e.correction.is_identity())
        continue;
      ++curved;
      ASSERT_TRUE(e.boundary_edge.has_value());
    }
    EXPECT_EQ(curved, geo == GeometryOrder::Order1 ? 0u : tri.boundary_edges.size());
  }
}

TEST(DiskMesh, ExactBoundaryImages) {
  for (int level = 0; level <= 3; ++level) {
    const Triangulation tri = disk_mesh(level, GeometryOrder::ExactArc);
    EXPECT_LE(geometric_errors(tri, quadrature_rule(8)).bdry_error, 1e-12);
  }
}

TEST(DiskMesh, ExactCovering) {
  for (int level = 1; level <= 4; ++level) {
    const Triangulation tri = disk_mesh(level, GeometryOrder::ExactArc);
    EXPECT_LE(std::abs(domain_area(tri, quadrature_rule(8)) - kPi), 1e-9)
        << "level " << level;
  }
}

TEST(DiskMesh, RefinementMonotonicity) {
  for (GeometryOrder geo : kAllGeos) {
    GeometricErrors prev{1e9, 1e9};
    for (int level = 0; level <= 4; ++level) {
      const GeometricErrors g =
          geometric_errors(disk_mesh(level, geo), quadrature_rule(8));
      if (geo != GeometryOrder::ExactArc) {
        EXPECT_LE(g.area_error, prev.area_error) << to_string(geo) << " " << level;
        EXPECT_LE(g.bdry_error, prev.bdry_error) << to_string(geo) << " " << level;
      } else {
        EXPECT_LE(g.area_error, 1e-9);
        EXPECT_LE(g.bdry_error, 1e-12);
      }
      prev = g;
    }
  }
}

TEST(MeshSize, ReferenceTriangle) {
  const Triangulation tri =
      build_triangulation({{0, 0}, {1, 0}, {0, 1}}, {{0, 1, 2}}, GeometryOrder::Order1);
  EXPECT_NEAR(mesh_size(tri), std::sqrt(2.0), 1e-15);
  EXPECT_THROW(mesh_size(Triangulation{}), EmptyMesh);
}

TEST(MeshSize, DiskLevels) {
  double prev = mesh_size(disk_mesh(0, GeometryOrder::Order1));
  EXPECT_NEAR(prev, 0.4, 0.04);
  for (int level = 1; level <= 5; ++level) {
    const double h = mesh_size(disk_mesh(level, GeometryOrder::Order1));
    EXPECT_NEAR(h / prev, 0.5, 0.05) << "level " << level;
    EXPECT_NEAR(h / nominal_mesh_size(level), 1.0, 0.2) << "level " << level;
    prev = h;
  }
}

TEST(Validate, DiskMeshIsShapeRegular) {
  for (int level = 0; level <= 4; ++level) {
    const RegularityReport r = validate(disk_mesh(level, GeometryOrder::ExactArc));
    EXPECT_GT(r.gamma, 0.0);
    EXPECT_LE(r.gamma, 10.0);
    EXPECT_GT(r.min_det_dpsi, 0.0);
    EXPECT_TRUE(std::isfinite(r.cpsi1));
    EXPECT_TRUE(std::isfinite(r.cpsi2));
    EXPECT_LE(r.cpsi1, 3.0);
    EXPECT_LE(r.cpsi2, 10.0);
  }
}

TEST(Validate, StraightMeshHasNoCurvature) {
  const RegularityReport r = validate(disk_mesh(2, GeometryOrder::Order1));
  EXPECT_EQ(r.cpsi2, 0.0);
  EXPECT_DOUBLE_EQ(r.cpsi1, 2.0);
  EXPECT_EQ(r.curved_elements, 0u);
}

TEST(Validate, InvertedCorrectionIsReported) {
  // The quarter arc bulges past the apex (0.6, 0.6).
  const Triangulation tri = build_triangulation(
      {{1, 0}, {0, 1}, {0.6, 0.6}}, {{0, 1, 2}}, GeometryOrder::ExactArc);
  try {
    validate(tri);
    FAIL() << "expected NonpositiveJacobian";
  } catch (const NonpositiveJacobian &e) {
    EXPECT_EQ(e.element(), 0);
  }
}

TEST(BuildTriangulation, ReordersClockwiseCells) {
  const Triangulation tri =
      build_triangulation({{0, 0}, {1, 0}, {0, 1}}, {{0, 2, 1}}, GeometryOrder::Order1);
  const auto &c = tri.cells[0];
  EXPECT_GT(cross<double>(tri.vertices[c[1]] - tri.vertices[c[0]],
                          tri.vertices[c[2]] - tri.vertices[c[0]]),
            0.0);
}

TEST(BuildTriangulation, RejectsTwoCurvedEdges) {
  // Three vertices on the circle: every edge is a boundary chord.
  const double t = 2 * kPi / 3;
  EXPECT_THROW(build_triangulation({{1, 0},
                                    {std::cos(t), std::sin(t)},
                                    {std::cos(2 * t), std::sin(2 * t)}},
                                   {{0, 1, 2}}, GeometryOrder::ExactArc),
               Error);
  EXPECT_NO_THROW(build_triangulation({{1, 0},
                                       {std::cos(t), std::sin(t)},
                                       {std::cos(2 * t), std::sin(2 * t)}},
                                      {{0, 1, 2}}, GeometryOrder::Order1));
}

TEST(MeshJson, RoundTripsStructure) {
  const Triangulation tri = disk_mesh(0, GeometryOrder::Order2);
  const auto doc = nlohmann::json::parse(mesh_to_json(tri));
  EXPECT_EQ(doc["format"], "curvedfem-mesh-v1");
  EXPECT_EQ(doc["geometry_order"], "2");
  EXPECT_EQ(doc["vertices"].size(), tri.vertices.size());
  EXPECT_EQ(doc["elements"].size(), tri.elements.size());
  EXPECT_EQ(doc["boundary_edges"].size(), tri.boundary_edges.size());
  std::size_t curved = 0;
  for (const auto &e : doc["elements"])
    if (e["geometry"] == "order2") {
      ++curved;
      EXPECT_EQ(e["arc_angles"].size(), 2u);
    }
  EXPECT_EQ(curved, tri.boundary_edges.size());
  const auto &v = doc["vertices"][5];
  EXPECT_EQ(v[0].get<double>(), tri.vertices[5].x());
}
