#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "curvedfem/geometry.hpp"
#include "curvedfem/types.hpp"

namespace curvedfem {

/// Boundary representation of elements that own a boundary edge.
enum class GeometryOrder { Order1, Order2, Order3, ExactArc };

/// "1", "2", "3" or "exact".
std::string to_string(GeometryOrder geo);
std::optional<GeometryOrder> parse_geometry_order(std::string_view text);

/// How many boundary segments the disk generator uses at a given level.
enum class BoundaryResolution {
  /// ceil(2 pi / h) segments for the nominal mesh size h = 0.4 * 2^-level
  /// (16, 32, 63, 126, ...).
  MeshSize,
  /// 16 * 2^level segments.
  Doubling,
};

struct CurvedTriangle {
  AffineCored core;
  CurvedCorrectiond correction;
  /// Local core edge lying on the boundary curve, numbered by the opposite
  /// core vertex. Set iff the correction is not the identity.
  std::optional<int> boundary_edge;

  ElementMapd map() const { return element_map(core, correction); }
};

struct Edge {
  Index v0{-1}, v1{-1};
  /// Adjacent elements; second is -1 on the boundary.
  std::array<Index, 2> elements{-1, -1};

  bool on_boundary() const { return elements[1] < 0; }
};

struct Triangulation {
  std::vector<Point2d> vertices;
  /// Counter-clockwise vertex triples, one per element.
  std::vector<std::array<Index, 3>> cells;
  std::vector<CurvedTriangle> elements;
  std::vector<Edge> edges;
  /// Indices into `edges`.
  std::vector<Index> boundary_edges;
  /// Longest affine-core edge over all elements.
  double h{0};
  GeometryOrder geometry{GeometryOrder::Order1};
};

/// Builds a triangulation from raw connectivity. Boundary edges whose two
/// endpoints lie on the unit circle (within `circle_tol`) are curved according
/// to `geo`; all other elements keep the identity correction.
Triangulation build_triangulation(std::vector<Point2d> vertices,
                                  std::vector<std::array<Index, 3>> cells,
                                  GeometryOrder geo, double circle_tol = 1e-13);

/// Concentric-ring triangulation of the unit disk at nominal mesh size
/// 0.4 * 2^-level. Valid levels are 0..8.
Triangulation disk_mesh(int level, GeometryOrder geo,
                        BoundaryResolution resolution = BoundaryResolution::MeshSize);

/// Nominal mesh size of the disk generator at `level`.
double nominal_mesh_size(int level);

/// Number of boundary segments produced by the disk generator.
int disk_boundary_segments(int level, BoundaryResolution resolution);

double mesh_size(const Triangulation &tri);

struct RegularityReport {
  /// max_K H_T / h_T.
  double gamma{0};
  /// max of ||DPsi|| + ||DPsi^{-1}|| (spectral norms) over sampled points.
  double cpsi1{0};
  /// max of |D^2Psi| + |D^2Psi^{-1}| (Frobenius norms) over sampled points.
  double cpsi2{0};
  double min_det_dpsi{0};
  std::size_t curved_elements{0};
};

/// Samples the curved corrections at the degree-8 quadrature points of every
/// element. Throws NonpositiveJacobian naming the first offending element.
RegularityReport validate(const Triangulation &tri);

/// JSON document with format tag "curvedfem-mesh-v1".
std::string mesh_to_json(const Triangulation &tri);
void write_mesh_json(const Triangulation &tri, const std::string &path);

} // namespace curvedfem
