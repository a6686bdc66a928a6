#include <fstream>

#include <json.hpp>

#include "curvedfem/errors.hpp"
#include "curvedfem/mesh.hpp"

namespace curvedfem {
namespace {

std::string correction_name(const CurvedCorrectiond &c) {
  switch (c.kind()) {
  case CorrectionKind::Identity:
    return "straight";
  case CorrectionKind::ArcBlend:
    return "exact_arc";
  case CorrectionKind::PolyEdgeBlend:
    return "order" + std::to_string(c.order());
  }
  return "unknown";
}

} // namespace

std::string mesh_to_json(const Triangulation &tri) {
  using nlohmann::json;
  json doc;
  doc["format"] = "curvedfem-mesh-v1";
  doc["geometry_order"] = to_string(tri.geometry);
  doc["h"] = tri.h;

  json vertices = json::array();
  for (const auto &p : tri.vertices)
    vertices.push_back({p.x(), p.y()});
  doc["vertices"] = std::move(vertices);

  json elements = json::array();
  for (std::size_t e = 0; e < tri.elements.size(); ++e) {
    const auto &elem = tri.elements[e];
    json item;
    item["vertices"] = tri.cells[e];
    item["core_order"] = elem.core.ids;
    item["geometry"] = correction_name(elem.correction);
    if (!elem.correction.is_identity())
      item["arc_angles"] = {elem.correction.theta_a(), elem.correction.theta_b()};
    elements.push_back(std::move(item));
  }
  doc["elements"] = std::move(elements);

  json boundary = json::array();
  for (Index b : tri.boundary_edges)
    boundary.push_back({tri.edges[b].v0, tri.edges[b].v1});
  doc["boundary_edges"] = std::move(boundary);
  return doc.dump(1);
}

void write_mesh_json(const Triangulation &tri, const std::string &path) {
  std::ofstream out(path);
  if (!out)
    throw Error("cannot open '" + path + "' for writing");
  out << mesh_to_json(tri) << '\n';
}

} // namespace curvedfem
