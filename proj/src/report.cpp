#include "curvedfem/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "curvedfem/errors.hpp"

namespace curvedfem {
namespace {

std::string geo_label(GeometryOrder geo) { return to_string(geo); }

void check_config(const RunConfig &config) {
  if (config.levels < 0 || config.levels > 6)
    throw Error("levels must be in 0..6, got " + std::to_string(config.levels));
  if (config.quad_degree < 1 || config.quad_degree > 8)
    throw Error("quadrature degree must be in 1..8, got " +
                std::to_string(config.quad_degree));
  if (config.geos.empty())
    throw Error("no geometry order selected");
}

void emit_convergence(const RunConfig &config, std::ostream &out) {
  const bool csv = config.format == OutputFormat::Csv;
  if (csv)
    out << kConvergenceCsvHeader << '\n';
  else
    out << "| q_geo | level | h | E_H1 | rate | E_L2 | rate |\n"
        << "|---|---|---|---|---|---|---|\n";
  for (GeometryOrder geo : config.geos) {
    const auto rows = convergence_study(geo, config.levels, config.quad_degree,
                                        config.resolution);
    for (const auto &r : rows) {
      const std::string rh1 = r.rate_h1 ? format_rate(*r.rate_h1) : "";
      const std::string rl2 = r.rate_l2 ? format_rate(*r.rate_l2) : "";
      if (csv) {
        out << geo_label(geo) << ',' << r.level << ',' << format_sci(r.h) << ','
            << format_sci(r.geometric.area_error) << ','
            << format_sci(r.geometric.bdry_error) << ','
            << format_sci(r.fem.e_h1_rel) << ',' << rh1 << ','
            << format_sci(r.fem.e_l2_rel) << ',' << rl2 << '\n';
      } else {
        out << "| " << geo_label(geo) << " | " << r.level << " | "
            << format_sci(r.h) << " | " << format_sci(r.fem.e_h1_rel) << " | "
            << (rh1.empty() ? "--" : rh1) << " | "
            << format_sci(r.fem.e_l2_rel) << " | "
            << (rl2.empty() ? "--" : rl2) << " |\n";
      }
    }
  }
}

void emit_geom(const RunConfig &config, std::ostream &out) {
  const bool csv = config.format == OutputFormat::Csv;
  if (csv)
    out << "geo_order,level,h,E_area,E_bdry\n";
  else
    out << "| q_geo | level | h | E_area | E_bdry |\n"
        << "|---|---|---|---|---|\n";
  const QuadratureRule &quad = quadrature_rule(config.quad_degree);
  for (GeometryOrder geo : config.geos) {
    for (int level = 0; level <= config.levels; ++level) {
      const Triangulation tri = disk_mesh(level, geo, config.resolution);
      const GeometricErrors g = geometric_errors(tri, quad);
      const char *sep = csv ? "," : " | ";
      if (!csv)
        out << "| ";
      out << geo_label(geo) << sep << level << sep << format_sci(tri.h) << sep
          << format_sci(g.area_error) << sep << format_sci(g.bdry_error);
      out << (csv ? "\n" : " |\n");
    }
  }
}

void emit_boundcheck(const RunConfig &config, std::ostream &out) {
  const bool csv = config.format == OutputFormat::Csv;
  if (csv)
    out << "geo_order,level,h,max_ratio_L2,max_ratio_H1\n";
  else
    out << "| q_geo | level | h | max ratio L2 | max ratio H1 |\n"
        << "|---|---|---|---|---|\n";
  const QuadratureRule &quad = quadrature_rule(config.quad_degree);
  const SmoothFunction v = sin_cos_function();
  for (GeometryOrder geo : config.geos) {
    for (int level = 0; level <= config.levels; ++level) {
      const Triangulation tri = disk_mesh(level, geo, config.resolution);
      const BoundCheckReport rep = interpolation_bound_check(tri, v, quad);
      const char *sep = csv ? "," : " | ";
      if (!csv)
        out << "| ";
      out << geo_label(geo) << sep << level << sep << format_sci(tri.h) << sep
          << format_sci(rep.max_ratio_l2) << sep
          << format_sci(rep.max_ratio_h1);
      out << (csv ? "\n" : " |\n");
    }
  }
}

void emit_meshinfo(const RunConfig &config, std::ostream &out) {
  const bool csv = config.format == OutputFormat::Csv;
  if (csv)
    out << "geo_order,level,h,vertices,elements,boundary_edges,curved_elements,"
           "gamma,cpsi1,cpsi2\n";
  else
    out << "| q_geo | level | h | vertices | elements | boundary edges | "
           "curved | gamma | C_psi1 | C_psi2 |\n"
        << "|---|---|---|---|---|---|---|---|---|---|\n";
  for (GeometryOrder geo : config.geos) {
    for (int level = 0; level <= config.levels; ++level) {
      const Triangulation tri = disk_mesh(level, geo, config.resolution);
      const RegularityReport rep = validate(tri);
      const char *sep = csv ? "," : " | ";
      if (!csv)
        out << "| ";
      out << geo_label(geo) << sep << level << sep << format_sci(tri.h) << sep
          << tri.vertices.size() << sep << tri.elements.size() << sep
          << tri.boundary_edges.size() << sep << rep.curved_elements << sep
          << format_sci(rep.gamma) << sep << format_sci(rep.cpsi1) << sep
          << format_sci(rep.cpsi2);
      out << (csv ? "\n" : " |\n");
      if (config.mesh_export_path && level == config.levels &&
          geo == config.geos.back())
        write_mesh_json(tri, *config.mesh_export_path);
    }
  }
}

} // namespace

std::string format_sci(double value) {
  if (value == 0)
    return "0.000e0";
  if (!std::isfinite(value))
    return std::isnan(value) ? "nan" : (value > 0 ? "inf" : "-inf");
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", value);
  std::string s(buf);
  const auto e = s.find('e');
  const int exponent = std::stoi(s.substr(e + 1));
  return s.substr(0, e + 1) + std::to_string(exponent);
}

std::string format_rate(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", value);
  return buf;
}

void run(const RunConfig &config, std::ostream &out) {
  check_config(config);
  switch (config.command) {
  case Command::Convergence:
    emit_convergence(config, out);
    break;
  case Command::Geom:
    emit_geom(config, out);
    break;
  case Command::BoundCheck:
    emit_boundcheck(config, out);
    break;
  case Command::MeshInfo:
    emit_meshinfo(config, out);
    break;
  }
}

int run_main(const RunConfig &config, std::ostream &out, std::ostream &err) {
  try {
    std::ostringstream buffer;
    run(config, buffer);
    if (config.output_path) {
      std::ofstream file(*config.output_path);
      if (!file)
        throw Error("cannot open '" + *config.output_path + "' for writing");
      file << buffer.str();
    } else {
      out << buffer.str();
    }
    return 0;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

} // namespace curvedfem
