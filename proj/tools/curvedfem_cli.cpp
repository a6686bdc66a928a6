// Command-line driver for the unit-disk experiments.
//
//   curvedfem convergence --geo 1 --levels 3
//   curvedfem geom --geo exact --levels 2 --format markdown
//   curvedfem boundcheck --geo exact --levels 3
//   curvedfem meshinfo --geo 2 --levels 1 --export-mesh mesh.json

#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "curvedfem/report.hpp"

namespace {

struct Options {
  std::string geo = "1";
  int levels = 3;
  int quad = 8;
  std::string format = "csv";
  std::string resolution = "meshsize";
  std::string output;
  std::string export_mesh;
};

void add_common(CLI::App *cmd, Options &opt) {
  cmd->add_option("--geo", opt.geo, "Geometry order: 1, 2, 3, exact or all")
      ->check(CLI::IsMember({"1", "2", "3", "exact", "all"}));
  cmd->add_option("--levels", opt.levels, "Finest refinement level (0..6)")
      ->check(CLI::Range(0, 6));
  cmd->add_option("--quad", opt.quad, "Quadrature degree (1..8)")
      ->check(CLI::Range(1, 8));
  cmd->add_option("--format", opt.format, "csv or markdown")
      ->check(CLI::IsMember({"csv", "markdown"}));
  cmd->add_option("--resolution", opt.resolution,
                  "Boundary segments per level: meshsize (ceil(2pi/h)) or "
                  "doubling (16*2^level)")
      ->check(CLI::IsMember({"meshsize", "doubling"}));
  cmd->add_option("-o,--output", opt.output, "Write the table to a file");
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Poisson solver on exactly curved triangulations of the unit "
               "disk. Set CURVEDFEM_THREADS to override the worker count."};
  app.require_subcommand(1);
  Options opt;

  const std::map<std::string, curvedfem::Command> commands{
      {"convergence", curvedfem::Command::Convergence},
      {"geom", curvedfem::Command::Geom},
      {"boundcheck", curvedfem::Command::BoundCheck},
      {"meshinfo", curvedfem::Command::MeshInfo}};
  auto *convergence = app.add_subcommand(
      "convergence", "Geometric and relative FE errors with observed rates");
  auto *geom = app.add_subcommand("geom", "Area and boundary radius errors");
  auto *boundcheck = app.add_subcommand(
      "boundcheck", "Max LHS/RHS ratios of the interpolation estimates");
  auto *meshinfo =
      app.add_subcommand("meshinfo", "Mesh counts and regularity constants");
  for (auto *cmd : {convergence, geom, boundcheck, meshinfo})
    add_common(cmd, opt);
  meshinfo->add_option("--export-mesh", opt.export_mesh,
                       "Write the finest mesh as JSON");

  CLI11_PARSE(app, argc, argv);

  curvedfem::RunConfig config;
  for (auto *cmd : app.get_subcommands())
    config.command = commands.at(cmd->get_name());
  if (opt.geo == "all")
    config.geos = {curvedfem::GeometryOrder::Order1,
                   curvedfem::GeometryOrder::Order2,
                   curvedfem::GeometryOrder::Order3,
                   curvedfem::GeometryOrder::ExactArc};
  else
    config.geos = {*curvedfem::parse_geometry_order(opt.geo)};
  config.levels = opt.levels;
  config.quad_degree = opt.quad;
  config.format = opt.format == "markdown" ? curvedfem::OutputFormat::Markdown
                                           : curvedfem::OutputFormat::Csv;
  config.resolution = opt.resolution == "doubling"
                          ? curvedfem::BoundaryResolution::Doubling
                          : curvedfem::BoundaryResolution::MeshSize;
  if (!opt.output.empty())
    config.output_path = opt.output;
  if (!opt.export_mesh.empty())
    config.mesh_export_path = opt.export_mesh;
  return curvedfem::run_main(config, std::cout, std::cerr);
}
