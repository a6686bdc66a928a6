#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "curvedfem/analysis.hpp"
#include "curvedfem/mesh.hpp"

namespace curvedfem {

enum class Command { Convergence, Geom, BoundCheck, MeshInfo };
enum class OutputFormat { Csv, Markdown };

struct RunConfig {
  Command command{Command::Convergence};
  /// One or more geometry orders, run in sequence.
  std::vector<GeometryOrder> geos{GeometryOrder::Order1};
  /// Highest level; levels 0..levels are run. At most 6.
  int levels{3};
  int quad_degree{8};
  OutputFormat format{OutputFormat::Csv};
  BoundaryResolution resolution{BoundaryResolution::MeshSize};
  std::optional<std::string> output_path;
  /// meshinfo only: write the finest mesh as JSON.
  std::optional<std::string> mesh_export_path;
};

/// Scientific notation with 4 significant digits and a bare exponent,
/// e.g. 8.013e-2.
std::string format_sci(double value);
/// Two decimals.
std::string format_rate(double value);

inline constexpr const char *kConvergenceCsvHeader =
    "geo_order,level,h,E_area,E_bdry,E_H1,rate_H1,E_L2,rate_L2";

/// Writes the table for `config` to `out`. Throws on invalid configuration or
/// any propagated library error.
void run(const RunConfig &config, std::ostream &out);

/// Runs `config`, writing to `config.output_path` or `out`; diagnostics go to
/// `err`. Returns the process exit status.
int run_main(const RunConfig &config, std::ostream &out, std::ostream &err);

} // namespace curvedfem
