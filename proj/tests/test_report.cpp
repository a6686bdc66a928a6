#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "curvedfem/report.hpp"

using namespace curvedfem;

namespace {

std::vector<std::string> lines(const std::string &text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);)
    out.push_back(line);
  return out;
}

std::vector<std::string> fields(const std::string &line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ','))
    out.push_back(cell);
  if (!line.empty() && line.back() == ',')
    out.emplace_back();
  return out;
}

std::string render(const RunConfig &config) {
  std::ostringstream out;
  run(config, out);
  return out.str();
}

} // namespace

TEST(Format, Scientific) {
  EXPECT_EQ(format_sci(8.0125e-2), "8.013e-2");
  EXPECT_EQ(format_sci(0.4), "4.000e-1");
  EXPECT_EQ(format_sci(1.0), "1.000e0");
  EXPECT_EQ(format_sci(2.5e-12), "2.500e-12");
  EXPECT_EQ(format_sci(0.0), "0.000e0");
  EXPECT_EQ(format_rate(1.916), "1.92");
  EXPECT_EQ(format_rate(0.99), "0.99");
}

TEST(Report, ConvergenceCsv) {
  RunConfig config;
  config.geos = {GeometryOrder::Order1};
  config.levels = 3;
  const auto out = lines(render(config));
  ASSERT_EQ(out.size(), 5u);
  EXPECT_EQ(out[0], kConvergenceCsvHeader);
  const auto first = fields(out[1]);
  ASSERT_EQ(first.size(), 9u);
  EXPECT_EQ(first[0], "1");
  EXPECT_EQ(first[1], "0");
  EXPECT_EQ(first[3], "8.013e-2");
  EXPECT_TRUE(first[6].empty());
  EXPECT_TRUE(first[8].empty());
  const auto last = fields(out[4]);
  EXPECT_NEAR(std::stod(last[6]), 0.99, 0.05);
  EXPECT_NEAR(std::stod(last[8]), 1.99, 0.1);
}

TEST(Report, DeterministicOutput) {
  RunConfig config;
  config.geos = {GeometryOrder::Order1, GeometryOrder::ExactArc};
  config.levels = 2;
  EXPECT_EQ(render(config), render(config));
}

TEST(Report, MarkdownTable) {
  RunConfig config;
  config.geos = {GeometryOrder::Order2};
  config.levels = 1;
  config.format = OutputFormat::Markdown;
  const auto out = lines(render(config));
  ASSERT_EQ(out.size(), 4u);
  EXPECT_EQ(out[0].front(), '|');
  EXPECT_NE(out[2].find("--"), std::string::npos);
}

TEST(Report, GeomExactBoundary) {
  RunConfig config;
  config.command = Command::Geom;
  config.geos = {GeometryOrder::ExactArc};
  config.levels = 2;
  const auto out = lines(render(config));
  ASSERT_EQ(out.size(), 4u);
  for (std::size_t i = 1; i < out.size(); ++i)
    EXPECT_LE(std::stod(fields(out[i])[4]), 1e-12);
}

TEST(Report, MeshInfoAndBoundCheck) {
  RunConfig config;
  config.command = Command::MeshInfo;
  config.geos = {GeometryOrder::ExactArc};
  config.levels = 1;
  EXPECT_EQ(lines(render(config)).size(), 3u);
  config.command = Command::BoundCheck;
  EXPECT_EQ(lines(render(config)).size(), 3u);
}

TEST(Report, InvalidConfiguration) {
  RunConfig config;
  config.levels = 7;
  std::ostringstream out, err;
  EXPECT_NE(run_main(config, out, err), 0);
  EXPECT_FALSE(err.str().empty());
  config.levels = 1;
  config.quad_degree = 9;
  EXPECT_NE(run_main(config, out, err), 0);
}
