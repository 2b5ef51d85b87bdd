#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <limits>
#include <random>
#include <string>

#include "metricgeo/io.hpp"
#include "metricgeo/oracles.hpp"
#include "test_util.hpp"

namespace metricgeo::io {
namespace {

std::string message_of(const std::string& text) {
  try {
    parse_field_document(text, "doc.json");
  } catch (const DocumentError& e) {
    return e.what();
  }
  return {};
}

TEST(FieldDocument, ParsesNestedAndFlatMatrices) {
  const FieldDocument doc = parse_field_document(
      R"({"format_version": "1", "kind": "metric", "n": 2,
          "points": [{"id": "a", "weight": 0.5, "matrix": [[2, 1], [1, 3]]},
                     {"id": "b", "weight": 1.0, "matrix": [1, 0, 0, 4]}]})",
      "doc.json");
  ASSERT_EQ(doc.points.size(), 2u);
  EXPECT_EQ(doc.points[0].matrix(0, 1), 1.0);
  EXPECT_EQ(doc.points[1].weight, 1.0);
  EXPECT_EQ(doc.points[1].matrix(1, 1), 4.0);
  const MetricField g = to_metric_field(doc, "doc.json");
  EXPECT_EQ(g.base().id(1), "b");
  EXPECT_EQ(g.base().weight(0), 0.5);
}

TEST(FieldDocument, ReportsLocationOfErrors) {
  EXPECT_NE(message_of("{\n  \"n\": 2,\n  oops\n}").find("line 3"), std::string::npos);
  EXPECT_NE(message_of(R"({"format_version": "1", "n": 2, "points": [{"id": "a", "weight": 1.0, "matrix": [[1, 0], [0]]}]})")
                .find("points[0].matrix[1]"),
            std::string::npos);
  EXPECT_NE(message_of(R"({"format_version": "1", "n": 2, "points": [{"id": "a", "weight": 1.0, "matrix": [[1, 5], [0, 1]]}]})")
                .find("points[0].matrix"),
            std::string::npos);
  EXPECT_NE(message_of(R"({"format_version": "1", "n": 2, "points": [{"id": "a", "weight": 1.0, "matrix": [[1, "x"], [0, 1]]}]})")
                .find("points[0].matrix[0][1]"),
            std::string::npos);
  EXPECT_NE(message_of(R"({"format_version": "1", "n": 2})").find("points"), std::string::npos);
  EXPECT_NE(message_of(R"({"format_version": "2", "n": 2, "points": []})").find("format_version"),
            std::string::npos);
  EXPECT_NE(message_of(R"({"format_version": "1", "n": 2, "points": [{"id": "a", "weight": 1.0, "matrix": [1, 0, 0, 1]},
                                              {"id": "a", "weight": 1.0, "matrix": [1, 0, 0, 1]}]})")
                .find("duplicate"),
            std::string::npos);
}

TEST(FieldDocument, NonPositiveMetricNamesPoint) {
  const FieldDocument doc = parse_field_document(
      R"({"format_version": "1", "n": 2, "points": [{"id": "ok", "weight": 1.0, "matrix": [1, 0, 0, 1]},
                             {"id": "bad", "weight": 1.0, "matrix": [1, 0, 0, -1]}]})",
      "doc.json");
  EXPECT_NO_THROW(to_tangent_field(doc, "doc.json"));
  try {
    to_metric_field(doc, "doc.json");
    FAIL() << "expected DocumentError";
  } catch (const DocumentError& e) {
    EXPECT_NE(std::string(e.what()).find("\"bad\""), std::string::npos);
  }
}

TEST(FieldDocument, RoundtripIsLossless) {
  std::mt19937_64 rng(81);
  const SampledBase base(3, {"p", "q"}, {0.1, 1.0 / 3.0});
  const MetricField g(base, {random_spd(rng, 3), random_spd(rng, 3)});
  const TangentField h(base, {random_sym(rng, 3), random_sym(rng, 3)});
  const MetricField g2 = to_metric_field(parse_field_document(write_field(g), "g"), "g");
  const TangentField h2 = to_tangent_field(parse_field_document(write_field(h), "h"), "h");
  EXPECT_EQ(g2.base(), base);
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_EQ(g2[i].matrix(), g[i].matrix());
    EXPECT_EQ(h2[i].matrix(), h[i].matrix());
  }
  EXPECT_EQ(write_field(g2), write_field(g));
}

TEST(MetricPathDocument, RoundtripAndDiagnostics) {
  std::mt19937_64 rng(82);
  const SampledBase base = SampledBase::single(2, 0.75);
  std::vector<MetricField> frames;
  for (int i = 0; i < 3; ++i) frames.emplace_back(base, std::vector<SPDMatrix>{random_spd(rng, 2)});
  const MetricPath path(base, {0.0, 0.1, 0.2}, frames);
  const std::string text = write_metric_path(path, PathDiagnostics{});
  EXPECT_NE(text.find("\"sup_t\": null"), std::string::npos);
  const MetricPath back = parse_metric_path(text, "p");
  EXPECT_EQ(back.times(), path.times());
  for (int i = 0; i < 3; ++i) EXPECT_EQ(back.frames()[i][0].matrix(), frames[i][0].matrix());

  PathDiagnostics d;
  d.sup_t = 2.0;
  d.limiting_point = "p0";
  d.t_h = -2.0;
  const std::string bounded = write_metric_path(path, d);
  EXPECT_NE(bounded.find("\"sup_t\": 2.0"), std::string::npos);
  EXPECT_NE(bounded.find("\"limiting_point\": \"p0\""), std::string::npos);
}

TEST(Files, MissingFileIsDocumentError) {
  EXPECT_THROW(read_text("/nonexistent/dir/file.json"), DocumentError);
  const std::filesystem::path tmp = std::filesystem::temp_directory_path() / "metricgeo_io_test.json";
  write_text(tmp.string(), "{\"format_version\": \"1\", \"n\": 1, \"points\": [{\"id\": \"x\", \"weight\": 1.0, \"matrix\": [2]}]}");
  const FieldDocument doc = read_field_document(tmp.string());
  EXPECT_EQ(doc.n, 1);
  EXPECT_EQ(doc.points[0].matrix(0, 0), 2.0);
  std::filesystem::remove(tmp);
}

}  // namespace
}  // namespace metricgeo::io
