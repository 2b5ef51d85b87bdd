#pragma once

// JSON documents for fields and paths.
//
// Field document:
//   {"format_version": "1", "kind": "metric" | "tangent", "n": 2,
//    "points": [{"id": "p0", "weight": 1.0, "matrix": [[1, 0], [0, 1]]}]}
// "kind" is optional on input. A matrix is either n rows of n numbers or a
// flat row-major list of n*n numbers.
//
// Path document ("metric_path" or "tangent_path"):
//   {"format_version": "1", "kind": "metric_path", "n": 2,
//    "points": [{"id": "p0", "weight": 1.0}],
//    "times": [0.0, 0.5],
//    "frames": [[<matrix of p0 at t0>, ...], [<matrix of p0 at t1>, ...]],
//    "diagnostics": {...}}
//
// Numbers are written in shortest round-trip form, so reading a written
// document reproduces every double exactly.

#include <limits>
#include <string>
#include <vector>

#include "metricgeo/fieldmanifold.hpp"

namespace metricgeo::io {

inline constexpr const char* kFormatVersion = "1";

/// A malformed document. The message carries the source name and either a
/// line/column (syntax errors) or a field path such as points[1].matrix.
class DocumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct PointRecord {
  std::string id;
  double weight = 1.0;
  Matrix matrix;
};

/// The parsed, validated content of a field document. Matrices are
/// symmetric within kSymmetryTolerance and have been symmetrized.
struct FieldDocument {
  std::string format_version = kFormatVersion;
  std::string kind;
  int n = 0;
  std::vector<PointRecord> points;

  SampledBase base() const;
};

FieldDocument parse_field_document(const std::string& text, const std::string& source);
FieldDocument read_field_document(const std::string& path);

/// Converts to fields. A value that is not positive definite raises
/// DocumentError naming the point.
MetricField to_metric_field(const FieldDocument& doc, const std::string& source);
TangentField to_tangent_field(const FieldDocument& doc, const std::string& source);

std::string write_field(const MetricField& g);
std::string write_field(const TangentField& h);

struct PathDiagnostics {
  /// +inf when unbounded.
  double sup_t = std::numeric_limits<double>::infinity();
  std::string limiting_point;
  double t_h = std::numeric_limits<double>::quiet_NaN();
};

std::string write_metric_path(const MetricPath& path, const PathDiagnostics& diagnostics);
std::string write_tangent_path(const SampledBase& base, const std::vector<double>& times,
                               const std::vector<TangentField>& fields,
                               const PathDiagnostics& diagnostics);

MetricPath parse_metric_path(const std::string& text, const std::string& source);
MetricPath read_metric_path(const std::string& path);

/// Reads a whole file; throws DocumentError when it cannot be opened.
std::string read_text(const std::string& path);
/// Writes a whole file; throws std::runtime_error on failure.
void write_text(const std::string& path, const std::string& text);

}  // namespace metricgeo::io
