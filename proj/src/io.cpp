#include "metricgeo/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace metricgeo::io {

using Json = nlohmann::ordered_json;

namespace {

class Reader {
 public:
  explicit Reader(std::string source) : source_(std::move(source)) {}

  [[noreturn]] void fail(const std::string& where, const std::string& what) const {
    throw DocumentError(source_ + ": " + (where.empty() ? "" : where + ": ") + what);
  }

  Json parse(const std::string& text) const {
    try {
      return Json::parse(text);
    } catch (const Json::parse_error& e) {
      std::size_t line = 1;
      std::size_t column = 1;
      const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
      for (std::size_t i = 0; i < end; ++i) {
        if (text[i] == '\n') {
          ++line;
          column = 1;
        } else {
          ++column;
        }
      }
      std::ostringstream os;
      os << source_ << ": line " << line << ", column " << column << ": invalid JSON";
      throw DocumentError(os.str());
    }
  }

  const Json& member(const Json& obj, const std::string& key, const std::string& where) const {
    if (!obj.is_object()) fail(where, "expected an object");
    const auto it = obj.find(key);
    if (it == obj.end()) fail(where.empty() ? key : where + "." + key, "missing");
    return *it;
  }

  double number(const Json& j, const std::string& where) const {
    if (!j.is_number()) fail(where, "expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) fail(where, "number is not finite");
    return v;
  }

  const Json& array(const Json& j, const std::string& where) const {
    if (!j.is_array()) fail(where, "expected an array");
    return j;
  }

  Matrix matrix(const Json& j, int n, const std::string& where) const {
    array(j, where);
    Matrix m(n, n);
    const auto count = static_cast<std::size_t>(n);
    if (j.size() == count && j[0].is_array()) {
      for (std::size_t r = 0; r < count; ++r) {
        const std::string row_where = where + "[" + std::to_string(r) + "]";
        const Json& row = array(j[r], row_where);
        if (row.size() != count) fail(row_where, "expected " + std::to_string(n) + " entries");
        for (std::size_t c = 0; c < count; ++c) {
          m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
              number(row[c], row_where + "[" + std::to_string(c) + "]");
        }
      }
    } else if (j.size() == count * count) {
      for (std::size_t i = 0; i < count * count; ++i) {
        m(static_cast<Eigen::Index>(i / count), static_cast<Eigen::Index>(i % count)) =
            number(j[i], where + "[" + std::to_string(i) + "]");
      }
    } else {
      std::ostringstream os;
      os << "expected " << n << " rows of " << n << " numbers or " << n * n
         << " numbers in row-major order";
      fail(where, os.str());
    }
    return m;
  }

  SymMatrix symmetric(const Json& j, int n, const std::string& where) const {
    const Matrix m = matrix(j, n, where);
    try {
      return SymMatrix(m);
    } catch (const InvalidMatrixError& e) {
      fail(where, e.what());
    }
  }

  SPDMatrix spd(const Json& j, int n, const std::string& where) const {
    const SymMatrix s = symmetric(j, n, where);
    if (!is_spd(s.matrix())) fail(where, "matrix is not positive definite");
    return SPDMatrix(s);
  }

  void header(const Json& doc, const std::vector<std::string>& kinds) const {
    if (!doc.is_object()) fail("", "expected a JSON object at the top level");
    const Json& version = member(doc, "format_version", "");
    if (!version.is_string() || version.get<std::string>() != kFormatVersion) {
      fail("format_version", std::string("expected \"") + kFormatVersion + "\"");
    }
    const auto it = doc.find("kind");
    if (it != doc.end()) {
      if (!it->is_string()) fail("kind", "expected a string");
      const std::string kind = it->get<std::string>();
      if (std::find(kinds.begin(), kinds.end(), kind) == kinds.end()) {
        fail("kind", "unexpected kind \"" + kind + "\"");
      }
    }
  }

  int dimension(const Json& doc) const {
    const Json& n = member(doc, "n", "");
    if (!n.is_number_integer() || n.get<long long>() < 1 || n.get<long long>() > 64) {
      fail("n", "expected an integer between 1 and 64");
    }
    return n.get<int>();
  }

  // ids and weights of the "points" array.
  std::vector<PointRecord> points(const Json& doc, int n, bool with_matrix) const {
    const Json& pts = array(member(doc, "points", ""), "points");
    if (pts.empty()) fail("points", "at least one point is required");
    std::vector<PointRecord> out;
    std::set<std::string> seen;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const std::string where = "points[" + std::to_string(i) + "]";
      PointRecord rec;
      const Json& id = member(pts[i], "id", where);
      if (!id.is_string() || id.get<std::string>().empty()) {
        fail(where + ".id", "expected a non-empty string");
      }
      rec.id = id.get<std::string>();
      if (!seen.insert(rec.id).second) fail(where + ".id", "duplicate id \"" + rec.id + "\"");
      rec.weight = number(member(pts[i], "weight", where), where + ".weight");
      if (!(rec.weight > 0.0)) fail(where + ".weight", "must be > 0");
      if (with_matrix) {
        rec.matrix = symmetric(member(pts[i], "matrix", where), n, where + ".matrix").matrix();
      }
      out.push_back(std::move(rec));
    }
    return out;
  }

  const std::string& source() const { return source_; }

 private:
  std::string source_;
};

Json matrix_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json points_json(const SampledBase& base) {
  Json pts = Json::array();
  for (std::size_t i = 0; i < base.size(); ++i) {
    pts.push_back(Json{{"id", base.id(i)}, {"weight", base.weight(i)}});
  }
  return pts;
}

template <class Values>
std::string field_json(const SampledBase& base, const Values& values, const char* kind) {
  Json doc;
  doc["format_version"] = kFormatVersion;
  doc["kind"] = kind;
  doc["n"] = base.dim();
  Json pts = Json::array();
  for (std::size_t i = 0; i < base.size(); ++i) {
    pts.push_back(Json{
        {"id", base.id(i)}, {"weight", base.weight(i)}, {"matrix", matrix_json(values[i].matrix())}});
  }
  doc["points"] = std::move(pts);
  return doc.dump(2) + "\n";
}

Json diagnostics_json(const PathDiagnostics& d) {
  Json out;
  out["sup_t"] = std::isfinite(d.sup_t) ? Json(d.sup_t) : Json(nullptr);
  out["limiting_point"] = d.limiting_point.empty() ? Json(nullptr) : Json(d.limiting_point);
  out["t_h"] = std::isnan(d.t_h) ? Json(nullptr) : Json(d.t_h);
  return out;
}

template <class FrameValues>
std::string path_json(const SampledBase& base, const std::vector<double>& times,
                      const FrameValues& frame_values, const PathDiagnostics& d,
                      const char* kind) {
  Json doc;
  doc["format_version"] = kFormatVersion;
  doc["kind"] = kind;
  doc["n"] = base.dim();
  doc["points"] = points_json(base);
  doc["times"] = times;
  Json frames = Json::array();
  for (std::size_t k = 0; k < times.size(); ++k) {
    Json frame = Json::array();
    for (std::size_t i = 0; i < base.size(); ++i) {
      frame.push_back(matrix_json(frame_values(k, i)));
    }
    frames.push_back(std::move(frame));
  }
  doc["frames"] = std::move(frames);
  doc["diagnostics"] = diagnostics_json(d);
  return doc.dump(2) + "\n";
}

}  // namespace

SampledBase FieldDocument::base() const {
  std::vector<std::string> ids;
  std::vector<double> weights;
  for (const PointRecord& p : points) {
    ids.push_back(p.id);
    weights.push_back(p.weight);
  }
  return SampledBase(n, std::move(ids), std::move(weights));
}

FieldDocument parse_field_document(const std::string& text, const std::string& source) {
  const Reader r(source);
  const Json doc = r.parse(text);
  r.header(doc, {"metric", "tangent"});
  FieldDocument out;
  out.n = r.dimension(doc);
  const auto kind = doc.find("kind");
  if (kind != doc.end()) out.kind = kind->get<std::string>();
  out.points = r.points(doc, out.n, true);
  return out;
}

FieldDocument read_field_document(const std::string& path) {
  return parse_field_document(read_text(path), path);
}

MetricField to_metric_field(const FieldDocument& doc, const std::string& source) {
  std::vector<SPDMatrix> values;
  for (std::size_t i = 0; i < doc.points.size(); ++i) {
    if (!is_spd(doc.points[i].matrix)) {
      throw DocumentError(source + ": points[" + std::to_string(i) + "] (\"" +
                          doc.points[i].id + "\").matrix: metric value is not positive definite");
    }
    values.emplace_back(doc.points[i].matrix);
  }
  return MetricField(doc.base(), std::move(values));
}

TangentField to_tangent_field(const FieldDocument& doc, const std::string& /*source*/) {
  std::vector<SymMatrix> values;
  for (const PointRecord& p : doc.points) values.push_back(SymMatrix::symmetric_part(p.matrix));
  return TangentField(doc.base(), std::move(values));
}

std::string write_field(const MetricField& g) { return field_json(g.base(), g.values(), "metric"); }

std::string write_field(const TangentField& h) {
  return field_json(h.base(), h.values(), "tangent");
}

std::string write_metric_path(const MetricPath& path, const PathDiagnostics& diagnostics) {
  return path_json(
      path.base(), path.times(),
      [&](std::size_t k, std::size_t i) -> const Matrix& { return path.frames()[k][i].matrix(); },
      diagnostics, "metric_path");
}

std::string write_tangent_path(const SampledBase& base, const std::vector<double>& times,
                               const std::vector<TangentField>& fields,
                               const PathDiagnostics& diagnostics) {
  if (fields.size() != times.size()) {
    throw std::invalid_argument("write_tangent_path: one field per time is required");
  }
  return path_json(
      base, times,
      [&](std::size_t k, std::size_t i) -> const Matrix& { return fields[k][i].matrix(); },
      diagnostics, "tangent_path");
}

MetricPath parse_metric_path(const std::string& text, const std::string& source) {
  const Reader r(source);
  const Json doc = r.parse(text);
  r.header(doc, {"metric_path"});
  const int n = r.dimension(doc);
  const std::vector<PointRecord> points = r.points(doc, n, false);
  std::vector<std::string> ids;
  std::vector<double> weights;
  for (const PointRecord& p : points) {
    ids.push_back(p.id);
    weights.push_back(p.weight);
  }
  const SampledBase base(n, std::move(ids), std::move(weights));

  const Json& times_json = r.array(r.member(doc, "times", ""), "times");
  std::vector<double> times;
  for (std::size_t k = 0; k < times_json.size(); ++k) {
    times.push_back(r.number(times_json[k], "times[" + std::to_string(k) + "]"));
    if (k > 0 && !(times[k] > times[k - 1])) {
      r.fail("times[" + std::to_string(k) + "]", "times must be strictly increasing");
    }
  }
  if (times.empty()) r.fail("times", "at least one sample is required");

  const Json& frames_json = r.array(r.member(doc, "frames", ""), "frames");
  if (frames_json.size() != times.size()) r.fail("frames", "expected one frame per time");
  std::vector<MetricField> frames;
  for (std::size_t k = 0; k < frames_json.size(); ++k) {
    const std::string where = "frames[" + std::to_string(k) + "]";
    const Json& frame = r.array(frames_json[k], where);
    if (frame.size() != base.size()) r.fail(where, "expected one matrix per point");
    std::vector<SPDMatrix> values;
    for (std::size_t i = 0; i < frame.size(); ++i) {
      values.push_back(r.spd(frame[i], n, where + "[" + std::to_string(i) + "]"));
    }
    frames.emplace_back(base, std::move(values));
  }
  return MetricPath(base, std::move(times), std::move(frames));
}

MetricPath read_metric_path(const std::string& path) {
  return parse_metric_path(read_text(path), path);
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DocumentError(path + ": cannot open file");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error(path + ": cannot open file for writing");
  out << text;
  if (!out) throw std::runtime_error(path + ": write failed");
}

}  // namespace metricgeo::io
