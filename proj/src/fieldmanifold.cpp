#include "metricgeo/fieldmanifold.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include "metricgeo/oracles.hpp"

namespace metricgeo {

SampledBase::SampledBase(int n, std::vector<std::string> ids, std::vector<double> weights)
    : n_(n), ids_(std::move(ids)), weights_(std::move(weights)) {
  if (n_ < 1) throw DimensionError("SampledBase: dimension must be >= 1");
  if (ids_.empty()) throw std::invalid_argument("SampledBase: at least one point is required");
  if (ids_.size() != weights_.size()) {
    throw std::invalid_argument("SampledBase: one weight per point is required");
  }
  std::set<std::string> seen;
  for (std::size_t i = 0; i < ids_.size(); ++i) {
    if (!seen.insert(ids_[i]).second) {
      throw std::invalid_argument("SampledBase: duplicate point id '" + ids_[i] + "'");
    }
    if (!(weights_[i] > 0.0) || !std::isfinite(weights_[i])) {
      throw std::invalid_argument("SampledBase: weight of point '" + ids_[i] +
                                  "' must be finite and > 0");
    }
  }
}

SampledBase SampledBase::single(int n, double weight) { return SampledBase(n, {"p0"}, {weight}); }

void require_same_base(const SampledBase& a, const SampledBase& b) {
  if (!(a == b)) throw BaseMismatchError("fields live on different sampled bases");
}

namespace {

template <class Values>
void check_values(const SampledBase& base, const Values& values, const char* what) {
  if (values.size() != base.size()) {
    std::ostringstream os;
    os << what << ": " << values.size() << " values for " << base.size() << " points";
    throw std::invalid_argument(os.str());
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i].dim() != base.dim()) {
      throw DimensionError(std::string(what) + ": point '" + base.id(i) +
                           "' has the wrong dimension");
    }
  }
}

}  // namespace

TangentField::TangentField(SampledBase base, std::vector<SymMatrix> values)
    : base_(std::move(base)), values_(std::move(values)) {
  check_values(base_, values_, "TangentField");
}

TangentField TangentField::zero(const SampledBase& base) {
  return TangentField(base, std::vector<SymMatrix>(base.size(), SymMatrix::zero(base.dim())));
}

MetricField::MetricField(SampledBase base, std::vector<SPDMatrix> values)
    : base_(std::move(base)), values_(std::move(values)) {
  check_values(base_, values_, "MetricField");
}

MetricField MetricField::identity(const SampledBase& base) {
  return MetricField(base, std::vector<SPDMatrix>(base.size(), SPDMatrix::identity(base.dim())));
}

const std::vector<PointMetricPair>& MetricField::pairs() const {
  if (pairs_.size() != values_.size()) {
    pairs_.clear();
    pairs_.reserve(values_.size());
    for (const SPDMatrix& g : values_) pairs_.emplace_back(g);
  }
  return pairs_;
}

MetricPath::MetricPath(SampledBase base, std::vector<double> times,
                       std::vector<MetricField> frames)
    : base_(std::move(base)), times_(std::move(times)), frames_(std::move(frames)) {
  if (times_.empty()) throw std::invalid_argument("MetricPath: no samples");
  if (times_.size() != frames_.size()) {
    throw std::invalid_argument("MetricPath: one frame per time is required");
  }
  for (std::size_t i = 0; i < times_.size(); ++i) {
    if (!std::isfinite(times_[i])) throw std::invalid_argument("MetricPath: non-finite time");
    if (i > 0 && !(times_[i] > times_[i - 1])) {
      throw std::invalid_argument("MetricPath: times must be strictly increasing");
    }
    require_same_base(base_, frames_[i].base());
  }
}

double MetricPath::uniform_step() const {
  if (times_.size() < 2) throw std::invalid_argument("MetricPath: need at least two samples");
  const double dt = (times_.back() - times_.front()) / static_cast<double>(times_.size() - 1);
  for (std::size_t i = 1; i < times_.size(); ++i) {
    if (std::abs((times_[i] - times_[i - 1]) - dt) > 1e-9 * dt) {
      throw std::invalid_argument("MetricPath: time grid is not uniform");
    }
  }
  return dt;
}

VariationGrid VariationGrid::sample(
    const SampledBase& base, std::vector<double> times, std::vector<double> s_values,
    const std::function<SPDMatrix(std::size_t, double, double)>& g) {
  VariationGrid out;
  out.base = base;
  out.times = std::move(times);
  out.s_values = std::move(s_values);
  for (double s : out.s_values) {
    std::vector<MetricField> row;
    row.reserve(out.times.size());
    for (double t : out.times) {
      row.emplace_back(base, field_map(base, [&](std::size_t i) { return g(i, t, s); }));
    }
    out.frames.push_back(std::move(row));
  }
  return out;
}

MetricPath VariationGrid::path(std::size_t j) const { return MetricPath(base, times, frames.at(j)); }

void CompensatedSum::add(double x) {
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x)) {
    compensation_ += (sum_ - t) + x;
  } else {
    compensation_ += (x - t) + sum_;
  }
  sum_ = t;
}

double global_inner(const MetricField& g, const TangentField& h, const TangentField& k) {
  require_same_base(g.base(), h.base());
  require_same_base(g.base(), k.base());
  const auto& pairs = g.pairs();
  CompensatedSum sum;
  for (std::size_t i = 0; i < g.size(); ++i) {
    sum.add(inner_g(pairs[i], h[i], k[i]) * pairs[i].sqrt_det() * g.base().weight(i));
  }
  return sum.value();
}

namespace {

std::size_t time_index(const std::vector<double>& times, double dt, double t) {
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (std::abs(times[i] - t) <= 1e-9 * dt) return i;
  }
  std::ostringstream os;
  os.precision(17);
  os << "time " << t << " is not a sample of the path on [" << times.front() << ", "
     << times.back() << "]";
  throw std::out_of_range(os.str());
}

// Per-point time derivatives of a path, indexed [point][time].
std::vector<std::vector<SymMatrix>> time_derivatives(const MetricPath& path, double dt,
                                                     int order) {
  const std::size_t count = path.times().size();
  std::vector<std::vector<SymMatrix>> out;
  out.reserve(path.base().size());
  std::vector<SymMatrix> series(count);
  for (std::size_t x = 0; x < path.base().size(); ++x) {
    for (std::size_t i = 0; i < count; ++i) series[i] = path.frames()[i][x].sym();
    out.push_back(central_diff<SymMatrix>(series, dt, order));
  }
  return out;
}

double trapezoid(const std::vector<double>& f, std::size_t a, std::size_t b, double dt) {
  CompensatedSum sum;
  for (std::size_t i = a; i <= b; ++i) {
    sum.add((i == a || i == b ? 0.5 : 1.0) * f[i]);
  }
  return dt * sum.value();
}

}  // namespace

double energy(const MetricPath& path, double a, double b) {
  const double dt = path.uniform_step();
  const std::size_t ia = time_index(path.times(), dt, a);
  const std::size_t ib = time_index(path.times(), dt, b);
  if (ia > ib) throw std::out_of_range("energy: a must not exceed b");
  if (ia == ib) return 0.0;
  const auto g_t = time_derivatives(path, dt, 1);
  std::vector<double> integrand(path.times().size(), 0.0);
  for (std::size_t i = ia; i <= ib; ++i) {
    const MetricField& frame = path.frames()[i];
    const auto& pairs = frame.pairs();
    CompensatedSum sum;
    for (std::size_t x = 0; x < frame.size(); ++x) {
      sum.add(inner_g(pairs[x], g_t[x][i], g_t[x][i]) * pairs[x].sqrt_det() *
              path.base().weight(x));
    }
    integrand[i] = 0.5 * sum.value();
  }
  return trapezoid(integrand, ia, ib, dt);
}

double energy(const MetricPath& path) {
  return energy(path, path.times().front(), path.times().back());
}

namespace {

struct SGrid {
  std::size_t zero = 0;
  double ds = 0.0;
};

SGrid locate_s_zero(const VariationGrid& v) {
  if (v.s_values.size() < 3) {
    throw std::invalid_argument("variation: need at least three s samples");
  }
  if (v.frames.size() != v.s_values.size()) {
    throw std::invalid_argument("variation: one row of frames per s value is required");
  }
  SGrid grid;
  grid.ds = (v.s_values.back() - v.s_values.front()) /
            static_cast<double>(v.s_values.size() - 1);
  if (!(grid.ds > 0.0)) throw std::invalid_argument("variation: s values must increase");
  bool found = false;
  for (std::size_t j = 0; j < v.s_values.size(); ++j) {
    if (j > 0 && std::abs((v.s_values[j] - v.s_values[j - 1]) - grid.ds) > 1e-9 * grid.ds) {
      throw std::invalid_argument("variation: s grid is not uniform");
    }
    if (std::abs(v.s_values[j]) <= 1e-9 * grid.ds) {
      grid.zero = j;
      found = true;
    }
    if (v.frames[j].size() != v.times.size()) {
      throw std::invalid_argument("variation: frame rows do not match the time grid");
    }
  }
  if (!found) throw std::invalid_argument("variation: the s grid does not contain s = 0");
  return grid;
}

SymMatrix s_derivative(const VariationGrid& v, const SGrid& grid, std::size_t i,
                       std::size_t x) {
  const auto at = [&](std::size_t j) -> const SymMatrix& { return v.frames[j][i][x].sym(); };
  const std::size_t j = grid.zero;
  const double s = 1.0 / (2.0 * grid.ds);
  if (j > 0 && j + 1 < v.s_values.size()) return s * (at(j + 1) - at(j - 1));
  if (j == 0) return s * (-3.0 * at(0) + 4.0 * at(1) - at(2));
  return s * (3.0 * at(j) - 4.0 * at(j - 1) + at(j - 2));
}

}  // namespace

double first_variation(const VariationGrid& variation, double a, double b) {
  const SGrid grid = locate_s_zero(variation);
  const MetricPath path = variation.path(grid.zero);
  const double dt = path.uniform_step();
  const std::size_t ia = time_index(path.times(), dt, a);
  const std::size_t ib = time_index(path.times(), dt, b);
  if (ia > ib) throw std::out_of_range("first_variation: a must not exceed b");
  const auto g_t = time_derivatives(path, dt, 1);
  const auto g_tt = time_derivatives(path, dt, 2);
  const std::size_t points = path.base().size();

  std::vector<double> integrand(path.times().size(), 0.0);
  double boundary = 0.0;
  for (std::size_t i = ia; i <= ib; ++i) {
    const auto& pairs = path.frames()[i].pairs();
    CompensatedSum sum;
    CompensatedSum edge;
    for (std::size_t x = 0; x < points; ++x) {
      const PointMetricPair& g = pairs[x];
      const SymMatrix& v = g_t[x][i];
      const SymMatrix g_s = s_derivative(variation, grid, i, x);
      const Matrix m = g.inverse() * v.matrix();
      const SymMatrix e = SymMatrix::symmetric_part(
          -g_tt[x][i].matrix() + v.matrix() * m + 0.25 * trace_product(m, m) * g.metric().matrix() -
          0.5 * m.trace() * v.matrix());
      const double scale = g.sqrt_det() * path.base().weight(x);
      sum.add(inner_g(g, e, g_s) * scale);
      if (i == ia || i == ib) edge.add(inner_g(g, v, g_s) * scale);
    }
    integrand[i] = sum.value();
    if (i == ib) boundary += edge.value();
    if (i == ia) boundary -= edge.value();
  }
  return boundary + (ia == ib ? 0.0 : trapezoid(integrand, ia, ib, dt));
}

double first_variation(const VariationGrid& variation) {
  return first_variation(variation, variation.times.front(), variation.times.back());
}

double energy_difference_quotient(const VariationGrid& variation, double a, double b) {
  const SGrid grid = locate_s_zero(variation);
  if (grid.zero == 0 || grid.zero + 1 == variation.s_values.size()) {
    throw std::invalid_argument("variation: s = 0 must be an interior sample");
  }
  const double plus = energy(variation.path(grid.zero + 1), a, b);
  const double minus = energy(variation.path(grid.zero - 1), a, b);
  return (plus - minus) /
         (variation.s_values[grid.zero + 1] - variation.s_values[grid.zero - 1]);
}

double energy_difference_quotient(const VariationGrid& variation) {
  return energy_difference_quotient(variation, variation.times.front(),
                                    variation.times.back());
}

double global_ricci(const MetricField& g, const TangentField& xi, const TangentField& eta) {
  require_same_base(g.base(), xi.base());
  require_same_base(g.base(), eta.base());
  const auto& pairs = g.pairs();
  CompensatedSum sum;
  for (std::size_t i = 0; i < g.size(); ++i) {
    sum.add(ricci_like(pairs[i], xi[i], eta[i]) * pairs[i].sqrt_det() * g.base().weight(i));
  }
  return sum.value();
}

double global_ricci_traceless_form(const MetricField& g, const TangentField& xi,
                                   const TangentField& eta) {
  require_same_base(g.base(), xi.base());
  require_same_base(g.base(), eta.base());
  const double n = g.base().dim();
  const auto& pairs = g.pairs();
  std::vector<SymMatrix> xi0;
  xi0.reserve(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double tr = pairs[i].raise(xi[i]).trace();
    xi0.push_back(xi[i] - (tr / n) * g[i].sym());
  }
  return -(n / 32.0) * (4.0 + n * (n + 1.0)) *
         global_inner(g, TangentField(g.base(), std::move(xi0)), eta);
}

namespace {

std::vector<GeodesicCoeffs> field_coeffs(const MetricField& g0, const TangentField& h) {
  require_same_base(g0.base(), h.base());
  const auto& pairs = g0.pairs();
  return field_map(g0.base(),
                   [&](std::size_t i) { return GeodesicCoeffs::make(pairs[i], h[i]); });
}

void require_in_interval(const FieldExistence& ex, double t) {
  if (ex.interval.contains(t)) return;
  std::ostringstream os;
  os.precision(17);
  if (t < 0.0) {
    os << "t = " << t << " is negative";
    throw DomainError(Predicate::kExistence, os.str());
  }
  os << "t = " << t << " is not below the existence bound -4/t^h = " << ex.interval.sup_t
     << " (t^h = " << ex.interval.t_h << ")";
  throw DomainError(Predicate::kExistence, os.str(), ex.limiting_id);
}

FieldExistence existence_of(const SampledBase& base, const std::vector<GeodesicCoeffs>& c) {
  FieldExistence out;
  out.interval = existence_interval(c);
  if (out.interval.limiting_point >= 0) {
    out.limiting_id = base.id(static_cast<std::size_t>(out.interval.limiting_point));
  }
  return out;
}

}  // namespace

FieldExistence field_existence_interval(const MetricField& g0, const TangentField& h) {
  return existence_of(g0.base(), field_coeffs(g0, h));
}

MetricField field_exp(const MetricField& g0, const TangentField& h) {
  require_same_base(g0.base(), h.base());
  const auto& pairs = g0.pairs();
  return MetricField(g0.base(), field_map(g0.base(), [&](std::size_t i) {
                       return exp_point(pairs[i], h[i]);
                     }));
}

TangentField field_log(const MetricField& g0, const MetricField& g) {
  require_same_base(g0.base(), g.base());
  const auto& pairs = g0.pairs();
  return TangentField(g0.base(), field_map(g0.base(), [&](std::size_t i) {
                        return log_point(pairs[i], g[i]);
                      }));
}

MetricPath field_geodesic(const MetricField& g0, const TangentField& h,
                          const std::vector<double>& times) {
  const std::vector<GeodesicCoeffs> coeffs = field_coeffs(g0, h);
  const FieldExistence ex = existence_of(g0.base(), coeffs);
  for (double t : times) require_in_interval(ex, t);
  std::vector<MetricField> frames;
  frames.reserve(times.size());
  for (double t : times) {
    frames.emplace_back(g0.base(), field_map(g0.base(), [&](std::size_t i) {
                          return geodesic_point(coeffs[i], t);
                        }));
  }
  return MetricPath(g0.base(), times, std::move(frames));
}

std::vector<TangentField> field_jacobi(const MetricField& g0, const TangentField& h,
                                       const TangentField& k, const TangentField& l,
                                       const std::vector<double>& times) {
  require_same_base(g0.base(), k.base());
  require_same_base(g0.base(), l.base());
  const FieldExistence ex = field_existence_interval(g0, h);
  for (double t : times) require_in_interval(ex, t);
  const auto& pairs = g0.pairs();
  std::vector<TangentField> out;
  out.reserve(times.size());
  for (double t : times) {
    out.emplace_back(g0.base(), field_map(g0.base(), [&](std::size_t i) {
                       return jacobi_field(pairs[i], h[i], k[i], l[i], t);
                     }));
  }
  return out;
}

}  // namespace metricgeo
