#pragma once

// Metric and tangent fields on a sampled base manifold, and the global
// objects built from them by quadrature: the canonical metric G, the energy
// of a path, the first variation of the energy and the integrated Ricci-like
// tensor. Field-level exponential, logarithm, geodesics and Jacobi fields
// apply the pointwise operations point by point.

#include <functional>
#include <string>
#include <vector>

#include "metricgeo/jacobi.hpp"

namespace metricgeo {

/// Quadrature data for the base manifold: ordered point ids and a positive
/// weight (the dx factor) per point.
class SampledBase {
 public:
  SampledBase() = default;
  SampledBase(int n, std::vector<std::string> ids, std::vector<double> weights);

  /// A single point "p0" with the given weight.
  static SampledBase single(int n, double weight = 1.0);

  int dim() const { return n_; }
  std::size_t size() const { return ids_.size(); }
  const std::vector<std::string>& ids() const { return ids_; }
  const std::vector<double>& weights() const { return weights_; }
  const std::string& id(std::size_t i) const { return ids_[i]; }
  double weight(std::size_t i) const { return weights_[i]; }

  friend bool operator==(const SampledBase&, const SampledBase&) = default;

 private:
  int n_ = 0;
  std::vector<std::string> ids_;
  std::vector<double> weights_;
};

void require_same_base(const SampledBase& a, const SampledBase& b);

class TangentField {
 public:
  TangentField() = default;
  TangentField(SampledBase base, std::vector<SymMatrix> values);
  static TangentField zero(const SampledBase& base);

  const SampledBase& base() const { return base_; }
  const std::vector<SymMatrix>& values() const { return values_; }
  const SymMatrix& operator[](std::size_t i) const { return values_[i]; }
  std::size_t size() const { return values_.size(); }

 private:
  SampledBase base_;
  std::vector<SymMatrix> values_;
};

class MetricField {
 public:
  MetricField() = default;
  MetricField(SampledBase base, std::vector<SPDMatrix> values);
  static MetricField identity(const SampledBase& base);

  const SampledBase& base() const { return base_; }
  const std::vector<SPDMatrix>& values() const { return values_; }
  const SPDMatrix& operator[](std::size_t i) const { return values_[i]; }
  std::size_t size() const { return values_.size(); }
  /// Per-point factorizations, computed on first use.
  const std::vector<PointMetricPair>& pairs() const;

 private:
  SampledBase base_;
  std::vector<SPDMatrix> values_;
  mutable std::vector<PointMetricPair> pairs_;
};

/// A curve t -> g(t) sampled at strictly increasing times.
class MetricPath {
 public:
  MetricPath() = default;
  MetricPath(SampledBase base, std::vector<double> times, std::vector<MetricField> frames);

  const SampledBase& base() const { return base_; }
  const std::vector<double>& times() const { return times_; }
  const std::vector<MetricField>& frames() const { return frames_; }
  /// The common spacing; throws std::invalid_argument if the grid is not
  /// uniform to 1e-9 relative.
  double uniform_step() const;

 private:
  SampledBase base_;
  std::vector<double> times_;
  std::vector<MetricField> frames_;
};

/// A two-parameter family g(t,s) on a uniform (t, s) grid containing s = 0.
struct VariationGrid {
  SampledBase base;
  std::vector<double> times;
  std::vector<double> s_values;
  /// frames[j][i] is g(times[i], s_values[j]).
  std::vector<std::vector<MetricField>> frames;

  /// Samples `g(point, t, s)` on the grid.
  static VariationGrid sample(const SampledBase& base, std::vector<double> times,
                              std::vector<double> s_values,
                              const std::function<SPDMatrix(std::size_t, double, double)>& g);

  /// The path s = s_values[j].
  MetricPath path(std::size_t j) const;
};

/// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x);
  double value() const { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

/// G_g(h,k) = sum_x tr(g^-1 h g^-1 k) sqrt(det g) w_x, in point order.
double global_inner(const MetricField& g, const TangentField& h, const TangentField& k);

/// E = 1/2 int_a^b G_g(g_t, g_t) dt by the composite trapezoid rule, with
/// g_t from second-order differences over the whole path. `a` and `b` must
/// be sample times of the path.
double energy(const MetricPath& path, double a, double b);
double energy(const MetricPath& path);

/// d/ds|_0 E_a^b(g(., s)) = G_g(g_t, g_s)|_a^b
///   + int_a^b G_g(-g_tt + g_t g^-1 g_t + 1/4 tr(g^-1 g_t g^-1 g_t) g
///                 - 1/2 tr(g^-1 g_t) g_t, g_s) dt,
/// evaluated by quadrature. `a` and `b` must be sample times; when the grid
/// extends beyond them, the time derivatives at a and b are central.
double first_variation(const VariationGrid& variation, double a, double b);
double first_variation(const VariationGrid& variation);

/// The centered difference (E_a^b(s_+) - E_a^b(s_-)) / (s_+ - s_-) over the
/// samples adjacent to s = 0.
double energy_difference_quotient(const VariationGrid& variation, double a, double b);
double energy_difference_quotient(const VariationGrid& variation);

/// Ric(xi, eta) = sum_x ricci_like(g, xi, eta) sqrt(det g) w_x.
double global_ricci(const MetricField& g, const TangentField& xi, const TangentField& eta);
/// -(n/32)(4 + n(n+1)) G_g(xi0, eta) with xi0 = xi - tr(g^-1 xi)/n g.
double global_ricci_traceless_form(const MetricField& g, const TangentField& xi,
                                   const TangentField& eta);

/// Applies `op(i)` to every point in order. A DomainError thrown at point i is
/// rethrown carrying that point's id.
template <class Op>
auto field_map(const SampledBase& base, Op op) {
  using Result = decltype(op(std::size_t{0}));
  std::vector<Result> out;
  out.reserve(base.size());
  for (std::size_t i = 0; i < base.size(); ++i) {
    try {
      out.push_back(op(i));
    } catch (const DomainError& e) {
      if (!e.point_id().empty()) throw;
      throw e.at_point(base.id(i));
    }
  }
  return out;
}

/// Existence interval of the field geodesic: the minimum over points.
struct FieldExistence {
  ExistenceInterval interval;
  /// Id of the point attaining t^h; empty when unbounded.
  std::string limiting_id;
};
FieldExistence field_existence_interval(const MetricField& g0, const TangentField& h);

MetricField field_exp(const MetricField& g0, const TangentField& h);
TangentField field_log(const MetricField& g0, const MetricField& g);

/// The field geodesic sampled at `times`. Every time must lie in the
/// existence interval; otherwise DomainError(kExistence) names the limiting
/// point.
MetricPath field_geodesic(const MetricField& g0, const TangentField& h,
                          const std::vector<double>& times);

/// Jacobi fields with J(0) = k and (nabla_t J)(0) = l, one per time.
std::vector<TangentField> field_jacobi(const MetricField& g0, const TangentField& h,
                                       const TangentField& k, const TangentField& l,
                                       const std::vector<double>& times);

}  // namespace metricgeo
