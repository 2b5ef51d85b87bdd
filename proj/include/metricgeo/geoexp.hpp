#pragma once

// Explicit geodesics g(t) = g0 exp(a(t) Id + b(t) H0) of the canonical metric,
// their maximal existence time, and the exponential map with its inverse on
// the exact domains U and V.

#include <limits>

#include "metricgeo/pointgeo.hpp"

namespace metricgeo {

/// Threshold deciding "H0 = 0": tr(H0^2) below 1e-12 max(1, tr(H^2)).
double traceless_threshold(double tr_h2);

/// Per-point data of a geodesic starting at g0 with initial velocity h.
///
/// Mixed tensors are stored in a g0-orthonormal frame: with S = g0^{1/2}, the
/// mixed velocity H = g0^-1 h is similar to the symmetric W = S^-1 h S^-1.
/// Traces and the exponent a Id + b H0 are the same in either frame.
struct GeodesicCoeffs {
  PointMetricPair g0;
  SymMatrix w;          // S^-1 h S^-1
  SymMatrix w0;         // traceless part of w
  double tr_h = 0.0;    // tr H
  double tr_h2 = 0.0;   // tr H^2
  double d0 = 0.0;      // tr H0^2

  static GeodesicCoeffs make(const PointMetricPair& g0, const SymMatrix& h);

  int dim() const { return g0.dim(); }
  /// True when the traceless part is numerically zero (conformal direction).
  bool conformal() const { return d0 < traceless_threshold(tr_h2); }
  /// Mixed tensors H and H0 in the coordinate frame.
  Matrix mixed_h() const;
  Matrix mixed_h0() const;
  /// sup of the existence interval at this point (+inf if unbounded).
  double sup_t() const;
};

struct GeodesicScalars {
  double a = 0.0;
  double b = 0.0;
};

/// Scalars of the explicit geodesic for raw traces (tr H, tr H0^2) in
/// dimension n. The arctangent is the continuous argument of
/// (4 + t tr H) + i t sqrt(n d0). Negative t is handled by reflection
/// (h, t) -> (-h, -t). Throws DomainError when t is outside the interval.
GeodesicScalars geodesic_scalars(double tr_h, double d0, int n, double t);
GeodesicScalars geodesic_scalars(const GeodesicCoeffs& coeffs, double t);

/// g0 exp(a(t) Id + b(t) H0), exactly symmetric.
SPDMatrix geodesic_point(const GeodesicCoeffs& coeffs, double t);
SPDMatrix geodesic_point(const PointMetricPair& g0, const SymMatrix& h, double t);

/// P(t) = g(t)^-1 g'(t) = e^{-n a/2} ((4 tr H + n t tr H^2)/(4n) Id + H0).
Matrix geodesic_velocity_mixed(const GeodesicCoeffs& coeffs, double t);
/// g'(t) = g(t) P(t), covariant.
SymMatrix geodesic_velocity(const GeodesicCoeffs& coeffs, double t);

struct ExistenceInterval {
  double sup_t = std::numeric_limits<double>::infinity();
  /// Index of the point attaining t^h, or -1 when unbounded.
  long limiting_point = -1;
  /// t^h = min tr H over conformal points; NaN when there are none.
  double t_h = std::numeric_limits<double>::quiet_NaN();

  bool bounded() const { return sup_t < std::numeric_limits<double>::infinity(); }
  bool contains(double t) const { return t >= 0.0 && t < sup_t; }
};

/// Existence interval of the geodesic through a set of points: unbounded
/// unless some conformal point has tr H < 0, then -4/t^h.
ExistenceInterval existence_interval(std::span<const GeodesicCoeffs> points);

/// h is not a multiple lambda g0 with lambda <= -4/n.
bool in_exp_domain(const PointMetricPair& g0, const SymMatrix& h);
/// tr(A0^2) < (4 pi)^2 / n for A = log(g0^-1 g).
bool in_log_domain(const PointMetricPair& g0, const SPDMatrix& g);

/// Exp_{g0}(h) = geodesic_point(g0, h, 1).
SPDMatrix exp_point(const PointMetricPair& g0, const SymMatrix& h);
/// Inverse of exp_point on V.
SymMatrix log_point(const PointMetricPair& g0, const SPDMatrix& g);

struct PlaneCoords {
  double u = 0.0;
  double v = 0.0;
};

/// The exponential map restricted to the plane spanned by Id and a traceless
/// A with tr(A^2) = n: (x, y) -> (u, v) where Exp_Id(y Id + x A) = exp(v Id + u A).
/// The excluded ray {0} x (-inf, -4/n] throws DomainError.
PlaneCoords figure1_map(double x, double y, int n);

}  // namespace metricgeo
