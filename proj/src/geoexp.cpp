#include "metricgeo/geoexp.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace metricgeo {

namespace {

constexpr double kSeriesCutoff = 1e-4;

bool conformal_traces(double tr_h, double d0, int n) {
  return d0 < traceless_threshold(d0 + tr_h * tr_h / n);
}

// atan(x)/x
double atan_ratio(double x) {
  if (std::abs(x) < kSeriesCutoff) {
    const double x2 = x * x;
    return 1.0 - x2 / 3.0 + x2 * x2 / 5.0 - x2 * x2 * x2 / 7.0 + x2 * x2 * x2 * x2 / 9.0;
  }
  return std::atan(x) / x;
}

// sin(x)/x
double sinc(double x) {
  if (std::abs(x) < kSeriesCutoff) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0 - x2 * x2 * x2 / 5040.0 +
           x2 * x2 * x2 * x2 / 362880.0;
  }
  return std::sin(x) / x;
}

// 1 - cos(x)
double one_minus_cos(double x) {
  if (std::abs(x) < kSeriesCutoff) {
    const double x2 = x * x;
    return x2 / 2.0 - x2 * x2 / 24.0 + x2 * x2 * x2 / 720.0 - x2 * x2 * x2 * x2 / 40320.0;
  }
  const double s = std::sin(0.5 * x);
  return 2.0 * s * s;
}

std::string existence_message(double t, double sup) {
  std::ostringstream os;
  os.precision(17);
  os << "t = " << t << " is outside the existence interval [0, " << sup << ")";
  return os.str();
}

}  // namespace

double traceless_threshold(double tr_h2) { return 1e-12 * std::max(1.0, tr_h2); }

GeodesicCoeffs GeodesicCoeffs::make(const PointMetricPair& g0, const SymMatrix& h) {
  GeodesicCoeffs c;
  c.g0 = g0;
  c.w = g0.whiten(h);
  c.w0 = traceless_part(c.w);
  c.tr_h = c.w.trace();
  c.tr_h2 = trace_inner(c.w, c.w);
  c.d0 = trace_inner(c.w0, c.w0);
  return c;
}

Matrix GeodesicCoeffs::mixed_h() const { return g0.inv_root() * w.matrix() * g0.root(); }

Matrix GeodesicCoeffs::mixed_h0() const { return g0.inv_root() * w0.matrix() * g0.root(); }

double GeodesicCoeffs::sup_t() const {
  if (conformal_traces(tr_h, d0, dim()) && tr_h < 0.0) return -4.0 / tr_h;
  return std::numeric_limits<double>::infinity();
}

GeodesicScalars geodesic_scalars(double tr_h, double d0, int n, double t) {
  if (!std::isfinite(t)) throw DomainError(Predicate::kExistence, "t must be finite");
  if (t < 0.0) {
    // the geodesic in direction -h traversed forward
    const GeodesicScalars r = geodesic_scalars(-tr_h, d0, n, -t);
    return {r.a, -r.b};
  }
  const double nd = n;
  const double denom = 4.0 + t * tr_h;
  if (conformal_traces(tr_h, d0, n)) {
    if (denom <= 0.0) {
      throw DomainError(Predicate::kExistence, existence_message(t, -4.0 / tr_h));
    }
    const double a = (2.0 / nd) * std::log((denom * denom + nd * d0 * t * t) / 16.0);
    return {a, 4.0 * t / denom};
  }
  const double r = std::sqrt(nd * d0);
  const double a = (2.0 / nd) * std::log((denom * denom + t * t * r * r) / 16.0);
  // b = (4/r) arg(denom + i t r); the argument stays in [0, pi) for t >= 0.
  double b;
  if (denom > 0.0 && t * r < kSeriesCutoff * denom) {
    b = 4.0 * t / denom * atan_ratio(t * r / denom);
  } else {
    b = 4.0 / r * std::atan2(t * r, denom);
  }
  return {a, b};
}

GeodesicScalars geodesic_scalars(const GeodesicCoeffs& coeffs, double t) {
  return geodesic_scalars(coeffs.tr_h, coeffs.d0, coeffs.dim(), t);
}

SPDMatrix geodesic_point(const GeodesicCoeffs& coeffs, double t) {
  if (t == 0.0 || coeffs.w.matrix().isZero(0.0)) return coeffs.g0.metric();
  const GeodesicScalars s = geodesic_scalars(coeffs, t);
  const SPDMatrix e = sym_exp(s.b * coeffs.w0);
  const Matrix& root = coeffs.g0.root();
  Matrix g = std::exp(s.a) * (root * e.matrix() * root);
  g = 0.5 * (g + g.transpose());
  if (!is_spd(g)) {
    throw DomainError(Predicate::kPositivity,
                      "geodesic value is not numerically positive definite");
  }
  return SPDMatrix::unchecked(SymMatrix::symmetric_part(g));
}

SPDMatrix geodesic_point(const PointMetricPair& g0, const SymMatrix& h, double t) {
  return geodesic_point(GeodesicCoeffs::make(g0, h), t);
}

namespace {

// P(t) in the g0-orthonormal frame: e^{-n a/2} (p Id + W0).
Matrix whitened_velocity(const GeodesicCoeffs& c, double t, double a) {
  const int n = c.dim();
  const double nd = n;
  const double p = (4.0 * c.tr_h + nd * t * c.tr_h2) / (4.0 * nd);
  return std::exp(-0.5 * nd * a) * (p * Matrix::Identity(n, n) + c.w0.matrix());
}

}  // namespace

Matrix geodesic_velocity_mixed(const GeodesicCoeffs& coeffs, double t) {
  const GeodesicScalars s = geodesic_scalars(coeffs, t);
  return coeffs.g0.inv_root() * whitened_velocity(coeffs, t, s.a) * coeffs.g0.root();
}

SymMatrix geodesic_velocity(const GeodesicCoeffs& coeffs, double t) {
  const GeodesicScalars s = geodesic_scalars(coeffs, t);
  const SPDMatrix e = sym_exp(s.b * coeffs.w0);
  const Matrix& root = coeffs.g0.root();
  const Matrix inner = std::exp(s.a) * e.matrix() * whitened_velocity(coeffs, t, s.a);
  return SymMatrix::symmetric_part(root * inner * root);
}

ExistenceInterval existence_interval(std::span<const GeodesicCoeffs> points) {
  ExistenceInterval out;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const GeodesicCoeffs& c = points[i];
    if (!conformal_traces(c.tr_h, c.d0, c.dim())) continue;
    if (std::isnan(out.t_h) || c.tr_h < out.t_h) {
      out.t_h = c.tr_h;
      out.limiting_point = static_cast<long>(i);
    }
  }
  if (!std::isnan(out.t_h) && out.t_h < 0.0) {
    out.sup_t = -4.0 / out.t_h;
  } else {
    out.limiting_point = -1;
  }
  return out;
}

bool in_exp_domain(const PointMetricPair& g0, const SymMatrix& h) {
  const GeodesicCoeffs c = GeodesicCoeffs::make(g0, h);
  // points within roundoff of the ray's endpoint count as on the ray
  return !(conformal_traces(c.tr_h, c.d0, c.dim()) && c.tr_h <= -4.0 * (1.0 - 1e-12));
}

namespace {

struct WhitenedLog {
  SymMatrix a;
  SymMatrix a0;
  double q = 0.0;  // tr(A0^2)
};

WhitenedLog whitened_log(const PointMetricPair& g0, const SPDMatrix& g) {
  if (g.dim() != g0.dim()) throw DimensionError("log: dimension mismatch");
  const SymMatrix m = g0.whiten(g.sym());
  WhitenedLog out;
  out.a = sym_log(SPDMatrix(m));
  out.a0 = traceless_part(out.a);
  out.q = trace_inner(out.a0, out.a0);
  return out;
}

double log_domain_bound(int n) {
  return 16.0 * std::numbers::pi * std::numbers::pi / static_cast<double>(n);
}

}  // namespace

bool in_log_domain(const PointMetricPair& g0, const SPDMatrix& g) {
  return whitened_log(g0, g).q < log_domain_bound(g0.dim());
}

SPDMatrix exp_point(const PointMetricPair& g0, const SymMatrix& h) {
  if (!in_exp_domain(g0, h)) {
    std::ostringstream os;
    os << "direction lies on the excluded ray (-inf, -4/" << g0.dim() << "] g0";
    throw DomainError(Predicate::kExpDomain, os.str());
  }
  return geodesic_point(g0, h, 1.0);
}

SymMatrix log_point(const PointMetricPair& g0, const SPDMatrix& g) {
  const WhitenedLog lg = whitened_log(g0, g);
  const int n = g0.dim();
  const double nd = n;
  if (!(lg.q < log_domain_bound(n))) {
    std::ostringstream os;
    os.precision(17);
    os << "tr(A0^2) = " << lg.q << " is not below (4 pi)^2/n = " << log_domain_bound(n);
    throw DomainError(Predicate::kLogDomain, os.str());
  }
  const double tau = lg.a.trace() / 4.0;
  const double rho = std::sqrt(nd * lg.q) / 4.0;
  // e^tau cos(rho) - 1 without cancellation
  const double id_coeff =
      (4.0 / nd) * (std::expm1(tau) * std::cos(rho) - one_minus_cos(rho));
  const SymMatrix psi =
      id_coeff * SymMatrix::identity(n) + (std::exp(tau) * sinc(rho)) * lg.a0;
  return g0.unwhiten(psi);
}

PlaneCoords figure1_map(double x, double y, int n) {
  if (n < 1) throw DimensionError("figure1_map: dimension must be >= 1");
  const double nd = n;
  if (x == 0.0 && y <= -4.0 / nd) {
    throw DomainError(Predicate::kExpDomain, "(x, y) lies on the excluded ray {0} x (-inf, -4/n]");
  }
  const double re = 4.0 + nd * y;
  const double im = nd * x;
  return {(4.0 / nd) * std::atan2(im, re),
          (2.0 / nd) * std::log((re * re + im * im) / 16.0)};
}

}  // namespace metricgeo
