#include "metricgeo/jacobi.hpp"

#include <algorithm>
#include <cmath>

#include "metricgeo/oracles.hpp"

namespace metricgeo {

double quad_T(const Matrix& h, const Matrix& k, const Matrix& l, const Matrix& n) {
  return trace_product(h, l) * trace_product(k, n) - trace_product(h, n) * trace_product(k, l);
}

double quad_S(const Matrix& h, const Matrix& k) { return quad_T(h, k, h, k); }

VariationData VariationData::make(const PointMetricPair& g0, const SymMatrix& h,
                                  const SymMatrix& k, const SymMatrix& l) {
  VariationData v;
  v.g0 = g0;
  v.h = h;
  v.k = k;
  v.ell_tilde = l + christoffel(g0, k, h);
  v.H = g0.raise(h);
  v.K = g0.raise(k);
  v.ltilde = g0.raise(v.ell_tilde);
  v.lhat = -v.K * v.H + v.ltilde;
  return v;
}

SPDMatrix VariationData::lambda(double s) const {
  const Matrix m = g0.metric().matrix() + s * k.matrix();
  if (!is_spd(m)) {
    throw DomainError(Predicate::kPositivity, "g0 + s k is not positive definite");
  }
  return SPDMatrix(SymMatrix::symmetric_part(m));
}

SymMatrix VariationData::w(double s) const { return h + s * ell_tilde; }

Matrix VariationData::m(double s) const {
  const int n = dim();
  const Matrix id = Matrix::Identity(n, n);
  return (id + s * K).partialPivLu().solve(H + s * ltilde);
}

double VariationData::c(double s) const { return m(s).trace(); }

double VariationData::f(double s) const {
  const Matrix ms = m(s);
  return trace_product(ms, ms);
}

double VariationData::d(double s) const {
  const Matrix m0 = traceless_part(m(s));
  return trace_product(m0, m0);
}

Matrix p_perp(const GeodesicCoeffs& coeffs, double t) {
  if (coeffs.conformal()) {
    throw DomainError(Predicate::kDegeneracy,
                      "P(t)^perp is undefined for a conformal direction (H0 = 0)");
  }
  const int n = coeffs.dim();
  const double nd = n;
  const GeodesicScalars s = geodesic_scalars(coeffs, t);
  const double e = std::exp(-0.5 * nd * s.a);
  const double p = (4.0 * coeffs.tr_h + nd * t * coeffs.tr_h2) / (4.0 * nd);
  // X = alpha Id + beta H0 with tr X = e and tr(X P) = 0
  return e * (Matrix::Identity(n, n) / nd - (p / coeffs.d0) * coeffs.mixed_h0());
}

namespace {

struct ClosedFormParts {
  GeodesicScalars scalars;
  Matrix dq;  // d/ds|_0 Q(t,s)
};

ClosedFormParts closed_form_parts(const PointMetricPair& g0, const Matrix& H, const Matrix& lhat,
                            const GeodesicCoeffs& coeffs, double t) {
  const int n = g0.dim();
  const Matrix id = Matrix::Identity(n, n);
  const double tr_h2 = trace_product(H, H);
  const double s_h_id = quad_S(H, id);
  if (!(tr_h2 > 0.0) || coeffs.conformal() || !(s_h_id > 0.0)) {
    throw DomainError(Predicate::kDegeneracy,
                      "tr(H^2) or S(H, Id) vanishes; the closed form does not apply");
  }
  const GeodesicScalars s = geodesic_scalars(coeffs, t);
  const Matrix H0 = traceless_part(H);
  const Matrix P = geodesic_velocity_mixed(coeffs, t);
  const Matrix P_perp = p_perp(coeffs, t);
  const Matrix lhat0 = traceless_part(lhat);

  Matrix dq = (trace_product(H, lhat) / tr_h2) * t * P;
  dq += (quad_T(lhat, H, id, H) / tr_h2) * t * P_perp;
  dq += s.b * (-(quad_T(H, id, lhat, id) / s_h_id) * H0 + lhat0);
  return {s, dq};
}

void require_forward_time(const GeodesicCoeffs& coeffs, double t) {
  const double sup = coeffs.sup_t();
  if (!(t >= 0.0) || !(t < sup)) {
    throw DomainError(Predicate::kExistence,
                      "t must lie in [0, " + std::to_string(sup) + ")");
  }
}

}  // namespace

Matrix q_s_derivative(const VariationData& var, double t) {
  const GeodesicCoeffs coeffs = GeodesicCoeffs::make(var.g0, var.h);
  require_forward_time(coeffs, t);
  return closed_form_parts(var.g0, var.H, var.lhat, coeffs, t).dq;
}

SPDMatrix variation_alpha(const VariationData& var, double t, double s) {
  const PointMetricPair lam(var.lambda(s));
  const SymMatrix ws = var.w(s);
  // c(s) = tr(lambda^-1 W) and d(s) = tr((lambda^-1 W)_0^2) enter a(t,s), b(t,s)
  // exactly as tr H and tr H0^2 enter the geodesic at s = 0.
  return geodesic_point(GeodesicCoeffs::make(lam, ws), t);
}

SymMatrix jacobi_field(const PointMetricPair& g0, const SymMatrix& h, const SymMatrix& k,
                       const SymMatrix& l, double t) {
  if (h.dim() != g0.dim() || k.dim() != g0.dim() || l.dim() != g0.dim()) {
    throw DimensionError("jacobi_field: dimension mismatch");
  }
  const GeodesicCoeffs coeffs = GeodesicCoeffs::make(g0, h);
  require_forward_time(coeffs, t);
  if (t == 0.0) return k;
  if (h.matrix().isZero(0.0)) return k + t * l;

  if (coeffs.conformal()) {
    const double dt = std::min(1e-4, t / 1000.0);
    const ODESolution sol = integrate_jacobi(g0.metric(), h, k, l, t, dt);
    if (sol.positivity_lost) {
      throw DomainError(Predicate::kPositivity,
                        "Jacobi integration left the positive cone before t");
    }
    return sol.xi.back();
  }

  const VariationData var = VariationData::make(g0, h, k, l);
  const ClosedFormParts parts = closed_form_parts(g0, var.H, var.lhat, coeffs, t);
  const double b = parts.scalars.b;

  // sum_{m>=1} (-ad(bH))^m / (m+1)! (b Lhat)
  const Matrix bH = b * var.H;
  Matrix term = b * var.lhat;
  Matrix series = Matrix::Zero(g0.dim(), g0.dim());
  double factorial = 1.0;
  for (int m = 1; m < 400; ++m) {
    term = -(bH * term - term * bH);
    factorial *= static_cast<double>(m + 1);
    const Matrix contribution = term / factorial;
    series += contribution;
    const double cn = contribution.norm();
    if (cn == 0.0 || cn < 1e-16 * series.norm()) break;
  }

  const Matrix gt = geodesic_point(coeffs, t).matrix();
  const Matrix j = gt * (parts.dq + series) + k.matrix() * g0.inverse() * gt;
  return SymMatrix::symmetric_part(j);
}

Matrix jacobi_rhs_raw(const Matrix& g, const Matrix& g_inv, const Matrix& g_t,
                      const Matrix& xi, const Matrix& xi_t) {
  const Matrix A = g_inv * g_t;   // g^-1 g_t
  const Matrix X = g_inv * xi;    // g^-1 xi
  const Matrix Y = g_inv * xi_t;  // g^-1 xi_t
  Matrix out = -g_t * X * A;
  out += g_t * Y + xi_t * A;
  out += 0.5 * trace_product(A, Y) * g;
  out -= 0.5 * trace_product(A * A, X) * g;
  out += 0.5 * trace_product(A, X) * g_t;
  out -= 0.5 * Y.trace() * g_t;
  out += 0.25 * trace_product(A, A) * xi;
  out -= 0.5 * A.trace() * xi_t;
  return out;
}

SymMatrix jacobi_rhs(const SPDMatrix& g, const SymMatrix& g_t, const SymMatrix& xi,
                     const SymMatrix& xi_t) {
  require_same_dim(g.sym(), g_t);
  require_same_dim(g_t, xi);
  require_same_dim(xi, xi_t);
  const PointMetricPair pair(g);
  return SymMatrix::symmetric_part(
      jacobi_rhs_raw(g.matrix(), pair.inverse(), g_t.matrix(), xi.matrix(), xi_t.matrix()));
}

}  // namespace metricgeo
