#pragma once

// Jacobi fields along the explicit geodesics: the geodesic variation
// alpha(t,s) = Exp_{g0 + s k}(t (h + s l~)), the s-derivative of its exponent,
// the closed-form Jacobi field and the Jacobi equation right-hand side.
//
// Mixed tensors use the convention H = g0^-1 h, K = g0^-1 k, L = g0^-1 l.

#include "metricgeo/geoexp.hpp"

namespace metricgeo {

/// T(H,K,L,N) = tr(HL) tr(KN) - tr(HN) tr(KL).
double quad_T(const Matrix& h, const Matrix& k, const Matrix& l, const Matrix& n);
/// S(H,K) = T(H,K,H,K) = tr(H^2) tr(K^2) - tr(HK)^2.
double quad_S(const Matrix& h, const Matrix& k);

/// The geodesic variation through (g0, h) with transversal data (k, l).
struct VariationData {
  PointMetricPair g0;
  SymMatrix h;
  SymMatrix k;
  SymMatrix ell_tilde;  // l + Gamma_{g0}(k, h)
  Matrix H;
  Matrix K;
  Matrix ltilde;        // g0^-1 ell_tilde
  Matrix lhat;          // -K H + ltilde; not g0-symmetric in general

  static VariationData make(const PointMetricPair& g0, const SymMatrix& h,
                            const SymMatrix& k, const SymMatrix& l);

  int dim() const { return g0.dim(); }
  /// lambda(s) = g0 + s k; throws DomainError if it is not positive definite.
  SPDMatrix lambda(double s) const;
  /// W(s) = h + s l~.
  SymMatrix w(double s) const;
  /// (Id + sK)^-1 (H + s L~).
  Matrix m(double s) const;
  double c(double s) const;  // tr m(s)
  double f(double s) const;  // tr m(s)^2
  double d(double s) const;  // f(s) - c(s)^2 / n
};

/// P(t)^perp: the element of span{Id, H0} with trace e^{-n a(t)/2} that is
/// trace-orthogonal to P(t). Requires a non-conformal direction.
Matrix p_perp(const GeodesicCoeffs& coeffs, double t);

/// d/ds|_0 Q(t,s), the derivative of the variation's exponent (mixed form).
/// Throws DomainError(kDegeneracy) for conformal or zero directions.
Matrix q_s_derivative(const VariationData& var, double t);

/// alpha(t,s) = lambda(s) e^{Q(t,s)}.
SPDMatrix variation_alpha(const VariationData& var, double t, double s);

/// Jacobi field J(t) along the geodesic from g0 in direction h with
/// J(0) = k and (nabla_t J)(0) = l. Uses the closed form, or RK4 integration
/// of the Jacobi equation when the direction is conformal.
SymMatrix jacobi_field(const PointMetricPair& g0, const SymMatrix& h, const SymMatrix& k,
                       const SymMatrix& l, double t);

/// Right-hand side xi_tt of the Jacobi equation along a geodesic.
SymMatrix jacobi_rhs(const SPDMatrix& g, const SymMatrix& g_t, const SymMatrix& xi,
                     const SymMatrix& xi_t);

/// Unvalidated form used inside integrators; `g_inv` must be g^-1.
Matrix jacobi_rhs_raw(const Matrix& g, const Matrix& g_inv, const Matrix& g_t,
                      const Matrix& xi, const Matrix& xi_t);

}  // namespace metricgeo
