#pragma once

// Pointwise geometry of the canonical metric <h,k>_g = tr(g^-1 h g^-1 k) on the
// fiber of symmetric 2-tensors: Christoffel symbol, its derivative, curvature,
// Ricci-like and scalar-like curvature, covariant derivatives along curves.

#include <cstddef>
#include <span>

#include "metricgeo/symcore.hpp"

namespace metricgeo {

/// A metric value together with the factorizations every operation reuses.
class PointMetricPair {
 public:
  PointMetricPair() = default;
  explicit PointMetricPair(SPDMatrix g);

  int dim() const { return g_.dim(); }
  const SPDMatrix& metric() const { return g_; }
  const Matrix& inverse() const { return inverse_; }
  double sqrt_det() const { return sqrt_det_; }
  /// g^{1/2} and g^{-1/2}.
  const Matrix& root() const { return root_; }
  const Matrix& inv_root() const { return inv_root_; }

  /// Mixed form g^-1 h.
  Matrix raise(const SymMatrix& h) const;
  /// g^{-1/2} h g^{-1/2}: the mixed form expressed in a g-orthonormal frame.
  SymMatrix whiten(const SymMatrix& h) const;
  /// g^{1/2} w g^{1/2}.
  SymMatrix unwhiten(const SymMatrix& w) const;

 private:
  SPDMatrix g_;
  Matrix inverse_;
  Matrix root_;
  Matrix inv_root_;
  double sqrt_det_ = 0.0;
};

/// <h,k>_g = tr(g^-1 h g^-1 k).
double inner_g(const PointMetricPair& g, const SymMatrix& h, const SymMatrix& k);

/// Gamma_g(h,k) = 1/2 h g^-1 k + 1/2 k g^-1 h + 1/4 tr(g^-1 h g^-1 k) g
///               - 1/4 tr(g^-1 h) k - 1/4 tr(g^-1 k) h.
SymMatrix christoffel(const PointMetricPair& g, const SymMatrix& h, const SymMatrix& k);

/// Christoffel symbol in the mixed framing (g, g^-1 h):
/// 1/2 (HK + KH) + 1/4 tr(HK) Id - 1/4 tr(H) K - 1/4 tr(K) H.
Matrix christoffel_mixed(const Matrix& h, const Matrix& k);
SymMatrix christoffel_mixed(const SymMatrix& h, const SymMatrix& k);

/// Directional derivative of g -> Gamma_g(k,l) in direction h.
SymMatrix dgamma(const PointMetricPair& g, const SymMatrix& h, const SymMatrix& k,
                 const SymMatrix& l);

enum class CurvatureRoute {
  kDefinition,  // dGamma(h)(k,l) - dGamma(k)(h,l) - Gamma(h,Gamma(k,l)) + Gamma(k,Gamma(h,l))
  kClosedForm,  // commutator form in mixed tensors, lowered with g
};

/// R_g(h,k)l in covariant form.
SymMatrix curvature(const PointMetricPair& g, const SymMatrix& h, const SymMatrix& k,
                    const SymMatrix& l, CurvatureRoute route = CurvatureRoute::kClosedForm);

/// tr(K -> [[H,K],L]) = tr(H) tr(L) - n tr(HL).
double trace_bracket(const SymMatrix& h, const SymMatrix& l);

/// Pointwise trace of k -> R_g(h,k)l:
/// (4 + n(n+1))/32 (tr(H) tr(L) - n tr(HL)).
double ricci_like(const PointMetricPair& g, const SymMatrix& h, const SymMatrix& l);

/// The equivalent form -(n/32)(4 + n(n+1)) <h0, l>_g with h0 = h - tr(H)/n g.
double ricci_like_traceless_form(const PointMetricPair& g, const SymMatrix& h,
                                 const SymMatrix& l);

/// c(n) = -(n/32)(4 + n(n+1))(n(n+1)/2 - 1).
double scalar_like(int n);

struct CovariantDerivative {
  SymMatrix value;
  /// Set when the sample sits at either end and a one-sided stencil was used.
  bool one_sided = false;
};

/// nabla_t V = V_t - Gamma_g(g_t, V) at sample `index` of a uniformly sampled
/// curve. Derivatives use second-order central differences, or second-order
/// one-sided stencils at the ends.
CovariantDerivative covariant_derivative_along(std::span<const SPDMatrix> curve,
                                               std::span<const SymMatrix> field, double dt,
                                               std::size_t index);

/// <h,k>_g sqrt(det(g_tilde^-1 g)): the metric on a single fiber obtained by
/// freezing the volume density at g_tilde.
double vis_metric(const SPDMatrix& g_tilde, const PointMetricPair& g, const SymMatrix& h,
                  const SymMatrix& k);

}  // namespace metricgeo
