#pragma once

// Symmetric and symmetric positive-definite matrix algebra.
//
// SymMatrix holds pointwise values of tangent vectors h (symmetric 2-tensors);
// SPDMatrix holds pointwise values of metrics g. Mixed (1,1)-tensors such as
// H = g^-1 h are g-symmetric but not symmetric, so they are carried as plain
// Matrix values.

#include <Eigen/Dense>

#include "metricgeo/errors.hpp"

namespace metricgeo {

using Matrix = Eigen::MatrixXd;

/// Relative asymmetry tolerated on input before it is treated as an error.
inline constexpr double kSymmetryTolerance = 1e-9;
/// Positivity threshold: smallest eigenvalue must exceed this times the largest.
inline constexpr double kPositivityRatio = 1e-12;

class SymMatrix {
 public:
  SymMatrix() = default;

  /// Validates and symmetrizes `m`. Asymmetry up to kSymmetryTolerance
  /// (relative to the largest entry) is averaged away; more is an error.
  explicit SymMatrix(const Matrix& m);

  static SymMatrix zero(int n);
  static SymMatrix identity(int n);
  static SymMatrix diagonal(std::initializer_list<double> entries);

  /// (m + m^T)/2 without a tolerance check. For results of computations that
  /// are symmetric in exact arithmetic.
  static SymMatrix symmetric_part(const Matrix& m);

  int dim() const { return static_cast<int>(m_.rows()); }
  const Matrix& matrix() const { return m_; }
  double operator()(int i, int j) const { return m_(i, j); }
  double trace() const { return m_.trace(); }
  double norm() const { return m_.norm(); }

  SymMatrix& operator+=(const SymMatrix& o);
  SymMatrix& operator-=(const SymMatrix& o);
  SymMatrix& operator*=(double s);

  friend SymMatrix operator+(SymMatrix a, const SymMatrix& b) { return a += b; }
  friend SymMatrix operator-(SymMatrix a, const SymMatrix& b) { return a -= b; }
  friend SymMatrix operator*(SymMatrix a, double s) { return a *= s; }
  friend SymMatrix operator*(double s, SymMatrix a) { return a *= s; }
  friend SymMatrix operator-(SymMatrix a) { return a *= -1.0; }

 private:
  struct Trusted {};
  SymMatrix(Matrix m, Trusted) : m_(std::move(m)) {}

  Matrix m_;
};

class SPDMatrix {
 public:
  SPDMatrix() = default;

  /// Validates symmetry (as SymMatrix) and positive definiteness.
  explicit SPDMatrix(const Matrix& m);
  explicit SPDMatrix(const SymMatrix& s);

  static SPDMatrix identity(int n);
  /// Skips validation. Only for values that already passed is_spd.
  static SPDMatrix unchecked(SymMatrix s);

  int dim() const { return sym_.dim(); }
  const Matrix& matrix() const { return sym_.matrix(); }
  const SymMatrix& sym() const { return sym_; }
  double operator()(int i, int j) const { return sym_(i, j); }

 private:
  struct Trusted {};
  SPDMatrix(SymMatrix s, Trusted) : sym_(std::move(s)) {}

  SymMatrix sym_;
};

/// True iff `m` is finite, symmetric within tolerance and positive definite
/// with the scale-invariant threshold.
bool is_spd(const Matrix& m);

void require_same_dim(const SymMatrix& a, const SymMatrix& b);
void require_same_dim(const Matrix& a, const Matrix& b);

/// H0 = H - (tr H / n) Id.
SymMatrix traceless_part(const SymMatrix& h);
/// Traceless part of a mixed tensor.
Matrix traceless_part(const Matrix& h);

/// tr(HK).
double trace_inner(const SymMatrix& h, const SymMatrix& k);
/// tr(AB) for arbitrary square matrices (mixed tensors).
double trace_product(const Matrix& a, const Matrix& b);

/// e^A through the symmetric eigendecomposition.
SPDMatrix sym_exp(const SymMatrix& a);
/// Principal logarithm of an SPD matrix.
SymMatrix sym_log(const SPDMatrix& p);
/// Symmetric square root and its inverse.
SPDMatrix sym_sqrt(const SPDMatrix& p);
SPDMatrix sym_inv_sqrt(const SPDMatrix& p);

/// log((g0)^-1 g) computed as g0^{-1/2} log(g0^{-1/2} g g0^{-1/2}) g0^{1/2}.
/// The result is g0-symmetric: g0 * result is symmetric.
Matrix relative_log(const SPDMatrix& g0, const SPDMatrix& g);

/// A_L(K) = e^{tr(L)/2} sum_k 2 ad(L)^{2k}(K) / (2k+2)!, ad(L)K = LK - KL.
/// The series stops once a term drops below 1e-16 of the accumulated norm.
SymMatrix ad_series_operator(const SymMatrix& l, const SymMatrix& k);

}  // namespace metricgeo
