#include "metricgeo/symcore.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace metricgeo {

const char* predicate_name(Predicate p) {
  switch (p) {
    case Predicate::kExpDomain:
      return "exp-domain (U-ray)";
    case Predicate::kLogDomain:
      return "log-domain (V-inequality)";
    case Predicate::kExistence:
      return "existence-interval";
    case Predicate::kPositivity:
      return "positive-definiteness";
    case Predicate::kDegeneracy:
      return "degenerate-denominator";
  }
  return "unknown";
}

namespace {

Eigen::SelfAdjointEigenSolver<Matrix> eigen(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m);
  if (es.info() != Eigen::Success) {
    throw InvalidMatrixError("symmetric eigendecomposition failed");
  }
  return es;
}

template <class F>
Matrix spectral_apply(const Matrix& m, F f) {
  const auto es = eigen(m);
  const Eigen::VectorXd mapped = es.eigenvalues().unaryExpr(f);
  const Matrix& q = es.eigenvectors();
  Matrix out = q * mapped.asDiagonal() * q.transpose();
  return 0.5 * (out + out.transpose());
}

}  // namespace

SymMatrix::SymMatrix(const Matrix& m) {
  if (m.rows() != m.cols() || m.rows() < 1) {
    std::ostringstream os;
    os << "expected a nonempty square matrix, got " << m.rows() << "x" << m.cols();
    throw DimensionError(os.str());
  }
  if (!m.allFinite()) throw InvalidMatrixError("matrix has non-finite entries");
  const double scale = m.cwiseAbs().maxCoeff();
  const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
  if (asym > kSymmetryTolerance * scale) {
    std::ostringstream os;
    os << "matrix is not symmetric (max |a_ij - a_ji| = " << asym << ")";
    throw InvalidMatrixError(os.str());
  }
  m_ = 0.5 * (m + m.transpose());
}

SymMatrix SymMatrix::zero(int n) { return {Matrix::Zero(n, n), Trusted{}}; }

SymMatrix SymMatrix::identity(int n) { return {Matrix::Identity(n, n), Trusted{}}; }

SymMatrix SymMatrix::diagonal(std::initializer_list<double> entries) {
  Eigen::VectorXd d(static_cast<Eigen::Index>(entries.size()));
  Eigen::Index i = 0;
  for (double e : entries) d(i++) = e;
  return {Matrix(d.asDiagonal()), Trusted{}};
}

SymMatrix SymMatrix::symmetric_part(const Matrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("symmetric_part: matrix not square");
  if (!m.allFinite()) throw InvalidMatrixError("matrix has non-finite entries");
  return {0.5 * (m + m.transpose()), Trusted{}};
}

SymMatrix& SymMatrix::operator+=(const SymMatrix& o) {
  require_same_dim(*this, o);
  m_ += o.m_;
  return *this;
}

SymMatrix& SymMatrix::operator-=(const SymMatrix& o) {
  require_same_dim(*this, o);
  m_ -= o.m_;
  return *this;
}

SymMatrix& SymMatrix::operator*=(double s) {
  m_ *= s;
  return *this;
}

bool is_spd(const Matrix& m) {
  if (m.rows() != m.cols() || m.rows() < 1 || !m.allFinite()) return false;
  const double scale = m.cwiseAbs().maxCoeff();
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > kSymmetryTolerance * scale) {
    return false;
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.transpose()),
                                           Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) return false;
  const double lo = es.eigenvalues().minCoeff();
  const double hi = es.eigenvalues().maxCoeff();
  return hi > 0.0 && lo > kPositivityRatio * hi;
}

SPDMatrix::SPDMatrix(const Matrix& m) : SPDMatrix(SymMatrix(m)) {}

SPDMatrix::SPDMatrix(const SymMatrix& s) : sym_(s) {
  if (!is_spd(s.matrix())) {
    throw InvalidMatrixError("matrix is not positive definite");
  }
}

SPDMatrix SPDMatrix::identity(int n) { return SPDMatrix(SymMatrix::identity(n)); }

SPDMatrix SPDMatrix::unchecked(SymMatrix s) { return SPDMatrix(std::move(s), Trusted{}); }

void require_same_dim(const SymMatrix& a, const SymMatrix& b) {
  if (a.dim() != b.dim()) {
    std::ostringstream os;
    os << "dimension mismatch: " << a.dim() << " vs " << b.dim();
    throw DimensionError(os.str());
  }
}

void require_same_dim(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    std::ostringstream os;
    os << "dimension mismatch: " << a.rows() << "x" << a.cols() << " vs " << b.rows()
       << "x" << b.cols();
    throw DimensionError(os.str());
  }
}

SymMatrix traceless_part(const SymMatrix& h) {
  return SymMatrix::symmetric_part(traceless_part(h.matrix()));
}

Matrix traceless_part(const Matrix& h) {
  const auto n = h.rows();
  return h - (h.trace() / static_cast<double>(n)) * Matrix::Identity(n, n);
}

double trace_inner(const SymMatrix& h, const SymMatrix& k) {
  require_same_dim(h, k);
  return trace_product(h.matrix(), k.matrix());
}

double trace_product(const Matrix& a, const Matrix& b) {
  require_same_dim(a, b);
  // tr(AB) = sum_ij A_ij B_ji
  return a.cwiseProduct(b.transpose()).sum();
}

SPDMatrix sym_exp(const SymMatrix& a) {
  const auto es = eigen(a.matrix());
  const Eigen::VectorXd& lambda = es.eigenvalues();
  // positivity of the result read off the spectrum: exp(min - max) > kPositivityRatio
  if (!(lambda.maxCoeff() - lambda.minCoeff() < -std::log(kPositivityRatio)) ||
      !(lambda.maxCoeff() < std::log(std::numeric_limits<double>::max()))) {
    throw InvalidMatrixError("sym_exp: result is not numerically positive definite");
  }
  const Matrix& q = es.eigenvectors();
  const Matrix e = q * lambda.unaryExpr([](double x) { return std::exp(x); }).asDiagonal() *
                   q.transpose();
  return SPDMatrix::unchecked(SymMatrix::symmetric_part(e));
}

SymMatrix sym_log(const SPDMatrix& p) {
  return SymMatrix::symmetric_part(
      spectral_apply(p.matrix(), [](double x) { return std::log(x); }));
}

SPDMatrix sym_sqrt(const SPDMatrix& p) {
  return SPDMatrix(SymMatrix::symmetric_part(
      spectral_apply(p.matrix(), [](double x) { return std::sqrt(x); })));
}

SPDMatrix sym_inv_sqrt(const SPDMatrix& p) {
  return SPDMatrix(SymMatrix::symmetric_part(
      spectral_apply(p.matrix(), [](double x) { return 1.0 / std::sqrt(x); })));
}

Matrix relative_log(const SPDMatrix& g0, const SPDMatrix& g) {
  if (g0.dim() != g.dim()) throw DimensionError("relative_log: dimension mismatch");
  const auto es = eigen(g0.matrix());
  const Eigen::VectorXd lam = es.eigenvalues();
  const Matrix& q = es.eigenvectors();
  const Matrix root = q * lam.cwiseSqrt().asDiagonal() * q.transpose();
  const Matrix inv_root = q * lam.cwiseSqrt().cwiseInverse().asDiagonal() * q.transpose();
  Matrix whitened = inv_root * g.matrix() * inv_root;
  whitened = 0.5 * (whitened + whitened.transpose());
  const Matrix log_w = spectral_apply(whitened, [](double x) { return std::log(x); });
  return inv_root * log_w * root;
}

SymMatrix ad_series_operator(const SymMatrix& l, const SymMatrix& k) {
  require_same_dim(l, k);
  const Matrix& lm = l.matrix();
  Matrix term = k.matrix();
  // k = 0 term has coefficient 2/2! = 1.
  Matrix sum = term;
  double coeff = 1.0;
  for (int j = 1; j < 200; ++j) {
    // two applications of ad(L)
    term = lm * term - term * lm;
    term = lm * term - term * lm;
    // 2/(2j+2)! from 2/(2j)!
    coeff /= static_cast<double>((2 * j + 1) * (2 * j + 2));
    const Matrix contribution = coeff * term;
    sum += contribution;
    if (contribution.norm() < 1e-16 * sum.norm() || contribution.norm() == 0.0) break;
  }
  return SymMatrix::symmetric_part(std::exp(0.5 * l.trace()) * sum);
}

}  // namespace metricgeo
