#include "metricgeo/pointgeo.hpp"

#include <cmath>
#include <sstream>

namespace metricgeo {

PointMetricPair::PointMetricPair(SPDMatrix g) : g_(std::move(g)) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(g_.matrix());
  if (es.info() != Eigen::Success) {
    throw InvalidMatrixError("symmetric eigendecomposition failed");
  }
  const Eigen::VectorXd& lam = es.eigenvalues();
  const Matrix& q = es.eigenvectors();
  const Eigen::VectorXd sq = lam.cwiseSqrt();
  inverse_ = q * lam.cwiseInverse().asDiagonal() * q.transpose();
  inverse_ = 0.5 * (inverse_ + inverse_.transpose());
  root_ = q * sq.asDiagonal() * q.transpose();
  root_ = 0.5 * (root_ + root_.transpose());
  inv_root_ = q * sq.cwiseInverse().asDiagonal() * q.transpose();
  inv_root_ = 0.5 * (inv_root_ + inv_root_.transpose());
  sqrt_det_ = std::exp(0.5 * lam.array().log().sum());
}

Matrix PointMetricPair::raise(const SymMatrix& h) const {
  if (h.dim() != dim()) throw DimensionError("raise: dimension mismatch");
  return inverse_ * h.matrix();
}

SymMatrix PointMetricPair::whiten(const SymMatrix& h) const {
  if (h.dim() != dim()) throw DimensionError("whiten: dimension mismatch");
  return SymMatrix::symmetric_part(inv_root_ * h.matrix() * inv_root_);
}

SymMatrix PointMetricPair::unwhiten(const SymMatrix& w) const {
  if (w.dim() != dim()) throw DimensionError("unwhiten: dimension mismatch");
  return SymMatrix::symmetric_part(root_ * w.matrix() * root_);
}

namespace {

void check_dims(const PointMetricPair& g, std::initializer_list<const SymMatrix*> xs) {
  for (const SymMatrix* x : xs) {
    if (x->dim() != g.dim()) {
      std::ostringstream os;
      os << "dimension mismatch: metric is " << g.dim() << "x" << g.dim() << ", operand is "
         << x->dim() << "x" << x->dim();
      throw DimensionError(os.str());
    }
  }
}

}  // namespace

double inner_g(const PointMetricPair& g, const SymMatrix& h, const SymMatrix& k) {
  check_dims(g, {&h, &k});
  return trace_product(g.raise(h), g.raise(k));
}

SymMatrix christoffel(const PointMetricPair& g, const SymMatrix& h, const SymMatrix& k) {
  check_dims(g, {&h, &k});
  const Matrix gi_h = g.raise(h);
  const Matrix gi_k = g.raise(k);
  const Matrix& hm = h.matrix();
  const Matrix& km = k.matrix();
  Matrix out = 0.5 * (hm * gi_k + km * gi_h);
  // every term is written symmetrically in (h, k) so that swapping them is exact
  const double tr_hk = 0.5 * (trace_product(gi_h, gi_k) + trace_product(gi_k, gi_h));
  out += 0.25 * tr_hk * g.metric().matrix();
  out -= 0.25 * (gi_h.trace() * km + gi_k.trace() * hm);
  return SymMatrix::symmetric_part(out);
}

Matrix christoffel_mixed(const Matrix& h, const Matrix& k) {
  require_same_dim(h, k);
  const auto n = h.rows();
  return 0.5 * (h * k + k * h) + 0.25 * trace_product(h, k) * Matrix::Identity(n, n) -
         0.25 * h.trace() * k - 0.25 * k.trace() * h;
}

SymMatrix christoffel_mixed(const SymMatrix& h, const SymMatrix& k) {
  return SymMatrix::symmetric_part(christoffel_mixed(h.matrix(), k.matrix()));
}

SymMatrix dgamma(const PointMetricPair& g, const SymMatrix& h, const SymMatrix& k,
                 const SymMatrix& l) {
  check_dims(g, {&h, &k, &l});
  const Matrix H = g.raise(h);
  const Matrix K = g.raise(k);
  const Matrix L = g.raise(l);
  const Matrix& km = k.matrix();
  const Matrix& lm = l.matrix();
  // k g^-1 h g^-1 l = k H L, and l g^-1 h g^-1 k = l H K.
  Matrix out = -0.5 * (km * H * L + lm * H * K);
  out -= 0.25 * (trace_product(H * K, L) + trace_product(K * H, L)) * g.metric().matrix();
  out += 0.25 * trace_product(K, L) * h.matrix();
  out += 0.25 * trace_product(H, K) * lm;
  out += 0.25 * trace_product(H, L) * km;
  return SymMatrix::symmetric_part(out);
}

namespace {

SymMatrix curvature_by_definition(const PointMetricPair& g, const SymMatrix& h,
                                  const SymMatrix& k, const SymMatrix& l) {
  return dgamma(g, h, k, l) - dgamma(g, k, h, l) - christoffel(g, h, christoffel(g, k, l)) +
         christoffel(g, k, christoffel(g, h, l));
}

SymMatrix curvature_closed_form(const PointMetricPair& g, const SymMatrix& h,
                                const SymMatrix& k, const SymMatrix& l) {
  const auto n = g.dim();
  const double nd = static_cast<double>(n);
  const Matrix H = g.raise(h);
  const Matrix K = g.raise(k);
  const Matrix L = g.raise(l);
  const Matrix hk = H * K - K * H;
  const double trH = H.trace(), trK = K.trace(), trL = L.trace();
  const double trHL = trace_product(H, L), trKL = trace_product(K, L);
  Matrix mixed = 0.25 * (hk * L - L * hk);
  mixed += (nd / 16.0) * (trKL * H - trHL * K);
  mixed += (1.0 / 16.0) * (trH * trL * K - trK * trL * H);
  mixed += (1.0 / 16.0) * (trK * trHL - trH * trKL) * Matrix::Identity(n, n);
  return SymMatrix::symmetric_part(g.metric().matrix() * mixed);
}

}  // namespace

SymMatrix curvature(const PointMetricPair& g, const SymMatrix& h, const SymMatrix& k,
                    const SymMatrix& l, CurvatureRoute route) {
  check_dims(g, {&h, &k, &l});
  switch (route) {
    case CurvatureRoute::kDefinition:
      return curvature_by_definition(g, h, k, l);
    case CurvatureRoute::kClosedForm:
      return curvature_closed_form(g, h, k, l);
  }
  throw std::invalid_argument("unknown curvature route");
}

double trace_bracket(const SymMatrix& h, const SymMatrix& l) {
  require_same_dim(h, l);
  return h.trace() * l.trace() - static_cast<double>(h.dim()) * trace_inner(h, l);
}

double ricci_like(const PointMetricPair& g, const SymMatrix& h, const SymMatrix& l) {
  check_dims(g, {&h, &l});
  const double n = g.dim();
  const Matrix H = g.raise(h);
  const Matrix L = g.raise(l);
  return (4.0 + n * (n + 1.0)) / 32.0 * (H.trace() * L.trace() - n * trace_product(H, L));
}

double ricci_like_traceless_form(const PointMetricPair& g, const SymMatrix& h,
                                 const SymMatrix& l) {
  check_dims(g, {&h, &l});
  const double n = g.dim();
  const double trH = g.raise(h).trace();
  const SymMatrix h0 = h - (trH / n) * g.metric().sym();
  return -(n / 32.0) * (4.0 + n * (n + 1.0)) * inner_g(g, h0, l);
}

double scalar_like(int n) {
  if (n < 1) throw DimensionError("scalar_like: dimension must be >= 1");
  const double d = n;
  return -(d / 32.0) * (4.0 + d * (d + 1.0)) * (d * (d + 1.0) / 2.0 - 1.0);
}

CovariantDerivative covariant_derivative_along(std::span<const SPDMatrix> curve,
                                               std::span<const SymMatrix> field, double dt,
                                               std::size_t index) {
  if (curve.size() != field.size()) {
    throw std::invalid_argument("covariant_derivative_along: curve and field sizes differ");
  }
  if (curve.size() < 3) {
    throw std::invalid_argument("covariant_derivative_along: need at least 3 samples");
  }
  if (index >= curve.size()) {
    throw std::out_of_range("covariant_derivative_along: index out of range");
  }
  if (!(dt > 0.0)) throw std::invalid_argument("covariant_derivative_along: dt must be > 0");

  const std::size_t last = curve.size() - 1;
  auto derivative = [&](auto value_at) -> Matrix {
    if (index == 0) {
      return (-3.0 * value_at(0) + 4.0 * value_at(1) - value_at(2)) / (2.0 * dt);
    }
    if (index == last) {
      return (3.0 * value_at(last) - 4.0 * value_at(last - 1) + value_at(last - 2)) /
             (2.0 * dt);
    }
    return (value_at(index + 1) - value_at(index - 1)) / (2.0 * dt);
  };
  const Matrix g_t = derivative([&](std::size_t i) -> Matrix { return curve[i].matrix(); });
  const Matrix v_t = derivative([&](std::size_t i) -> Matrix { return field[i].matrix(); });

  const PointMetricPair g(curve[index]);
  const SymMatrix gamma =
      christoffel(g, SymMatrix::symmetric_part(g_t), field[index]);
  return {SymMatrix::symmetric_part(v_t) - gamma, index == 0 || index == last};
}

double vis_metric(const SPDMatrix& g_tilde, const PointMetricPair& g, const SymMatrix& h,
                  const SymMatrix& k) {
  if (g_tilde.dim() != g.dim()) throw DimensionError("vis_metric: dimension mismatch");
  const PointMetricPair base(g_tilde);
  // det(g_tilde^-1 g) = det g / det g_tilde
  return inner_g(g, h, k) * (g.sqrt_det() / base.sqrt_det());
}

}  // namespace metricgeo
