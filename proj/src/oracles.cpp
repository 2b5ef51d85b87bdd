#include "metricgeo/oracles.hpp"

#include <array>
#include <cmath>

#include "metricgeo/jacobi.hpp"
#include "metricgeo/pointgeo.hpp"

namespace metricgeo {

namespace {

// g^-1 via Cholesky; false when g is not positive definite.
bool invert_spd(const Matrix& g, Matrix& g_inv) {
  if (!g.allFinite()) return false;
  Eigen::LLT<Matrix> llt(g);
  if (llt.info() != Eigen::Success) return false;
  g_inv = llt.solve(Matrix::Identity(g.rows(), g.cols()));
  return g_inv.allFinite();
}

// The geodesic equation, transcribed independently of pointgeo's Christoffel.
Matrix geodesic_accel(const Matrix& g, const Matrix& g_inv, const Matrix& v) {
  const Matrix gv = g_inv * v;
  return v * gv + 0.25 * trace_product(gv, gv) * g - 0.5 * gv.trace() * v;
}

std::size_t step_count(double t_end, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("integrator: dt must be > 0");
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) {
    throw std::invalid_argument("integrator: t_end must be finite and >= 0");
  }
  return static_cast<std::size_t>(std::max(0.0, std::ceil(t_end / dt - 1e-9)));
}

// Near the boundary of the cone g^-1 g_t grows like 1/(sup_t - t); once a single
// step changes g by more than half its own size the discrete state no longer
// certifies positivity.
bool accept_state(const Matrix& g, const Matrix& g_t, double h) {
  if (!is_spd(g)) return false;
  Matrix g_inv;
  if (!invert_spd(g, g_inv)) return false;
  return (g_inv * g_t).norm() * h <= 0.5;
}

// One generic RK4 driver over a state of `Components` matrices, where
// component 0 is g.
template <std::size_t Components, class Rhs>
ODESolution integrate(std::array<Matrix, Components> y, double t_end, double dt, Rhs rhs) {
  ODESolution sol;
  const std::size_t steps = step_count(t_end, dt);
  const double h = steps == 0 ? 0.0 : t_end / static_cast<double>(steps);

  auto record = [&](double t, const std::array<Matrix, Components>& s) {
    sol.times.push_back(t);
    // s[0] is the initial value or passed accept_state
    sol.g.push_back(SPDMatrix::unchecked(SymMatrix::symmetric_part(s[0])));
    sol.g_t.push_back(SymMatrix::symmetric_part(s[1]));
    if constexpr (Components == 4) {
      sol.xi.push_back(SymMatrix::symmetric_part(s[2]));
      sol.xi_t.push_back(SymMatrix::symmetric_part(s[3]));
    }
    sol.last_valid_time = t;
  };
  record(0.0, y);

  using State = std::array<Matrix, Components>;
  auto axpy = [](const State& a, double c, const State& b) {
    State out;
    for (std::size_t i = 0; i < Components; ++i) out[i] = a[i] + c * b[i];
    return out;
  };

  for (std::size_t i = 0; i < steps; ++i) {
    State k1, k2, k3, k4;
    if (!rhs(y, k1) || !rhs(axpy(y, 0.5 * h, k1), k2) || !rhs(axpy(y, 0.5 * h, k2), k3) ||
        !rhs(axpy(y, h, k3), k4)) {
      sol.positivity_lost = true;
      return sol;
    }
    State next;
    for (std::size_t c = 0; c < Components; ++c) {
      next[c] = y[c] + (h / 6.0) * (k1[c] + 2.0 * k2[c] + 2.0 * k3[c] + k4[c]);
      next[c] = 0.5 * (next[c] + next[c].transpose());
    }
    bool finite = true;
    for (const Matrix& m : next) finite = finite && m.allFinite();
    if (!finite || !accept_state(next[0], next[1], h)) {
      sol.positivity_lost = true;
      return sol;
    }
    y = std::move(next);
    record(static_cast<double>(i + 1) * h, y);
  }
  return sol;
}

}  // namespace

ODESolution integrate_geodesic(const SPDMatrix& g0, const SymMatrix& h, double t_end,
                               double dt) {
  require_same_dim(g0.sym(), h);
  std::array<Matrix, 2> y{g0.matrix(), h.matrix()};
  return integrate<2>(std::move(y), t_end, dt,
                      [](const std::array<Matrix, 2>& s, std::array<Matrix, 2>& d) {
                        Matrix g_inv;
                        if (!invert_spd(s[0], g_inv)) return false;
                        d[0] = s[1];
                        d[1] = geodesic_accel(s[0], g_inv, s[1]);
                        return true;
                      });
}

ODESolution integrate_jacobi(const SPDMatrix& g0, const SymMatrix& h, const SymMatrix& k,
                             const SymMatrix& l, double t_end, double dt) {
  require_same_dim(g0.sym(), h);
  require_same_dim(h, k);
  require_same_dim(k, l);
  const PointMetricPair base(g0);
  const SymMatrix xi_t0 = l + christoffel(base, h, k);
  std::array<Matrix, 4> y{g0.matrix(), h.matrix(), k.matrix(), xi_t0.matrix()};
  return integrate<4>(std::move(y), t_end, dt,
                      [](const std::array<Matrix, 4>& s, std::array<Matrix, 4>& d) {
                        Matrix g_inv;
                        if (!invert_spd(s[0], g_inv)) return false;
                        d[0] = s[1];
                        d[1] = geodesic_accel(s[0], g_inv, s[1]);
                        d[2] = s[3];
                        d[3] = jacobi_rhs_raw(s[0], g_inv, s[1], s[2], s[3]);
                        return true;
                      });
}

std::vector<SymMatrix> symmetric_basis(int n) {
  if (n < 1) throw DimensionError("symmetric_basis: dimension must be >= 1");
  std::vector<SymMatrix> basis;
  basis.reserve(static_cast<std::size_t>(n * (n + 1) / 2));
  for (int i = 0; i < n; ++i) {
    Matrix e = Matrix::Zero(n, n);
    e(i, i) = 1.0;
    basis.push_back(SymMatrix(e));
  }
  const double r = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      Matrix e = Matrix::Zero(n, n);
      e(i, j) = e(j, i) = r;
      basis.push_back(SymMatrix(e));
    }
  }
  return basis;
}

double basis_trace(const std::function<SymMatrix(const SymMatrix&)>& map, int n) {
  const std::vector<SymMatrix> basis = symmetric_basis(n);
  double trace = 0.0;
  double magnitude = 0.0;
  for (const SymMatrix& b : basis) {
    const double term = trace_inner(map(b), b);
    trace += term;
    magnitude += std::abs(term);
  }

  std::mt19937_64 rng(0x7ace);
  std::normal_distribution<double> normal;

  // linearity probe on a random combination
  const SymMatrix x = random_sym(rng, n);
  const SymMatrix y = random_sym(rng, n);
  const double alpha = normal(rng);
  const double beta = normal(rng);
  const SymMatrix mx = map(x);
  const SymMatrix my = map(y);
  const SymMatrix combined = map(alpha * x + beta * y);
  const double scale = std::abs(alpha) * mx.norm() + std::abs(beta) * my.norm();
  const double deviation = (combined - alpha * mx - beta * my).norm();
  if (deviation > 1e-8 * std::max(scale, 1e-300) && deviation > 0.0) {
    throw NonlinearMapError("basis_trace: map failed the linearity probe");
  }

  // the same trace over a rotated orthonormal basis
  const Matrix q = Eigen::HouseholderQR<Matrix>(Matrix::NullaryExpr(
                                                    n, n, [&](Eigen::Index, Eigen::Index) { return normal(rng); }))
                       .householderQ();
  double rotated = 0.0;
  for (const SymMatrix& b : basis) {
    const SymMatrix rb = SymMatrix::symmetric_part(q * b.matrix() * q.transpose());
    rotated += trace_inner(map(rb), rb);
  }
  if (std::abs(rotated - trace) > 1e-10 * std::max(1.0, magnitude)) {
    throw NonlinearMapError("basis_trace: trace depends on the basis");
  }
  return trace;
}

SymMatrix random_sym(std::mt19937_64& rng, int n, double scale) {
  std::normal_distribution<double> normal(0.0, scale);
  Matrix a(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a(i, j) = normal(rng);
  }
  return SymMatrix::symmetric_part(a);
}

SPDMatrix random_spd(std::mt19937_64& rng, int n) {
  // exp of a moderate symmetric matrix keeps the condition number bounded
  return sym_exp(random_sym(rng, n, 0.5));
}

}  // namespace metricgeo
