#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "metricgeo/geoexp.hpp"
#include "metricgeo/oracles.hpp"
#include "metricgeo/pointgeo.hpp"
#include "test_util.hpp"

namespace metricgeo {
namespace {

using testing::MatrixNear;
using testing::offdiag2;

PointMetricPair id2() { return PointMetricPair(SPDMatrix::identity(2)); }

TEST(InnerG, HandValues) {
  EXPECT_DOUBLE_EQ(inner_g(id2(), SymMatrix::identity(2), SymMatrix::identity(2)), 2.0);
  EXPECT_DOUBLE_EQ(inner_g(id2(), SymMatrix::diagonal({1, -1}), SymMatrix::identity(2)), 0.0);
  const PointMetricPair g(SPDMatrix(SymMatrix::diagonal({4, 1})));
  EXPECT_NEAR(inner_g(g, SymMatrix::diagonal({4, 0}), SymMatrix::diagonal({4, 0})), 1.0, 1e-15);
}

TEST(Christoffel, IdentityExampleAndSymmetry) {
  EXPECT_TRUE(MatrixNear(christoffel(id2(), SymMatrix::identity(2), SymMatrix::identity(2)).matrix(),
                         0.5 * Matrix::Identity(2, 2), 1e-15));
  EXPECT_TRUE(MatrixNear(christoffel(id2(), SymMatrix::zero(2), SymMatrix::identity(2)).matrix(),
                         Matrix::Zero(2, 2), 0));
  std::mt19937_64 rng(21);
  const PointMetricPair g(random_spd(rng, 3));
  const SymMatrix h = random_sym(rng, 3);
  const SymMatrix k = random_sym(rng, 3);
  EXPECT_EQ(christoffel(g, h, k).matrix(), christoffel(g, k, h).matrix());
}

// Gamma_g(h, h) is the acceleration of the geodesic equation
// g_tt = g_t g^-1 g_t + 1/4 tr(g^-1 g_t g^-1 g_t) g - 1/2 tr(g^-1 g_t) g_t.
TEST(Christoffel, DiagonalMatchesGeodesicEquation) {
  std::mt19937_64 rng(22);
  for (int n = 2; n <= 4; ++n) {
    const SPDMatrix gm = random_spd(rng, n);
    const PointMetricPair g(gm);
    const Matrix ginv = gm.matrix().inverse();
    const Matrix h = random_sym(rng, n).matrix();
    const Matrix gh = ginv * h;
    const Matrix expected =
        h * ginv * h + 0.25 * (gh * gh).trace() * gm.matrix() - 0.5 * gh.trace() * h;
    const SymMatrix hs(h);
    EXPECT_TRUE(MatrixNear(christoffel(g, hs, hs).matrix(), expected, 1e-12 * expected.norm()));
  }
}

TEST(ChristoffelMixed, HandValues) {
  EXPECT_TRUE(MatrixNear(christoffel_mixed(SymMatrix::identity(2), SymMatrix::identity(2)).matrix(),
                         0.5 * Matrix::Identity(2, 2), 1e-15));
  const SymMatrix h = SymMatrix::diagonal({1, -1});
  EXPECT_TRUE(MatrixNear(christoffel_mixed(h, h).matrix(), 1.5 * Matrix::Identity(2, 2), 1e-15));
  EXPECT_TRUE(MatrixNear(christoffel_mixed(SymMatrix::zero(2), h).matrix(), Matrix::Zero(2, 2), 0));
}

TEST(DGamma, MatchesCentralDifference) {
  std::mt19937_64 rng(23);
  const double eps = 1e-5;
  for (int trial = 0; trial < 10; ++trial) {
    const SPDMatrix g = random_spd(rng, 3);
    const SymMatrix h = random_sym(rng, 3, 0.5);
    const SymMatrix k = random_sym(rng, 3);
    const SymMatrix l = random_sym(rng, 3);
    const PointMetricPair gp(SPDMatrix(g.sym() + eps * h));
    const PointMetricPair gm(SPDMatrix(g.sym() - eps * h));
    const Matrix fd = (christoffel(gp, k, l).matrix() - christoffel(gm, k, l).matrix()) / (2 * eps);
    EXPECT_TRUE(MatrixNear(dgamma(PointMetricPair(g), h, k, l).matrix(), fd, 1e-8 * (1 + fd.norm())));
  }
  EXPECT_TRUE(MatrixNear(
      dgamma(id2(), SymMatrix::zero(2), SymMatrix::identity(2), SymMatrix::identity(2)).matrix(),
      Matrix::Zero(2, 2), 0));
}

TEST(Curvature, HandExample) {
  const SymMatrix h = SymMatrix::diagonal({1, -1});
  const SymMatrix k(offdiag2(1.0));
  for (CurvatureRoute route : {CurvatureRoute::kDefinition, CurvatureRoute::kClosedForm}) {
    EXPECT_TRUE(MatrixNear(curvature(id2(), h, k, h, route).matrix(), -1.25 * offdiag2(1.0), 1e-14));
  }
}

TEST(Curvature, VanishingCases) {
  std::mt19937_64 rng(24);
  const PointMetricPair g(random_spd(rng, 3));
  const SymMatrix h = random_sym(rng, 3);
  const SymMatrix l = random_sym(rng, 3);
  EXPECT_TRUE(MatrixNear(curvature(g, h, h, l).matrix(), Matrix::Zero(3, 3), 1e-13));
  const SymMatrix k = SymMatrix::diagonal({1, -1});
  const SymMatrix l0(offdiag2(1.0));
  EXPECT_TRUE(MatrixNear(curvature(id2(), SymMatrix::identity(2), k, l0).matrix(),
                         Matrix::Zero(2, 2), 1e-15));
}

TEST(Curvature, RoutesAgree) {
  std::mt19937_64 rng(25);
  for (int n = 2; n <= 4; ++n) {
    const PointMetricPair g(random_spd(rng, n));
    const SymMatrix h = random_sym(rng, n);
    const SymMatrix k = random_sym(rng, n);
    const SymMatrix l = random_sym(rng, n);
    const Matrix a = curvature(g, h, k, l, CurvatureRoute::kDefinition).matrix();
    const Matrix b = curvature(g, h, k, l, CurvatureRoute::kClosedForm).matrix();
    EXPECT_TRUE(MatrixNear(a, b, 1e-10 * (1.0 + b.norm())));
  }
}

TEST(TraceBracket, HandValues) {
  EXPECT_DOUBLE_EQ(trace_bracket(SymMatrix::identity(3), SymMatrix::identity(3)), 0.0);
  const SymMatrix h = SymMatrix::diagonal({1, -1});
  EXPECT_DOUBLE_EQ(trace_bracket(h, h), -4.0);
}

TEST(RicciLike, HandValuesAndBasisTrace) {
  const SymMatrix h = SymMatrix::diagonal({1, -1});
  EXPECT_NEAR(ricci_like(id2(), h, h), -1.25, 1e-15);
  std::mt19937_64 rng(26);
  for (int n = 2; n <= 4; ++n) {
    const PointMetricPair g(random_spd(rng, n));
    const SymMatrix x = random_sym(rng, n);
    const SymMatrix y = random_sym(rng, n);
    EXPECT_NEAR(ricci_like(g, g.metric().sym(), y), 0.0, 1e-12);
    // trace of k -> R(x, k) y over a g-orthonormal basis
    double trace = 0.0;
    for (const SymMatrix& b : symmetric_basis(n)) {
      const SymMatrix e = g.unwhiten(b);
      trace += inner_g(g, curvature(g, x, e, y), e);
    }
    EXPECT_NEAR(ricci_like(g, x, y), trace, 1e-10 * (1.0 + std::abs(trace)));
    EXPECT_NEAR(ricci_like_traceless_form(g, x, y), ricci_like(g, x, y),
                1e-10 * (1.0 + std::abs(trace)));
  }
}

TEST(ScalarLike, HandValues) {
  EXPECT_DOUBLE_EQ(scalar_like(2), -1.25);
  EXPECT_DOUBLE_EQ(scalar_like(3), -7.5);
}

TEST(CovariantDerivativeAlong, ConstantAndLinear) {
  const int m = 11;
  const double dt = 0.1;
  const SymMatrix k = SymMatrix::diagonal({2.0, -0.5});
  std::vector<SPDMatrix> curve(m, SPDMatrix::identity(2));
  std::vector<SymMatrix> constant(m, k);
  std::vector<SymMatrix> linear;
  for (int i = 0; i < m; ++i) linear.push_back((i * dt) * k);
  for (std::size_t i : {std::size_t{0}, std::size_t{5}, std::size_t{10}}) {
    const CovariantDerivative c = covariant_derivative_along(curve, constant, dt, i);
    EXPECT_TRUE(MatrixNear(c.value.matrix(), Matrix::Zero(2, 2), 1e-14));
    EXPECT_EQ(c.one_sided, i != 5);
    EXPECT_TRUE(MatrixNear(covariant_derivative_along(curve, linear, dt, i).value.matrix(),
                           k.matrix(), 1e-13));
  }
}

TEST(CovariantDerivativeAlong, GeodesicVelocityIsParallel) {
  std::mt19937_64 rng(27);
  const PointMetricPair g0(random_spd(rng, 3));
  const SymMatrix h = random_sym(rng, 3, 0.3);
  const GeodesicCoeffs c = GeodesicCoeffs::make(g0, h);
  double last = 0.0;
  for (double dt : {1e-2, 5e-3}) {
    std::vector<SPDMatrix> curve;
    std::vector<SymMatrix> vel;
    const int steps = static_cast<int>(std::lround(0.2 / dt));
    for (int i = 0; i <= steps; ++i) {
      curve.push_back(geodesic_point(c, i * dt));
      vel.push_back(geodesic_velocity(c, i * dt));
    }
    const double err = covariant_derivative_along(curve, vel, dt, steps / 2).value.norm();
    EXPECT_LT(err, 1e-3);
    if (last > 0.0) EXPECT_NEAR(last / err, 4.0, 0.5);
    last = err;
  }
}

TEST(VisMetric, HandValues) {
  std::mt19937_64 rng(28);
  const SPDMatrix g = random_spd(rng, 2);
  const SymMatrix h = random_sym(rng, 2);
  const SymMatrix k = random_sym(rng, 2);
  const PointMetricPair gp(g);
  EXPECT_NEAR(vis_metric(g, gp, h, k), inner_g(gp, h, k), 1e-13);
  const PointMetricPair g4(SPDMatrix(SymMatrix::diagonal({4, 4})));
  EXPECT_NEAR(vis_metric(SPDMatrix::identity(2), g4, SymMatrix::identity(2), SymMatrix::identity(2)),
              0.5, 1e-15);
  const double lam = 3.0;
  EXPECT_NEAR(vis_metric(SPDMatrix(lam * g.sym()), gp, h, k),
              std::pow(lam, -1.0) * vis_metric(g, gp, h, k), 1e-13);
}

}  // namespace
}  // namespace metricgeo
