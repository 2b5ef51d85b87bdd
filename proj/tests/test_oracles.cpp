#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <span>
#include <vector>

#include "metricgeo/geoexp.hpp"
#include "metricgeo/oracles.hpp"
#include "metricgeo/pointgeo.hpp"
#include "test_util.hpp"

namespace metricgeo {
namespace {

using testing::MatrixNear;

TEST(IntegrateGeodesic, ZeroVelocityStaysPut) {
  std::mt19937_64 rng(61);
  const SPDMatrix g0 = random_spd(rng, 3);
  const ODESolution sol = integrate_geodesic(g0, SymMatrix::zero(3), 1.0, 0.1);
  EXPECT_FALSE(sol.positivity_lost);
  EXPECT_EQ(sol.g.back().matrix(), g0.matrix());
}

TEST(IntegrateGeodesic, ConformalGrowth) {
  const ODESolution sol = integrate_geodesic(SPDMatrix::identity(2), SymMatrix::identity(2), 1.0, 1e-3);
  EXPECT_NEAR(sol.times.back(), 1.0, 1e-15);
  EXPECT_TRUE(MatrixNear(sol.g.back().matrix(), 2.25 * Matrix::Identity(2, 2), 1e-8));
}

TEST(IntegrateGeodesic, ReportsBlowUpNearTwo) {
  const ODESolution sol = integrate_geodesic(SPDMatrix::identity(2), -SymMatrix::identity(2), 3.0, 1e-3);
  EXPECT_TRUE(sol.positivity_lost);
  EXPECT_LT(sol.last_valid_time, 2.0);
  EXPECT_GT(sol.last_valid_time, 1.98);
}

TEST(IntegrateGeodesic, FourthOrder) {
  std::mt19937_64 rng(62);
  const PointMetricPair g0(random_spd(rng, 3));
  const SymMatrix h = g0.unwhiten(random_sym(rng, 3, 0.8));
  const Matrix exact = geodesic_point(g0, h, 1.0).matrix();
  const double e1 = (integrate_geodesic(g0.metric(), h, 1.0, 0.05).g.back().matrix() - exact).norm();
  const double e2 = (integrate_geodesic(g0.metric(), h, 1.0, 0.025).g.back().matrix() - exact).norm();
  EXPECT_GT(e1 / e2, 12.0);
  EXPECT_LT(e1 / e2, 20.0);
}

TEST(IntegrateJacobi, ConstantGeodesic) {
  const SymMatrix k = SymMatrix::diagonal({0.5, 2.0});
  const SymMatrix l = SymMatrix::diagonal({-1.0, 0.25});
  const ODESolution sol = integrate_jacobi(SPDMatrix::identity(2), SymMatrix::zero(2), k, l, 2.0, 1e-2);
  for (std::size_t i = 0; i < sol.times.size(); i += 50) {
    EXPECT_TRUE(MatrixNear(sol.xi[i].matrix(), (k + sol.times[i] * l).matrix(), 1e-12));
  }
}

TEST(IntegrateJacobi, VelocityScaledByTime) {
  std::mt19937_64 rng(63);
  const PointMetricPair g0(random_spd(rng, 2));
  const SymMatrix h = random_sym(rng, 2, 0.5);
  const ODESolution sol = integrate_jacobi(g0.metric(), h, SymMatrix::zero(2), h, 1.0, 1e-3);
  const GeodesicCoeffs c = GeodesicCoeffs::make(g0, h);
  EXPECT_TRUE(MatrixNear(sol.xi.back().matrix(), geodesic_velocity(c, 1.0).matrix(), 1e-8));
}

TEST(SymmetricBasis, Orthonormal) {
  for (int n = 1; n <= 4; ++n) {
    const std::vector<SymMatrix> basis = symmetric_basis(n);
    ASSERT_EQ(basis.size(), static_cast<std::size_t>(n * (n + 1) / 2));
    for (std::size_t i = 0; i < basis.size(); ++i)
      for (std::size_t j = 0; j < basis.size(); ++j)
        EXPECT_NEAR(trace_inner(basis[i], basis[j]), i == j ? 1.0 : 0.0, 1e-15);
  }
}

TEST(BasisTrace, HandValues) {
  EXPECT_NEAR(basis_trace([](const SymMatrix& k) { return k; }, 2), 3.0, 1e-14);
  EXPECT_NEAR(basis_trace([](const SymMatrix& k) { return traceless_part(k); }, 2), 2.0, 1e-14);
}

TEST(BasisTrace, BracketMap) {
  std::mt19937_64 rng(64);
  for (int n = 2; n <= 5; ++n) {
    const Matrix h = random_sym(rng, n).matrix();
    const Matrix l = random_sym(rng, n).matrix();
    const auto map = [&](const SymMatrix& k) {
      const Matrix hk = h * k.matrix() - k.matrix() * h;
      return SymMatrix::symmetric_part(hk * l - l * hk);
    };
    const double expected = h.trace() * l.trace() - n * (h * l).trace();
    EXPECT_NEAR(basis_trace(map, n), expected, 1e-10 * (1 + std::abs(expected)));
  }
}

TEST(BasisTrace, RejectsNonlinearMap) {
  const auto square = [](const SymMatrix& k) { return SymMatrix::symmetric_part(k.matrix() * k.matrix()); };
  EXPECT_THROW(basis_trace(square, 2), NonlinearMapError);
}

TEST(CentralDiff, PolynomialsAreExact) {
  const double h = 0.25;
  std::vector<double> lin;
  std::vector<double> quad;
  for (int i = 0; i < 9; ++i) {
    const double x = i * h;
    lin.push_back(3.0 * x - 1.0);
    quad.push_back(2.0 * x * x - x + 4.0);
  }
  for (double d : central_diff<double>(std::span<const double>(lin), h, 1)) EXPECT_NEAR(d, 3.0, 1e-13);
  for (double d : central_diff<double>(std::span<const double>(quad), h, 2)) EXPECT_NEAR(d, 4.0, 1e-12);
}

TEST(CentralDiff, SineDerivative) {
  const double h = 1e-3;
  std::vector<double> f;
  for (int i = 0; i <= 1000; ++i) f.push_back(std::sin(i * h));
  const std::vector<double> d = central_diff<double>(std::span<const double>(f), h, 1);
  for (std::size_t i = 0; i < d.size(); ++i) EXPECT_LT(std::abs(d[i] - std::cos(i * h)), 1e-6);
}

TEST(CentralDiff, RejectsBadInput) {
  const std::vector<double> few = {1, 2, 3, 4};
  EXPECT_THROW(central_diff<double>(std::span<const double>(few), 0.1, 1), std::invalid_argument);
  const std::vector<double> ok = {1, 2, 3, 4, 5};
  EXPECT_THROW(central_diff<double>(std::span<const double>(ok), 0.1, 3), std::invalid_argument);
  EXPECT_THROW(central_diff<double>(std::span<const double>(ok), 0.0, 1), std::invalid_argument);
}

}  // namespace
}  // namespace metricgeo
