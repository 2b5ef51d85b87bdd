#include "metricgeo/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include "metricgeo/fieldmanifold.hpp"
#include "metricgeo/oracles.hpp"

namespace metricgeo::verify {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t salt) {
  return std::mt19937_64(seed ^ (salt * 0x9E3779B97F4A7C15ULL));
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// Runs `body`, stores its wall time and fills in the error bounds.
Check timed_error(std::string name, double upper, const std::function<double(std::string&)>& body) {
  Check c;
  c.name = std::move(name);
  c.upper = upper;
  const auto start = std::chrono::steady_clock::now();
  try {
    c.value = body(c.detail);
  } catch (const std::exception& e) {
    c.value = kInf;
    c.detail = std::string("exception: ") + e.what();
  }
  if (std::isnan(c.value)) c.value = kInf;
  c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return c;
}

std::string label(const std::string& base, int n) { return base + " n=" + std::to_string(n); }

// Frobenius norm of g^{-1/2} x g^{-1/2}: the canonical pointwise norm.
double g_norm(const PointMetricPair& g, const SymMatrix& x) { return g.whiten(x).norm(); }

}  // namespace

bool SuiteReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed(); });
}

double SuiteReport::max_error() const {
  double m = 0.0;
  for (const Check& c : checks) {
    if (c.is_error) m = std::max(m, c.value);
  }
  return m;
}

Check geodesic_vs_rk4(std::uint64_t seed, int n, int instances, double dt, double tol) {
  return timed_error(label("geodesic closed form vs RK4", n), tol, [&](std::string& detail) {
    auto rng = make_rng(seed, 1000 + n);
    double worst = 0.0;
    for (int i = 0; i < instances; ++i) {
      const SPDMatrix g0 = random_spd(rng, n);
      const SymMatrix h = random_sym(rng, n);
      const ODESolution sol = integrate_geodesic(g0, h, 1.0, dt);
      if (sol.positivity_lost) {
        detail = "RK4 lost positivity on instance " + std::to_string(i);
        return kInf;
      }
      const GeodesicCoeffs c = GeodesicCoeffs::make(PointMetricPair(g0), h);
      for (std::size_t j = 0; j < sol.times.size(); ++j) {
        const Matrix exact = geodesic_point(c, sol.times[j]).matrix();
        const double err = (exact - sol.g[j].matrix()).norm() / std::max(1.0, exact.norm());
        worst = std::max(worst, err);
      }
    }
    detail = std::to_string(instances) + " instances, dt=" + std::to_string(dt);
    return worst;
  });
}

Check rk4_convergence_ratio(std::uint64_t seed, int n, int instances) {
  Check c = timed_error(label("RK4 error ratio dt/(dt/2)", n), 20.0, [&](std::string& detail) {
    auto rng = make_rng(seed, 2000 + n);
    double lo = kInf;
    double hi = 0.0;
    for (int i = 0; i < instances; ++i) {
      const SPDMatrix g0 = random_spd(rng, n);
      const SymMatrix h = random_sym(rng, n);
      const Matrix exact = geodesic_point(PointMetricPair(g0), h, 1.0).matrix();
      const auto error = [&](double dt) {
        const ODESolution sol = integrate_geodesic(g0, h, 1.0, dt);
        if (sol.positivity_lost) return kInf;
        return (sol.g.back().matrix() - exact).norm();
      };
      const double ratio = error(0.05) / error(0.025);
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
    }
    std::ostringstream os;
    os << instances << " instances, ratios in [" << lo << ", " << hi << "]";
    detail = os.str();
    // report the ratio farthest from 16
    return std::abs(std::log(lo / 16.0)) > std::abs(std::log(hi / 16.0)) ? lo : hi;
  });
  c.lower = 12.0;
  c.is_error = false;
  return c;
}

Check blowup_window(std::uint64_t seed, int instances, double dt) {
  return timed_error("RK4 blow-up within [sup_t - 10 dt, sup_t]", 10.0 * dt,
                     [&](std::string& detail) {
                       auto rng = make_rng(seed, 3000);
                       double worst = 0.0;
                       for (int i = 0; i < instances; ++i) {
                         const int n = 2 + i % 3;
                         const SPDMatrix g0 = random_spd(rng, n);
                         const double lambda = -uniform(rng, 0.5, 4.0);
                         const SymMatrix h = lambda * g0.sym();
                         const GeodesicCoeffs c = GeodesicCoeffs::make(PointMetricPair(g0), h);
                         const double sup = c.sup_t();
                         const ODESolution sol = integrate_geodesic(g0, h, sup + 1.0, dt);
                         if (!sol.positivity_lost) {
                           detail = "no positivity loss on instance " + std::to_string(i);
                           return kInf;
                         }
                         const double gap = sup - sol.last_valid_time;
                         if (gap < 0.0) {
                           detail = "integration passed sup_t on instance " + std::to_string(i);
                           return kInf;
                         }
                         worst = std::max(worst, gap);
                       }
                       detail = std::to_string(instances) + " conformal instances, n=2..4, dt=" +
                                std::to_string(dt);
                       return worst;
                     });
}

Check exp_log_roundtrip(std::uint64_t seed, int n, int instances, double tol) {
  return timed_error(label("Exp/Log mutual inversion", n), tol, [&](std::string& detail) {
    auto rng = make_rng(seed, 4000 + n);
    const double bound = 16.0 * std::numbers::pi * std::numbers::pi / n;
    double worst_log = 0.0;
    double worst_exp = 0.0;
    for (int i = 0; i < instances; ++i) {
      const PointMetricPair g0(random_spd(rng, n));
      const SymMatrix h = random_sym(rng, n);
      if (in_exp_domain(g0, h)) {
        const SymMatrix back = log_point(g0, exp_point(g0, h));
        worst_log = std::max(worst_log, g_norm(g0, back - h) / g_norm(g0, h));
      }
      // a target in V: A = log(g0^-1 g) with tr(A0^2) at most 0.9 of the bound
      SymMatrix a = random_sym(rng, n, 1.5);
      const SymMatrix a0 = traceless_part(a);
      const double q = trace_inner(a0, a0);
      if (q > 0.9 * bound) a = a - (1.0 - std::sqrt(0.9 * bound / q)) * a0;
      const SPDMatrix g(g0.unwhiten(sym_exp(a).sym()).matrix());
      const SPDMatrix again = exp_point(g0, log_point(g0, g));
      worst_exp = std::max(worst_exp, g_norm(g0, again.sym() - g.sym()) / g_norm(g0, g.sym()));
    }
    std::ostringstream os;
    os << instances << " pairs; Log(Exp h) " << worst_log << ", Exp(Log g) " << worst_exp;
    detail = os.str();
    return std::max(worst_log, worst_exp);
  });
}

namespace {

struct CurvatureInstance {
  PointMetricPair g;
  SymMatrix h, k, l;
  double scale = 1.0;  // product of canonical norms of h, k, l
};

CurvatureInstance random_curvature_instance(std::mt19937_64& rng, int n) {
  CurvatureInstance c;
  c.g = PointMetricPair(random_spd(rng, n));
  c.h = random_sym(rng, n);
  c.k = random_sym(rng, n);
  c.l = random_sym(rng, n);
  c.scale = g_norm(c.g, c.h) * g_norm(c.g, c.k) * g_norm(c.g, c.l);
  return c;
}

}  // namespace

Check curvature_routes(std::uint64_t seed, int n, int instances, double tol) {
  return timed_error(label("curvature dGamma route vs closed form", n), tol,
                     [&](std::string& detail) {
                       auto rng = make_rng(seed, 5000 + n);
                       double worst = 0.0;
                       for (int i = 0; i < instances; ++i) {
                         const CurvatureInstance c = random_curvature_instance(rng, n);
                         const SymMatrix def =
                             curvature(c.g, c.h, c.k, c.l, CurvatureRoute::kDefinition);
                         const SymMatrix closed =
                             curvature(c.g, c.h, c.k, c.l, CurvatureRoute::kClosedForm);
                         worst = std::max(worst, g_norm(c.g, def - closed) / c.scale);
                       }
                       detail = std::to_string(instances) + " instances";
                       return worst;
                     });
}

Check curvature_symmetries(std::uint64_t seed, int n, int instances, double tol) {
  return timed_error(label("curvature antisymmetry and Bianchi", n), tol,
                     [&](std::string& detail) {
                       auto rng = make_rng(seed, 6000 + n);
                       double anti = 0.0;
                       double bianchi = 0.0;
                       for (int i = 0; i < instances; ++i) {
                         const CurvatureInstance c = random_curvature_instance(rng, n);
                         for (CurvatureRoute route :
                              {CurvatureRoute::kDefinition, CurvatureRoute::kClosedForm}) {
                           const SymMatrix hkl = curvature(c.g, c.h, c.k, c.l, route);
                           const SymMatrix khl = curvature(c.g, c.k, c.h, c.l, route);
                           const SymMatrix klh = curvature(c.g, c.k, c.l, c.h, route);
                           const SymMatrix lhk = curvature(c.g, c.l, c.h, c.k, route);
                           anti = std::max(anti, g_norm(c.g, hkl + khl) / c.scale);
                           bianchi = std::max(bianchi, g_norm(c.g, hkl + klh + lhk) / c.scale);
                         }
                       }
                       std::ostringstream os;
                       os << instances << " instances; antisymmetry " << anti << ", Bianchi "
                          << bianchi;
                       detail = os.str();
                       return std::max(anti, bianchi);
                     });
}

Check bracket_trace(std::uint64_t seed, int instances, double tol) {
  return timed_error("trace of K -> [[H,K],L], n=2..5", tol, [&](std::string& detail) {
    auto rng = make_rng(seed, 7000);
    double worst = 0.0;
    for (int i = 0; i < instances; ++i) {
      const int n = 2 + i % 4;
      const SymMatrix h = random_sym(rng, n);
      const SymMatrix l = random_sym(rng, n);
      const double brute = basis_trace(
          [&](const SymMatrix& k) {
            const Matrix hk = h.matrix() * k.matrix() - k.matrix() * h.matrix();
            return SymMatrix::symmetric_part(hk * l.matrix() - l.matrix() * hk);
          },
          n);
      const double closed = trace_bracket(h, l);
      worst = std::max(worst, std::abs(brute - closed) / (n * h.norm() * l.norm()));
    }
    detail = std::to_string(instances) + " instances";
    return worst;
  });
}

Check ricci_trace(std::uint64_t seed, int n, int instances, double tol) {
  return timed_error(label("Ricci-like vs basis trace of k -> R(h,k)l", n), tol,
                     [&](std::string& detail) {
                       auto rng = make_rng(seed, 8000 + n);
                       double worst = 0.0;
                       for (int i = 0; i < instances; ++i) {
                         const CurvatureInstance c = random_curvature_instance(rng, n);
                         const double brute = basis_trace(
                             [&](const SymMatrix& b) {
                               return c.g.whiten(curvature(c.g, c.h, c.g.unwhiten(b), c.l,
                                                           CurvatureRoute::kDefinition));
                             },
                             n);
                         const double closed = ricci_like(c.g, c.h, c.l);
                         const double scale = g_norm(c.g, c.h) * g_norm(c.g, c.l);
                         worst = std::max(worst, std::abs(brute - closed) / scale);
                       }
                       detail = std::to_string(instances) + " instances";
                       return worst;
                     });
}

Check scalar_curvature(double tol) {
  return timed_error("scalar-like trace vs c(n), n=1..6", tol, [&](std::string& detail) {
    double worst = 0.0;
    std::ostringstream os;
    for (int n = 1; n <= 6; ++n) {
      Matrix m = Matrix::Constant(n, n, 0.1);
      for (int i = 0; i < n; ++i) m(i, i) += i + 1.0;
      const PointMetricPair g{SPDMatrix(m)};
      std::vector<SymMatrix> basis;
      for (const SymMatrix& b : symmetric_basis(n)) basis.push_back(g.unwhiten(b));
      double total = 0.0;
      for (const SymMatrix& bi : basis) {
        for (const SymMatrix& bj : basis) {
          total += inner_g(g, curvature(g, bi, bj, bi, CurvatureRoute::kDefinition), bj);
        }
      }
      const double cn = scalar_like(n);
      worst = std::max(worst, std::abs(total - cn) / std::max(1.0, std::abs(cn)));
      os << (n > 1 ? ", " : "") << "c(" << n << ")=" << cn;
    }
    detail = os.str();
    return worst;
  });
}

Check jacobi_vs_rk4(std::uint64_t seed, int n, int instances, double tol) {
  return timed_error(label("Jacobi closed form vs RK4", n), tol, [&](std::string& detail) {
    auto rng = make_rng(seed, 9000 + n);
    double worst = 0.0;
    for (int i = 0; i < instances; ++i) {
      const SPDMatrix g0 = random_spd(rng, n);
      const PointMetricPair p(g0);
      const SymMatrix h = random_sym(rng, n);
      const SymMatrix k = random_sym(rng, n);
      const SymMatrix l = random_sym(rng, n);
      const ODESolution sol = integrate_jacobi(g0, h, k, l, 1.0, 1e-3);
      if (sol.positivity_lost) {
        detail = "RK4 lost positivity on instance " + std::to_string(i);
        return kInf;
      }
      for (std::size_t j = 0; j < sol.times.size(); j += 50) {
        const SymMatrix exact = jacobi_field(p, h, k, l, sol.times[j]);
        worst = std::max(worst,
                         (exact - sol.xi[j]).norm() / std::max(1.0, exact.norm()));
      }
    }
    detail = std::to_string(instances) + " instances, dt=1e-3, t in [0,1]";
    return worst;
  });
}

Check jacobi_vs_variation(std::uint64_t seed, int n, int instances, double tol) {
  return timed_error(label("Jacobi closed form vs d/ds alpha(t,s)", n), tol,
                     [&](std::string& detail) {
                       auto rng = make_rng(seed, 10000 + n);
                       const double ds = 1e-4;
                       double worst = 0.0;
                       for (int i = 0; i < instances; ++i) {
                         const PointMetricPair p(random_spd(rng, n));
                         const SymMatrix h = random_sym(rng, n);
                         const SymMatrix k = random_sym(rng, n);
                         const SymMatrix l = random_sym(rng, n);
                         const VariationData var = VariationData::make(p, h, k, l);
                         for (double t : {0.25, 0.5, 0.75, 1.0}) {
                           const auto at = [&](double s) {
                             return variation_alpha(var, t, s).matrix();
                           };
                           const Matrix fd =
                               (8.0 * (at(ds) - at(-ds)) - (at(2.0 * ds) - at(-2.0 * ds))) /
                               (12.0 * ds);
                           const SymMatrix j = jacobi_field(p, h, k, l, t);
                           worst = std::max(worst, (fd - j.matrix()).norm() / j.norm());
                         }
                       }
                       detail = std::to_string(instances) + " instances, fourth-order centered stencil, s-step 1e-4";
                       return worst;
                     });
}

Check jacobi_initial_value(std::uint64_t seed, int n, int instances) {
  return timed_error(label("Jacobi J(0) = k", n), 0.0, [&](std::string& detail) {
    auto rng = make_rng(seed, 11000 + n);
    double worst = 0.0;
    for (int i = 0; i < instances; ++i) {
      const PointMetricPair p(random_spd(rng, n));
      const SymMatrix h = random_sym(rng, n);
      const SymMatrix k = random_sym(rng, n);
      const SymMatrix l = random_sym(rng, n);
      worst = std::max(worst, (jacobi_field(p, h, k, l, 0.0) - k).norm());
    }
    detail = std::to_string(instances) + " instances, exact equality";
    return worst;
  });
}

Check jacobi_initial_derivative_order(std::uint64_t seed, int n, int instances) {
  Check c = timed_error(label("Jacobi nabla J(0) = l, observed order", n), 2.3,
                        [&](std::string& detail) {
    auto rng = make_rng(seed, 11500 + n);
    double lo = kInf;
    double hi = -kInf;
    double finest = 0.0;
    for (int i = 0; i < instances; ++i) {
      const PointMetricPair p(random_spd(rng, n));
      const SymMatrix h = random_sym(rng, n);
      const SymMatrix k = random_sym(rng, n);
      const SymMatrix l = random_sym(rng, n);
      const GeodesicCoeffs c = GeodesicCoeffs::make(p, h);
      const auto error = [&](double dt) {
        std::vector<SPDMatrix> curve;
        std::vector<SymMatrix> field;
        for (int j = 0; j < 5; ++j) {
          curve.push_back(geodesic_point(c, j * dt));
          field.push_back(jacobi_field(p, h, k, l, j * dt));
        }
        const CovariantDerivative d = covariant_derivative_along(curve, field, dt, 0);
        return g_norm(p, d.value - l) / std::max(1.0, g_norm(p, l));
      };
      const double coarse = error(1e-2);
      const double fine = error(5e-3);
      const double order = std::log2(coarse / fine);
      lo = std::min(lo, order);
      hi = std::max(hi, order);
      finest = std::max(finest, fine);
    }
    std::ostringstream os;
    os << instances << " instances, dt = 1e-2 and 5e-3; orders in [" << lo << ", " << hi
       << "], largest error at 5e-3 " << finest;
    detail = os.str();
    return std::abs(lo - 2.0) > std::abs(hi - 2.0) ? lo : hi;
  });
  c.lower = 1.7;
  c.is_error = false;
  return c;
}

namespace {

SampledBase random_base(std::mt19937_64& rng, int n, int points) {
  std::vector<std::string> ids;
  std::vector<double> weights;
  for (int i = 0; i < points; ++i) {
    ids.push_back("x" + std::to_string(i));
    weights.push_back(uniform(rng, 0.5, 1.5));
  }
  return SampledBase(n, std::move(ids), std::move(weights));
}

std::vector<double> grid(double a, double b, int steps) {
  std::vector<double> out;
  for (int i = 0; i <= steps; ++i) out.push_back(a + (b - a) * i / steps);
  return out;
}

constexpr int kTimeSteps = 1000;
constexpr double kStep = 1.0 / kTimeSteps;

// Samples of [0,1] at kStep, extended by two samples on either side so that
// time derivatives at t = 0 and t = 1 are central.
std::vector<double> padded_unit_grid() {
  std::vector<double> out;
  for (int i = -2; i <= kTimeSteps + 2; ++i) out.push_back(i * kStep);
  return out;
}

// sqrt(2 E * int G(g_s, g_s) dt) over [0,1] on a grid with s values {-ds, 0, ds}.
double pairing_scale(const VariationGrid& v) {
  const double ds = v.s_values[2] - v.s_values[1];
  CompensatedSum gs_sq;
  for (std::size_t i = 0; i < v.times.size(); ++i) {
    const double t = v.times[i];
    if (t < -0.5 * kStep || t > 1.0 + 0.5 * kStep) continue;
    std::vector<SymMatrix> gs;
    for (std::size_t x = 0; x < v.base.size(); ++x) {
      gs.push_back((1.0 / (2.0 * ds)) * (v.frames[2][i][x].sym() - v.frames[0][i][x].sym()));
    }
    const TangentField field(v.base, std::move(gs));
    const bool end = std::abs(t) < 0.5 * kStep || std::abs(t - 1.0) < 0.5 * kStep;
    gs_sq.add((end ? 0.5 : 1.0) * kStep * global_inner(v.frames[1][i], field, field));
  }
  return std::sqrt(2.0 * energy(v.path(1), 0.0, 1.0) * gs_sq.value());
}

}  // namespace

Check first_variation_random(std::uint64_t seed, int instances, double tol) {
  return timed_error("first variation vs energy difference", tol, [&](std::string& detail) {
    auto rng = make_rng(seed, 12000);
    double worst = 0.0;
    for (int i = 0; i < instances; ++i) {
      const int n = 2 + i % 2;
      const SampledBase base = random_base(rng, n, 3);
      struct PointFamily {
        Matrix root;
        SymMatrix a, c, b, d;
      };
      std::vector<PointFamily> fam;
      for (std::size_t x = 0; x < base.size(); ++x) {
        fam.push_back({sym_sqrt(random_spd(rng, n)).matrix(), random_sym(rng, n, 0.3),
                       random_sym(rng, n, 0.3), random_sym(rng, n, 0.3),
                       random_sym(rng, n, 0.3)});
      }
      const VariationGrid v = VariationGrid::sample(
          base, padded_unit_grid(), {-1e-4, 0.0, 1e-4},
          [&](std::size_t x, double t, double s) {
            const PointFamily& f = fam[x];
            const SymMatrix e = t * f.a + (t * t) * f.c + s * (f.b + t * f.d);
            return SPDMatrix(
                SymMatrix::symmetric_part(f.root * sym_exp(e).matrix() * f.root));
          });
      const double formula = first_variation(v, 0.0, 1.0);
      const double quotient = energy_difference_quotient(v, 0.0, 1.0);
      worst = std::max(worst, std::abs(formula - quotient) / pairing_scale(v));
    }
    detail = std::to_string(instances) +
             " families, 1000 time steps, s-step 1e-4, relative to sqrt(2E int G(g_s,g_s))";
    return worst;
  });
}

Check first_variation_geodesic(std::uint64_t seed, int instances, double tol) {
  return timed_error("first variation of geodesics (endpoint-fixed)", tol,
                     [&](std::string& detail) {
                       auto rng = make_rng(seed, 13000);
                       double worst = 0.0;
                       for (int i = 0; i < instances; ++i) {
                         const int n = 2 + i % 2;
                         const SampledBase base = random_base(rng, n, 3);
                         std::vector<GeodesicCoeffs> geo;
                         std::vector<SymMatrix> dir;
                         for (std::size_t x = 0; x < base.size(); ++x) {
                           geo.push_back(GeodesicCoeffs::make(
                               PointMetricPair(random_spd(rng, n)), random_sym(rng, n, 0.5)));
                           dir.push_back(random_sym(rng, n));
                         }
                         const auto bump = [](double t) { return std::sin(std::numbers::pi * t); };
                         const std::vector<double> times = padded_unit_grid();
                         const VariationGrid v = VariationGrid::sample(
                             base, times, {-1e-4, 0.0, 1e-4},
                             [&](std::size_t x, double t, double s) {
                               const Matrix r = sym_sqrt(geodesic_point(geo[x], t)).matrix();
                               const SPDMatrix e = sym_exp((s * bump(t)) * dir[x]);
                               return SPDMatrix(SymMatrix::symmetric_part(r * e.matrix() * r));
                             });
                         worst = std::max(worst, std::abs(first_variation(v, 0.0, 1.0)) /
                                                     pairing_scale(v));
                       }
                       detail = std::to_string(instances) + " geodesics, 1000 time steps";
                       return worst;
                     });
}

Check energy_example(double tol) {
  return timed_error("energy of (1 + t/2)^2 Id on [0,1]", tol, [&](std::string& detail) {
    const SampledBase base = SampledBase::single(2);
    const std::vector<double> times = grid(0.0, 1.0, kTimeSteps);
    std::vector<MetricField> frames;
    for (double t : times) {
      const double f = (1.0 + 0.5 * t) * (1.0 + 0.5 * t);
      frames.emplace_back(base, std::vector<SPDMatrix>{SPDMatrix(f * Matrix::Identity(2, 2))});
    }
    const double e = energy(MetricPath(base, times, std::move(frames)));
    std::ostringstream os;
    os.precision(17);
    os << "E = " << e;
    detail = os.str();
    return std::abs(e - 1.0);
  });
}

Check energy_minimality(std::uint64_t seed, int perturbations, double tol) {
  return timed_error("geodesic energy below perturbed paths", tol, [&](std::string& detail) {
    auto rng = make_rng(seed, 14000);
    const int n = 3;
    const SampledBase base = random_base(rng, n, 2);
    std::vector<GeodesicCoeffs> geo;
    for (std::size_t x = 0; x < base.size(); ++x) {
      geo.push_back(
          GeodesicCoeffs::make(PointMetricPair(random_spd(rng, n)), random_sym(rng, n)));
    }
    const std::vector<double> times = grid(0.0, 1.0, kTimeSteps);
    const auto path_with = [&](const std::function<SPDMatrix(std::size_t, double)>& g) {
      std::vector<MetricField> frames;
      for (double t : times) {
        frames.emplace_back(base, field_map(base, [&](std::size_t x) { return g(x, t); }));
      }
      return MetricPath(base, times, std::move(frames));
    };
    const double e_geo =
        energy(path_with([&](std::size_t x, double t) { return geodesic_point(geo[x], t); }));
    double worst = -kInf;
    for (int i = 0; i < perturbations; ++i) {
      std::vector<SymMatrix> dir;
      for (std::size_t x = 0; x < base.size(); ++x) dir.push_back(random_sym(rng, n, 0.2));
      const int mode = 1 + i % 3;
      const double e = energy(path_with([&](std::size_t x, double t) {
        const Matrix r = sym_sqrt(geodesic_point(geo[x], t)).matrix();
        const SPDMatrix bump = sym_exp(std::sin(mode * std::numbers::pi * t) * dir[x]);
        return SPDMatrix(SymMatrix::symmetric_part(r * bump.matrix() * r));
      }));
      worst = std::max(worst, e_geo - e);
    }
    std::ostringstream os;
    os << perturbations << " perturbations, E(geodesic) = " << e_geo;
    detail = os.str();
    // the value is the largest excess of the geodesic energy; negative is fine
    return std::max(worst, 0.0);
  });
}

Check global_ricci_forms(std::uint64_t seed, int instances, double tol) {
  return timed_error("integrated Ricci tensor, both expressions", tol, [&](std::string& detail) {
    auto rng = make_rng(seed, 15000);
    double worst = 0.0;
    for (int i = 0; i < instances; ++i) {
      const int n = 2 + i % 3;
      const SampledBase base = random_base(rng, n, 5);
      std::vector<SPDMatrix> gv;
      std::vector<SymMatrix> xv, ev;
      for (std::size_t x = 0; x < base.size(); ++x) {
        gv.push_back(random_spd(rng, n));
        xv.push_back(random_sym(rng, n));
        ev.push_back(random_sym(rng, n));
      }
      const MetricField g(base, gv);
      const TangentField xi(base, xv);
      const TangentField eta(base, ev);
      const double a = global_ricci(g, xi, eta);
      const double b = global_ricci_traceless_form(g, xi, eta);
      const double scale = (n / 32.0) * (4.0 + n * (n + 1.0)) *
                           std::sqrt(global_inner(g, xi, xi) * global_inner(g, eta, eta));
      worst = std::max(worst, std::abs(a - b) / scale);
    }
    detail = std::to_string(instances) + " random fields";
    return worst;
  });
}

Check figure1_plane(int n, int grid_size, double tol) {
  return timed_error(label("figure1 map vs exp_point on the (Id, A0) plane", n), tol,
                     [&](std::string& detail) {
                       // traceless A with tr(A^2) = n
                       Matrix a = Matrix::Zero(n, n);
                       for (int i = 0; i < n; ++i) a(i, i) = (i % 2 == 0) ? 1.0 : -1.0;
                       if (n % 2 == 1) {
                         a(n - 1, n - 1) = 0.0;
                         a *= std::sqrt(static_cast<double>(n) / (n - 1));
                       }
                       const SymMatrix A(a);
                       const PointMetricPair id(SPDMatrix::identity(n));
                       double worst = 0.0;
                       for (int i = 0; i < grid_size; ++i) {
                         for (int j = 0; j < grid_size; ++j) {
                           // cell centres of [-3, 3]^2; x = 0 never occurs
                           const double x = -3.0 + 6.0 * (i + 0.5) / grid_size;
                           const double y = -3.0 + 6.0 * (j + 0.5) / grid_size;
                           const PlaneCoords uv = figure1_map(x, y, n);
                           const SymMatrix lg =
                               sym_log(exp_point(id, y * SymMatrix::identity(n) + x * A));
                           const double v = lg.trace() / n;
                           const double u = trace_inner(lg, A) / n;
                           worst = std::max({worst, std::abs(u - uv.u), std::abs(v - uv.v)});
                         }
                       }
                       detail = std::to_string(grid_size) + "x" + std::to_string(grid_size) +
                                " grid on [-3,3]^2";
                       return worst;
                     });
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"geodesic", "expLog", "curvature", "jacobi",
                                                 "variation"};
  return names;
}

SuiteReport run_suite(const std::string& name, std::uint64_t seed, double tol) {
  const auto cap = [tol](double pinned) { return std::min(pinned, tol); };
  SuiteReport r;
  r.name = name;
  if (name == "geodesic") {
    for (int n : {2, 3, 4}) r.checks.push_back(geodesic_vs_rk4(seed, n, 200, 1e-3, 1e-6));
    r.checks.push_back(rk4_convergence_ratio(seed, 3, 20));
    r.checks.push_back(blowup_window(seed, 50, 1e-3));
  } else if (name == "expLog") {
    for (int n : {2, 3, 4}) r.checks.push_back(exp_log_roundtrip(seed, n, 500, cap(1e-9)));
    r.checks.push_back(figure1_plane(2, 40, cap(1e-10)));
    r.checks.push_back(figure1_plane(3, 40, cap(1e-10)));
  } else if (name == "curvature") {
    for (int n : {2, 3, 4}) {
      r.checks.push_back(curvature_routes(seed, n, 1000, cap(1e-9)));
      r.checks.push_back(curvature_symmetries(seed, n, 1000, cap(1e-9)));
      r.checks.push_back(ricci_trace(seed, n, 200, cap(1e-9)));
    }
    r.checks.push_back(bracket_trace(seed, 500, cap(1e-10)));
    r.checks.push_back(scalar_curvature(cap(1e-12)));
    r.checks.push_back(global_ricci_forms(seed, 100, cap(1e-12)));
  } else if (name == "jacobi") {
    for (int n : {2, 3}) {
      r.checks.push_back(jacobi_vs_rk4(seed, n, 100, 1e-5));
      r.checks.push_back(jacobi_vs_variation(seed, n, 100, 1e-6));
      r.checks.push_back(jacobi_initial_value(seed, n, 100));
      r.checks.push_back(jacobi_initial_derivative_order(seed, n, 100));
    }
  } else if (name == "variation") {
    r.checks.push_back(first_variation_random(seed, 50, 1e-6));
    r.checks.push_back(first_variation_geodesic(seed, 10, 1e-6));
    r.checks.push_back(energy_example(1e-10));
    r.checks.push_back(energy_minimality(seed, 50, 1e-8));
  } else {
    throw std::invalid_argument("unknown suite '" + name + "'");
  }
  for (const Check& c : r.checks) r.seconds += c.seconds;
  return r;
}

}  // namespace metricgeo::verify
