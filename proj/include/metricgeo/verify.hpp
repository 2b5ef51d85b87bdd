#pragma once

// Seeded oracle-versus-closed-form checks, grouped into suites.
//
// Checks comparing two exact expressions (closed forms, identities, the
// exponential against the logarithm) use min(pinned tolerance, tol). Checks
// against a discretization (RK4, finite differences, quadrature) always use
// their pinned tolerance, since their error is set by the step size.

#include <cstdint>
#include <string>
#include <vector>

namespace metricgeo::verify {

struct Check {
  std::string name;
  /// Measured value: a maximum error, or a ratio for convergence checks.
  double value = 0.0;
  /// Accepted range [lower, upper]; lower is 0 for error checks.
  double lower = 0.0;
  double upper = 0.0;
  bool is_error = true;
  std::string detail;
  double seconds = 0.0;

  bool passed() const { return value >= lower && value <= upper; }
};

struct SuiteReport {
  std::string name;
  std::vector<Check> checks;
  double seconds = 0.0;

  bool passed() const;
  /// Largest `value` among error checks.
  double max_error() const;
};

/// Suite names accepted by run_suite, in execution order.
const std::vector<std::string>& suite_names();

/// Runs one suite; throws std::invalid_argument for an unknown name.
SuiteReport run_suite(const std::string& name, std::uint64_t seed, double tol);

// Individual checks. Each draws its instances from a generator seeded with
// `seed` mixed with a per-check constant.

/// Max |closed-form geodesic - RK4| over t in [0,1] (Frobenius norm).
Check geodesic_vs_rk4(std::uint64_t seed, int n, int instances, double dt, double tol);
/// Ratio of RK4 terminal errors at dt and dt/2.
Check rk4_convergence_ratio(std::uint64_t seed, int n, int instances);
/// Conformal directions with tr H < 0: RK4 must stop within
/// [sup_t - 10 dt, sup_t]. The value is the largest distance below sup_t.
Check blowup_window(std::uint64_t seed, int instances, double dt);
/// max(|Log Exp h - h| / |h|, |Exp Log g - g| / |g|).
Check exp_log_roundtrip(std::uint64_t seed, int n, int instances, double tol);
/// Relative gap between the two curvature routes.
Check curvature_routes(std::uint64_t seed, int n, int instances, double tol);
/// Antisymmetry in (h,k) and the first Bianchi identity, relative.
Check curvature_symmetries(std::uint64_t seed, int n, int instances, double tol);
/// Basis trace of K -> [[H,K],L] against tr(H) tr(L) - n tr(HL), n = 2..5.
Check bracket_trace(std::uint64_t seed, int instances, double tol);
/// ricci_like against the basis trace of k -> R(h,k)l.
Check ricci_trace(std::uint64_t seed, int n, int instances, double tol);
/// Double basis trace of R against c(n), n = 1..6, relative.
Check scalar_curvature(double tol);
/// Closed-form Jacobi field against RK4 of the Jacobi equation on [0,1].
Check jacobi_vs_rk4(std::uint64_t seed, int n, int instances, double tol);
/// Closed-form Jacobi field against the fourth-order centered s-difference
/// of the variation alpha(t,s), relative.
Check jacobi_vs_variation(std::uint64_t seed, int n, int instances, double tol);
/// J(0) = k exactly.
Check jacobi_initial_value(std::uint64_t seed, int n, int instances);
/// Observed order of (nabla J)(0) -> l from sampled J at dt = 1e-2 and 5e-3;
/// the range [1.7, 2.3] brackets second order.
Check jacobi_initial_derivative_order(std::uint64_t seed, int n, int instances);
/// First variation formula against the centered difference of the energy on
/// random two-parameter families. Errors are relative to
/// sqrt(2 E int G(g_s, g_s) dt), the Cauchy-Schwarz bound of the pairing.
Check first_variation_random(std::uint64_t seed, int instances, double tol);
/// First variation of geodesics under endpoint-fixed variations, relative to
/// the same scale.
Check first_variation_geodesic(std::uint64_t seed, int instances, double tol);
/// Energy of the conformal path (1 + t/2)^2 Id on [0,1] against 1.
Check energy_example(double tol);
/// Geodesic energy below that of endpoint-fixed perturbations; the value is
/// the largest E(geodesic) - E(perturbed), which must not be positive beyond
/// the quadrature tolerance.
Check energy_minimality(std::uint64_t seed, int perturbations, double tol);
/// The two expressions of the integrated Ricci tensor, relative.
Check global_ricci_forms(std::uint64_t seed, int instances, double tol);
/// figure1_map against exp_point restricted to the (Id, A0) plane.
Check figure1_plane(int n, int grid, double tol);

}  // namespace metricgeo::verify
