#pragma once

// Independent verification machinery: classical RK4 integration of the
// geodesic and Jacobi equations, brute-force traces over a basis of symmetric
// matrices, and second-order finite differences.

#include <functional>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include "metricgeo/symcore.hpp"

namespace metricgeo {

/// Uniformly sampled numerical solution. `xi`/`xi_t` are empty for geodesics.
struct ODESolution {
  std::vector<double> times;
  std::vector<SPDMatrix> g;
  std::vector<SymMatrix> g_t;
  std::vector<SymMatrix> xi;
  std::vector<SymMatrix> xi_t;
  /// Set when integration stopped because g left the positive cone, or came
  /// so close to its boundary that ||g^-1 g_t||_F dt exceeded 1/2.
  bool positivity_lost = false;
  /// Time of the last accepted (positive definite) state.
  double last_valid_time = 0.0;
};

/// Classical RK4 on (g, g_t) for
///   g_tt = g_t g^-1 g_t + 1/4 tr(g^-1 g_t g^-1 g_t) g - 1/2 tr(g^-1 g_t) g_t.
/// The step is t_end / ceil(t_end / dt). Integration stops early, with
/// `positivity_lost` set, if any stage or accepted state is not positive
/// definite or not finite, or if an accepted state has ||g^-1 g_t||_F dt > 1/2.
ODESolution integrate_geodesic(const SPDMatrix& g0, const SymMatrix& h, double t_end,
                               double dt);

/// RK4 on (g, g_t, xi, xi_t) with the Jacobi equation for xi. The initial
/// xi_t is l + Gamma_{g0}(h, k), so that (nabla_t xi)(0) = l.
ODESolution integrate_jacobi(const SPDMatrix& g0, const SymMatrix& h, const SymMatrix& k,
                             const SymMatrix& l, double t_end, double dt);

/// Thrown by basis_trace when the map fails a linearity probe.
class NonlinearMapError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// {E_ii} followed by {(E_ij + E_ji)/sqrt 2, i < j}: orthonormal for tr(HK).
std::vector<SymMatrix> symmetric_basis(int n);

/// Trace of a linear endomorphism of the symmetric n x n matrices,
/// sum_i tr(map(B_i) B_i). Linearity and basis independence are probed with a
/// fixed-seed random rotation of the basis.
double basis_trace(const std::function<SymMatrix(const SymMatrix&)>& map, int n);

/// Second-order finite differences of uniformly spaced samples. Interior
/// points use central stencils; the ends use one-sided second-order stencils.
/// order 1: first derivative, order 2: second derivative. Needs >= 5 samples.
template <class T>
std::vector<T> central_diff(std::span<const T> f, double h, int order) {
  if (f.size() < 5) throw std::invalid_argument("central_diff: need at least 5 samples");
  if (!(h > 0.0)) throw std::invalid_argument("central_diff: spacing must be > 0");
  const std::size_t last = f.size() - 1;
  std::vector<T> out;
  out.reserve(f.size());
  if (order == 1) {
    const double s = 1.0 / (2.0 * h);
    out.push_back(T(s * (-3.0 * f[0] + 4.0 * f[1] - f[2])));
    for (std::size_t i = 1; i < last; ++i) out.push_back(T(s * (f[i + 1] - f[i - 1])));
    out.push_back(T(s * (3.0 * f[last] - 4.0 * f[last - 1] + f[last - 2])));
  } else if (order == 2) {
    const double s = 1.0 / (h * h);
    out.push_back(T(s * (2.0 * f[0] - 5.0 * f[1] + 4.0 * f[2] - f[3])));
    for (std::size_t i = 1; i < last; ++i) {
      out.push_back(T(s * (f[i + 1] - 2.0 * f[i] + f[i - 1])));
    }
    out.push_back(
        T(s * (2.0 * f[last] - 5.0 * f[last - 1] + 4.0 * f[last - 2] - f[last - 3])));
  } else {
    throw std::invalid_argument("central_diff: order must be 1 or 2");
  }
  return out;
}

/// Random instances for the verification harness.
SymMatrix random_sym(std::mt19937_64& rng, int n, double scale = 1.0);
SPDMatrix random_spd(std::mt19937_64& rng, int n);

}  // namespace metricgeo
