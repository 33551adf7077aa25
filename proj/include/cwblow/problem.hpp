#pragma once

#include <functional>
#include <span>

namespace cwblow {

struct Grid;

/// Coefficients and exponents of u_t = u_xx + a*|u|^{p-1}u - b*|u_x|^q
/// on (-1,1) with homogeneous Dirichlet boundary values.
struct PDEParams {
  double p = 3.0;  ///< reaction exponent, p > 1
  double q = 1.3;  ///< gradient exponent, 1 <= q <= 2p/(p+1)
  double a = 1.0;  ///< reaction coefficient, a >= 0
  double b = 1.0;  ///< damping coefficient, b >= 0; b = 0 removes the gradient term

  /// Largest admissible q for this p.
  double gradient_exponent_bound() const { return 2.0 * p / (p + 1.0); }

  bool operator==(const PDEParams&) const = default;
};

/// Returns params unchanged; throws std::invalid_argument naming the first
/// violated constraint (p > 1, 1 <= q <= 2p/(p+1), a >= 0, b >= 0).
PDEParams validate_params(const PDEParams& params);

/// Initial profile on [-1,1]. The sampler must be defined on the whole
/// interval; amplitude records the intended sup-norm for built-in profiles.
struct InitialData {
  std::function<double(double)> sampler;
  double amplitude = 0.0;
};

/// u0(x) = amplitude * sin(pi (x+1) / 2). Boundary values are exactly zero.
InitialData build_sine_profile(double amplitude);

/// Structural conditions on the initial data, evaluated at grid nodes.
/// Purely diagnostic; nothing here aborts.
struct AssumptionReport {
  bool nonnegative_nonconstant = false;  ///< u0 >= 0 and not identically constant
  bool symmetric = false;                ///< u0(x) = u0(-x)
  bool increasing_left_half = false;     ///< strictly increasing on [-1,0]
  bool large = false;                    ///< sup-norm >= largeness threshold
  bool boundary_zero = false;            ///< u0(-1) = u0(1) = 0
  double sup_norm = 0.0;

  /// Everything the scheme's proved properties rely on (largeness excluded:
  /// small data is a legitimate decay experiment).
  bool structural_ok() const {
    return nonnegative_nonconstant && symmetric && increasing_left_half && boundary_zero;
  }
};

/// Evaluates the sampler at the nodes of grid. The largeness threshold only
/// affects the `large` flag.
AssumptionReport check_assumptions(const InitialData& data, const Grid& grid,
                                   double largeness_threshold = 100.0);

/// E(u) = 1/2 sum_j ((u_{j+1}-u_j)/h)^2 h  -  1/(p+1) sum_j |u_j|^{p+1} h.
/// Forward differences plus node quadrature; second-order accurate for
/// profiles vanishing at both ends. A negative value flags data whose
/// solution cannot exist globally.
double discrete_energy(std::span<const double> values, const Grid& grid,
                       const PDEParams& params);

}  // namespace cwblow
