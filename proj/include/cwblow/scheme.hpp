#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "cwblow/mesh.hpp"

namespace cwblow {

/// The adaptive time step fell below MeshControl::tau_floor.
struct ResolutionExhausted : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A property the scheme provably maintains (positivity, symmetry,
/// monotonicity, coefficient bounds) failed numerically. Always a defect,
/// either in the solver or in data that bypassed the structural checks.
struct InvariantViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// One time level of the discrete solution.
struct State {
  long n = 0;
  double t = 0.0;
  double t_carry = 0.0;  ///< compensated-summation remainder for t
  Grid grid;
  std::vector<double> values;  ///< one per node, boundaries pinned to zero
  double sup_norm = 0.0;       ///< M_n = max_j |u_j|
};

double max_abs(std::span<const double> values);

/// Recomputes sup_norm and verifies, with tolerance 1e-12 * M_n:
/// boundary zeros, positivity, symmetry about the midpoint, strict growth on
/// the left half, and the maximum sitting at the midpoint. Throws
/// InvariantViolation with the offending index and values.
void enforce_state_invariants(const State& state);

/// alpha_i = b * tau_n / (2 h)^q * |u_{i+1} - u_{i-1}|^{q-1} per interior
/// node. A vanishing central difference contributes zero; in particular for
/// q = 1 the convention is |d|^0 = 1 for d != 0 and the term is dropped for
/// d = 0, so the midpoint row of a symmetric state never carries alpha.
struct GradientCoeffs {
  std::vector<double> alpha;  ///< size N_n, entry i-1 belongs to node i
};

GradientCoeffs gradient_coefficients(const State& state, double tau_n,
                                     const PDEParams& params);

/// Interior system for the next time level, rows 1..N_n:
///   diag    1 + 2 lambda_n everywhere
///   off     -lambda_n -/+ s_i alpha_i, where s_i is the sign of the
///           explicit central difference (positive left of the peak,
///           negative right of it, zero at the midpoint)
///   rhs     u_i + tau_n * a * u_i^p
/// Every row is strictly diagonally dominant with margin exactly 1 over the
/// full stencil, which makes the matrix invertible unconditionally.
struct TridiagonalSystem {
  std::vector<double> sub;    ///< size N-1
  std::vector<double> diag;   ///< size N
  std::vector<double> super;  ///< size N-1
  std::vector<double> rhs;    ///< size N
};

/// Throws InvariantViolation if any alpha_i exceeds lambda_n: the spacing
/// law guarantees alpha_i <= lambda_n, so an excess means a solver bug.
TridiagonalSystem assemble_system(const State& state, double tau_n,
                                  const GradientCoeffs& coeffs,
                                  const PDEParams& params);

/// Thomas elimination. Safe here because dominance keeps every pivot at
/// least 1 in magnitude.
std::vector<double> solve_tridiagonal(const TridiagonalSystem& system);

/// One level n -> n+1: adapt tau and h, rebuild the grid and transfer the
/// state when the layout changes, assemble, solve, re-pin boundaries,
/// advance t by compensated summation, and check the state invariants.
/// adapt_mesh = false keeps the incoming grid (the time step still adapts),
/// which is how the scheme is pinned against dense reference solves.
/// Throws ResolutionExhausted when tau_n < tau_floor.
State advance_step(const State& state, const MeshControl& control,
                   const PDEParams& params, bool adapt_mesh = true);

}  // namespace cwblow
