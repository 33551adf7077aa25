#include "cwblow/scheme.hpp"

#include <cmath>
#include <sstream>
#include <string>

namespace cwblow {

namespace {

// Relative tolerance for the proved sign/shape properties. Rounding in the
// elimination perturbs node values by a few ulp of the sup-norm per step;
// 1e-12 leaves three orders of headroom over a long run.
constexpr double kInvariantTol = 1e-12;

std::string describe(const State& state, const char* what, int index, double value) {
  std::ostringstream os;
  os << "invariant violation at step " << state.n << " (t = " << state.t << "): " << what
     << " at node " << index << ", value " << value << ", sup-norm " << state.sup_norm;
  return os.str();
}

}  // namespace

double max_abs(std::span<const double> values) {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

void enforce_state_invariants(const State& state) {
  const int K = state.grid.intervals;
  const int m = state.grid.midpoint();
  const auto& u = state.values;
  if (u.size() != static_cast<std::size_t>(K) + 1)
    throw InvariantViolation("state value count does not match its grid");

  const double M = max_abs(u);
  const double tol = kInvariantTol * M;

  if (u[0] != 0.0 || u[static_cast<std::size_t>(K)] != 0.0)
    throw InvariantViolation(describe(state, "nonzero boundary", u[0] != 0.0 ? 0 : K,
                                      u[0] != 0.0 ? u[0] : u[static_cast<std::size_t>(K)]));
  if (std::abs(state.sup_norm - M) > tol)
    throw InvariantViolation(describe(state, "stale sup-norm", -1, state.sup_norm));

  for (int j = 0; j <= K; ++j)
    if (u[static_cast<std::size_t>(j)] < -tol)
      throw InvariantViolation(describe(state, "negative value", j, u[static_cast<std::size_t>(j)]));

  for (int i = 1; i <= m; ++i) {
    const double left = u[static_cast<std::size_t>(m - i)];
    const double right = u[static_cast<std::size_t>(m + i)];
    if (std::abs(left - right) > tol)
      throw InvariantViolation(describe(state, "asymmetry", m - i, left - right));
  }

  for (int j = 1; j < m; ++j)
    if (u[static_cast<std::size_t>(j + 1)] - u[static_cast<std::size_t>(j)] < -tol)
      throw InvariantViolation(describe(state, "left half not increasing", j,
                                        u[static_cast<std::size_t>(j + 1)] -
                                            u[static_cast<std::size_t>(j)]));

  if (M > 0.0 && std::abs(u[static_cast<std::size_t>(m)] - M) > tol)
    throw InvariantViolation(describe(state, "maximum away from midpoint", m,
                                      u[static_cast<std::size_t>(m)]));
}

GradientCoeffs gradient_coefficients(const State& state, double tau_n,
                                     const PDEParams& params) {
  const int N = state.grid.interior_count();
  const double h = state.grid.spacing;
  const double scale = params.b * tau_n / std::pow(2.0 * h, params.q);

  GradientCoeffs coeffs;
  coeffs.alpha.resize(static_cast<std::size_t>(N));
  for (int i = 1; i <= N; ++i) {
    const double diff = state.values[static_cast<std::size_t>(i) + 1] -
                        state.values[static_cast<std::size_t>(i) - 1];
    const double mag = std::abs(diff);
    // mag == 0 drops the term outright, which is also the q = 1 convention.
    coeffs.alpha[static_cast<std::size_t>(i) - 1] =
        mag == 0.0 ? 0.0 : scale * std::pow(mag, params.q - 1.0);
  }
  return coeffs;
}

TridiagonalSystem assemble_system(const State& state, double tau_n,
                                  const GradientCoeffs& coeffs,
                                  const PDEParams& params) {
  const int N = state.grid.interior_count();
  if (coeffs.alpha.size() != static_cast<std::size_t>(N))
    throw std::invalid_argument("assemble_system: coefficient count mismatch");
  const double h = state.grid.spacing;
  const double lambda_n = tau_n / (h * h);

  TridiagonalSystem sys;
  sys.diag.assign(static_cast<std::size_t>(N), 1.0 + 2.0 * lambda_n);
  sys.sub.resize(static_cast<std::size_t>(N) - 1);
  sys.super.resize(static_cast<std::size_t>(N) - 1);
  sys.rhs.resize(static_cast<std::size_t>(N));

  for (int i = 1; i <= N; ++i) {
    const double alpha = coeffs.alpha[static_cast<std::size_t>(i) - 1];
    if (alpha > lambda_n * (1.0 + 1e-12))
      throw InvariantViolation("assemble_system: alpha " + std::to_string(alpha) +
                               " exceeds lambda_n " + std::to_string(lambda_n) +
                               " at node " + std::to_string(i) +
                               "; the spacing law should make this impossible");

    const double u_i = state.values[static_cast<std::size_t>(i)];
    const double diff = state.values[static_cast<std::size_t>(i) + 1] -
                        state.values[static_cast<std::size_t>(i) - 1];
    // The implicit |u_{i+1} - u_{i-1}| is resolved with the explicit sign,
    // so the absolute value turns into a signed linear term.
    const double signed_alpha = diff > 0.0 ? alpha : (diff < 0.0 ? -alpha : 0.0);

    if (i < N) sys.super[static_cast<std::size_t>(i) - 1] = -lambda_n + signed_alpha;
    if (i > 1) sys.sub[static_cast<std::size_t>(i) - 2] = -lambda_n - signed_alpha;
    sys.rhs[static_cast<std::size_t>(i) - 1] =
        u_i + tau_n * params.a * std::pow(std::max(u_i, 0.0), params.p);
  }
  return sys;
}

std::vector<double> solve_tridiagonal(const TridiagonalSystem& system) {
  const std::size_t n = system.diag.size();
  if (n == 0) throw std::invalid_argument("solve_tridiagonal: empty system");
  if (system.sub.size() != n - 1 || system.super.size() != n - 1 ||
      system.rhs.size() != n)
    throw std::invalid_argument("solve_tridiagonal: band size mismatch");

  std::vector<double> scratch(n, 0.0);
  std::vector<double> x(n, 0.0);

  double pivot = system.diag[0];
  if (pivot == 0.0) throw InvariantViolation("solve_tridiagonal: zero pivot at row 0");
  if (n > 1) scratch[0] = system.super[0] / pivot;
  x[0] = system.rhs[0] / pivot;
  for (std::size_t i = 1; i < n; ++i) {
    pivot = system.diag[i] - system.sub[i - 1] * scratch[i - 1];
    if (pivot == 0.0)
      throw InvariantViolation("solve_tridiagonal: zero pivot at row " + std::to_string(i));
    if (i < n - 1) scratch[i] = system.super[i] / pivot;
    x[i] = (system.rhs[i] - system.sub[i - 1] * x[i - 1]) / pivot;
  }
  for (std::size_t i = n - 1; i-- > 0;) x[i] -= scratch[i] * x[i + 1];
  return x;
}

State advance_step(const State& state, const MeshControl& control,
                   const PDEParams& params, bool adapt_mesh) {
  if (!(state.sup_norm < control.M_stop))
    throw std::invalid_argument("advance_step: state already at or beyond M_stop");

  const double tau_n = adapt_time_step(state.sup_norm, control, params);
  if (tau_n < control.tau_floor)
    throw ResolutionExhausted("time step " + std::to_string(tau_n) +
                              " fell below the floor " + std::to_string(control.tau_floor) +
                              " at step " + std::to_string(state.n));

  // Adapt -> regrid -> solve. The transfer happens before assembly so the
  // whole step works on one grid.
  const State* level_n = &state;
  State transferred;
  if (adapt_mesh) {
    Grid next_grid = build_grid(adapt_space_step(state.sup_norm, control, params));
    if (!next_grid.same_layout(state.grid)) {
      transferred.n = state.n;
      transferred.t = state.t;
      transferred.t_carry = state.t_carry;
      transferred.values = regrid(state.grid, state.values, next_grid);
      transferred.grid = std::move(next_grid);
      transferred.sup_norm = max_abs(transferred.values);
      level_n = &transferred;
    }
  }

  const GradientCoeffs coeffs = gradient_coefficients(*level_n, tau_n, params);
  const TridiagonalSystem sys = assemble_system(*level_n, tau_n, coeffs, params);
  const std::vector<double> interior = solve_tridiagonal(sys);

  State next;
  next.n = state.n + 1;
  next.grid = level_n->grid;
  next.values.resize(interior.size() + 2);
  next.values.front() = 0.0;
  next.values.back() = 0.0;
  std::copy(interior.begin(), interior.end(), next.values.begin() + 1);
  next.sup_norm = max_abs(next.values);

  // Compensated accumulation keeps t exact even when tau_n spans many
  // orders of magnitude over a run.
  const double increment = tau_n + state.t_carry;
  next.t = state.t + increment;
  next.t_carry = increment - (next.t - state.t);

  enforce_state_invariants(next);
  return next;
}

}  // namespace cwblow
