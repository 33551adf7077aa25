#include "cwblow/mesh.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cwblow {

MeshControl validate_control(const MeshControl& control) {
  if (!(control.tau > 0.0))
    throw std::invalid_argument("control: need tau > 0");
  if (!(control.h > 0.0 && control.h <= 1.0))
    throw std::invalid_argument("control: need 0 < h <= 1, got h = " + std::to_string(control.h));
  if (!(control.lambda() < 1.0 / 16.0))
    throw std::invalid_argument("control: need tau/h^2 < 1/16, got " +
                                std::to_string(control.lambda()));
  if (!(control.M_stop > 0.0))
    throw std::invalid_argument("control: need M_stop > 0");
  if (!(control.tau_floor > 0.0))
    throw std::invalid_argument("control: need tau_floor > 0");
  if (control.max_steps < 0)
    throw std::invalid_argument("control: need max_steps >= 0");
  return control;
}

double adapt_time_step(double sup_norm, const MeshControl& control,
                       const PDEParams& params) {
  if (!(sup_norm >= 0.0))
    throw std::invalid_argument("adapt_time_step: sup_norm must be >= 0");
  // min(1, M^{-(p-1)}) caps at 1 for M <= 1, which also covers M = 0.
  if (sup_norm <= 1.0) return control.tau;
  return control.tau * std::pow(sup_norm, 1.0 - params.p);
}

double adapt_space_step(double sup_norm, const MeshControl& control,
                        const PDEParams& params) {
  if (!(sup_norm >= 0.0))
    throw std::invalid_argument("adapt_space_step: sup_norm must be >= 0");
  // For M <= 1 the bound (2 M^{-(q-1)})^{1/(2-q)} >= 2 never binds (h <= 1).
  if (sup_norm <= 1.0) return control.h;
  const double bound = std::pow(2.0 * std::pow(sup_norm, 1.0 - params.q),
                                1.0 / (2.0 - params.q));
  return std::min(control.h, bound);
}

Grid build_grid(double h_candidate) {
  if (!(h_candidate > 0.0 && h_candidate <= 1.0))
    throw std::invalid_argument("build_grid: need 0 < h_candidate <= 1, got " +
                                std::to_string(h_candidate));
  long long K = 2 * static_cast<long long>(std::ceil(1.0 / h_candidate));
  if (K < 4) K = 4;
  // ceil guarantees 2/K <= h_candidate in exact arithmetic; nudge K up if
  // rounding ever breaks the inequality.
  while (2.0 / static_cast<double>(K) > h_candidate) K += 2;
  if (K > (1LL << 31))
    throw std::invalid_argument("build_grid: candidate spacing needs more than 2^31 intervals");

  Grid grid;
  grid.intervals = static_cast<int>(K);
  grid.spacing = 2.0 / static_cast<double>(K);
  grid.nodes.resize(static_cast<std::size_t>(K) + 1);
  const int m = grid.midpoint();
  grid.nodes[static_cast<std::size_t>(m)] = 0.0;
  for (int j = 0; j < m; ++j) {
    const double x = -1.0 + j * grid.spacing;
    grid.nodes[static_cast<std::size_t>(j)] = x;
    grid.nodes[static_cast<std::size_t>(grid.intervals - j)] = -x;
  }
  return grid;
}

std::vector<double> regrid(const Grid& old_grid, std::span<const double> old_values,
                           const Grid& new_grid) {
  const int K_old = old_grid.intervals;
  const int K_new = new_grid.intervals;
  if (old_values.size() != static_cast<std::size_t>(K_old) + 1)
    throw std::invalid_argument("regrid: value count does not match the old grid");

  if (K_old == K_new)
    return std::vector<double>(old_values.begin(), old_values.end());

  std::vector<double> out(static_cast<std::size_t>(K_new) + 1);
  const int m_new = K_new / 2;
  out[0] = 0.0;
  for (int i = 1; i <= m_new; ++i) {
    // Position of the new node in old-grid index units; i*K_old stays well
    // inside exact integer range so only the division rounds.
    const double s = static_cast<double>(static_cast<long long>(i) * K_old) / K_new;
    int j = static_cast<int>(s);
    if (j >= K_old) j = K_old - 1;
    const double frac = s - j;
    out[static_cast<std::size_t>(i)] =
        old_values[static_cast<std::size_t>(j)] +
        frac * (old_values[static_cast<std::size_t>(j) + 1] -
                old_values[static_cast<std::size_t>(j)]);
  }
  for (int i = 0; i < m_new; ++i)
    out[static_cast<std::size_t>(K_new - i)] = out[static_cast<std::size_t>(i)];
  return out;
}

}  // namespace cwblow
