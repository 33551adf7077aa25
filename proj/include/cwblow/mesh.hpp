#pragma once

#include <span>
#include <vector>

#include "cwblow/problem.hpp"

namespace cwblow {

/// Base step sizes and run limits. tau and h are the coarsest steps the run
/// may use; the adaptive laws only ever shrink them.
struct MeshControl {
  double tau = 1e-4;        ///< base time step
  double h = 0.2;           ///< base space step, 0 < h <= 1
  double M_stop = 1e6;      ///< sup-norm at which a run counts as blown up
  double tau_floor = 1e-16; ///< below this the time resolution is exhausted
  long max_steps = 500000;  ///< iteration cap

  /// Stability ratio of the base pair; must stay below 1/16. Recomputed,
  /// never stored, so it cannot drift from tau and h.
  double lambda() const { return tau / (h * h); }

  bool operator==(const MeshControl&) const = default;
};

/// Returns control unchanged; throws std::invalid_argument on non-positive
/// steps or limits, h > 1, or lambda() >= 1/16.
MeshControl validate_control(const MeshControl& control);

/// Uniform grid on [-1,1] with an even number of intervals K, so the
/// midpoint node sits at x = 0 exactly. Interior nodes are 1..K-1.
struct Grid {
  int intervals = 0;          ///< K, even, >= 4
  double spacing = 0.0;       ///< h_n = 2/K
  std::vector<double> nodes;  ///< K+1 positions, mirrored around x = 0

  int midpoint() const { return intervals / 2; }
  int interior_count() const { return intervals - 1; }

  /// Grids compare by interval count; node positions follow from it.
  bool same_layout(const Grid& other) const { return intervals == other.intervals; }
};

/// tau_n = tau * min(1, M^{-(p-1)}). Monotone non-increasing in M.
double adapt_time_step(double sup_norm, const MeshControl& control,
                       const PDEParams& params);

/// h_n = min(h, (2 M^{-(q-1)})^{1/(2-q)}), the widest spacing that keeps the
/// gradient coefficients below the diffusion coefficient at sup-norm M.
/// For q = 1 the bound is constant 2, so the base h always wins.
double adapt_space_step(double sup_norm, const MeshControl& control,
                        const PDEParams& params);

/// Rounds a candidate spacing down onto an admissible grid:
/// K = 2*ceil(1/h_candidate) intervals (at least 4), spacing 2/K.
/// The output spacing never exceeds the candidate.
Grid build_grid(double h_candidate);

/// Transfers node values by linear interpolation. An identical layout is
/// returned unchanged; otherwise values are interpolated on [-1,0] and
/// mirrored onto (0,1], so symmetric input stays symmetric to the last bit.
/// Boundary entries are exactly zero.
std::vector<double> regrid(const Grid& old_grid, std::span<const double> old_values,
                           const Grid& new_grid);

}  // namespace cwblow
