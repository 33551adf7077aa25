#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cwblow/scheme.hpp"

namespace cwblow {

/// One history row: the state's time level plus the step sizes the adaptive
/// laws assign to it.
struct StepRecord {
  long n = 0;
  double t = 0.0;
  double tau = 0.0;      ///< tau_n for the step leaving this level
  double h = 0.0;        ///< grid spacing used by that step
  int interior_count = 0;
  double sup_norm = 0.0; ///< M_n
};

enum class Outcome { blow_up, decay, inconclusive };

const char* to_string(Outcome outcome);

struct RunOptions {
  long snapshot_every = 0;  ///< 0 keeps only the initial and final profiles
  bool force = false;       ///< run even if the structural checks fail
};

struct RunResult {
  Outcome outcome = Outcome::inconclusive;
  std::string stop_reason;
  std::vector<StepRecord> history;   ///< one row per recorded level
  std::vector<State> snapshots;      ///< full profiles, sampled per options
  State final_state;
  double initial_sup_norm = 0.0;
};

/// Iterates advance_step until the sup-norm reaches M_stop (blow-up), decays
/// below a tenth of its initial value with a non-increasing tail (decay), or
/// the iteration cap / time-step floor is hit (inconclusive). Deterministic:
/// identical inputs give bit-identical histories.
RunResult run(const InitialData& data, const PDEParams& params,
              const MeshControl& control, const RunOptions& options = {});

/// rho = (1 + tau) / (1 + tau * 2^{-q/(2-q)} * M0^{-r}) with
/// r = (2p - q(p+1))/(2-q): a floor on the per-step growth of the peak for
/// a = b = 1 once the adaptive laws are active. Throws std::invalid_argument
/// when a or b differ from 1 or M0 is too small for rho > 1.
double guaranteed_growth_ratio(double M0, const PDEParams& params,
                               const MeshControl& control);

/// T = t_stop + tau_stop * r / (1 - r) with r = (M_stop/M_prev)^{-(p-1)}:
/// the geometric tail the adaptive time steps would sum to if the last
/// observed growth ratio persisted. Requires at least 10 growing records and
/// a growing final step; otherwise throws std::invalid_argument
/// ("no blow-up detected").
double estimate_blowup_time(const std::vector<StepRecord>& history,
                            const PDEParams& params);

struct RateFit {
  double C = 0.0;         ///< multiplier in M ~ C (T-t)^{-exponent}
  double exponent = 0.0;  ///< positive by convention
  long points = 0;        ///< records inside the fit window
};

/// Least squares of log M against log(T_star - t) over the window
/// M in [10 * M_first, M_last / 10], which drops the transient and the
/// saturated tail. Throws std::invalid_argument with fewer than 10 points.
RateFit fit_blowup_rate(const std::vector<StepRecord>& history, double T_star,
                        const PDEParams& params);

struct BlowupReport {
  Outcome outcome = Outcome::inconclusive;
  std::string stop_reason;
  long n_stop = 0;
  double M0 = 0.0;
  double M_final = 0.0;
  double t_final = 0.0;
  double r_exponent = 0.0;           ///< (2p - q(p+1))/(2-q)
  double theoretical_exponent = 0.0; ///< 1/(p-1)
  double T_lower_bound = 0.0;        ///< 1/((p-1) M0^{p-1})
  std::optional<double> T_star;      ///< blow-up runs only
  std::optional<double> C_fit;
  std::optional<double> exponent_fit;
  std::optional<double> rho_min;     ///< only when a = b = 1 and rho > 1
};

/// Condenses a run into the quantities worth reporting; the optional fields
/// stay empty when the run's outcome or parameters leave them undefined.
BlowupReport make_report(const RunResult& result, const PDEParams& params,
                         const MeshControl& control);

struct DampingComparison {
  RunResult damped;      ///< b as configured
  RunResult undamped;    ///< same setup with b = 0
  BlowupReport damped_report;
  BlowupReport undamped_report;
  bool both_blew_up = false;
  bool iterations_ordered = false;  ///< n_stop(b=0) <= n_stop(b=1)
  bool t_star_ordered = false;      ///< T_star(b=0) <= T_star(b=1)
};

/// Runs the configuration twice, with the damping term and without. The two
/// runs are independent and may execute concurrently.
DampingComparison compare_damping(const InitialData& data, const PDEParams& params,
                                  const MeshControl& control,
                                  const RunOptions& options = {});

}  // namespace cwblow
