#include "cwblow/driver.hpp"

#include <cmath>
#include <future>
#include <stdexcept>
#include <string>

namespace cwblow {

namespace {

// Decay is declared once the sup-norm sits below a tenth of its starting
// value and the last kDecayWindow recorded levels are non-increasing.
constexpr double kDecayFraction = 0.1;
constexpr std::size_t kDecayWindow = 100;

double probe_sup_norm(const InitialData& data) {
  // Dense deterministic probe; includes x = 0, where admissible data peaks.
  constexpr int kProbes = 4096;
  double sup = 0.0;
  for (int i = 0; i <= kProbes; ++i) {
    const double x = -1.0 + 2.0 * static_cast<double>(i) / kProbes;
    sup = std::max(sup, std::abs(data.sampler(x)));
  }
  return sup;
}

State make_initial_state(const InitialData& data, const PDEParams& params,
                         const MeshControl& control) {
  const double sup = probe_sup_norm(data);
  Grid grid = build_grid(adapt_space_step(sup, control, params));
  State state;
  state.values.resize(static_cast<std::size_t>(grid.intervals) + 1);
  state.values.front() = 0.0;
  state.values.back() = 0.0;
  for (int j = 1; j < grid.intervals; ++j)
    state.values[static_cast<std::size_t>(j)] = data.sampler(grid.nodes[static_cast<std::size_t>(j)]);
  state.grid = std::move(grid);
  state.sup_norm = max_abs(state.values);
  return state;
}

StepRecord record_level(const State& state, const PDEParams& params,
                        const MeshControl& control) {
  StepRecord record;
  record.n = state.n;
  record.t = state.t;
  record.sup_norm = state.sup_norm;
  record.tau = adapt_time_step(state.sup_norm, control, params);
  const Grid step_grid = build_grid(adapt_space_step(state.sup_norm, control, params));
  record.h = step_grid.spacing;
  record.interior_count = step_grid.interior_count();
  return record;
}

bool decayed(const std::vector<StepRecord>& history, double M0) {
  if (history.size() < kDecayWindow) return false;
  if (!(history.back().sup_norm < kDecayFraction * M0)) return false;
  for (std::size_t i = history.size() - kDecayWindow + 1; i < history.size(); ++i)
    if (history[i].sup_norm > history[i - 1].sup_norm) return false;
  return true;
}

}  // namespace

const char* to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::blow_up: return "blow-up";
    case Outcome::decay: return "decay";
    case Outcome::inconclusive: return "inconclusive";
  }
  return "unknown";
}

RunResult run(const InitialData& data, const PDEParams& params,
              const MeshControl& control, const RunOptions& options) {
  validate_params(params);
  validate_control(control);
  if (!data.sampler) throw std::invalid_argument("run: empty sampler");

  State state = make_initial_state(data, params, control);
  if (!options.force) {
    const AssumptionReport assumptions = check_assumptions(data, state.grid);
    if (!assumptions.structural_ok())
      throw std::invalid_argument(
          "run: initial data fails the structural checks"
          " (nonnegative/nonconstant, symmetric, increasing on [-1,0], boundary zeros);"
          " pass force to proceed anyway");
    enforce_state_invariants(state);
  }

  RunResult result;
  result.initial_sup_norm = state.sup_norm;
  const double M0 = state.sup_norm;

  auto snapshot_due = [&](long n) {
    return n == 0 || (options.snapshot_every > 0 && n % options.snapshot_every == 0);
  };

  for (;;) {
    if (state.sup_norm >= control.M_stop) {
      result.history.push_back(record_level(state, params, control));
      result.outcome = Outcome::blow_up;
      result.stop_reason = "sup-norm reached M_stop";
      break;
    }
    if (state.n >= control.max_steps) {
      result.outcome = Outcome::inconclusive;
      result.stop_reason = "iteration cap reached";
      break;
    }
    result.history.push_back(record_level(state, params, control));
    if (snapshot_due(state.n)) result.snapshots.push_back(state);
    if (decayed(result.history, M0)) {
      result.outcome = Outcome::decay;
      result.stop_reason = "sup-norm decayed below a tenth of its initial value";
      break;
    }
    try {
      state = advance_step(state, control, params);
    } catch (const ResolutionExhausted& e) {
      result.outcome = Outcome::inconclusive;
      result.stop_reason = e.what();
      break;
    }
  }

  if (result.snapshots.empty() || result.snapshots.back().n != state.n)
    result.snapshots.push_back(state);
  result.final_state = std::move(state);
  return result;
}

double guaranteed_growth_ratio(double M0, const PDEParams& params,
                               const MeshControl& control) {
  validate_params(params);
  if (params.a != 1.0 || params.b != 1.0)
    throw std::invalid_argument("guaranteed_growth_ratio: bound only holds for a = b = 1");
  if (!(M0 > 0.0))
    throw std::invalid_argument("guaranteed_growth_ratio: need M0 > 0");

  const double r = (2.0 * params.p - params.q * (params.p + 1.0)) / (2.0 - params.q);
  const double drag = std::pow(2.0, -params.q / (2.0 - params.q)) * std::pow(M0, -r);
  if (!(drag < 1.0))
    throw std::invalid_argument(
        "guaranteed_growth_ratio: M0 = " + std::to_string(M0) +
        " is too small for guaranteed growth (need 2^{-q/(2-q)} M0^{-r} < 1)");
  return (1.0 + control.tau) / (1.0 + control.tau * drag);
}

double estimate_blowup_time(const std::vector<StepRecord>& history,
                            const PDEParams& params) {
  if (history.size() < 2)
    throw std::invalid_argument("estimate_blowup_time: need at least two records");

  long growing = 0;
  for (std::size_t i = 1; i < history.size(); ++i)
    if (history[i].sup_norm > history[i - 1].sup_norm) ++growing;
  const StepRecord& last = history.back();
  const StepRecord& prev = history[history.size() - 2];
  if (growing < 10 || !(last.sup_norm > prev.sup_norm))
    throw std::invalid_argument("estimate_blowup_time: no blow-up detected in history");

  // If the last observed ratio rho persisted, the remaining adaptive steps
  // would shrink geometrically by rho^{-(p-1)}; sum that tail.
  const double rho = last.sup_norm / prev.sup_norm;
  const double shrink = std::pow(rho, -(params.p - 1.0));
  return last.t + last.tau * shrink / (1.0 - shrink);
}

RateFit fit_blowup_rate(const std::vector<StepRecord>& history, double T_star,
                        const PDEParams&) {
  if (history.empty()) throw std::invalid_argument("fit_blowup_rate: empty history");

  const double M_low = 10.0 * history.front().sup_norm;
  const double M_high = history.back().sup_norm / 10.0;

  // Least squares of y = log M against x = log(T_star - t).
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  long count = 0;
  for (const StepRecord& record : history) {
    if (record.sup_norm < M_low || record.sup_norm > M_high) continue;
    const double remaining = T_star - record.t;
    if (!(remaining > 0.0)) continue;
    const double x = std::log(remaining);
    const double y = std::log(record.sup_norm);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++count;
  }
  if (count < 10)
    throw std::invalid_argument("fit_blowup_rate: only " + std::to_string(count) +
                                " records in the fit window; need at least 10");

  const double denom = count * sxx - sx * sx;
  if (denom == 0.0) throw std::invalid_argument("fit_blowup_rate: degenerate fit window");
  const double slope = (count * sxy - sx * sy) / denom;
  const double intercept = (sy - slope * sx) / count;

  RateFit fit;
  fit.exponent = -slope;
  fit.C = std::exp(intercept);
  fit.points = count;
  return fit;
}

BlowupReport make_report(const RunResult& result, const PDEParams& params,
                         const MeshControl& control) {
  BlowupReport report;
  report.outcome = result.outcome;
  report.stop_reason = result.stop_reason;
  report.M0 = result.initial_sup_norm;
  report.M_final = result.final_state.sup_norm;
  report.t_final = result.final_state.t;
  report.n_stop = result.final_state.n;
  report.r_exponent =
      (2.0 * params.p - params.q * (params.p + 1.0)) / (2.0 - params.q);
  report.theoretical_exponent = 1.0 / (params.p - 1.0);
  report.T_lower_bound =
      report.M0 > 0.0
          ? 1.0 / ((params.p - 1.0) * std::pow(report.M0, params.p - 1.0))
          : 0.0;

  if (params.a == 1.0 && params.b == 1.0 && report.M0 > 0.0) {
    try {
      report.rho_min = guaranteed_growth_ratio(report.M0, params, control);
    } catch (const std::invalid_argument&) {
      // Initial datum too small for the guaranteed ratio; leave it unset.
    }
  }

  if (result.outcome == Outcome::blow_up) {
    report.T_star = estimate_blowup_time(result.history, params);
    try {
      const RateFit fit = fit_blowup_rate(result.history, *report.T_star, params);
      report.C_fit = fit.C;
      report.exponent_fit = fit.exponent;
    } catch (const std::invalid_argument&) {
      // Run too short for a meaningful window; the report just omits the fit.
    }
  }
  return report;
}

DampingComparison compare_damping(const InitialData& data, const PDEParams& params,
                                  const MeshControl& control,
                                  const RunOptions& options) {
  PDEParams undamped_params = params;
  undamped_params.b = 0.0;

  // Independent runs; nothing shared but read-only inputs.
  auto damped_future = std::async(std::launch::async, [&] {
    return run(data, params, control, options);
  });
  RunResult undamped = run(data, undamped_params, control, options);

  DampingComparison comparison;
  comparison.damped = damped_future.get();
  comparison.undamped = std::move(undamped);
  comparison.damped_report = make_report(comparison.damped, params, control);
  comparison.undamped_report = make_report(comparison.undamped, undamped_params, control);

  comparison.both_blew_up = comparison.damped.outcome == Outcome::blow_up &&
                            comparison.undamped.outcome == Outcome::blow_up;
  if (comparison.both_blew_up) {
    comparison.iterations_ordered =
        comparison.undamped.final_state.n <= comparison.damped.final_state.n;
    if (comparison.undamped_report.T_star && comparison.damped_report.T_star)
      comparison.t_star_ordered =
          *comparison.undamped_report.T_star <= *comparison.damped_report.T_star;
  }
  return comparison;
}

}  // namespace cwblow
