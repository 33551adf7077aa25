// Acceptance runner: exercises the full catalogue of required behaviors and
// prints one pass/fail line per criterion. Exit code 0 only when every
// criterion passes. Criteria keep running after a failure so one broken
// item cannot mask the rest.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "cwblow/driver.hpp"
#include "cwblow/mesh.hpp"
#include "cwblow/problem.hpp"
#include "cwblow/scheme.hpp"
#include "oracles.hpp"
#include "property_checks.hpp"
#include "random_states.hpp"

using namespace cwblow;

namespace {

struct Check {
  bool pass = false;
  std::string detail;
};

template <class... Args>
std::string fmt(const char* pattern, Args... args) {
  char buffer[512];
  std::snprintf(buffer, sizeof buffer, pattern, args...);
  return std::string(buffer);
}

// The reference blow-up run (sine, amplitude 1e3, all defaults) backs
// several criteria; it is produced once and reused.
struct ReferenceRun {
  RunResult result;
  BlowupReport report;
  double seconds = 0.0;
};

std::optional<ReferenceRun> g_reference;
std::string g_reference_error;

const ReferenceRun* reference_run() {
  if (!g_reference && g_reference_error.empty()) {
    try {
      ReferenceRun ref;
      const auto start = std::chrono::steady_clock::now();
      ref.result = run(build_sine_profile(1000.0), PDEParams{}, MeshControl{});
      ref.seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      ref.report = make_report(ref.result, PDEParams{}, MeshControl{});
      g_reference = std::move(ref);
    } catch (const std::exception& e) {
      g_reference_error = e.what();
    }
  }
  return g_reference ? &*g_reference : nullptr;
}

// Published step-size ladder: eight sup-norm levels with the space step and
// interior node count each one selects.
Check criterion_published_ladder() {
  const double levels[8] = {1.0e3, 2.928e3, 4.19e3, 7.245e3, 1.317e4, 1.607e4, 1.98e4, 3.203e4};
  const double h_published[8] = {0.138, 0.087, 0.075, 0.059, 0.046, 0.042, 0.038, 0.031};
  const int N_published[8] = {15, 23, 27, 33, 41, 47, 51, 63};

  const MeshControl control;
  const PDEParams params;
  double worst_dh = 0.0;
  int worst_dN = 0;
  for (int i = 0; i < 8; ++i) {
    const double h_n = adapt_space_step(levels[i], control, params);
    const Grid grid = build_grid(h_n);
    worst_dh = std::max(worst_dh, std::abs(h_n - h_published[i]));
    worst_dN = std::max(worst_dN, std::abs(grid.interior_count() - N_published[i]));
  }
  const bool pass = worst_dh <= 0.003 && worst_dN <= 2;
  return {pass, fmt("eight (h, N) pairs: max |dh| %.2e (tol 3e-3), max |dN| %d (tol 2)",
                    worst_dh, worst_dN)};
}

Check criterion_blowup_run() {
  const ReferenceRun* ref = reference_run();
  if (!ref) return {false, "reference run failed: " + g_reference_error};
  const auto& history = ref->result.history;
  const PDEParams params;

  const bool blew_up = ref->result.outcome == Outcome::blow_up;

  long decreases = 0;
  double worst_step_slack = 0.0;  // most negative relative slack of the growth bound
  for (std::size_t k = 0; k + 1 < history.size(); ++k) {
    const StepRecord& r = history[k];
    if (history[k + 1].sup_norm < r.sup_norm) ++decreases;
    const double lambda_n = r.tau / (r.h * r.h);
    const double lower = r.sup_norm * (1.0 + r.tau * params.a * std::pow(r.sup_norm, params.p - 1.0));
    const double lhs = history[k + 1].sup_norm * (1.0 + 2.0 * lambda_n);
    worst_step_slack = std::min(worst_step_slack, (lhs - lower) / lower);
  }

  double worst_rho_slack = 0.0;
  if (ref->report.rho_min) {
    const double rho = *ref->report.rho_min;
    const double M0 = history.empty() ? 0.0 : history.front().sup_norm;
    for (const StepRecord& r : history) {
      const double floor = M0 * std::pow(rho, static_cast<double>(r.n));
      worst_rho_slack = std::min(worst_rho_slack, (r.sup_norm - floor) / floor);
    }
  } else {
    worst_rho_slack = -1.0;
  }

  const bool pass = blew_up && decreases == 0 && worst_step_slack >= -1e-10 &&
                    worst_rho_slack >= -1e-10 && ref->seconds <= 60.0;
  return {pass,
          fmt("%s in %ld steps, %.1f s (cap 60); M decreases %ld; growth-bound slack %.1e; "
              "rho-floor slack %.1e",
              to_string(ref->result.outcome), static_cast<long>(history.size()) - 1,
              ref->seconds, decreases, worst_step_slack, worst_rho_slack)};
}

Check criterion_blowup_time() {
  const ReferenceRun* ref = reference_run();
  if (!ref) return {false, "reference run failed: " + g_reference_error};
  if (!ref->report.T_star) return {false, "no T_star estimate on the reference run"};
  const double T_star = *ref->report.T_star;
  const bool pass = 5e-7 <= T_star && T_star <= 1e-6;
  return {pass, fmt("T_star %.6e inside [5e-7, 1e-6]", T_star)};
}

Check criterion_rate_fit() {
  const ReferenceRun* ref = reference_run();
  if (!ref) return {false, "reference run failed: " + g_reference_error};
  if (!ref->report.exponent_fit) return {false, "no rate fit on the reference run"};
  const double fitted = *ref->report.exponent_fit;
  const bool run_ok = std::abs(fitted - 0.5) <= 0.1;

  // Exact synthetic series M = C (T - t)^{-1/2} must come back to four
  // significant digits.
  const double T_syn = 1e-6, C_syn = 2.0;
  std::vector<StepRecord> synthetic;
  for (int k = 0; k < 100; ++k) {
    const double remaining = 1e-6 * std::pow(10.0, -8.0 * k / 99.0);
    StepRecord r;
    r.n = k;
    r.t = T_syn - remaining;
    r.tau = 1e-12;
    r.h = 0.05;
    r.interior_count = 39;
    r.sup_norm = C_syn / std::sqrt(remaining);
    synthetic.push_back(r);
  }
  const RateFit fit = fit_blowup_rate(synthetic, T_syn, PDEParams{});
  const double rel_C = std::abs(fit.C / C_syn - 1.0);
  const double rel_e = std::abs(fit.exponent / 0.5 - 1.0);
  const bool synth_ok = rel_C <= 1e-4 && rel_e <= 1e-4;

  return {run_ok && synth_ok,
          fmt("run exponent %.4f (target 0.5 +/- 0.1); synthetic recovery rel err C %.1e, "
              "exponent %.1e (tol 1e-4)",
              fitted, rel_C, rel_e)};
}

Check criterion_property_suite() {
  std::mt19937_64 rng(0x5EED0005);
  MeshControl control;
  control.tau_floor = 1e-300;
  control.M_stop = 1e9;

  long violations = 0;
  long steps = 0;
  double worst_margin = 0.0;
  double worst_structure = 0.0;  // worst structural deviation relative to M

  for (int scenario = 0; scenario < 1000; ++scenario) {
    const testgen::Scenario config = testgen::sample_scenario(rng, control, 40000);
    State state = testgen::random_adapted_state(rng, config, control);

    for (int burst = 0; burst < 10; ++burst) {
      const propcheck::StepPipeline pipeline =
          propcheck::replay_step(state, control, config.params);
      const propcheck::AssemblyStats assembly = propcheck::scan_assembly(pipeline);
      if (!(assembly.lambda_n < 1.0 / 16.0)) ++violations;
      if (assembly.worst_alpha_excess > 1e-12 * assembly.lambda_n) ++violations;
      if (assembly.worst_margin_error > 1e-12) ++violations;
      worst_margin = std::max(worst_margin, assembly.worst_margin_error);

      const State next = advance_step(state, control, config.params);
      if (propcheck::count_mismatches(next.values, pipeline.next.values) != 0) ++violations;

      const propcheck::StructureStats structure = propcheck::scan_structure(next);
      const double tol = 1e-12 * next.sup_norm;
      if (!structure.boundary_zero) ++violations;
      if (structure.worst_negative < -tol) ++violations;
      if (structure.worst_asymmetry > tol) ++violations;
      if (structure.worst_left_dip < -tol) ++violations;
      if (structure.midpoint_gap > tol) ++violations;
      const double deviation =
          std::max({-structure.worst_negative, structure.worst_asymmetry,
                    -structure.worst_left_dip, structure.midpoint_gap});
      worst_structure = std::max(worst_structure, deviation / next.sup_norm);

      state = next;
      ++steps;
    }
  }
  const bool pass = violations == 0 && steps == 10000;
  return {pass, fmt("%ld randomized steps, %ld violations; worst dominance-margin error %.1e, "
                    "worst structural deviation %.1e of M (tol 1e-12)",
                    steps, violations, worst_margin, worst_structure)};
}

Check criterion_dense_oracle() {
  std::mt19937_64 rng(0xACCE5506);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  MeshControl control;
  control.tau_floor = 1e-300;

  double worst_rel = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    PDEParams params;
    params.q = trial % 4 == 0 ? 1.0 : 1.0 + 0.5 * unit(rng);
    if (params.q == 1.0) params.p = 2.0;

    const int K = 4 + 2 * (trial % 3);  // interior counts 3, 5, 7
    const double amplitude = 1.0 + 9.0 * unit(rng);
    const State state = testgen::random_state_on_grid(rng, build_grid(2.0 / K), amplitude,
                                                      trial % 5 == 0);

    const double tau_n = adapt_time_step(state.sup_norm, control, params);
    const std::vector<double> dense = oracle::dense_step(state, tau_n, params);
    const State next = advance_step(state, control, params, false);
    for (int i = 1; i < K; ++i) {
      const double err = std::abs(next.values[static_cast<std::size_t>(i)] -
                                  dense[static_cast<std::size_t>(i) - 1]);
      worst_rel = std::max(worst_rel, err / next.sup_norm);
    }
  }
  const bool pass = worst_rel <= 1e-12;
  return {pass, fmt("100 random states on 3/5/7 interior nodes vs dense elimination: "
                    "worst relative gap %.1e (tol 1e-12)",
                    worst_rel)};
}

Check criterion_decay_run() {
  const RunResult result = run(build_sine_profile(1.0), PDEParams{}, MeshControl{});
  const auto& history = result.history;

  long last_rise = 0;
  for (std::size_t k = 0; k + 1 < history.size(); ++k)
    if (history[k + 1].sup_norm > history[k].sup_norm)
      last_rise = static_cast<long>(k) + 1;
  const double final_M = history.empty() ? -1.0 : history.back().sup_norm;

  const bool pass = result.outcome == Outcome::decay && last_rise <= 100 && final_M < 0.1;
  return {pass, fmt("%s; last sup-norm rise at step %ld (cap 100); final M %.3e (< 0.1)",
                    to_string(result.outcome), last_rise, final_M)};
}

Check criterion_damping_comparison() {
  const DampingComparison cmp =
      compare_damping(build_sine_profile(1000.0), PDEParams{}, MeshControl{});
  const long n_un = cmp.undamped.final_state.n;
  const long n_da = cmp.damped.final_state.n;
  const double t_un = cmp.undamped.final_state.t;
  const double t_da = cmp.damped.final_state.t;
  const bool strictly_fewer = n_un < n_da;
  const bool strictly_less_time = t_un < t_da;

  const bool pass = cmp.both_blew_up && strictly_fewer && strictly_less_time;
  return {pass,
          fmt("undamped n %ld / t %.10e vs damped n %ld / t %.10e; strictly fewer "
              "iterations %s, strictly less time %s",
              n_un, t_un, n_da, t_da, strictly_fewer ? "yes" : "no",
              strictly_less_time ? "yes" : "no")};
}

Check criterion_energy() {
  const PDEParams params;
  const MeshControl control;

  const auto energy_at = [&params](double amplitude, const Grid& grid) {
    const InitialData data = build_sine_profile(amplitude);
    std::vector<double> values(grid.nodes.size());
    for (std::size_t j = 0; j < grid.nodes.size(); ++j)
      values[j] = data.sampler(grid.nodes[j]);
    return discrete_energy(values, grid, params);
  };

  const Grid base = build_grid(control.h);
  const double e_small = energy_at(1.0, base);
  const double e_large = energy_at(1000.0, base);
  const bool signs_ok = e_small > 0.0 && e_large < 0.0;

  double lo = 1.0, hi = 1000.0;
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    (energy_at(mid, base) > 0.0 ? lo : hi) = mid;
  }
  const double crossing = 0.5 * (lo + hi);
  // Continuum zero of A^2 pi^2/8 - 3 A^4/16 for the sine profile at p = 3.
  const double crossing_exact = std::numbers::pi * std::sqrt(2.0 / 3.0);
  const bool crossing_ok = std::abs(crossing / crossing_exact - 1.0) <= 0.05;

  const double continuum = std::numbers::pi * std::numbers::pi / 8.0 - 3.0 / 16.0;
  double errors[3];
  const int refinements[3] = {16, 32, 64};
  for (int j = 0; j < 3; ++j)
    errors[j] = energy_at(1.0, build_grid(2.0 / refinements[j])) - continuum;
  const double ratio_a = errors[0] / errors[1];
  const double ratio_b = errors[1] / errors[2];
  const bool quadratic = ratio_a >= 3.5 && ratio_a <= 4.5 && ratio_b >= 3.5 && ratio_b <= 4.5;

  const bool pass = signs_ok && crossing_ok && quadratic;
  return {pass, fmt("E(1) %.3f, E(1000) %.3e; crossing %.4f vs %.4f (tol 5%%); "
                    "error ratios %.2f, %.2f (target 4)",
                    e_small, e_large, crossing, crossing_exact, ratio_a, ratio_b)};
}

Check criterion_zero_data() {
  MeshControl control;
  control.max_steps = 1000;
  InitialData zero;
  zero.sampler = [](double) { return 0.0; };
  zero.amplitude = 0.0;
  RunOptions options;
  options.force = true;  // zero data fails the structural gate by design

  const RunResult result = run(zero, PDEParams{}, control, options);
  long nonzero_records = 0;
  for (const StepRecord& r : result.history)
    if (r.sup_norm != 0.0) ++nonzero_records;
  long nonzero_values = 0;
  for (double v : result.final_state.values)
    if (v != 0.0) ++nonzero_values;

  const bool pass = result.history.size() == 1000 && result.final_state.n == 1000 &&
                    nonzero_records == 0 && nonzero_values == 0;
  return {pass, fmt("%zu records to step %ld; nonzero records %ld, nonzero final values %ld",
                    result.history.size(), result.final_state.n, nonzero_records,
                    nonzero_values)};
}

}  // namespace

int main() {
  struct Entry {
    int id;
    Check (*fn)();
  };
  const Entry criteria[] = {
      {1, criterion_published_ladder}, {2, criterion_blowup_run},
      {3, criterion_blowup_time},      {4, criterion_rate_fit},
      {5, criterion_property_suite},   {6, criterion_dense_oracle},
      {7, criterion_decay_run},        {8, criterion_damping_comparison},
      {9, criterion_energy},           {10, criterion_zero_data},
  };

  int failures = 0;
  for (const Entry& entry : criteria) {
    Check check;
    try {
      check = entry.fn();
    } catch (const std::exception& e) {
      check = {false, std::string("unexpected exception: ") + e.what()};
    }
    std::printf("criterion %2d: %s (%s)\n", entry.id, check.pass ? "PASS" : "FAIL",
                check.detail.c_str());
    std::fflush(stdout);
    if (!check.pass) ++failures;
  }
  std::printf("%d/10 criteria passed\n", 10 - failures);
  return failures == 0 ? 0 : 1;
}
