#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "cwblow/mesh.hpp"
#include "cwblow/scheme.hpp"
#include "oracles.hpp"
#include "property_checks.hpp"
#include "random_states.hpp"

using namespace cwblow;
using propcheck::count_mismatches;

namespace {
constexpr int kMaxIntervals = 40000;  // keeps the randomized grids desk-sized
}

TEST_CASE("ten thousand randomized steps keep every structural invariant") {
  std::mt19937_64 rng(0xC0FFEE);
  MeshControl control;
  control.tau_floor = 1e-300;  // exponent corners push tau_n below the default floor
  control.M_stop = 1e9;

  const int kScenarios = 1000;
  const int kStepsPerScenario = 10;
  long steps_taken = 0;

  for (int scenario = 0; scenario < kScenarios; ++scenario) {
    const testgen::Scenario config = testgen::sample_scenario(rng, control, kMaxIntervals);
    CAPTURE(config.params.p);
    CAPTURE(config.params.q);
    CAPTURE(config.amplitude);

    State state = testgen::random_adapted_state(rng, config, control);

    for (int burst = 0; burst < kStepsPerScenario; ++burst) {
      const propcheck::StepPipeline pipeline = propcheck::replay_step(state, control,
                                                                      config.params);

      const propcheck::AssemblyStats assembly = propcheck::scan_assembly(pipeline);
      CHECK(assembly.lambda_n < 1.0 / 16.0);
      CHECK(assembly.worst_alpha_excess <= 1e-12 * assembly.lambda_n);
      CHECK(assembly.worst_margin_error <= 1e-12);

      const State next = advance_step(state, control, config.params);
      CHECK(count_mismatches(next.values, pipeline.next.values) == 0);
      CHECK(next.t == pipeline.next.t);
      CHECK(next.sup_norm == pipeline.next.sup_norm);

      const propcheck::StructureStats structure = propcheck::scan_structure(next);
      const double tol = 1e-12 * next.sup_norm;
      CHECK(structure.boundary_zero);
      CHECK(structure.worst_negative >= -tol);
      CHECK(structure.worst_asymmetry <= tol);
      CHECK(structure.worst_left_dip >= -tol);
      CHECK(structure.midpoint_gap <= tol);

      state = next;
      ++steps_taken;
    }
  }
  CHECK(steps_taken == kScenarios * kStepsPerScenario);
}

TEST_CASE("small-grid steps match the dense elimination oracle") {
  std::mt19937_64 rng(0xFEED);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  MeshControl control;
  control.tau_floor = 1e-300;

  for (int trial = 0; trial < 100; ++trial) {
    PDEParams params;
    params.q = trial % 4 == 0 ? 1.0 : 1.0 + 0.5 * unit(rng);
    if (params.q == 1.0) params.p = 2.0;  // keeps q = 1 inside the wedge

    const int K = 4 + 2 * (trial % 3);  // 4, 6, 8 intervals
    const double amplitude = 1.0 + 9.0 * unit(rng);
    State state = testgen::random_state_on_grid(rng, build_grid(2.0 / K), amplitude,
                                                trial % 5 == 0);
    REQUIRE(state.grid.intervals == K);

    const double tau_n = adapt_time_step(state.sup_norm, control, params);
    const std::vector<double> dense = oracle::dense_step(state, tau_n, params);

    const State next = advance_step(state, control, params, false);
    REQUIRE(next.values.size() == static_cast<std::size_t>(K) + 1);
    double worst = 0.0;
    for (int i = 1; i < K; ++i)
      worst = std::max(worst, std::abs(next.values[static_cast<std::size_t>(i)] -
                                       dense[static_cast<std::size_t>(i) - 1]));
    CHECK(worst <= 1e-12 * next.sup_norm);
  }
}

TEST_CASE("held grids and adapted grids agree where the layouts coincide") {
  // When the adapted grid equals the state's grid the two entry points must
  // produce identical states.
  std::mt19937_64 rng(0xBEEF);
  MeshControl control;
  control.tau_floor = 1e-300;

  for (int trial = 0; trial < 20; ++trial) {
    const testgen::Scenario config = testgen::sample_scenario(rng, control, kMaxIntervals);
    const State state = testgen::random_adapted_state(rng, config, control);

    const State adapted = advance_step(state, control, config.params, true);
    const State held = advance_step(state, control, config.params, false);
    CHECK(count_mismatches(adapted.values, held.values) == 0);
    CHECK(adapted.t == held.t);
  }
}
