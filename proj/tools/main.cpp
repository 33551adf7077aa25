#include <cstdio>
#include <exception>
#include <filesystem>
#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "cwblow/config.hpp"
#include "cwblow/io.hpp"

namespace {

using namespace cwblow;

void print_assumptions(const AssumptionReport& report) {
  auto flag = [](bool ok) { return ok ? "ok" : "FAILED"; };
  std::cout << "initial data checks:"
            << " nonnegative/nonconstant " << flag(report.nonnegative_nonconstant)
            << ", symmetric " << flag(report.symmetric)
            << ", increasing on [-1,0] " << flag(report.increasing_left_half)
            << ", boundary zeros " << flag(report.boundary_zero)
            << ", sup-norm " << report.sup_norm
            << (report.large ? "" : " (below the largeness threshold)") << "\n";
}

RunOptions options_of(const RunConfig& config) {
  RunOptions options;
  options.snapshot_every = config.snapshot_every;
  options.force = config.force;
  return options;
}

void write_single(const RunResult& result, const BlowupReport& report,
                  const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  write_history(result.history, dir / "history.csv");
  write_snapshots(result.snapshots, dir / "snapshots");
  write_report(report, dir / "report.txt");
}

int run_single(const RunConfig& config) {
  const InitialData data = load_profile(config);
  const Grid probe_grid = build_grid(config.control.h);
  print_assumptions(check_assumptions(data, probe_grid));

  const RunResult result = run(data, config.params, config.control, options_of(config));
  const BlowupReport report = make_report(result, config.params, config.control);
  write_single(result, report, config.output_dir);
  std::cout << "outcome: " << to_string(result.outcome) << " (" << result.stop_reason
            << ") after " << result.final_state.n << " iterations\n";
  if (report.T_star) std::cout << "estimated blow-up time: " << *report.T_star << "\n";
  std::cout << "wrote " << config.output_dir << "/history.csv, snapshots/, report.txt\n";
  return 0;
}

int run_compare(const RunConfig& config) {
  const InitialData data = load_profile(config);
  const DampingComparison comparison =
      compare_damping(data, config.params, config.control, options_of(config));

  const std::filesystem::path dir = config.output_dir;
  write_single(comparison.damped, comparison.damped_report, dir / "damped");
  write_single(comparison.undamped, comparison.undamped_report, dir / "undamped");
  write_comparison_report(comparison, dir / "report.txt");

  std::cout << "damped:   " << to_string(comparison.damped.outcome) << " after "
            << comparison.damped.final_state.n << " iterations\n";
  std::cout << "undamped: " << to_string(comparison.undamped.outcome) << " after "
            << comparison.undamped.final_state.n << " iterations\n";
  std::cout << "wrote " << (dir / "report.txt").string() << "\n";
  return 0;
}

std::vector<double> parse_amplitudes(const std::string& list) {
  std::vector<double> amplitudes;
  std::istringstream is(list);
  std::string item;
  while (std::getline(is, item, ',')) {
    try {
      amplitudes.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw ConfigError("sweep: bad amplitude '" + item + "'");
    }
  }
  if (amplitudes.empty()) throw ConfigError("sweep: no amplitudes given");
  return amplitudes;
}

int run_sweep(const RunConfig& config) {
  const std::vector<double> amplitudes = parse_amplitudes(config.sweep_amplitudes);

  struct SweepRun {
    double amplitude;
    std::future<RunResult> future;
  };
  std::vector<SweepRun> sweep;
  for (double amplitude : amplitudes) {
    RunConfig variant = config;
    variant.amplitude = amplitude;
    sweep.push_back({amplitude, std::async(std::launch::async, [variant] {
                       return run(load_profile(variant), variant.params, variant.control,
                                  options_of(variant));
                     })});
  }

  for (SweepRun& item : sweep) {
    const RunResult result = item.future.get();
    const BlowupReport report = make_report(result, config.params, config.control);
    std::ostringstream name;
    name << "amp_" << item.amplitude;
    write_single(result, report, std::filesystem::path(config.output_dir) / name.str());
    std::cout << "amplitude " << item.amplitude << ": " << to_string(result.outcome)
              << " after " << result.final_state.n << " iterations\n";
  }
  std::cout << "wrote per-amplitude results under " << config.output_dir << "/\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    const cwblow::RunConfig config = cwblow::parse_config(args);
    if (config.mode == "single") return run_single(config);
    if (config.mode == "compare-damping") return run_compare(config);
    return run_sweep(config);
  } catch (const cwblow::HelpRequested& e) {
    std::cout << e.what();
    return 0;
  } catch (const cwblow::ConfigError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const cwblow::InvariantViolation& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
}
