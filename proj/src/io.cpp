#include "cwblow/io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace cwblow {

namespace {

std::string sci(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17e", value);
  return buffer;
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);  // binary keeps line endings fixed
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  return out;
}

void describe_run(std::ostream& os, const BlowupReport& report) {
  os << "outcome: " << to_string(report.outcome) << "\n";
  os << "stop reason: " << report.stop_reason << "\n";
  os << "iterations: " << report.n_stop << "\n";
  os << "initial sup-norm: " << sci(report.M0) << "\n";
  os << "final sup-norm: " << sci(report.M_final) << "\n";
  os << "final time: " << sci(report.t_final) << "\n";
  os << "growth-rate exponent r: " << sci(report.r_exponent) << "\n";
  os << "blow-up time lower bound 1/((p-1) M0^{p-1}): " << sci(report.T_lower_bound) << "\n";
  if (report.rho_min)
    os << "guaranteed per-step growth ratio: " << sci(*report.rho_min) << "\n";
  if (report.T_star)
    os << "estimated blow-up time: " << sci(*report.T_star) << "\n";
  if (report.exponent_fit) {
    os << "fitted rate exponent: " << sci(*report.exponent_fit)
       << " (theory: " << sci(report.theoretical_exponent) << ")\n";
    os << "fitted rate multiplier: " << sci(*report.C_fit) << "\n";
  }
}

}  // namespace

void write_history(const std::vector<StepRecord>& history,
                   const std::filesystem::path& path) {
  if (history.empty()) throw std::runtime_error("write_history: empty history");
  std::ofstream out = open_for_write(path);
  out << "n,t_n,tau_n,h_n,N_n,M_n\n";
  for (const StepRecord& r : history)
    out << r.n << ',' << sci(r.t) << ',' << sci(r.tau) << ',' << sci(r.h) << ','
        << r.interior_count << ',' << sci(r.sup_norm) << '\n';
  if (!out) throw std::runtime_error("write_history: write failed for '" + path.string() + "'");
}

std::size_t write_snapshots(const std::vector<State>& snapshots,
                            const std::filesystem::path& directory) {
  std::filesystem::create_directories(directory);
  std::ofstream index = open_for_write(directory / "index.csv");
  index << "file,n,t_n\n";
  for (const State& state : snapshots) {
    const std::string name = "profile_" + std::to_string(state.n) + ".csv";
    std::ofstream out = open_for_write(directory / name);
    out << "x,u\n";
    for (std::size_t j = 0; j < state.values.size(); ++j)
      out << sci(state.grid.nodes[j]) << ',' << sci(state.values[j]) << '\n';
    index << name << ',' << state.n << ',' << sci(state.t) << '\n';
  }
  return snapshots.size();
}

void write_report(const BlowupReport& report, const std::filesystem::path& path) {
  std::ofstream out = open_for_write(path);
  describe_run(out, report);
}

void write_comparison_report(const DampingComparison& comparison,
                             const std::filesystem::path& path) {
  std::ofstream out = open_for_write(path);
  out << "== damped run (b as configured) ==\n";
  describe_run(out, comparison.damped_report);
  out << "\n== undamped run (b = 0) ==\n";
  describe_run(out, comparison.undamped_report);
  out << "\n== comparison ==\n";
  if (!comparison.both_blew_up) {
    const bool neither = comparison.damped.outcome != Outcome::blow_up &&
                         comparison.undamped.outcome != Outcome::blow_up;
    out << (neither ? "no blow-up in either run\n"
                    : "only one run blew up; ordering not applicable\n");
    return;
  }
  out << "undamped reaches M_stop in "
      << (comparison.iterations_ordered ? "no more" : "more")
      << " iterations (" << comparison.undamped_report.n_stop << " vs "
      << comparison.damped_report.n_stop << ")\n";
  if (comparison.undamped_report.T_star && comparison.damped_report.T_star)
    out << "undamped blow-up time estimate is "
        << (comparison.t_star_ordered ? "no later" : "later") << " ("
        << sci(*comparison.undamped_report.T_star) << " vs "
        << sci(*comparison.damped_report.T_star) << ")\n";
  out << "accumulated time at stop: " << sci(comparison.undamped_report.t_final)
      << " undamped vs " << sci(comparison.damped_report.t_final) << " damped\n";
}

}  // namespace cwblow
