#include "cwblow/config.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"

namespace cwblow {

namespace {

std::string format_double(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

void validate_config(const RunConfig& config) {
  validate_params(config.params);
  validate_control(config.control);
  if (config.amplitude < 0.0) throw ConfigError("config: amplitude must be >= 0");
  if (config.snapshot_every < 0) throw ConfigError("config: snapshot-every must be >= 0");
  if (config.mode != "single" && config.mode != "compare-damping" && config.mode != "sweep")
    throw ConfigError("config: mode must be single, compare-damping, or sweep, got '" +
                      config.mode + "'");
  if (config.profile.empty()) throw ConfigError("config: profile must not be empty");
  if (config.output_dir.empty()) throw ConfigError("config: out must not be empty");
}

}  // namespace

RunConfig parse_config(const std::vector<std::string>& args) {
  RunConfig config;
  CLI::App app{"finite-difference blow-up solver"};
  // The short -h would collide with the --h step option below.
  app.set_help_flag("--help", "print this message");

  app.add_option("--p", config.params.p, "reaction exponent (> 1)");
  app.add_option("--q", config.params.q, "gradient exponent (1 <= q <= 2p/(p+1))");
  app.add_option("--a", config.params.a, "reaction coefficient (>= 0)");
  app.add_option("--b", config.params.b, "damping coefficient (>= 0)");
  app.add_option("--amplitude", config.amplitude, "sine profile amplitude");
  app.add_option("--tau", config.control.tau, "base time step");
  app.add_option("--h", config.control.h, "base space step (tau/h^2 < 1/16)");
  app.add_option("--M-stop", config.control.M_stop, "sup-norm that counts as blow-up");
  app.add_option("--tau-floor", config.control.tau_floor, "smallest usable time step");
  app.add_option("--max-iter", config.control.max_steps, "iteration cap");
  app.add_option("--snapshot-every", config.snapshot_every,
                 "profile snapshot period in steps (0: first and last only)");
  app.add_option("--profile", config.profile, "'sine' or a path to a two-column x,u0 file");
  app.add_option("--mode", config.mode, "single | compare-damping | sweep");
  app.add_option("--out", config.output_dir, "output directory");
  app.add_option("--sweep-amplitudes", config.sweep_amplitudes,
                 "comma-separated amplitudes for sweep mode");
  app.add_flag("--force", config.force, "run even if the initial data fails the checks");
  app.set_config("--config", "", "flat key = value file; flags take precedence");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested(app.help());
  } catch (const CLI::ParseError& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }

  try {
    validate_config(config);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return config;
}

std::string serialize_config(const RunConfig& config) {
  std::ostringstream os;
  os << "p = " << format_double(config.params.p) << "\n";
  os << "q = " << format_double(config.params.q) << "\n";
  os << "a = " << format_double(config.params.a) << "\n";
  os << "b = " << format_double(config.params.b) << "\n";
  os << "amplitude = " << format_double(config.amplitude) << "\n";
  os << "tau = " << format_double(config.control.tau) << "\n";
  os << "h = " << format_double(config.control.h) << "\n";
  os << "M-stop = " << format_double(config.control.M_stop) << "\n";
  os << "tau-floor = " << format_double(config.control.tau_floor) << "\n";
  os << "max-iter = " << config.control.max_steps << "\n";
  os << "snapshot-every = " << config.snapshot_every << "\n";
  // Strings are quoted so commas and spaces survive the config reader.
  os << "profile = \"" << config.profile << "\"\n";
  os << "mode = \"" << config.mode << "\"\n";
  os << "out = \"" << config.output_dir << "\"\n";
  os << "sweep-amplitudes = \"" << config.sweep_amplitudes << "\"\n";
  os << "force = " << (config.force ? "true" : "false") << "\n";
  return os.str();
}

InitialData load_profile(const RunConfig& config) {
  if (config.profile == "sine") return build_sine_profile(config.amplitude);

  std::ifstream in(config.profile);
  if (!in) throw ConfigError("profile: cannot open '" + config.profile + "'");

  std::vector<double> xs, us;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream fields(line);
    double x = 0.0, u = 0.0;
    if (!(fields >> x >> u)) {
      if (xs.empty()) continue;  // tolerate a header line
      throw ConfigError("profile: malformed line in '" + config.profile + "': " + line);
    }
    if (!xs.empty() && !(x > xs.back()))
      throw ConfigError("profile: x values must be strictly increasing");
    xs.push_back(x);
    us.push_back(u);
  }
  if (xs.size() < 2) throw ConfigError("profile: need at least two points");
  if (xs.front() > -1.0 || xs.back() < 1.0)
    throw ConfigError("profile: points must cover [-1,1]");

  InitialData data;
  data.amplitude = max_abs(us);
  data.sampler = [xs = std::move(xs), us = std::move(us)](double x) {
    auto upper = std::upper_bound(xs.begin(), xs.end(), x);
    if (upper == xs.begin()) return us.front();
    if (upper == xs.end()) return us.back();
    const std::size_t j = static_cast<std::size_t>(upper - xs.begin()) - 1;
    const double frac = (x - xs[j]) / (xs[j + 1] - xs[j]);
    return us[j] + frac * (us[j + 1] - us[j]);
  };
  return data;
}

}  // namespace cwblow
