#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "cwblow/driver.hpp"

namespace cwblow {

/// Anything wrong with flags, config files, or profile data. The CLI maps
/// this to exit code 1.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Thrown by parse_config when --help is requested; carries the help text.
struct HelpRequested : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Everything a run needs, resolvable from defaults, a config file, and
/// flags, in that order of precedence.
struct RunConfig {
  PDEParams params;
  MeshControl control;
  std::string profile = "sine";  ///< "sine" or a path to a two-column x,u0 file
  double amplitude = 1000.0;
  long snapshot_every = 5000;
  std::string mode = "single";   ///< single | compare-damping | sweep
  std::string output_dir = "out";
  std::string sweep_amplitudes = "1,10,100,1000";  ///< sweep mode only
  bool force = false;

  bool operator==(const RunConfig&) const = default;
};

/// Parses command-line style arguments (without argv[0]). A config file
/// passed via --config holds flat `key = value` lines using the long flag
/// names; explicit flags override file values. The result is validated.
/// Throws ConfigError with a message naming the offending option.
RunConfig parse_config(const std::vector<std::string>& args);

/// Flat `key = value` text that parse_config({"--config", file}) maps back
/// to an equal RunConfig. Doubles are written with enough digits to
/// round-trip exactly.
std::string serialize_config(const RunConfig& config);

/// Builds the initial profile: the sine profile at the configured amplitude,
/// or the interpolant of a two-column x,u0 file covering [-1,1].
/// Throws ConfigError on unreadable or malformed files.
InitialData load_profile(const RunConfig& config);

}  // namespace cwblow
