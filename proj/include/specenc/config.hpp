#pragma once

#include <complex>
#include <string>
#include <vector>

#include "specenc/bounds.hpp"
#include "specenc/oracle.hpp"

namespace specenc::cli {

// Malformed configuration (usage error, exit code 2 at the CLI).
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// A reproducible run description.  Flat key-value text with [sections]; every
// config round-trips parse -> serialize -> parse identically.
struct RunConfig {
  // [potential]
  std::string potential_name = "poschl-teller";  // catalog key
  std::string grid_file;                         // overrides the catalog when set
  std::complex<double> coupling{1.0, 0.0};
  double potential_tau = 2.0;  // decay exponent of the rational catalog entry
  double well_width = 1.0;     // half width of the square well entry

  // [params]
  bounds::ProblemParams params;

  // [theta_grid]
  int theta_points = 360;

  // [oracle]
  bool oracle_enabled = true;
  oracle::Scheme oracle_scheme = oracle::Scheme::FiniteDifference;
  double oracle_half_width = 20.0;
  int oracle_points = 400;

  // [output]
  std::string out_dir = "out";
  std::vector<std::string> formats = {"csv", "svg", "structured"};

  // [sharpen]
  bool sharpen_enabled = false;

  bool operator==(const RunConfig&) const = default;
};

RunConfig parse_config(const std::string& text);
std::string serialize_config(const RunConfig& config);

RunConfig load_config_file(const std::string& path);

}  // namespace specenc::cli
