#include "specenc/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace specenc::cli {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_real(const std::string& key, const std::string& value) {
  if (value == "inf") return bounds::kInf;
  try {
    std::size_t used = 0;
    double v = std::stod(value, &used);
    if (used != value.size()) throw ConfigError("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config: key '" + key + "' expects a real number, got '" + value + "'");
  }
}

int parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    int v = std::stoi(value, &used);
    if (used != value.size()) throw ConfigError("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config: key '" + key + "' expects an integer, got '" + value + "'");
  }
}

bool parse_switch(const std::string& key, const std::string& value) {
  if (value == "on" || value == "true" || value == "1") return true;
  if (value == "off" || value == "false" || value == "0") return false;
  throw ConfigError("config: key '" + key + "' expects on/off, got '" + value + "'");
}

std::string fmt(double v) {
  if (std::isinf(v)) return "inf";
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  RunConfig config;
  config.formats.clear();
  bool formats_seen = false;
  std::istringstream in(text);
  std::string line, section;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("config line " + std::to_string(line_no) + ": unterminated section");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    std::string qualified = section + "." + key;

    if (qualified == "potential.name") {
      config.potential_name = value;
    } else if (qualified == "potential.grid_file") {
      config.grid_file = value;
    } else if (qualified == "potential.coupling_re") {
      config.coupling.real(parse_real(qualified, value));
    } else if (qualified == "potential.coupling_im") {
      config.coupling.imag(parse_real(qualified, value));
    } else if (qualified == "potential.tau") {
      config.potential_tau = parse_real(qualified, value);
    } else if (qualified == "potential.width") {
      config.well_width = parse_real(qualified, value);
    } else if (qualified == "params.n") {
      config.params.n = parse_int(qualified, value);
    } else if (qualified == "params.p") {
      config.params.p = parse_real(qualified, value);
    } else if (qualified == "params.r") {
      config.params.r = parse_real(qualified, value);
    } else if (qualified == "params.s") {
      config.params.s = parse_real(qualified, value);
    } else if (qualified == "params.m") {
      config.params.m = parse_real(qualified, value);
    } else if (qualified == "params.theta") {
      config.params.theta = parse_real(qualified, value);
    } else if (qualified == "params.tau") {
      config.params.tau = parse_real(qualified, value);
    } else if (qualified == "params.gamma") {
      config.params.gamma_moment = parse_real(qualified, value);
    } else if (qualified == "theta_grid.points") {
      config.theta_points = parse_int(qualified, value);
    } else if (qualified == "oracle.enabled") {
      config.oracle_enabled = parse_switch(qualified, value);
    } else if (qualified == "oracle.scheme") {
      if (value == "fd")
        config.oracle_scheme = oracle::Scheme::FiniteDifference;
      else if (value == "spectral")
        config.oracle_scheme = oracle::Scheme::FourierSpectral;
      else
        throw ConfigError("config: oracle.scheme expects fd or spectral, got '" + value + "'");
    } else if (qualified == "oracle.L") {
      config.oracle_half_width = parse_real(qualified, value);
    } else if (qualified == "oracle.N") {
      config.oracle_points = parse_int(qualified, value);
    } else if (qualified == "output.dir") {
      config.out_dir = value;
    } else if (qualified == "output.formats") {
      formats_seen = true;
      std::istringstream fs(value);
      std::string item;
      while (std::getline(fs, item, ',')) {
        item = trim(item);
        if (item != "csv" && item != "svg" && item != "structured")
          throw ConfigError("config: unknown output format '" + item + "'");
        config.formats.push_back(item);
      }
    } else if (qualified == "sharpen.enabled") {
      config.sharpen_enabled = parse_switch(qualified, value);
    } else {
      throw ConfigError("config line " + std::to_string(line_no) + ": unknown key '" + qualified +
                        "'");
    }
  }
  if (!formats_seen) config.formats = {"csv", "svg", "structured"};
  if (config.theta_points < 2) throw ConfigError("config: theta_grid.points must be >= 2");
  return config;
}

std::string serialize_config(const RunConfig& c) {
  std::ostringstream os;
  os << "[potential]\n";
  os << "name = " << c.potential_name << "\n";
  if (!c.grid_file.empty()) os << "grid_file = " << c.grid_file << "\n";
  os << "coupling_re = " << fmt(c.coupling.real()) << "\n";
  os << "coupling_im = " << fmt(c.coupling.imag()) << "\n";
  os << "tau = " << fmt(c.potential_tau) << "\n";
  os << "width = " << fmt(c.well_width) << "\n";
  os << "\n[params]\n";
  os << "n = " << c.params.n << "\n";
  os << "p = " << fmt(c.params.p) << "\n";
  os << "r = " << fmt(c.params.r) << "\n";
  os << "s = " << fmt(c.params.s) << "\n";
  os << "m = " << fmt(c.params.m) << "\n";
  if (c.params.theta) os << "theta = " << fmt(*c.params.theta) << "\n";
  if (c.params.tau) os << "tau = " << fmt(*c.params.tau) << "\n";
  if (c.params.gamma_moment) os << "gamma = " << fmt(*c.params.gamma_moment) << "\n";
  os << "\n[theta_grid]\n";
  os << "points = " << c.theta_points << "\n";
  os << "\n[oracle]\n";
  os << "enabled = " << (c.oracle_enabled ? "on" : "off") << "\n";
  os << "scheme = " << (c.oracle_scheme == oracle::Scheme::FiniteDifference ? "fd" : "spectral")
     << "\n";
  os << "L = " << fmt(c.oracle_half_width) << "\n";
  os << "N = " << c.oracle_points << "\n";
  os << "\n[output]\n";
  os << "dir = " << c.out_dir << "\n";
  os << "formats = ";
  for (std::size_t i = 0; i < c.formats.size(); ++i)
    os << c.formats[i] << (i + 1 < c.formats.size() ? "," : "");
  os << "\n";
  os << "\n[sharpen]\n";
  os << "enabled = " << (c.sharpen_enabled ? "on" : "off") << "\n";
  return os.str();
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

}  // namespace specenc::cli
