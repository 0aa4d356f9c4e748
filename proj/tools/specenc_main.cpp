#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <json.hpp>

#include "specenc/bounds.hpp"
#include "specenc/catalog.hpp"
#include "specenc/config.hpp"
#include "specenc/oracle.hpp"
#include "specenc/pipeline.hpp"
#include "specenc/regions.hpp"
#include "specenc/specfun.hpp"

namespace {

using namespace specenc;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct CommonOptions {
  std::string config_path;
  std::string out_dir_override;
  bool sharpen_flag = false;
  int theta_points_override = 0;
  std::string oracle_override;  // "on" / "off" / ""
};

void apply_overrides(cli::RunConfig& config, const CommonOptions& opts) {
  if (!opts.out_dir_override.empty()) config.out_dir = opts.out_dir_override;
  if (opts.sharpen_flag) config.sharpen_enabled = true;
  if (opts.theta_points_override > 0) config.theta_points = opts.theta_points_override;
  if (opts.oracle_override == "on") config.oracle_enabled = true;
  if (opts.oracle_override == "off") config.oracle_enabled = false;
}

void read_test_hooks() {
  if (const char* env = std::getenv("SPECENC_CORRUPT_CONSTANTS")) {
    bounds::testhooks::constant_scale = std::atof(env);
    std::cerr << "warning: test hook SPECENC_CORRUPT_CONSTANTS active, constants scaled by "
              << bounds::testhooks::constant_scale << "\n";
  }
  if (const char* env = std::getenv("SPECENC_PERTURB_LEGENDRE")) {
    specfun::testhooks::legendre_perturbation = std::atof(env);
    std::cerr << "warning: test hook SPECENC_PERTURB_LEGENDRE active, relative perturbation "
              << specfun::testhooks::legendre_perturbation << "\n";
  }
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

void write_meta(const std::filesystem::path& dir) {
  // timestamps live in this side-channel only, keeping the result files
  // byte-identical across reruns
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::ostringstream os;
  os << "generated_at_utc " << std::put_time(std::gmtime(&t), "%Y-%m-%dT%H:%M:%SZ") << "\n";
  write_file(dir / "meta.txt", os.str());
}

json certificate_to_json(const bounds::BoundCertificate& cert) {
  json j;
  j["theorem"] = bounds::to_string(cert.theorem);
  j["admissible"] = cert.admissible;
  if (cert.admissible) {
    j["measure"] = bounds::to_string(cert.measure);
    j["exponent"] = cert.exponent;
    j["constant"] = cert.constant;
    j["norm_product"] = cert.norm_product;
    if (auto r = cert.radius()) j["radius"] = *r;
    j["sharpening"] = bounds::to_string(cert.sharpening);
    j["sharpening_factor"] = cert.sharpening_factor;
  } else {
    j["violated_conditions"] = cert.violated_conditions;
  }
  if (!cert.notes.empty()) j["notes"] = cert.notes;
  return j;
}

std::string format_radius(const bounds::BoundCertificate& cert) {
  auto r = cert.radius();
  if (!r) return "-";
  std::ostringstream os;
  os.precision(8);
  os << *r;
  return os.str();
}

void print_certificate_table(const std::vector<bounds::BoundCertificate>& certs) {
  std::cout << std::left << std::setw(10) << "theorem" << std::setw(12) << "admissible"
            << std::setw(15) << "measure" << std::setw(11) << "exponent" << std::setw(14)
            << "constant" << std::setw(14) << "radius" << "notes\n";
  for (const auto& cert : certs) {
    std::cout << std::left << std::setw(10) << bounds::to_string(cert.theorem) << std::setw(12)
              << (cert.admissible ? "yes" : "no");
    if (cert.admissible) {
      std::ostringstream expo, constant;
      expo.precision(6);
      expo << cert.exponent;
      constant.precision(6);
      constant << cert.constant;
      std::cout << std::setw(15) << bounds::to_string(cert.measure) << std::setw(11) << expo.str()
                << std::setw(14) << constant.str() << std::setw(14) << format_radius(cert);
      if (cert.sharpening != bounds::Sharpening::None)
        std::cout << "sharpened x" << cert.sharpening_factor;
    } else {
      std::cout << std::setw(15) << "-" << std::setw(11) << "-" << std::setw(14) << "-"
                << std::setw(14) << "-"
                << (cert.violated_conditions.empty() ? "" : cert.violated_conditions.front());
    }
    std::cout << "\n";
  }
}

int cmd_bound(const CommonOptions& opts) {
  cli::RunConfig config = cli::load_config_file(opts.config_path);
  apply_overrides(config, opts);
  potentials::PotentialSpec pot = cli::make_potential(config);
  pipeline::CertificateBundle bundle = pipeline::evaluate_certificates(
      config.params, pot, {}, config.sharpen_enabled, pipeline::worker_count());

  print_certificate_table(bundle.pointwise);

  std::filesystem::create_directories(config.out_dir);
  json out;
  out["config"] = cli::serialize_config(config);
  json certs = json::array();
  for (const auto& cert : bundle.pointwise) certs.push_back(certificate_to_json(cert));
  out["certificates"] = certs;
  write_file(std::filesystem::path(config.out_dir) / "bound_certificates.json", out.dump(2) + "\n");
  write_meta(config.out_dir);

  bool any = false;
  for (const auto& cert : bundle.pointwise) any = any || cert.admissible;
  if (!any) {
    std::cout << "no admissible certificate for these parameters\n";
    return kExitFailure;
  }
  return kExitOk;
}

int cmd_region(const CommonOptions& opts) {
  cli::RunConfig config = cli::load_config_file(opts.config_path);
  apply_overrides(config, opts);
  potentials::PotentialSpec pot = cli::make_potential(config);
  auto grid = regions::make_theta_grid(config.theta_points);
  pipeline::CertificateBundle bundle = pipeline::evaluate_certificates(
      config.params, pot, grid, config.sharpen_enabled, pipeline::worker_count());
  regions::EnclosureRegion region = pipeline::region_from(bundle, grid);

  std::filesystem::create_directories(config.out_dir);
  std::filesystem::path dir(config.out_dir);
  for (const std::string& format : config.formats) {
    if (format == "csv")
      write_file(dir / "region.csv", regions::export_region(region, regions::ExportFormat::Csv));
    else if (format == "svg")
      write_file(dir / "region.svg", regions::export_region(region, regions::ExportFormat::Svg));
    else if (format == "structured")
      write_file(dir / "region.json",
                 regions::export_region(region, regions::ExportFormat::Structured));
  }
  write_meta(dir);

  if (!region.has_enclosure) {
    std::cout << "no enclosure: no admissible certificate\n";
    return kExitFailure;
  }
  std::cout << "region written to " << config.out_dir << " (";
  if (!region.radius_at_theta.empty()) std::cout << "modulus curve over " << grid.size() << " angles";
  if (region.halfplane_cap) std::cout << ", |Re| cap " << *region.halfplane_cap;
  if (region.strip_cap) std::cout << ", |Im| cap " << *region.strip_cap;
  std::cout << ")\n";
  return kExitOk;
}

int cmd_validate(const CommonOptions& opts) {
  cli::RunConfig config = cli::load_config_file(opts.config_path);
  apply_overrides(config, opts);
  if (!config.oracle_enabled) {
    std::cerr << "validate requires the oracle block to be enabled\n";
    return kExitUsage;
  }
  potentials::PotentialSpec pot = cli::make_potential(config);
  oracle::Discretization disc;
  disc.dimension = config.params.n;
  disc.scheme = config.oracle_scheme;
  disc.half_width = config.oracle_half_width;
  disc.points_per_axis = config.oracle_points;
  if (disc.matrix_dimension() > oracle::kMaxMatrixDimension) {
    std::size_t suggested = config.oracle_points;
    while (true) {
      oracle::Discretization probe = disc;
      probe.points_per_axis = static_cast<int>(suggested);
      if (probe.matrix_dimension() <= oracle::kMaxMatrixDimension) break;
      --suggested;
    }
    std::cerr << "oracle matrix dimension " << disc.matrix_dimension()
              << " exceeds the desk-scale guard " << oracle::kMaxMatrixDimension
              << "; try N = " << suggested << "\n";
    return kExitUsage;
  }

  auto grid = regions::make_theta_grid(config.theta_points);
  pipeline::ValidationOutcome outcome =
      pipeline::run_validation(config.params, pot, disc, config.params.m, grid,
                               config.sharpen_enabled, pipeline::worker_count());

  std::cout << outcome.verdicts.size() << " discrete candidate(s) among "
            << outcome.spectrum.eigenvalues.size() << " eigenvalues\n";
  for (const auto& v : outcome.verdicts) {
    std::cout << "  lambda = (" << v.eigenvalue.real() << ", " << v.eigenvalue.imag()
              << ")  err ~ " << v.error_estimate << "  " << (v.inside ? "inside" : "OUTSIDE")
              << "  margin " << v.margin;
    if (v.bs_norm) std::cout << "  |Q| ~ " << *v.bs_norm << " (" << *v.bs_route << ")";
    if (v.bs_note) std::cout << "  BS " << *v.bs_note;
    std::cout << "\n";
  }

  std::filesystem::create_directories(config.out_dir);
  std::filesystem::path dir(config.out_dir);
  write_file(dir / "spectrum.txt", outcome.spectrum.to_text());
  json out;
  out["all_enclosed"] = outcome.all_enclosed;
  out["region_usable"] = outcome.region_usable;
  json spectrum;
  spectrum["scheme"] = oracle::to_string(outcome.spectrum.disc.scheme);
  spectrum["dimension"] = outcome.spectrum.disc.dimension;
  spectrum["points_per_axis"] = outcome.spectrum.disc.points_per_axis;
  spectrum["half_width"] = outcome.spectrum.disc.half_width;
  spectrum["m"] = outcome.spectrum.m;
  spectrum["continuum_spacing"] = outcome.spectrum.continuum_spacing;
  spectrum["partial"] = outcome.spectrum.partial;
  json eigenvalues = json::array();
  for (std::size_t i = 0; i < outcome.spectrum.eigenvalues.size(); ++i) {
    json e;
    e["re"] = outcome.spectrum.eigenvalues[i].real();
    e["im"] = outcome.spectrum.eigenvalues[i].imag();
    e["error_estimate"] = outcome.spectrum.error_estimates[i];
    e["discrete_candidate"] = static_cast<bool>(outcome.spectrum.discrete_candidate[i]);
    eigenvalues.push_back(e);
  }
  spectrum["eigenvalues"] = eigenvalues;
  out["spectrum"] = spectrum;
  json verdicts = json::array();
  for (const auto& v : outcome.verdicts) {
    json jv;
    jv["re"] = v.eigenvalue.real();
    jv["im"] = v.eigenvalue.imag();
    jv["error_estimate"] = v.error_estimate;
    jv["inside"] = v.inside;
    jv["margin"] = v.margin;
    if (v.bs_norm) {
      jv["bs_norm"] = *v.bs_norm;
      jv["bs_iterations"] = *v.bs_iterations;
      jv["bs_route"] = *v.bs_route;
    }
    if (v.bs_note) jv["bs_note"] = *v.bs_note;
    verdicts.push_back(jv);
  }
  out["verdicts"] = verdicts;
  write_file(dir / "validate.json", out.dump(2) + "\n");
  write_meta(dir);

  if (!outcome.region_usable) {
    std::cout << "no enclosure available for the discrete candidates\n";
    return kExitFailure;
  }
  if (!outcome.all_enclosed) {
    std::cout << "validation FAILED: a discrete candidate escapes the region\n";
    return kExitFailure;
  }
  std::cout << "validation passed\n";
  return kExitOk;
}

int cmd_selfcheck() {
  auto t0 = std::chrono::steady_clock::now();
  std::vector<pipeline::CheckItem> items = pipeline::agreement_grid_checks();
  std::vector<pipeline::CheckItem> consistency = pipeline::corollary_consistency_checks();
  items.insert(items.end(), consistency.begin(), consistency.end());
  int failures = 0;
  for (const auto& item : items) {
    bool ok = item.pass;
    failures += ok ? 0 : 1;
    std::cout << (ok ? "pass  " : "FAIL  ") << item.name;
    if (!ok) std::cout << "  (lhs " << item.lhs << " vs rhs " << item.rhs << ")";
    std::cout << "\n";
  }
  auto dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::cout << items.size() << " checks, " << failures << " failure(s), " << dt << " s\n";
  return failures == 0 ? kExitOk : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spectral enclosure bounds for Schroedinger and polyharmonic operators"};
  app.require_subcommand(1);

  CommonOptions opts;
  auto add_common = [&opts](CLI::App* sub, bool needs_config) {
    if (needs_config)
      sub->add_option("--config", opts.config_path, "run configuration file")->required();
    sub->add_option("--out", opts.out_dir_override, "output directory override");
    sub->add_flag("--sharpen", opts.sharpen_flag, "apply the sharp-constant refinements");
    sub->add_option("--theta-points", opts.theta_points_override, "theta grid size override");
    sub->add_option("--oracle", opts.oracle_override, "oracle on|off override")
        ->check(CLI::IsMember({"on", "off"}));
  };

  CLI::App* bound = app.add_subcommand("bound", "evaluate every eigenvalue bound");
  add_common(bound, true);
  CLI::App* region = app.add_subcommand("region", "export the enclosure region");
  add_common(region, true);
  CLI::App* validate = app.add_subcommand("validate", "check the discretized spectrum");
  add_common(validate, true);
  CLI::App* selfcheck =
      app.add_subcommand("selfcheck", "closed-form vs quadrature and consistency grid");
  add_common(selfcheck, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  read_test_hooks();
  try {
    if (bound->parsed()) return cmd_bound(opts);
    if (region->parsed()) return cmd_region(opts);
    if (validate->parsed()) return cmd_validate(opts);
    if (selfcheck->parsed()) return cmd_selfcheck();
  } catch (const cli::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}
