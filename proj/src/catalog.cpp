#include "specenc/catalog.hpp"

#include <cmath>
#include <fstream>

namespace specenc::cli {

using potentials::Complex;
using potentials::Field;

std::vector<std::string> catalog_names() {
  return {"poschl-teller", "gaussian", "rational", "well"};
}

potentials::PotentialSpec make_potential(const RunConfig& config) {
  int dim = config.params.n;
  potentials::Factorization fac;
  if (config.params.tau) {
    fac.rule = potentials::FactorizationRule::Weighted;
    fac.tau = *config.params.tau;
  }

  if (!config.grid_file.empty()) {
    std::ifstream in(config.grid_file);
    if (!in) throw ConfigError("cannot open grid file: " + config.grid_file);
    int file_dim = 0;
    potentials::GridData data = potentials::read_grid_file(in, file_dim);
    if (file_dim != dim)
      throw ConfigError("grid file dimension " + std::to_string(file_dim) +
                        " does not match params.n = " + std::to_string(dim));
    Complex c = config.coupling;
    for (auto& s : data.samples) s *= c;
    return potentials::PotentialSpec(dim, Field::grid(dim, std::move(data)), fac);
  }

  Complex c = config.coupling;
  if (config.potential_name == "poschl-teller") {
    return potentials::PotentialSpec(dim, Field::radial(dim, [c](double rho) {
                                       double s = 1.0 / std::cosh(rho);
                                       return c * Complex(-2.0 * s * s, 0.0);
                                     }),
                                     fac);
  }
  if (config.potential_name == "gaussian") {
    return potentials::PotentialSpec(
        dim, Field::radial(dim, [c](double rho) { return c * std::exp(-rho * rho); }), fac);
  }
  if (config.potential_name == "rational") {
    double tau_pot = config.potential_tau;
    return potentials::PotentialSpec(
        dim, Field::radial(dim, [c, tau_pot](double rho) {
          return c * std::pow(1.0 + rho * rho, -tau_pot);
        }),
        fac);
  }
  if (config.potential_name == "well") {
    double w = config.well_width;
    return potentials::PotentialSpec(dim, Field::radial(dim, [c, w](double rho) {
                                       return rho < w ? c : Complex(0.0, 0.0);
                                     }),
                                     fac);
  }
  throw ConfigError("unknown potential '" + config.potential_name +
                    "'; catalog: poschl-teller, gaussian, rational, well (or set grid_file)");
}

}  // namespace specenc::cli
