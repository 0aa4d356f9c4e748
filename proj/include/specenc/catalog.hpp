#pragma once

#include <string>
#include <vector>

#include "specenc/config.hpp"
#include "specenc/potentials.hpp"

namespace specenc::cli {

// Built-in analytic potentials keyed by name:
//   poschl-teller  coupling * (-2 sech^2 |x|)
//   gaussian       coupling * exp(-|x|^2)
//   rational       coupling * (1 + |x|^2)^(-tau)
//   well           coupling * indicator(|x| < width)
std::vector<std::string> catalog_names();

// Potential for the given run: catalog entry or grid file, with the
// factorization rule implied by the parameter block (weighted when
// params.tau is set, the modulus/sign split otherwise).
potentials::PotentialSpec make_potential(const RunConfig& config);

}  // namespace specenc::cli
