#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "specenc/bounds.hpp"
#include "specenc/oracle.hpp"
#include "specenc/potentials.hpp"
#include "specenc/regions.hpp"

namespace specenc::pipeline {

// Worker count: SPECENC_WORKERS when set, hardware concurrency otherwise.
int worker_count();

// Run f(i) for i in [0, n) across the worker pool; results must be written
// into pre-sized slots so the merge order is deterministic.
void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& f);

// Norm inputs a theorem consumes, computed from the potential and its
// factorization (closed weight norms where available, quadrature otherwise).
bounds::NormInputs norms_for(bounds::TheoremId id, const bounds::ProblemParams& params,
                             const potentials::PotentialSpec& pot);

struct CertificateBundle {
  std::vector<bounds::TheoremStatus> statuses;
  // pointwise certificates at params.theta (the bound table)
  std::vector<bounds::BoundCertificate> pointwise;
  // non-modulus certificates (theta independent)
  std::vector<bounds::BoundCertificate> scalar;
  // modulus certificates resolved over the theta grid
  std::vector<regions::CertificateCurve> curves;
};

CertificateBundle evaluate_certificates(const bounds::ProblemParams& params,
                                        const potentials::PotentialSpec& pot,
                                        const std::vector<double>& theta_grid,
                                        bool apply_sharpening, int workers);

regions::EnclosureRegion region_from(const CertificateBundle& bundle,
                                     const std::vector<double>& theta_grid);

struct ValidationOutcome {
  oracle::SpectrumReport spectrum;
  regions::EnclosureRegion region;
  std::vector<oracle::Verdict> verdicts;
  bool all_enclosed = true;   // every discrete candidate inside the region
  bool region_usable = true;  // false when candidates exist but no certificate applies
};

ValidationOutcome run_validation(const bounds::ProblemParams& params,
                                 const potentials::PotentialSpec& pot,
                                 const oracle::Discretization& disc, double m,
                                 const std::vector<double>& theta_grid, bool apply_sharpening,
                                 int workers);

// One named pass/fail entry of the selfcheck / acceptance agreement suite.
struct CheckItem {
  std::string name;
  bool pass = false;
  double lhs = 0.0;
  double rhs = 0.0;
  double tolerance = 0.0;
};

// Closed-form vs quadrature agreement over the acceptance grid
// (n in {1,2,3,5}, m in {1/2,1,2}, five admissible alphas, four angles).
std::vector<CheckItem> agreement_grid_checks();

// Corollary-vs-parent radius identities and the theta = pi / m = 1
// cross-validations.
std::vector<CheckItem> corollary_consistency_checks();

}  // namespace specenc::pipeline
