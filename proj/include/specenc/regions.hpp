#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "specenc/bounds.hpp"

namespace specenc::regions {

// One modulus-measure certificate evaluated along the theta grid; entries may
// be inadmissible where the theorem's angular window excludes the node.
struct CertificateCurve {
  bounds::TheoremId id;
  std::vector<bounds::BoundCertificate> at_theta;
};

struct EnclosureRegion {
  bool has_enclosure = false;
  std::vector<double> theta_grid;        // sorted, strictly inside (0, 2*pi)
  std::vector<double> radius_at_theta;   // min over curves; +inf when no curve applies
  std::vector<std::string> radius_source;  // winning certificate per node
  std::optional<double> halfplane_cap;   // eigenvalues with Re < 0 satisfy |Re| <= cap
  std::optional<double> strip_cap;       // non-real eigenvalues satisfy |Im| <= cap
  std::vector<std::string> modulus_sources;
  std::vector<std::string> halfplane_sources;
  std::vector<std::string> strip_sources;
  std::vector<std::string> ignored;      // inadmissible certificates, with reasons
};

struct Membership {
  bool inside = false;
  double margin = 0.0;  // min over applicable constraints of (radius - measured)
};

// Pointwise-minimum composition of admissible certificates.  Certificates in
// `scalar` contribute the half-plane/strip caps; modulus certificates enter
// through `curves` evaluated on `theta_grid`.  With no admissible certificate
// at all the result has has_enclosure = false (an explicit "no enclosure").
EnclosureRegion build_region(const std::vector<bounds::BoundCertificate>& scalar,
                             const std::vector<CertificateCurve>& curves,
                             const std::vector<double>& theta_grid);

// Membership of a point off the ray [0, inf); theta between grid nodes is
// resolved by linear interpolation of log(radius).
Membership contains(const EnclosureRegion& region, std::complex<double> lambda);

enum class ExportFormat { Csv, Svg, Structured };

std::string export_region(const EnclosureRegion& region, ExportFormat format);

// Uniform open grid of `points` angles in (0, 2*pi).
std::vector<double> make_theta_grid(int points);

}  // namespace specenc::regions
