#include "specenc/regions.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace specenc::regions {

namespace {

constexpr double kPi = 3.141592653589793238462643;
constexpr double kInf = std::numeric_limits<double>::infinity();

void append_unique(std::vector<std::string>& v, const std::string& s) {
  if (std::find(v.begin(), v.end(), s) == v.end()) v.push_back(s);
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

std::vector<double> make_theta_grid(int points) {
  if (points < 2) throw std::invalid_argument("make_theta_grid: need at least 2 points");
  std::vector<double> grid(points);
  // open grid: nodes at (k + 1/2) * 2 pi / points keep clear of the ray
  for (int k = 0; k < points; ++k) grid[k] = (k + 0.5) * 2.0 * kPi / points;
  return grid;
}

EnclosureRegion build_region(const std::vector<bounds::BoundCertificate>& scalar,
                             const std::vector<CertificateCurve>& curves,
                             const std::vector<double>& theta_grid) {
  EnclosureRegion region;
  region.theta_grid = theta_grid;
  if (!std::is_sorted(theta_grid.begin(), theta_grid.end()))
    throw std::invalid_argument("build_region: theta grid must be sorted");

  for (const auto& cert : scalar) {
    if (!cert.admissible) {
      region.ignored.push_back(bounds::to_string(cert.theorem) + ": " +
                               (cert.violated_conditions.empty()
                                    ? "inadmissible"
                                    : cert.violated_conditions.front()));
      continue;
    }
    auto radius = cert.radius();
    if (!radius) continue;
    switch (cert.measure) {
      case bounds::SpectralMeasure::NegRealPart:
        if (!region.halfplane_cap || *radius < *region.halfplane_cap)
          region.halfplane_cap = *radius;
        append_unique(region.halfplane_sources, bounds::to_string(cert.theorem));
        region.has_enclosure = true;
        break;
      case bounds::SpectralMeasure::AbsImagPart:
        if (!region.strip_cap || *radius < *region.strip_cap) region.strip_cap = *radius;
        append_unique(region.strip_sources, bounds::to_string(cert.theorem));
        region.has_enclosure = true;
        break;
      case bounds::SpectralMeasure::Modulus:
        throw std::invalid_argument(
            "build_region: modulus certificates enter through the theta-grid curves");
    }
  }

  if (!curves.empty()) {
    region.radius_at_theta.assign(theta_grid.size(), kInf);
    region.radius_source.assign(theta_grid.size(), "");
    for (const auto& curve : curves) {
      if (curve.at_theta.size() != theta_grid.size())
        throw std::invalid_argument("build_region: curve length does not match the theta grid");
      bool any = false;
      for (std::size_t i = 0; i < theta_grid.size(); ++i) {
        const auto& cert = curve.at_theta[i];
        if (!cert.admissible) continue;
        auto radius = cert.radius();
        if (!radius) continue;
        any = true;
        if (*radius < region.radius_at_theta[i]) {
          region.radius_at_theta[i] = *radius;
          region.radius_source[i] = bounds::to_string(curve.id);
        }
      }
      if (any) {
        append_unique(region.modulus_sources, bounds::to_string(curve.id));
        region.has_enclosure = true;
      } else {
        region.ignored.push_back(bounds::to_string(curve.id) +
                                 ": inadmissible at every grid angle");
      }
    }
    bool all_unbounded = true;
    for (double rad : region.radius_at_theta) all_unbounded = all_unbounded && std::isinf(rad);
    if (all_unbounded) {
      region.radius_at_theta.clear();
      region.radius_source.clear();
    }
  }
  return region;
}

Membership contains(const EnclosureRegion& region, std::complex<double> lambda) {
  if (lambda.imag() == 0.0 && lambda.real() >= 0.0)
    throw std::domain_error("contains: lambda lies on the essential-spectrum ray [0, inf)");
  Membership result;
  if (!region.has_enclosure) {
    // no admissible constraint: vacuous membership
    result.inside = true;
    result.margin = kInf;
    return result;
  }
  double margin = kInf;

  if (!region.radius_at_theta.empty()) {
    double theta = std::arg(lambda);
    if (theta < 0.0) theta += 2.0 * kPi;
    const auto& grid = region.theta_grid;
    const auto& rad = region.radius_at_theta;
    double r_at = kInf;
    if (theta <= grid.front()) {
      r_at = rad.front();
    } else if (theta >= grid.back()) {
      r_at = rad.back();
    } else {
      auto hi = std::upper_bound(grid.begin(), grid.end(), theta);
      std::size_t j = static_cast<std::size_t>(hi - grid.begin());
      double t0 = grid[j - 1], t1 = grid[j];
      double r0 = rad[j - 1], r1 = rad[j];
      if (std::isinf(r0) || std::isinf(r1)) {
        r_at = kInf;
      } else {
        double w = (theta - t0) / (t1 - t0);
        r_at = std::exp((1.0 - w) * std::log(r0) + w * std::log(r1));
      }
    }
    if (!std::isinf(r_at)) margin = std::min(margin, r_at - std::abs(lambda));
  }
  if (region.halfplane_cap && lambda.real() < 0.0)
    margin = std::min(margin, *region.halfplane_cap - std::fabs(lambda.real()));
  if (region.strip_cap && lambda.imag() != 0.0)
    margin = std::min(margin, *region.strip_cap - std::fabs(lambda.imag()));

  result.margin = margin;
  result.inside = margin >= 0.0;
  return result;
}

namespace {

std::string export_csv(const EnclosureRegion& region) {
  std::ostringstream os;
  os << "theta,radius,constraint_id\n";
  for (std::size_t i = 0; i < region.radius_at_theta.size(); ++i) {
    os << fmt(region.theta_grid[i]) << ',' << fmt(region.radius_at_theta[i]) << ','
       << region.radius_source[i] << "\n";
  }
  return os.str();
}

std::string export_svg(const EnclosureRegion& region) {
  const int size = 640;
  const double c = size / 2.0;
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size
     << "\" viewBox=\"0 0 " << size << " " << size << "\">\n";
  os << "  <rect width=\"" << size << "\" height=\"" << size << "\" fill=\"white\"/>\n";

  // plot scale: a high quantile of the finite radii keeps the divergent
  // near-ray lobes from flattening everything else
  std::vector<double> finite;
  for (double r : region.radius_at_theta)
    if (std::isfinite(r)) finite.push_back(r);
  double scale_radius = 1.0;
  if (!finite.empty()) {
    std::sort(finite.begin(), finite.end());
    scale_radius = finite[static_cast<std::size_t>(0.75 * (finite.size() - 1))] * 1.2;
  } else if (region.halfplane_cap) {
    scale_radius = *region.halfplane_cap * 2.0;
  } else if (region.strip_cap) {
    scale_radius = *region.strip_cap * 2.0;
  }
  double px_per_unit = (c - 20.0) / scale_radius;

  os << "  <line x1=\"0\" y1=\"" << c << "\" x2=\"" << size << "\" y2=\"" << c
     << "\" stroke=\"#cccccc\"/>\n";
  os << "  <line x1=\"" << c << "\" y1=\"0\" x2=\"" << c << "\" y2=\"" << size
     << "\" stroke=\"#cccccc\"/>\n";
  // the essential-spectrum ray [0, inf)
  os << "  <line x1=\"" << c << "\" y1=\"" << c << "\" x2=\"" << size << "\" y2=\"" << c
     << "\" stroke=\"#cc0000\" stroke-width=\"2\"/>\n";

  if (!region.radius_at_theta.empty()) {
    os << "  <polyline fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < region.radius_at_theta.size(); ++i) {
      double r = std::min(region.radius_at_theta[i], 2.0 * scale_radius);
      double x = c + px_per_unit * r * std::cos(region.theta_grid[i]);
      double y = c - px_per_unit * r * std::sin(region.theta_grid[i]);
      os << x << ',' << y << ' ';
    }
    os << "\"/>\n";
  }
  if (region.halfplane_cap) {
    double x = c - px_per_unit * std::min(*region.halfplane_cap, 2.0 * scale_radius);
    os << "  <line x1=\"" << x << "\" y1=\"0\" x2=\"" << x << "\" y2=\"" << size
       << "\" stroke=\"#2e7d32\" stroke-dasharray=\"6,4\"/>\n";
  }
  if (region.strip_cap) {
    double d = px_per_unit * std::min(*region.strip_cap, 2.0 * scale_radius);
    os << "  <line x1=\"0\" y1=\"" << c - d << "\" x2=\"" << size << "\" y2=\"" << c - d
       << "\" stroke=\"#6a1b9a\" stroke-dasharray=\"6,4\"/>\n";
    os << "  <line x1=\"0\" y1=\"" << c + d << "\" x2=\"" << size << "\" y2=\"" << c + d
       << "\" stroke=\"#6a1b9a\" stroke-dasharray=\"6,4\"/>\n";
  }
  os << "  <text x=\"8\" y=\"16\" font-size=\"12\">scale: " << fmt(scale_radius)
     << " per " << fmt(scale_radius * px_per_unit) << "px</text>\n";
  os << "</svg>\n";
  return os.str();
}

std::string export_structured(const EnclosureRegion& region) {
  nlohmann::json j;
  j["has_enclosure"] = region.has_enclosure;
  j["theta_grid"] = region.theta_grid;
  nlohmann::json radii = nlohmann::json::array();
  for (double r : region.radius_at_theta)
    radii.push_back(std::isfinite(r) ? nlohmann::json(r) : nlohmann::json());
  j["radius_at_theta"] = radii;
  j["radius_source"] = region.radius_source;
  if (region.halfplane_cap) j["halfplane_cap"] = *region.halfplane_cap;
  if (region.strip_cap) j["strip_cap"] = *region.strip_cap;
  j["provenance"]["modulus"] = region.modulus_sources;
  j["provenance"]["halfplane"] = region.halfplane_sources;
  j["provenance"]["strip"] = region.strip_sources;
  j["ignored"] = region.ignored;
  return j.dump(2) + "\n";
}

}  // namespace

std::string export_region(const EnclosureRegion& region, ExportFormat format) {
  switch (format) {
    case ExportFormat::Csv: return export_csv(region);
    case ExportFormat::Svg: return export_svg(region);
    case ExportFormat::Structured: return export_structured(region);
  }
  throw std::logic_error("export_region: unknown format");
}

}  // namespace specenc::regions
