#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "specenc/bounds.hpp"
#include "specenc/regions.hpp"

using namespace specenc;
using namespace specenc::bounds;
using namespace specenc::regions;

namespace {
constexpr double kPi = 3.141592653589793238462643;

ProblemParams pt_params() {
  ProblemParams q;
  q.n = 1;
  q.p = 2.0;
  q.r = q.s = 2.0;
  return q;
}

CertificateCurve curve_for(TheoremId id, const ProblemParams& params, const NormInputs& norms,
                           const std::vector<double>& grid) {
  CertificateCurve curve;
  curve.id = id;
  curve.at_theta = certify_over_thetas(id, params, norms, grid);
  return curve;
}

// basic well-formedness: declaration, single root, balanced tags
bool xml_well_formed(const std::string& text) {
  if (text.rfind("<?xml", 0) != 0) return false;
  std::vector<std::string> stack;
  std::size_t i = text.find("?>");
  if (i == std::string::npos) return false;
  i += 2;
  int roots = 0;
  while (i < text.size()) {
    std::size_t open = text.find('<', i);
    if (open == std::string::npos) break;
    std::size_t close = text.find('>', open);
    if (close == std::string::npos) return false;
    std::string tag = text.substr(open + 1, close - open - 1);
    if (!tag.empty() && tag.back() == '/') {
      if (stack.empty()) ++roots;
    } else if (!tag.empty() && tag.front() == '/') {
      std::string name = tag.substr(1);
      if (stack.empty() || stack.back() != name) return false;
      stack.pop_back();
      if (stack.empty()) ++roots;
    } else {
      std::string name = tag.substr(0, tag.find_first_of(" \t\n"));
      stack.push_back(name);
    }
    i = close + 1;
  }
  return stack.empty() && roots == 1;
}
}  // namespace

TEST_CASE("single RELAM1 certificate: halfplane cap only, no theta data") {
  ProblemParams q;
  q.n = 3;
  q.p = 2.0;
  q.r = q.s = kInf;
  auto cert = certify_result4(q, 2.0, 1.5);
  REQUIRE(cert.theorem == TheoremId::RELAM1);
  auto region = build_region({cert}, {}, make_theta_grid(32));
  CHECK(region.has_enclosure);
  REQUIRE(region.halfplane_cap.has_value());
  CHECK(*region.halfplane_cap == doctest::Approx(3.0));
  CHECK(region.radius_at_theta.empty());
  CHECK_FALSE(region.strip_cap.has_value());
}

TEST_CASE("RES1 radius shrinks from theta = pi/2 to theta = pi") {
  ProblemParams q;
  q.n = 3;
  q.p = 2.0;
  q.r = q.s = 4.0;
  NormInputs norms;
  norms.norm_a = norms.norm_b = 1.0;
  auto grid = make_theta_grid(256);
  auto region = build_region({}, {curve_for(TheoremId::RES1, q, norms, grid)}, grid);
  REQUIRE(region.has_enclosure);
  auto radius_near = [&](double theta) {
    std::size_t best = 0;
    for (std::size_t i = 0; i < grid.size(); ++i)
      if (std::fabs(grid[i] - theta) < std::fabs(grid[best] - theta)) best = i;
    return region.radius_at_theta[best];
  };
  CHECK(radius_near(kPi) < radius_near(kPi / 2.0));
  CHECK(radius_near(kPi) < radius_near(3.0 * kPi / 2.0));
}

TEST_CASE("RESULT4 + RESULT5: theta-wise radius at pi equals the halfplane cap") {
  ProblemParams q;
  q.n = 3;
  q.p = 2.0;
  q.r = q.s = 8.0;
  NormInputs norms;
  norms.norm_a = 1.2;
  norms.norm_b = 0.8;
  auto r4 = certify(TheoremId::RESULT4, q, norms);
  REQUIRE(r4.admissible);
  // grid containing theta = pi exactly
  std::vector<double> grid;
  for (int k = 1; k < 64; ++k) grid.push_back(kPi * k / 32.0);
  auto region = build_region({r4}, {curve_for(TheoremId::RESULT5, q, norms, grid)}, grid);
  REQUIRE(region.halfplane_cap.has_value());
  std::size_t at_pi = 31;  // grid[31] = pi
  REQUIRE(std::fabs(grid[at_pi] - kPi) < 1e-12);
  CHECK(std::fabs(region.radius_at_theta[at_pi] - *region.halfplane_cap) <=
        1e-8 * *region.halfplane_cap);
}

TEST_CASE("contains: Poeschl-Teller halfplane membership and margins") {
  auto cert = certify_result4(pt_params(), 2.0, 2.0);  // radius 4
  auto region = build_region({cert}, {}, make_theta_grid(64));
  auto m = contains(region, {-1.0, 0.0});
  CHECK(m.inside);
  CHECK(m.margin == doctest::Approx(3.0));
  auto out = contains(region, {-5.0, 0.0});
  CHECK_FALSE(out.inside);
  CHECK(out.margin == doctest::Approx(-1.0));
  CHECK_THROWS_AS(contains(region, {1.0, 0.0}), std::domain_error);
  CHECK_THROWS_AS(contains(region, {0.0, 0.0}), std::domain_error);
}

TEST_CASE("contains: boundary point has margin ~ 0 and interpolation is tight") {
  ProblemParams q;
  q.n = 3;
  q.p = 2.0;
  q.r = q.s = 4.0;
  NormInputs norms;
  norms.norm_a = norms.norm_b = 1.0;
  auto grid = make_theta_grid(720);
  auto region = build_region({}, {curve_for(TheoremId::RES1, q, norms, grid)}, grid);

  // exact on-curve points at grid nodes
  for (std::size_t i = 100; i < 720; i += 240) {
    double theta = grid[i];
    double radius = region.radius_at_theta[i];
    std::complex<double> lambda = std::polar(radius, theta);
    auto m = contains(region, lambda);
    CHECK(std::fabs(m.margin) <= 1e-9 * radius);
  }

  // random points against direct certificate evaluation
  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> ang(0.05, 2.0 * kPi - 0.05);
  std::uniform_real_distribution<double> scale(0.2, 3.0);
  int checked = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    double theta = ang(rng);
    ProblemParams qq = q;
    qq.theta = theta;
    auto cert = certify(TheoremId::RES1, qq, norms);
    double exact_radius = *cert.radius();
    double rho = exact_radius * scale(rng);
    auto m = contains(region, std::polar(rho, theta));
    bool exact_inside = rho <= exact_radius;
    bool interp_inside = m.inside;
    if (std::fabs(rho - exact_radius) > 1e-3 * exact_radius) {
      CHECK(exact_inside == interp_inside);
      ++checked;
    }
  }
  CHECK(checked > 9000);
}

TEST_CASE("contains: scaling all radii up never flips inside to outside") {
  auto cert = certify_result4(pt_params(), 2.0, 2.0);
  auto cert_big = cert;
  cert_big.constant *= 2.0;
  auto grid = make_theta_grid(64);
  auto small_region = build_region({cert}, {}, grid);
  auto big_region = build_region({cert_big}, {}, grid);
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> re(-6.0, -0.01), im(-3.0, 3.0);
  for (int k = 0; k < 300; ++k) {
    std::complex<double> lambda(re(rng), im(rng));
    if (contains(small_region, lambda).inside) CHECK(contains(big_region, lambda).inside);
  }
}

TEST_CASE("radius curve is symmetric under theta <-> 2pi - theta") {
  ProblemParams q;
  q.n = 3;
  q.p = 2.0;
  q.r = q.s = 8.0;
  NormInputs norms;
  norms.norm_a = norms.norm_b = 1.0;
  auto grid = make_theta_grid(64);  // nodes come in conjugate pairs
  auto region = build_region(
      {}, {curve_for(TheoremId::RES1, q, norms, grid), curve_for(TheoremId::RESULT5, q, norms, grid)},
      grid);
  REQUIRE(region.radius_at_theta.size() == 64);
  for (std::size_t i = 0; i < 32; ++i) {
    double a = region.radius_at_theta[i];
    double b = region.radius_at_theta[63 - i];
    CAPTURE(i);
    CHECK(std::fabs(a - b) <= 1e-10 * std::max(a, b));
  }
}

TEST_CASE("no admissible certificate: explicit no-enclosure result") {
  ProblemParams q;
  q.n = 3;
  q.p = 2.0;
  q.r = q.s = 3.0;  // everything inadmissible
  NormInputs norms;
  auto cert = certify(TheoremId::RES2, q, norms);
  auto region = build_region({cert}, {}, make_theta_grid(16));
  CHECK_FALSE(region.has_enclosure);
  CHECK_FALSE(region.ignored.empty());
}

TEST_CASE("CSV export: header plus one row per grid node") {
  ProblemParams q;
  q.n = 3;
  q.p = 2.0;
  q.r = q.s = 4.0;
  NormInputs norms;
  norms.norm_a = norms.norm_b = 1.0;
  auto grid = make_theta_grid(360);
  auto region = build_region({}, {curve_for(TheoremId::RES1, q, norms, grid)}, grid);
  std::string csv = export_region(region, ExportFormat::Csv);
  std::size_t rows = std::count(csv.begin(), csv.end(), '\n');
  CHECK(rows == 361);  // header + 360
  CHECK(csv.rfind("theta,radius,constraint_id\n", 0) == 0);
  CHECK(csv.find("RES1") != std::string::npos);

  EnclosureRegion empty;
  CHECK(export_region(empty, ExportFormat::Csv) == "theta,radius,constraint_id\n");
}

TEST_CASE("SVG export parses as well-formed XML") {
  ProblemParams q;
  q.n = 3;
  q.p = 2.0;
  q.r = q.s = 4.0;
  NormInputs norms;
  norms.norm_a = norms.norm_b = 1.0;
  auto grid = make_theta_grid(90);
  auto r4 = certify(TheoremId::RESULT4, q, norms);
  auto region = build_region({r4}, {curve_for(TheoremId::RES1, q, norms, grid)}, grid);
  std::string svg = export_region(region, ExportFormat::Svg);
  CHECK(xml_well_formed(svg));
  CHECK(svg.find("<svg") != std::string::npos);
}

TEST_CASE("structured export mirrors the region") {
  auto cert = certify_result4(pt_params(), 2.0, 2.0);
  auto region = build_region({cert}, {}, make_theta_grid(16));
  std::string json_text = export_region(region, ExportFormat::Structured);
  CHECK(json_text.find("\"halfplane_cap\": 4.0") != std::string::npos);
  CHECK(json_text.find("\"has_enclosure\": true") != std::string::npos);
  CHECK(json_text.find("RESULT4") != std::string::npos);
}
