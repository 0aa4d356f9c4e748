#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "specenc/oracle.hpp"

using namespace specenc;
using namespace specenc::oracle;
using potentials::Complex;
using potentials::Field;
using potentials::PotentialSpec;

namespace {
constexpr double kPi = 3.141592653589793238462643;

PotentialSpec zero_potential(int dim) {
  return PotentialSpec(dim, Field::radial(dim, [](double) { return Complex(0.0, 0.0); }));
}

PotentialSpec poschl_teller(double depth_scale = 1.0) {
  return PotentialSpec(1, Field::radial(1, [depth_scale](double r) {
                         double s = 1.0 / std::cosh(r);
                         return Complex(-2.0 * depth_scale * s * s, 0.0);
                       }));
}
}  // namespace

TEST_CASE("free finite-difference spectrum is the known tridiagonal one") {
  Discretization disc;
  disc.dimension = 1;
  disc.scheme = Scheme::FiniteDifference;
  disc.half_width = 5.0;
  disc.points_per_axis = 40;
  auto H = discretize(zero_potential(1), disc, 1.0);
  auto report = eigen_spectrum(H);
  REQUIRE(report.eigenvalues.size() == 40);
  double h = 2.0 * disc.half_width / (disc.points_per_axis + 1);
  std::vector<double> exact;
  for (int k = 1; k <= 40; ++k)
    exact.push_back(2.0 / (h * h) * (1.0 - std::cos(k * kPi / (disc.points_per_axis + 1))));
  std::sort(exact.begin(), exact.end());
  for (int k = 0; k < 40; ++k) {
    CHECK(std::fabs(report.eigenvalues[k].imag()) < 1e-10);
    CHECK(report.eigenvalues[k].real() == doctest::Approx(exact[k]).epsilon(1e-10));
  }
  CHECK(report.max_residual <= 1e-8 * (4.0 / (h * h)));
}

TEST_CASE("free Fourier spectrum of (-Delta)^2 is the quartic lattice") {
  Discretization disc;
  disc.dimension = 1;
  disc.scheme = Scheme::FourierSpectral;
  disc.half_width = 4.0;
  disc.points_per_axis = 16;
  auto H = discretize(zero_potential(1), disc, 2.0);
  auto report = eigen_spectrum(H);
  std::vector<double> exact;
  for (int i = 0; i < 16; ++i) {
    int k = i <= 7 ? i : i - 16;
    exact.push_back(std::pow(kPi * k / disc.half_width, 4.0));
  }
  std::sort(exact.begin(), exact.end());
  REQUIRE(report.eigenvalues.size() == exact.size());
  for (std::size_t i = 0; i < exact.size(); ++i) {
    CHECK(std::fabs(report.eigenvalues[i].imag()) < 1e-8);
    CHECK(std::fabs(report.eigenvalues[i].real() - exact[i]) < 1e-8 * (1.0 + exact[i]));
  }
}

TEST_CASE("eigen_spectrum: 2x2 rotation and diagonal matrices") {
  Eigen::MatrixXcd A(2, 2);
  A << Complex(0, 0), Complex(1, 0), Complex(-1, 0), Complex(0, 0);
  auto r = eigen_spectrum(A);
  REQUIRE(r.eigenvalues.size() == 2);
  auto near_value = [&](Complex target) {
    return std::abs(r.eigenvalues[0] - target) < 1e-12 ||
           std::abs(r.eigenvalues[1] - target) < 1e-12;
  };
  CHECK(near_value(Complex(0, 1)));
  CHECK(near_value(Complex(0, -1)));

  Eigen::MatrixXcd D = Eigen::MatrixXcd::Zero(3, 3);
  D(0, 0) = Complex(2.5, 0.0);
  D(1, 1) = Complex(-1.0, 3.0);
  D(2, 2) = Complex(0.0, -0.5);
  auto rd = eigen_spectrum(D);
  CHECK(rd.eigenvalues[0] == Complex(-1.0, 3.0));
  CHECK(rd.eigenvalues[1] == Complex(0.0, -0.5));
  CHECK(rd.eigenvalues[2] == Complex(2.5, 0.0));
}

TEST_CASE("scheme guards") {
  Discretization disc;
  disc.dimension = 1;
  disc.scheme = Scheme::FiniteDifference;
  disc.points_per_axis = 16;
  CHECK_THROWS_AS(discretize(zero_potential(1), disc, 2.0), std::invalid_argument);
  Discretization big;
  big.dimension = 3;
  big.points_per_axis = 30;  // 27000 > 20000
  CHECK_THROWS_AS(discretize(zero_potential(3), big, 1.0), std::invalid_argument);
}

TEST_CASE("Poeschl-Teller ground state at -1 within 1e-4") {
  Discretization disc;
  disc.dimension = 1;
  disc.scheme = Scheme::FiniteDifference;
  disc.half_width = 20.0;
  disc.points_per_axis = 800;
  auto report = compute_spectrum(poschl_teller(), disc, 1.0);
  REQUIRE(!report.eigenvalues.empty());
  // smallest real part is the bound state
  auto lam = report.eigenvalues.front();
  CHECK(std::fabs(lam.real() + 1.0) < 1e-4);
  CHECK(std::fabs(lam.imag()) < 1e-10);
  // it is flagged as a discrete candidate and the estimate covers the defect
  CHECK(report.discrete_candidate.front());
  CHECK(std::fabs(lam.real() + 1.0) < 5.0 * report.error_estimates.front() + 1e-4);
}

TEST_CASE("deep Poeschl-Teller well: three exact bound states") {
  // depth 12 = l(l+1) with l = 3: eigenvalues -9, -4, -1
  Discretization disc;
  disc.dimension = 1;
  disc.scheme = Scheme::FiniteDifference;
  disc.half_width = 18.0;
  disc.points_per_axis = 900;
  auto report = compute_spectrum(poschl_teller(6.0), disc, 1.0);
  std::vector<double> expected = {-9.0, -4.0, -1.0};
  int found = 0;
  for (std::size_t i = 0; i < report.eigenvalues.size(); ++i) {
    if (!report.discrete_candidate[i]) continue;
    REQUIRE(found < 3);
    double defect = std::fabs(report.eigenvalues[i].real() - expected[found]);
    CHECK(defect < 5e-3);
    CHECK(defect < 5.0 * report.error_estimates[i]);  // the estimate covers the defect
    ++found;
  }
  CHECK(found == 3);
}

TEST_CASE("real potential reproduces a Hermitian spectrum") {
  Discretization disc;
  disc.dimension = 1;
  disc.scheme = Scheme::FiniteDifference;
  disc.half_width = 12.0;
  disc.points_per_axis = 300;
  auto H = discretize(poschl_teller(), disc, 1.0);
  auto report = eigen_spectrum(H);
  double scale = H.cwiseAbs().rowwise().sum().maxCoeff();
  for (auto w : report.eigenvalues) CHECK(std::fabs(w.imag()) <= 1e-8 * scale);
  // against a self-adjoint solve
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H.real());
  for (int k = 0; k < 5; ++k)
    CHECK(std::fabs(report.eigenvalues[k].real() - es.eigenvalues()(k)) <= 1e-8 * scale);
}

TEST_CASE("grid convergence: halving h moves candidates by less than 4x the estimate") {
  Discretization fine;
  fine.dimension = 1;
  fine.scheme = Scheme::FiniteDifference;
  fine.half_width = 16.0;
  fine.points_per_axis = 640;
  auto r1 = compute_spectrum(poschl_teller(), fine, 1.0);
  Discretization finer = fine;
  finer.points_per_axis = 1280;
  auto r2 = compute_spectrum(poschl_teller(), finer, 1.0);
  for (std::size_t i = 0; i < r1.eigenvalues.size(); ++i) {
    if (!r1.discrete_candidate[i]) continue;
    double best = 1e300;
    for (auto w : r2.eigenvalues) best = std::min(best, std::abs(w - r1.eigenvalues[i]));
    CHECK(best < 4.0 * r1.error_estimates[i]);
  }
}

TEST_CASE("complex gaussian coupling: candidates match a much finer run") {
  auto pot = PotentialSpec(1, Field::radial(1, [](double r) {
                             return Complex(0.0, 5.0) * std::exp(-r * r);
                           }));
  Discretization disc;
  disc.dimension = 1;
  disc.scheme = Scheme::FiniteDifference;
  disc.half_width = 12.0;
  disc.points_per_axis = 240;
  auto coarse = compute_spectrum(pot, disc, 1.0);
  Discretization fine = disc;
  fine.points_per_axis = 2400;
  auto refined = compute_spectrum(pot, fine, 1.0);
  int candidates = 0;
  for (std::size_t i = 0; i < coarse.eigenvalues.size(); ++i) {
    if (!coarse.discrete_candidate[i]) continue;
    ++candidates;
    double best = 1e300;
    for (auto w : refined.eigenvalues) best = std::min(best, std::abs(w - coarse.eigenvalues[i]));
    CHECK(best < 5.0 * coarse.error_estimates[i] + 1e-6);
  }
  CHECK(candidates >= 1);
}

TEST_CASE("birman-schwinger norm at the Poeschl-Teller eigenvalue is close to 1") {
  auto pot = poschl_teller();
  auto [a, b] = potentials::factorize(pot);
  Discretization disc;
  disc.dimension = 1;
  disc.scheme = Scheme::FiniteDifference;
  disc.half_width = 16.0;
  disc.points_per_axis = 400;
  auto report = birman_schwinger_norm(a, b, Complex(-1.0, 0.0), disc);
  CHECK(report.route == KernelRoute::Green1d);
  CHECK(report.norm_estimate >= 0.95);
  CHECK(report.norm_estimate <= 1.1);

  // scaling the potential by 1/10 scales Q linearly
  auto pot10 = poschl_teller(0.1);
  auto [a10, b10] = potentials::factorize(pot10);
  auto report10 = birman_schwinger_norm(a10, b10, Complex(-1.0, 0.0), disc);
  CHECK(std::fabs(report10.norm_estimate - 0.1 * report.norm_estimate) <
        1e-4 * report.norm_estimate);

  // far from the spectrum the norm is small
  auto far = birman_schwinger_norm(a, b, Complex(-100.0, 0.0), disc);
  CHECK(far.norm_estimate < 1.0);
}

TEST_CASE("birman-schwinger guards and the 2-d heat route") {
  auto pot = poschl_teller();
  auto [a, b] = potentials::factorize(pot);
  Discretization disc;
  disc.dimension = 1;
  disc.half_width = 10.0;
  disc.points_per_axis = 100;
  CHECK_THROWS_AS(birman_schwinger_norm(a, b, Complex(2.0, 0.0), disc), std::invalid_argument);
  CHECK_THROWS_AS(birman_schwinger_norm(a, b, Complex(-1e-6, 0.0), disc), std::invalid_argument);

  // n = 2 real well, Re lambda < 0: heat route applies and stays below 1 for
  // weak coupling far from the spectrum
  auto pot2 = PotentialSpec(2, Field::radial(2, [](double r) {
                              return Complex(-0.4 * std::exp(-r * r), 0.0);
                            }));
  auto [a2, b2] = potentials::factorize(pot2);
  Discretization d2;
  d2.dimension = 2;
  d2.scheme = Scheme::FiniteDifference;
  d2.half_width = 6.0;
  d2.points_per_axis = 24;
  auto rep2 = birman_schwinger_norm(a2, b2, Complex(-3.0, 0.0), d2);
  CHECK(rep2.route == KernelRoute::HeatLaplace);
  CHECK(rep2.norm_estimate < 1.0);
  CHECK(rep2.norm_estimate > 0.0);

  // n = 2 with Re lambda >= 0 has no route
  CHECK_THROWS_AS(birman_schwinger_norm(a2, b2, Complex(1.0, 2.0), d2), std::runtime_error);
}

TEST_CASE("birman-schwinger diagnostic: Q(-1) has an eigenvalue near -1 at the bound state") {
  auto pot = poschl_teller();
  auto [a, b] = potentials::factorize(pot);
  Discretization disc;
  disc.dimension = 1;
  disc.scheme = Scheme::FiniteDifference;
  disc.half_width = 16.0;
  disc.points_per_axis = 400;
  auto ev = birman_schwinger_nearest_eigenvalue(a, b, Complex(-1.0, 0.0), disc);
  CHECK(std::abs(ev - Complex(-1.0, 0.0)) < 5e-3);
  // far from the spectrum no eigenvalue of Q comes close to -1
  auto far = birman_schwinger_nearest_eigenvalue(a, b, Complex(-50.0, 0.0), disc);
  CHECK(std::abs(far - Complex(-1.0, 0.0)) > 0.5);
}

TEST_CASE("verify_certificates composes membership and the BS outcome") {
  // tiny synthetic region: |Re lambda| <= 4 for Re < 0
  bounds::ProblemParams params;
  params.n = 1;
  params.p = 2.0;
  params.r = params.s = 2.0;
  auto cert = bounds::certify_result4(params, 2.0, 2.0);  // radius 4
  auto region = regions::build_region({cert}, {}, regions::make_theta_grid(16));

  SpectrumReport report;
  report.eigenvalues = {Complex(-1.0, 0.0), Complex(0.5, 0.0)};
  report.error_estimates = {1e-6, 1e-6};
  report.discrete_candidate = {true, false};
  std::vector<std::optional<BirmanSchwingerReport>> bs(1);
  BirmanSchwingerReport b;
  b.lambda = Complex(-1.0, 0.0);
  b.norm_estimate = 0.99;
  b.iterations = 12;
  b.route = KernelRoute::Green1d;
  bs[0] = b;
  auto verdicts = verify_certificates(report, region, bs);
  REQUIRE(verdicts.size() == 1);
  CHECK(verdicts[0].inside);
  CHECK(verdicts[0].margin == doctest::Approx(3.0));
  CHECK(verdicts[0].bs_norm.has_value());

  // empty verdict table for a potential with no candidates
  SpectrumReport none;
  none.eigenvalues = {Complex(1.0, 0.0)};
  none.error_estimates = {1e-6};
  none.discrete_candidate = {false};
  CHECK(verify_certificates(none, region, {}).empty());
}

TEST_CASE("spectrum report serializes one eigenvalue per line") {
  SpectrumReport report;
  report.eigenvalues = {Complex(-1.0, 0.25), Complex(2.0, 0.0)};
  report.error_estimates = {1e-3, 1e-5};
  report.discrete_candidate = {true, false};
  std::string text = report.to_text();
  CHECK(text.find("-1 0.25 0.001 1\n") != std::string::npos);
  CHECK(text.find("2 0 1.0000000000000001e-05 0\n") != std::string::npos);
}
