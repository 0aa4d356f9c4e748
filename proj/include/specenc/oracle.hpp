#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "specenc/potentials.hpp"
#include "specenc/regions.hpp"

namespace specenc::oracle {

enum class Scheme { FiniteDifference, FourierSpectral };
std::string to_string(Scheme s);

// Desk-scale guard on the dense matrix dimension N^n.
inline constexpr std::size_t kMaxMatrixDimension = 20000;

struct Discretization {
  int dimension = 1;
  Scheme scheme = Scheme::FiniteDifference;
  double half_width = 10.0;
  int points_per_axis = 200;

  std::size_t matrix_dimension() const;
};

// Dense matrix of H = (-Delta)^m + q on the chosen grid.  The finite
// difference scheme (3-point per axis, Dirichlet, spacing 2L/(N+1)) is
// restricted to m = 1; the Fourier scheme (periodic, multiplier |k|^{2m} on
// the integer lattice scaled by pi/L) accepts any m > 0.
Eigen::MatrixXcd discretize(const potentials::PotentialSpec& pot, const Discretization& disc,
                            double m);

struct SpectrumReport {
  std::vector<std::complex<double>> eigenvalues;  // sorted by (re, im)
  std::vector<double> error_estimates;            // two-resolution estimates
  std::vector<bool> discrete_candidate;
  Discretization disc;
  double m = 1.0;
  double continuum_spacing = 0.0;  // (pi/L)^{2m}
  bool partial = false;            // eigensolver did not converge completely
  double max_residual = 0.0;       // ||Hv - lambda v||/||v|| when vectors were computed

  // tabular text: one "re im error candidate" line per eigenvalue
  std::string to_text() const;
};

// Complete dense non-Hermitian spectrum of an assembled matrix.  Residuals
// are verified against 1e-8 * ||H|| when the dimension admits eigenvectors.
SpectrumReport eigen_spectrum(const Eigen::MatrixXcd& H);

// Spectrum with per-eigenvalue discretization-error estimates from a second,
// coarser resolution, and the continuum-contamination filter
//   candidate  <=>  dist(lambda, [0, inf)) > max(5 * error, 10 * spacing).
SpectrumReport compute_spectrum(const potentials::PotentialSpec& pot, const Discretization& disc,
                                double m);

enum class KernelRoute { Green1d, Green3d, HeatLaplace };
std::string to_string(KernelRoute r);

struct BirmanSchwingerReport {
  std::complex<double> lambda;
  double norm_estimate = 0.0;
  int iterations = 0;
  KernelRoute route = KernelRoute::Green1d;
};

// Operator 2-norm of the discretized Q(lambda) = B G(lambda) A via power
// iteration on Q*Q (monotone Ritz values, relative increment < 1e-6).
// Routes: closed kernels for n = 1 and n = 3 (any lambda off [0, inf));
// the Laplace-transformed heat kernel for n = 2 with Re lambda < 0.
// Throws std::invalid_argument when lambda is closer to [0, inf) than the
// continuum spacing, std::runtime_error when no kernel route applies.
BirmanSchwingerReport birman_schwinger_norm(const potentials::Field& a,
                                            const potentials::Field& b,
                                            std::complex<double> lambda,
                                            const Discretization& disc);

// Optional diagnostic: the eigenvalue of the discretized Q(lambda) closest
// to -1.  At a true eigenvalue of H the exact Q(lambda) has eigenvalue -1;
// there is no quantitative stability statement to test against, so this is
// reported, not asserted.
std::complex<double> birman_schwinger_nearest_eigenvalue(const potentials::Field& a,
                                                         const potentials::Field& b,
                                                         std::complex<double> lambda,
                                                         const Discretization& disc,
                                                         std::complex<double> target = {-1.0,
                                                                                        0.0});

struct Verdict {
  std::complex<double> eigenvalue;
  double error_estimate = 0.0;
  bool candidate = false;
  bool inside = false;
  double margin = 0.0;
  std::optional<double> bs_norm;
  std::optional<int> bs_iterations;
  std::optional<std::string> bs_route;
  std::optional<std::string> bs_note;
};

// Per discrete candidate: region membership, signed margin, and the
// Birman-Schwinger outcome (when supplied).  A violation is a reported
// result, not an error.
std::vector<Verdict> verify_certificates(
    const SpectrumReport& report, const regions::EnclosureRegion& region,
    const std::vector<std::optional<BirmanSchwingerReport>>& bs = {});

}  // namespace specenc::oracle
