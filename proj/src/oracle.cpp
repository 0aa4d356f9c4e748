#include "specenc/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include "specenc/quadrature.hpp"

namespace specenc::oracle {

namespace {

constexpr double kPi = 3.141592653589793238462643;
using Complex = std::complex<double>;

std::string num(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

double dist_to_ray(Complex lambda) {
  return lambda.real() >= 0.0 ? std::fabs(lambda.imag()) : std::abs(lambda);
}

// sqrt(lambda) on the branch with positive imaginary part
Complex sqrt_upper(Complex lambda) {
  Complex root = std::sqrt(lambda);
  if (root.imag() < 0.0 || (root.imag() == 0.0 && root.real() < 0.0)) root = -root;
  return root;
}

std::vector<double> grid_nodes(const Discretization& disc) {
  std::vector<double> nodes(disc.points_per_axis);
  int n = disc.points_per_axis;
  if (disc.scheme == Scheme::FiniteDifference) {
    double h = 2.0 * disc.half_width / (n + 1);
    for (int i = 0; i < n; ++i) nodes[i] = -disc.half_width + (i + 1) * h;
  } else {
    double h = 2.0 * disc.half_width / n;
    for (int i = 0; i < n; ++i) nodes[i] = -disc.half_width + i * h;
  }
  return nodes;
}

double grid_spacing(const Discretization& disc) {
  if (disc.scheme == Scheme::FiniteDifference)
    return 2.0 * disc.half_width / (disc.points_per_axis + 1);
  return 2.0 * disc.half_width / disc.points_per_axis;
}

std::vector<std::complex<double>> zgeev_eigenvalues(Eigen::MatrixXcd A, bool with_vectors,
                                                    Eigen::MatrixXcd* vectors, bool* partial) {
  lapack_int n = static_cast<lapack_int>(A.rows());
  std::vector<Complex> w(n);
  Eigen::MatrixXcd vr;
  if (with_vectors) vr.resize(n, n);
  lapack_int info = LAPACKE_zgeev(LAPACK_COL_MAJOR, 'N', with_vectors ? 'V' : 'N', n, A.data(), n,
                                  w.data(), nullptr, 1, with_vectors ? vr.data() : nullptr,
                                  with_vectors ? n : 1);
  if (info < 0) throw std::runtime_error("zgeev: illegal argument " + std::to_string(-info));
  if (partial) *partial = info > 0;
  if (with_vectors && vectors) *vectors = std::move(vr);
  return w;
}

void sort_spectrum(std::vector<Complex>& w) {
  std::sort(w.begin(), w.end(), [](Complex a, Complex b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
}

// kinetic translation kernel of the periodic Fourier scheme, one value per
// index offset along the full n-dimensional lattice
std::vector<Complex> spectral_translation_kernel(const Discretization& disc, double m) {
  int n = disc.points_per_axis;
  int dim = disc.dimension;
  double k_scale = kPi / disc.half_width;
  std::vector<double> freq(n);
  for (int i = 0; i < n; ++i) {
    int k = i <= (n - 1) / 2 ? i : i - n;
    freq[i] = k_scale * k;
  }
  std::size_t total = 1;
  for (int a = 0; a < dim; ++a) total *= static_cast<std::size_t>(n);
  std::vector<Complex> values(total);
  // multiplier on the frequency lattice
  std::vector<int> idx(dim, 0);
  for (std::size_t flat = 0; flat < total; ++flat) {
    double k2 = 0.0;
    std::size_t rest = flat;
    for (int a = dim - 1; a >= 0; --a) {
      int i = static_cast<int>(rest % n);
      rest /= n;
      k2 += freq[i] * freq[i];
    }
    values[flat] = std::pow(k2, m);
  }
  // inverse DFT axis by axis: T[d] = (1/N^dim) sum_k M(k) exp(2 pi i k d / N)
  std::vector<Complex> twiddle(static_cast<std::size_t>(n) * n);
  for (int k = 0; k < n; ++k)
    for (int d = 0; d < n; ++d)
      twiddle[static_cast<std::size_t>(k) * n + d] =
          std::exp(Complex(0.0, 2.0 * kPi * k * d / n));
  std::vector<Complex> scratch(total);
  std::size_t stride = 1;
  for (int axis = dim - 1; axis >= 0; --axis) {
    std::size_t blocks = total / (static_cast<std::size_t>(n) * stride);
    for (std::size_t b = 0; b < blocks; ++b) {
      for (std::size_t s = 0; s < stride; ++s) {
        std::size_t base = b * n * stride + s;
        for (int d = 0; d < n; ++d) {
          Complex acc = 0.0;
          for (int k = 0; k < n; ++k)
            acc += values[base + static_cast<std::size_t>(k) * stride] *
                   twiddle[static_cast<std::size_t>(k) * n + d];
          scratch[base + static_cast<std::size_t>(d) * stride] = acc;
        }
      }
    }
    values.swap(scratch);
    stride *= static_cast<std::size_t>(n);
  }
  double inv_total = 1.0 / static_cast<double>(total);
  for (auto& v : values) v *= inv_total;
  return values;
}

std::vector<std::vector<double>> all_points(const Discretization& disc) {
  std::vector<double> nodes = grid_nodes(disc);
  int dim = disc.dimension;
  int n = disc.points_per_axis;
  std::size_t total = disc.matrix_dimension();
  std::vector<std::vector<double>> pts(total, std::vector<double>(dim));
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rest = flat;
    for (int a = dim - 1; a >= 0; --a) {
      pts[flat][a] = nodes[rest % n];
      rest /= n;
    }
  }
  return pts;
}

// Laplace-transformed heat kernel for n = 2, Re(lambda) < 0
Complex heat_kernel_2d(double dist2, Complex lambda) {
  auto re_part = [dist2, lambda](double t) {
    if (t <= 0.0) return 0.0;
    double damp = std::exp(lambda.real() * t - dist2 / (4.0 * t)) / t;
    return damp * std::cos(lambda.imag() * t);
  };
  auto im_part = [dist2, lambda](double t) {
    if (t <= 0.0) return 0.0;
    double damp = std::exp(lambda.real() * t - dist2 / (4.0 * t)) / t;
    return damp * std::sin(lambda.imag() * t);
  };
  double pre = 1.0 / (4.0 * kPi);
  auto re = quad::integrate_half_line(re_part, 1e-12, 1e-9);
  auto im = quad::integrate_half_line(im_part, 1e-12, 1e-9);
  return {pre * re.value, pre * im.value};
}

Complex heat_kernel_2d_diagonal(double cell_area, Complex lambda) {
  // average of the kernel over a disc of the cell area
  double r2 = cell_area / kPi;
  auto re_part = [r2, lambda](double t) {
    if (t <= 0.0) return 0.0;
    double damp = std::exp(lambda.real() * t) * (1.0 - std::exp(-r2 / (4.0 * t)));
    return damp * std::cos(lambda.imag() * t);
  };
  auto im_part = [r2, lambda](double t) {
    if (t <= 0.0) return 0.0;
    double damp = std::exp(lambda.real() * t) * (1.0 - std::exp(-r2 / (4.0 * t)));
    return damp * std::sin(lambda.imag() * t);
  };
  auto re = quad::integrate_half_line(re_part, 1e-12, 1e-9);
  auto im = quad::integrate_half_line(im_part, 1e-12, 1e-9);
  return Complex(re.value, im.value) / cell_area;
}

}  // namespace

std::string to_string(Scheme s) {
  return s == Scheme::FiniteDifference ? "FINITE_DIFFERENCE" : "FOURIER_SPECTRAL";
}

std::string to_string(KernelRoute r) {
  switch (r) {
    case KernelRoute::Green1d: return "GREEN_1D";
    case KernelRoute::Green3d: return "GREEN_3D";
    case KernelRoute::HeatLaplace: return "HEAT_LAPLACE";
  }
  return "UNKNOWN";
}

std::size_t Discretization::matrix_dimension() const {
  std::size_t total = 1;
  for (int a = 0; a < dimension; ++a) total *= static_cast<std::size_t>(points_per_axis);
  return total;
}

Eigen::MatrixXcd discretize(const potentials::PotentialSpec& pot, const Discretization& disc,
                            double m) {
  if (disc.dimension < 1 || disc.dimension > 3)
    throw std::invalid_argument("discretize: dimension must be 1, 2, or 3");
  if (pot.dimension != disc.dimension)
    throw std::invalid_argument("discretize: potential and discretization dimensions differ");
  if (disc.points_per_axis < 2) throw std::invalid_argument("discretize: need at least 2 points");
  std::size_t total = disc.matrix_dimension();
  if (total > kMaxMatrixDimension)
    throw std::invalid_argument("discretize: matrix dimension " + std::to_string(total) +
                                " exceeds the desk-scale guard " +
                                std::to_string(kMaxMatrixDimension) +
                                "; reduce N or the dimension");
  if (disc.scheme == Scheme::FiniteDifference && !(std::fabs(m - 1.0) <= 1e-12))
    throw std::invalid_argument(
        "discretize: the finite-difference scheme covers m = 1 only; use FOURIER_SPECTRAL");
  if (!(m > 0.0)) throw std::invalid_argument("discretize: m must be positive");

  int n = disc.points_per_axis;
  int dim = disc.dimension;
  Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(total, total);

  if (disc.scheme == Scheme::FiniteDifference) {
    double h = grid_spacing(disc);
    double inv_h2 = 1.0 / (h * h);
    // Kronecker sum of the 1-d 3-point stencil
    std::vector<std::size_t> strides(dim, 1);
    for (int a = dim - 2; a >= 0; --a)
      strides[a] = strides[a + 1] * static_cast<std::size_t>(n);
    for (std::size_t flat = 0; flat < total; ++flat) {
      H(flat, flat) += Complex(2.0 * dim * inv_h2, 0.0);
      std::size_t rest = flat;
      for (int a = dim - 1; a >= 0; --a) {
        int i = static_cast<int>(rest % n);
        rest /= n;
        if (i > 0) H(flat, flat - strides[a]) += Complex(-inv_h2, 0.0);
        if (i < n - 1) H(flat, flat + strides[a]) += Complex(-inv_h2, 0.0);
      }
    }
  } else {
    std::vector<Complex> kernel = spectral_translation_kernel(disc, m);
    std::vector<std::size_t> strides(dim, 1);
    for (int a = dim - 2; a >= 0; --a)
      strides[a] = strides[a + 1] * static_cast<std::size_t>(n);
    for (std::size_t row = 0; row < total; ++row) {
      for (std::size_t col = 0; col < total; ++col) {
        std::size_t rr = row, cc = col, kflat = 0;
        for (int a = dim - 1; a >= 0; --a) {
          int ri = static_cast<int>(rr % n), ci = static_cast<int>(cc % n);
          rr /= n;
          cc /= n;
          int d = ri - ci;
          if (d < 0) d += n;
          kflat += static_cast<std::size_t>(d) * strides[a];
        }
        H(row, col) = kernel[kflat];
      }
    }
  }

  std::vector<std::vector<double>> pts = all_points(disc);
  for (std::size_t flat = 0; flat < total; ++flat) H(flat, flat) += pot.q.eval(pts[flat]);
  return H;
}

std::string SpectrumReport::to_text() const {
  std::ostringstream os;
  os << "# eigenvalue table: re im error_estimate discrete_candidate\n";
  os << "# scheme=" << oracle::to_string(disc.scheme) << " n=" << disc.dimension
     << " N=" << disc.points_per_axis << " L=" << disc.half_width << " m=" << m
     << " continuum_spacing=" << continuum_spacing << (partial ? " partial=1" : "") << "\n";
  os.precision(17);
  for (std::size_t i = 0; i < eigenvalues.size(); ++i) {
    os << eigenvalues[i].real() << ' ' << eigenvalues[i].imag() << ' ' << error_estimates[i] << ' '
       << (discrete_candidate[i] ? 1 : 0) << "\n";
  }
  return os.str();
}

SpectrumReport eigen_spectrum(const Eigen::MatrixXcd& H) {
  SpectrumReport report;
  bool with_vectors = H.rows() <= 600;
  Eigen::MatrixXcd vectors;
  bool partial = false;
  std::vector<Complex> w =
      zgeev_eigenvalues(H, with_vectors, with_vectors ? &vectors : nullptr, &partial);
  report.partial = partial;
  if (with_vectors) {
    double scale = H.cwiseAbs().rowwise().sum().maxCoeff();  // infinity norm
    double worst = 0.0;
    for (Eigen::Index j = 0; j < H.rows(); ++j) {
      Eigen::VectorXcd v = vectors.col(j);
      double res = (H * v - w[static_cast<std::size_t>(j)] * v).norm() / v.norm();
      worst = std::max(worst, res);
    }
    report.max_residual = worst;
    if (worst > 1e-8 * scale) report.partial = true;
  }
  sort_spectrum(w);
  report.eigenvalues = std::move(w);
  report.error_estimates.assign(report.eigenvalues.size(), 0.0);
  report.discrete_candidate.assign(report.eigenvalues.size(), false);
  return report;
}

SpectrumReport compute_spectrum(const potentials::PotentialSpec& pot, const Discretization& disc,
                                double m) {
  SpectrumReport report = eigen_spectrum(discretize(pot, disc, m));
  report.disc = disc;
  report.m = m;
  report.continuum_spacing = std::pow(kPi / disc.half_width, 2.0 * m);

  Discretization coarse = disc;
  coarse.points_per_axis = std::max(8, disc.points_per_axis / 2);
  std::vector<Complex> coarse_w;
  {
    bool partial = false;
    coarse_w = zgeev_eigenvalues(discretize(pot, coarse, m), false, nullptr, &partial);
  }
  double scale = 0.0;
  for (Complex w : report.eigenvalues) scale = std::max(scale, std::abs(w));
  for (std::size_t i = 0; i < report.eigenvalues.size(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (Complex c : coarse_w) best = std::min(best, std::abs(report.eigenvalues[i] - c));
    report.error_estimates[i] = best / 3.0 + 1e-12 * scale;
    double delta = std::max(5.0 * report.error_estimates[i], 10.0 * report.continuum_spacing);
    report.discrete_candidate[i] = dist_to_ray(report.eigenvalues[i]) > delta;
  }
  return report;
}

namespace {

Eigen::MatrixXcd assemble_bs_operator(const potentials::Field& a, const potentials::Field& b,
                                      Complex lambda, const Discretization& disc,
                                      KernelRoute& route) {
  if (lambda.imag() == 0.0 && lambda.real() >= 0.0)
    throw std::invalid_argument("birman_schwinger: lambda lies on [0, inf)");
  double spacing = std::pow(kPi / disc.half_width, 2.0);
  if (dist_to_ray(lambda) < spacing)
    throw std::invalid_argument(
        "birman_schwinger: dist(lambda, [0, inf)) = " + num(dist_to_ray(lambda)) +
        " is below the continuum spacing " + num(spacing) + "; refine the box first");

  int dim = disc.dimension;
  if (dim == 1) {
    route = KernelRoute::Green1d;
  } else if (dim == 3) {
    route = KernelRoute::Green3d;
  } else if (dim == 2 && lambda.real() < 0.0) {
    route = KernelRoute::HeatLaplace;
  } else {
    throw std::runtime_error("birman_schwinger: no kernel route for n = " + std::to_string(dim) +
                             " with Re(lambda) >= 0; check unavailable");
  }

  std::size_t total = disc.matrix_dimension();
  if (total > kMaxMatrixDimension)
    throw std::invalid_argument("birman_schwinger: matrix dimension exceeds the guard");
  std::vector<std::vector<double>> pts = all_points(disc);
  double h = grid_spacing(disc);
  double cell = std::pow(h, dim);
  Complex mu = -Complex(0.0, 1.0) * sqrt_upper(lambda);

  Eigen::MatrixXcd Q(total, total);
  if (route == KernelRoute::Green1d) {
    for (std::size_t i = 0; i < total; ++i)
      for (std::size_t j = 0; j < total; ++j) {
        double d = std::fabs(pts[i][0] - pts[j][0]);
        Q(i, j) = std::exp(-mu * d) / (2.0 * mu);
      }
  } else if (route == KernelRoute::Green3d) {
    double ball_radius = std::cbrt(3.0 * cell / (4.0 * kPi));
    Complex diag = (1.0 - std::exp(-mu * ball_radius) * (1.0 + mu * ball_radius)) / (mu * mu) / cell;
    for (std::size_t i = 0; i < total; ++i) {
      Q(i, i) = diag;
      for (std::size_t j = i + 1; j < total; ++j) {
        double d2 = 0.0;
        for (int axis = 0; axis < 3; ++axis) {
          double dx = pts[i][axis] - pts[j][axis];
          d2 += dx * dx;
        }
        double d = std::sqrt(d2);
        Complex val = std::exp(-mu * d) / (4.0 * kPi * d);
        Q(i, j) = val;
        Q(j, i) = val;
      }
    }
  } else {
    std::unordered_map<long long, Complex> cache;
    double inv_h2 = 1.0 / (h * h);
    Complex diag = heat_kernel_2d_diagonal(cell, lambda);
    for (std::size_t i = 0; i < total; ++i) {
      Q(i, i) = diag;
      for (std::size_t j = i + 1; j < total; ++j) {
        double d2 = 0.0;
        for (int axis = 0; axis < 2; ++axis) {
          double dx = pts[i][axis] - pts[j][axis];
          d2 += dx * dx;
        }
        long long key = static_cast<long long>(std::llround(d2 * inv_h2));
        auto it = cache.find(key);
        Complex val;
        if (it == cache.end()) {
          val = heat_kernel_2d(d2, lambda);
          cache.emplace(key, val);
        } else {
          val = it->second;
        }
        Q(i, j) = val;
        Q(j, i) = val;
      }
    }
  }

  // Q(lambda) = B G A with the quadrature weight folded in
  Eigen::VectorXcd av(total), bv(total);
  for (std::size_t i = 0; i < total; ++i) {
    av(i) = a.eval(pts[i]) * cell;
    bv(i) = b.eval(pts[i]);
  }
  Q = bv.asDiagonal() * Q * av.asDiagonal();
  return Q;
}

}  // namespace

BirmanSchwingerReport birman_schwinger_norm(const potentials::Field& a,
                                            const potentials::Field& b, Complex lambda,
                                            const Discretization& disc) {
  KernelRoute route;
  Eigen::MatrixXcd Q = assemble_bs_operator(a, b, lambda, disc, route);
  std::size_t total = static_cast<std::size_t>(Q.rows());

  // power iteration on Q*Q with a fixed deterministic start
  Eigen::VectorXcd v(total);
  unsigned long long state = 0x2545F4914F6CDD1DULL;
  for (std::size_t i = 0; i < total; ++i) {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    double re = static_cast<double>((state >> 11) & 0xFFFFFFFFULL) / 4294967295.0 - 0.5;
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    double im = static_cast<double>((state >> 11) & 0xFFFFFFFFULL) / 4294967295.0 - 0.5;
    v(i) = Complex(re, im);
  }
  v.normalize();

  BirmanSchwingerReport report;
  report.lambda = lambda;
  report.route = route;
  double ritz = 0.0;
  for (int it = 1; it <= 500; ++it) {
    Eigen::VectorXcd w = Q * v;
    double next = w.squaredNorm();  // <v, Q*Q v> for unit v
    Eigen::VectorXcd z = Q.adjoint() * w;
    double zn = z.norm();
    report.iterations = it;
    if (zn == 0.0) {
      ritz = next;
      break;
    }
    v = z / zn;
    bool settled = next - ritz <= 1e-6 * std::max(next, 1e-300) && it > 3;
    ritz = std::max(ritz, next);
    if (settled) break;
  }
  report.norm_estimate = std::sqrt(ritz);
  return report;
}

std::complex<double> birman_schwinger_nearest_eigenvalue(const potentials::Field& a,
                                                         const potentials::Field& b,
                                                         Complex lambda,
                                                         const Discretization& disc,
                                                         Complex target) {
  KernelRoute route;
  Eigen::MatrixXcd Q = assemble_bs_operator(a, b, lambda, disc, route);
  bool partial = false;
  std::vector<Complex> w = zgeev_eigenvalues(std::move(Q), false, nullptr, &partial);
  Complex best = w.front();
  for (Complex v : w)
    if (std::abs(v - target) < std::abs(best - target)) best = v;
  return best;
}

std::vector<Verdict> verify_certificates(
    const SpectrumReport& report, const regions::EnclosureRegion& region,
    const std::vector<std::optional<BirmanSchwingerReport>>& bs) {
  std::vector<Verdict> verdicts;
  std::size_t bs_index = 0;
  for (std::size_t i = 0; i < report.eigenvalues.size(); ++i) {
    if (!report.discrete_candidate[i]) continue;
    Verdict v;
    v.eigenvalue = report.eigenvalues[i];
    v.error_estimate = report.error_estimates[i];
    v.candidate = true;
    regions::Membership member = regions::contains(region, v.eigenvalue);
    v.inside = member.inside;
    v.margin = member.margin;
    if (bs_index < bs.size()) {
      const auto& entry = bs[bs_index++];
      if (entry) {
        v.bs_norm = entry->norm_estimate;
        v.bs_iterations = entry->iterations;
        v.bs_route = to_string(entry->route);
      } else {
        v.bs_note = "unavailable";
      }
    }
    verdicts.push_back(std::move(v));
  }
  return verdicts;
}

}  // namespace specenc::oracle
