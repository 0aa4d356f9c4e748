#include "specenc/bounds.hpp"

#include <cmath>
#include <sstream>

#include "specenc/kernels.hpp"
#include "specenc/specfun.hpp"

namespace specenc::bounds {

namespace testhooks {
double constant_scale = 1.0;
}

namespace {

constexpr double kPi = 3.141592653589793238462643;

std::string num(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

struct Checker {
  std::vector<std::string> violations;
  void require(bool ok, const std::string& msg) {
    if (!ok) violations.push_back(msg);
  }
  bool ok() const { return violations.empty(); }
};

bool near(double a, double b, double tol = 1e-12) { return std::fabs(a - b) <= tol; }

double conjugate_exponent(double p) {
  if (std::isinf(p)) return 1.0;
  if (p == 1.0) return kInf;
  return p / (p - 1.0);
}

void check_common(Checker& c, const ProblemParams& q) {
  c.require(q.n >= 1, "dimension n = " + num(q.n) + " must be >= 1");
  c.require(q.p > 1.0 && std::isfinite(q.p), "p = " + num(q.p) + " must lie in (1, inf)");
  c.require(q.r > 0.0, "r = " + num(q.r) + " must be positive");
  c.require(q.s > 0.0, "s = " + num(q.s) + " must be positive");
}

void check_laplacian_order(Checker& c, const ProblemParams& q) {
  c.require(near(q.m, 1.0), "operator order m = " + num(q.m) + " but this bound requires m = 1");
}

void check_theta(Checker& c, const ProblemParams& q) {
  c.require(q.theta.has_value(), "theta (= arg lambda) is required but not provided");
  if (q.theta)
    c.require(*q.theta > 0.0 && *q.theta < 2.0 * kPi,
              "theta = " + num(*q.theta) + " must lie strictly in (0, 2*pi)");
}

void check_young_legality(Checker& c, const ProblemParams& q) {
  double inv_beta = q.inv_r() + 1.0 / q.p;
  c.require(inv_beta <= 1.0 + 1e-12, "1/r + 1/p = " + num(inv_beta) +
                                         " exceeds 1: the convolution inequality needs beta >= 1");
}

// r = s and the 3-d window r > 3 (1 < p <= 3) or r >= p (p > 3)
void check_equal_r_window(Checker& c, const ProblemParams& q, int n) {
  c.require(near(q.inv_r(), q.inv_s()), "requires r = s, got r = " + num(q.r) + ", s = " + num(q.s));
  if (q.p <= static_cast<double>(n))
    c.require(q.r > static_cast<double>(n),
              "r = " + num(q.r) + " must exceed n = " + num(n) + " when p <= n");
  else
    c.require(q.r >= q.p, "r = " + num(q.r) + " must be >= p = " + num(q.p) + " when p > n");
}

void check_hy_windows(Checker& c, const ProblemParams& q) {
  double lo_r = 0.5 - 1.0 / q.p, hi_r = 1.0 - 1.0 / q.p;
  double lo_s = -0.5 + 1.0 / q.p, hi_s = 1.0 / q.p;
  c.require(q.inv_r() >= lo_r - 1e-12 && q.inv_r() <= hi_r + 1e-12,
            "1/r = " + num(q.inv_r()) + " must lie in [1/2 - 1/p, 1 - 1/p] = [" + num(lo_r) + ", " +
                num(hi_r) + "]");
  c.require(q.inv_s() >= lo_s - 1e-12 && q.inv_s() <= hi_s + 1e-12,
            "1/s = " + num(q.inv_s()) + " must lie in [1/p - 1/2, 1/p] = [" + num(lo_s) + ", " +
                num(hi_s) + "]");
}

BoundCertificate start(TheoremId id, SpectralMeasure measure) {
  BoundCertificate cert;
  cert.theorem = id;
  cert.measure = measure;
  return cert;
}

BoundCertificate finish(BoundCertificate cert, Checker& c, double exponent, double constant,
                        double norm_product) {
  cert.violated_conditions = c.violations;
  if (!c.ok()) return cert;
  cert.admissible = true;
  cert.exponent = exponent;
  cert.constant = constant * testhooks::constant_scale;
  cert.norm_product = norm_product;
  return cert;
}

BoundCertificate fail(BoundCertificate cert, Checker& c) {
  cert.violated_conditions = c.violations;
  cert.admissible = false;
  return cert;
}

double gamma_v(double x) { return specfun::gamma_fn(x).value; }

// constant of the r = s specialization of the 3-d convolution bound
double cor1_constant(double r, double theta) {
  double alpha = r / (r - 2.0);
  return std::pow(4.0 * kPi, -2.0) * std::pow(gamma_v(2.0 * (r - 3.0) / (r - 2.0)), r - 2.0) *
         std::pow(alpha * std::sin(0.5 * theta), -2.0 * (r - 3.0));
}

// constant of the r = s specialization of the heat-kernel bound
double corres21_constant(int n, double r) {
  return std::pow(4.0 * kPi, -static_cast<double>(n)) *
         std::pow(1.0 - 2.0 / r, 0.5 * n * (r - 2.0)) * std::pow(gamma_v(1.0 - n / r), r);
}

double fold_theta(double theta) { return theta <= kPi ? theta : 2.0 * kPi - theta; }

// theta-resolved constant of the Fourier-route modulus bound for (-Delta)^m:
// (2 pi)^{-n} ||h_m(.; e^{i theta})||_alpha^alpha, from the closed form when it
// is quadrature-validated, from the quadrature otherwise.
double symbol_constant(int n, double m, double alpha, double theta,
                       std::vector<std::string>* notes) {
  double tf = fold_theta(theta);
  double pre = std::pow(2.0 * kPi, -static_cast<double>(n));
  if (near(tf, kPi)) {
    return pre * std::pow(kernels::symbol_norm_real_axis(n, m, alpha, 1.0), alpha);
  }
  kernels::KernelNormResult sym = kernels::symbol_norm(n, m, alpha, kernels::LambdaPolar(1.0, tf));
  if (sym.agreement && sym.closed_form) return pre * std::pow(*sym.closed_form, alpha);
  if (notes)
    notes->push_back("closed symbol norm unavailable or off quadrature at theta = " + num(theta) +
                     "; quadrature value used");
  return pre * std::pow(sym.quadrature, alpha);
}

// normhal-arrangement of the same constant, specific to m = 1
double result5_constant(int n, double alpha, double theta, std::vector<std::string>* notes) {
  double tf = fold_theta(theta);
  double gamma_ratio = gamma_v(alpha - 0.5 * n) / gamma_v(alpha);
  if (near(tf, kPi)) return std::pow(4.0 * kPi, -0.5 * n) * gamma_ratio;
  if (std::fabs(tf - kPi) < 1e-3) return symbol_constant(n, 1.0, alpha, theta, notes);
  try {
    specfun::SpecfunResult p =
        specfun::legendre_p(0.5 * n - 0.5 * alpha - 0.5, 0.5 - 0.5 * alpha, -std::cos(tf));
    double closed = std::pow(4.0 * kPi, -0.5 * n) *
                    std::pow(2.0 / std::sin(tf), 0.5 * (alpha - 1.0)) *
                    gamma_v(0.5 * (alpha + 1.0)) * gamma_ratio * p.value;
    kernels::KernelNormResult sym =
        kernels::symbol_norm(n, 1.0, alpha, kernels::LambdaPolar(1.0, tf));
    double quad_const = std::pow(2.0 * kPi, -static_cast<double>(n)) *
                        std::pow(sym.quadrature, alpha);
    if (std::fabs(closed - quad_const) <= 1e-8 * quad_const) return closed;
    if (notes)
      notes->push_back("legendre form deviates from quadrature at theta = " + num(theta) +
                       "; quadrature value used");
    return quad_const;
  } catch (const std::exception&) {
    if (notes) notes->push_back("legendre evaluation failed at theta = " + num(theta));
    return symbol_constant(n, 1.0, alpha, theta, notes);
  }
}

BoundCertificate certify_res1_impl(const ProblemParams& q, const NormInputs& norms) {
  auto cert = start(TheoremId::RES1, SpectralMeasure::Modulus);
  Checker c;
  check_common(c, q);
  check_laplacian_order(c, q);
  c.require(q.n == 3, "dimension n = " + num(q.n) + " must equal 3");
  c.require(q.s >= q.p - 1e-12, "s = " + num(q.s) + " must be >= p = " + num(q.p));
  double sum = q.inv_r() + q.inv_s();
  c.require(sum < 2.0 / 3.0, "1/r + 1/s = " + num(sum) + " must be < 2/3");
  check_theta(c, q);
  check_young_legality(c, q);
  if (!c.ok()) return fail(cert, c);
  double alpha = q.alpha_convolution();
  double constant = std::pow(4.0 * kPi, 1.0 - alpha) * gamma_v(3.0 - alpha) *
                    std::pow(alpha * std::sin(0.5 * *q.theta), alpha - 3.0);
  return finish(cert, c, 0.5 * (3.0 - alpha), constant,
                std::pow(norms.norm_a * norms.norm_b, alpha));
}

BoundCertificate certify_cor1_impl(const ProblemParams& q, const NormInputs& norms) {
  auto cert = start(TheoremId::COR1, SpectralMeasure::Modulus);
  Checker c;
  check_common(c, q);
  check_laplacian_order(c, q);
  c.require(q.n == 3, "dimension n = " + num(q.n) + " must equal 3");
  c.require(std::isfinite(q.r), "r must be finite for this certificate form (see RES1 for r = inf)");
  check_equal_r_window(c, q, 3);
  check_theta(c, q);
  if (!c.ok()) return fail(cert, c);
  return finish(cert, c, q.r - 3.0, cor1_constant(q.r, *q.theta),
                std::pow(norms.norm_a * norms.norm_b, q.r));
}

BoundCertificate certify_corq1_impl(const ProblemParams& q, const NormInputs& norms) {
  auto cert = start(TheoremId::CORQ1, SpectralMeasure::Modulus);
  Checker c;
  check_common(c, q);
  check_laplacian_order(c, q);
  c.require(q.n == 3, "dimension n = " + num(q.n) + " must equal 3");
  c.require(q.gamma_moment.has_value(), "moment order gamma is required but not provided");
  if (q.gamma_moment) {
    double g = *q.gamma_moment;
    if (q.p <= 3.0)
      c.require(g > 0.0, "gamma = " + num(g) + " must be positive");
    else
      c.require(2.0 * g >= q.p - 3.0, "2*gamma = " + num(2.0 * g) + " must be >= p - 3");
  }
  check_theta(c, q);
  if (!c.ok()) return fail(cert, c);
  double g = *q.gamma_moment;
  double constant = 1.0 / (4.0 * kPi * std::pow(std::sin(0.5 * *q.theta), 2.0 * g)) *
                    std::pow((2.0 * g + 1.0) / (2.0 * g + 3.0), 2.0 * g) *
                    std::pow(gamma_v(4.0 * g / (2.0 * g + 1.0)), 0.5 * (2.0 * g + 1.0));
  return finish(cert, c, g, constant, norms.q_moment);
}

BoundCertificate certify_corq2_impl(const ProblemParams& q, const NormInputs& norms) {
  auto cert = start(TheoremId::CORQ2, SpectralMeasure::Modulus);
  Checker c;
  check_common(c, q);
  check_laplacian_order(c, q);
  c.require(q.n == 3, "dimension n = " + num(q.n) + " must equal 3");
  c.require(q.tau.has_value(), "weight exponent tau is required but not provided");
  c.require(std::isfinite(q.r), "r must be finite for the weighted certificate");
  check_equal_r_window(c, q, 3);
  if (q.tau)
    c.require(*q.tau * q.r > 3.0, "tau*r = " + num(*q.tau * q.r) +
                                      " must exceed 3 or the weight norm diverges");
  check_theta(c, q);
  if (!c.ok()) return fail(cert, c);
  double weight_norm_pow =
      2.0 * kPi * specfun::beta_fn(1.5, 0.5 * (*q.tau * q.r) - 1.5).value;
  cert.notes.push_back("admissibility tau*r > 3 enforced by finiteness of the weight norm");
  return finish(cert, c, q.r - 3.0, weight_norm_pow * cor1_constant(q.r, *q.theta),
                norms.weighted_moment);
}

BoundCertificate certify_res2_impl(const ProblemParams& q, const NormInputs& norms) {
  auto cert = start(TheoremId::RES2, SpectralMeasure::NegRealPart);
  Checker c;
  check_common(c, q);
  check_laplacian_order(c, q);
  c.require(q.n >= 3, "dimension n = " + num(q.n) + " must be >= 3");
  c.require(q.s >= q.p - 1e-12, "s = " + num(q.s) + " must be >= p = " + num(q.p));
  double sum = q.inv_r() + q.inv_s();
  c.require(sum < 2.0 / q.n, "1/r + 1/s = " + num(sum) + " must be < 2/n = " + num(2.0 / q.n));
  check_young_legality(c, q);
  if (!c.ok()) return fail(cert, c);
  double alpha = q.alpha_convolution();
  double inv_conj = 1.0 - 1.0 / alpha;
  double exponent = 1.0 - 0.5 * q.n * inv_conj;
  double constant = std::pow(4.0 * kPi, -0.5 * q.n * inv_conj) *
                    std::pow(alpha, -0.5 * q.n / alpha) * gamma_v(exponent);
  return finish(cert, c, exponent, constant, norms.norm_a * norms.norm_b);
}

BoundCertificate certify_corres21_impl(const ProblemParams& q, const NormInputs& norms) {
  auto cert = start(TheoremId::CORRES21, SpectralMeasure::NegRealPart);
  Checker c;
  check_common(c, q);
  check_laplacian_order(c, q);
  c.require(q.n >= 3, "dimension n = " + num(q.n) + " must be >= 3");
  c.require(std::isfinite(q.r), "r must be finite for this certificate form");
  check_equal_r_window(c, q, q.n);
  if (!c.ok()) return fail(cert, c);
  return finish(cert, c, q.r - q.n, corres21_constant(q.n, q.r),
                std::pow(norms.norm_a * norms.norm_b, q.r));
}

BoundCertificate certify_corres22_impl(const ProblemParams& q, const NormInputs& norms) {
  auto cert = start(TheoremId::CORRES22, SpectralMeasure::Modulus);
  Checker c;
  check_common(c, q);
  check_laplacian_order(c, q);
  c.require(q.n >= 3, "dimension n = " + num(q.n) + " must be >= 3");
  c.require(q.gamma_moment.has_value(), "moment order gamma is required but not provided");
  if (q.gamma_moment) {
    double g = *q.gamma_moment;
    if (q.p <= q.n)
      c.require(g > 0.0, "gamma = " + num(g) + " must be positive");
    else
      c.require(2.0 * g >= q.p - q.n, "2*gamma = " + num(2.0 * g) + " must be >= p - n");
  }
  check_theta(c, q);
  if (q.theta)
    c.require(std::cos(*q.theta) < -1e-12,
              "theta = " + num(*q.theta) +
                  ": the |Re lambda| to |lambda| conversion needs Re lambda < 0, i.e. theta in "
                  "(pi/2, 3*pi/2)");
  if (!c.ok()) return fail(cert, c);
  double g = *q.gamma_moment;
  double n = q.n;
  double base = std::pow(4.0 * kPi, -0.5 * n) *
                std::pow((2.0 * g + n - 2.0) / (2.0 * g + n), 0.25 * n * (2.0 * g + n - 2.0)) *
                std::pow(gamma_v(2.0 * g / (2.0 * g + n)), g + 0.5 * n);
  double constant = base / std::pow(-std::cos(*q.theta), g);
  cert.notes.push_back("converted via |Re lambda| = |lambda| |cos(theta)| on the given ray");
  return finish(cert, c, g, constant, norms.q_moment);
}

BoundCertificate certify_corres2w_impl(const ProblemParams& q, const NormInputs& norms) {
  auto cert = start(TheoremId::CORRES2W, SpectralMeasure::NegRealPart);
  Checker c;
  check_common(c, q);
  check_laplacian_order(c, q);
  c.require(q.n >= 3, "dimension n = " + num(q.n) + " must be >= 3");
  c.require(q.tau.has_value(), "weight exponent tau is required but not provided");
  c.require(std::isfinite(q.r), "r must be finite for the weighted certificate");
  check_equal_r_window(c, q, q.n);
  if (q.tau)
    c.require(*q.tau * q.r > q.n, "tau*r = " + num(*q.tau * q.r) + " must exceed n = " + num(q.n) +
                                      " or the weight norm diverges");
  if (!c.ok()) return fail(cert, c);
  double trn = *q.tau * q.r;
  double weight_norm_pow = std::pow(kPi, 0.5 * q.n) * gamma_v(0.5 * (trn - q.n)) / gamma_v(0.5 * trn);
  cert.notes.push_back("admissibility tau*r > n enforced by finiteness of the weight norm");
  return finish(cert, c, q.r - q.n, weight_norm_pow * corres21_constant(q.n, q.r),
                norms.weighted_moment);
}

BoundCertificate certify_res3_impl(const ProblemParams& q, const NormInputs& norms) {
  auto cert = start(TheoremId::RES3, SpectralMeasure::AbsImagPart);
  Checker c;
  check_common(c, q);
  check_laplacian_order(c, q);
  c.require(q.n >= 3, "dimension n = " + num(q.n) + " must be >= 3");
  c.require(q.s >= q.p - 1e-12, "s = " + num(q.s) + " must be >= p = " + num(q.p));
  double residual = (q.inv_r() - q.inv_s()) - (1.0 - 2.0 / q.p);
  c.require(std::fabs(residual) <= 1e-9,
            "linked indices violated: (1/r - 1/s) - (1 - 2/p) = " + num(residual));
  double lo = 0.5 - 1.0 / q.p, hi = 1.0 - 1.0 / q.p;
  c.require(q.inv_r() >= lo - 1e-12 && q.inv_r() <= hi + 1e-12,
            "1/r = " + num(q.inv_r()) + " must lie in [1/2 - 1/p, 1 - 1/p]");
  double sum = q.inv_r() + q.inv_s();
  c.require(sum < 2.0 / q.n, "1/r + 1/s = " + num(sum) + " must be < 2/n = " + num(2.0 / q.n));
  double alpha = q.alpha_imag();
  c.require(alpha > 0.0, "exponent 1 - n(1/r + 1/s)/2 = " + num(alpha) + " must be positive");
  if (!c.ok()) return fail(cert, c);
  double constant = std::pow(4.0 * kPi, alpha - 1.0) * gamma_v(alpha);
  return finish(cert, c, alpha, constant, norms.norm_a * norms.norm_b);
}

BoundCertificate certify_corim_impl(const ProblemParams& q, const NormInputs& norms) {
  auto cert = start(TheoremId::CORIM, SpectralMeasure::AbsImagPart);
  Checker c;
  check_common(c, q);
  check_laplacian_order(c, q);
  c.require(q.n >= 3, "dimension n = " + num(q.n) + " must be >= 3");
  c.require(near(q.p, 2.0), "r = s forces p = 2, got p = " + num(q.p));
  c.require(near(q.inv_r(), q.inv_s()), "requires r = s, got r = " + num(q.r) + ", s = " + num(q.s));
  c.require(std::isfinite(q.r) && q.r > q.n,
            "r = " + num(q.r) + " must be finite and exceed n = " + num(q.n));
  if (!c.ok()) return fail(cert, c);
  double expo = 1.0 - q.n / q.r;
  return finish(cert, c, expo, std::pow(4.0 * kPi, -q.n / q.r) * gamma_v(expo), norms.q_norm);
}

BoundCertificate certify_corim1_impl(const ProblemParams& q, const NormInputs& norms) {
  auto cert = start(TheoremId::CORIM1, SpectralMeasure::AbsImagPart);
  Checker c;
  check_common(c, q);
  check_laplacian_order(c, q);
  c.require(q.n >= 3, "dimension n = " + num(q.n) + " must be >= 3");
  c.require(near(q.p, 2.0), "this moment form is stated for p = 2, got p = " + num(q.p));
  c.require(q.gamma_moment.has_value(), "moment order gamma is required but not provided");
  if (q.gamma_moment) c.require(*q.gamma_moment > 0.0, "gamma must be positive");
  if (!c.ok()) return fail(cert, c);
  double g = *q.gamma_moment;
  double constant = std::pow(4.0 * kPi, -0.5 * q.n) *
                    std::pow(gamma_v(2.0 * g / (2.0 * g + q.n)), g + 0.5 * q.n);
  return finish(cert, c, g, constant, norms.q_moment);
}

BoundCertificate certify_result4_impl(const ProblemParams& q, const NormInputs& norms) {
  auto cert = start(TheoremId::RESULT4, SpectralMeasure::NegRealPart);
  Checker c;
  check_common(c, q);
  check_laplacian_order(c, q);
  c.require(!(std::isinf(q.r) && std::isinf(q.s)),
            "r = s = inf is the bounded-potential branch; use RELAM1");
  check_hy_windows(c, q);
  double sum = q.inv_r() + q.inv_s();
  c.require(sum < 2.0 / q.n, "1/r + 1/s = " + num(sum) + " must be < 2/n = " + num(2.0 / q.n));
  if (!c.ok()) return fail(cert, c);
  double alpha = q.alpha_fourier();
  double constant = std::pow(4.0 * kPi, -0.5 * q.n) * gamma_v(alpha - 0.5 * q.n) / gamma_v(alpha);
  return finish(cert, c, alpha - 0.5 * q.n, constant,
                std::pow(norms.norm_a * norms.norm_b, alpha));
}

BoundCertificate certify_relam1_impl(const ProblemParams& q, const NormInputs& norms) {
  auto cert = start(TheoremId::RELAM1, SpectralMeasure::NegRealPart);
  Checker c;
  check_common(c, q);
  check_laplacian_order(c, q);
  c.require(std::isinf(q.r) && std::isinf(q.s),
            "the bounded-potential branch requires r = s = inf");
  check_hy_windows(c, q);  // collapses to p = 2 at r = s = inf
  if (!c.ok()) return fail(cert, c);
  return finish(cert, c, 1.0, 1.0, norms.norm_a * norms.norm_b);
}

BoundCertificate certify_corgen_impl(const ProblemParams& q, const NormInputs& norms) {
  auto cert = start(TheoremId::CORGEN, SpectralMeasure::NegRealPart);
  Checker c;
  check_common(c, q);
  check_laplacian_order(c, q);
  c.require(near(q.p, 2.0), "this moment form is stated for p = 2, got p = " + num(q.p));
  c.require(q.gamma_moment.has_value(), "moment order gamma is required but not provided");
  if (q.gamma_moment) {
    if (q.n >= 2)
      c.require(*q.gamma_moment > 0.0, "gamma must be positive for n >= 2");
    else
      c.require(*q.gamma_moment >= 0.5, "gamma must be >= 1/2 for n = 1");
  }
  if (!c.ok()) return fail(cert, c);
  double g = *q.gamma_moment;
  double constant = std::pow(4.0 * kPi, -0.5 * q.n) * gamma_v(g) / gamma_v(g + 0.5 * q.n);
  return finish(cert, c, g, constant, norms.q_moment);
}

BoundCertificate certify_result5_impl(const ProblemParams& q, const NormInputs& norms) {
  auto cert = start(TheoremId::RESULT5, SpectralMeasure::Modulus);
  Checker c;
  check_common(c, q);
  check_laplacian_order(c, q);
  check_hy_windows(c, q);
  double sum = q.inv_r() + q.inv_s();
  c.require(sum < 2.0 / q.n, "1/r + 1/s = " + num(sum) + " must be < 2/n = " + num(2.0 / q.n));
  c.require(sum > 0.0, "r = s = inf gives an infinite exponent; use RELAM1");
  check_theta(c, q);
  if (!c.ok()) return fail(cert, c);
  double alpha = q.alpha_fourier();
  double constant = result5_constant(q.n, alpha, *q.theta, &cert.notes);
  return finish(cert, c, alpha - 0.5 * q.n, constant,
                std::pow(norms.norm_a * norms.norm_b, alpha));
}

BoundCertificate certify_result6_impl(const ProblemParams& q, const NormInputs& norms) {
  auto cert = start(TheoremId::RESULT6, SpectralMeasure::Modulus);
  Checker c;
  check_common(c, q);
  c.require(q.m > 0.0, "operator order m = " + num(q.m) + " must be positive");
  check_hy_windows(c, q);
  double sum = q.inv_r() + q.inv_s();
  c.require(sum > 0.0, "r = s = inf gives an infinite exponent");
  double alpha = q.alpha_fourier();
  double threshold = 0.5 * q.n / q.m;
  c.require(alpha > threshold, "alpha = (1/r + 1/s)^-1 = " + num(alpha) +
                                   " must exceed n/(2m) = " + num(threshold) +
                                   " (symbol-norm integral converges exactly then)");
  check_theta(c, q);
  if (!c.ok()) return fail(cert, c);
  double constant = symbol_constant(q.n, q.m, alpha, *q.theta, &cert.notes);
  cert.notes.push_back("index window alpha > n/(2m) enforced by integral convergence");
  return finish(cert, c, alpha - threshold, constant, std::pow(norms.norm_a * norms.norm_b, alpha));
}

BoundCertificate certify_corres6_impl(const ProblemParams& q, const NormInputs& norms) {
  auto cert = start(TheoremId::CORRES6, SpectralMeasure::Modulus);
  Checker c;
  check_common(c, q);
  c.require(q.m > 0.0, "operator order m = " + num(q.m) + " must be positive");
  c.require(near(q.p, 2.0), "this moment form is stated for p = 2, got p = " + num(q.p));
  c.require(q.gamma_moment.has_value(), "moment order gamma is required but not provided");
  if (q.gamma_moment) {
    double g = *q.gamma_moment;
    if (q.n >= 2.0 * q.m)
      c.require(g > 0.0, "gamma must be positive for n >= 2m");
    else
      c.require(g >= 1.0 - 0.5 * q.n / q.m,
                "gamma = " + num(g) + " must be >= 1 - n/(2m) = " + num(1.0 - 0.5 * q.n / q.m));
  }
  check_theta(c, q);
  if (!c.ok()) return fail(cert, c);
  double g = *q.gamma_moment;
  double alpha = g + 0.5 * q.n / q.m;
  double constant = symbol_constant(q.n, q.m, alpha, *q.theta, &cert.notes);
  return finish(cert, c, g, constant, norms.q_moment);
}

struct SharpenPlan {
  Sharpening route = Sharpening::None;
  int dim = 1;
  double power = 1.0;
  bool young_alpha = false;  // include A_alpha (sharp Young) besides A_beta, A_gamma'
  double r_eff = kInf, s_eff = kInf;
};

std::optional<SharpenPlan> sharpen_plan(TheoremId id, const ProblemParams& q) {
  SharpenPlan plan;
  double g = q.gamma_moment.value_or(0.0);
  switch (id) {
    case TheoremId::RES1:
      plan = {Sharpening::BecknerYoung, 3, q.alpha_convolution(), true, q.r, q.s};
      break;
    case TheoremId::COR1:
      plan = {Sharpening::BecknerYoung, 3, q.r, true, q.r, q.r};
      break;
    case TheoremId::CORQ1:
      plan = {Sharpening::BecknerYoung, 3, g + 1.5, true, 2.0 * g + 3.0, 2.0 * g + 3.0};
      break;
    case TheoremId::CORQ2:
      plan = {Sharpening::BecknerYoung, 3, q.r, true, q.r, q.r};
      break;
    case TheoremId::RES2:
      plan = {Sharpening::BecknerYoung, q.n, 1.0, true, q.r, q.s};
      break;
    case TheoremId::CORRES21:
      plan = {Sharpening::BecknerYoung, q.n, q.r, true, q.r, q.r};
      break;
    case TheoremId::CORRES22:
      plan = {Sharpening::BecknerYoung, q.n, g + 0.5 * q.n, true, 2.0 * g + q.n, 2.0 * g + q.n};
      break;
    case TheoremId::CORRES2W:
      plan = {Sharpening::BecknerYoung, q.n, q.r, true, q.r, q.r};
      break;
    case TheoremId::RES3:
      plan = {Sharpening::BabenkoHausdorffYoung, q.n, 1.0, false, q.r, q.s};
      plan.s_eff = kInf;  // single transform: only A_beta enters
      break;
    case TheoremId::CORIM:
      plan = {Sharpening::BabenkoHausdorffYoung, q.n, 1.0, false, q.r, kInf};
      break;
    case TheoremId::CORIM1:
      plan = {Sharpening::BabenkoHausdorffYoung, q.n, g + 0.5 * q.n, false, 2.0 * g + q.n, kInf};
      break;
    case TheoremId::RESULT4:
      plan = {Sharpening::BabenkoHausdorffYoung, q.n, q.alpha_fourier(), false, q.r, q.s};
      break;
    case TheoremId::CORGEN:
      plan = {Sharpening::BabenkoHausdorffYoung, q.n, g + 0.5 * q.n, false, 2.0 * g + q.n,
              2.0 * g + q.n};
      break;
    case TheoremId::RESULT5:
      plan = {Sharpening::BabenkoHausdorffYoung, q.n, q.alpha_fourier(), false, q.r, q.s};
      break;
    case TheoremId::RESULT6:
      plan = {Sharpening::BabenkoHausdorffYoung, q.n, q.alpha_fourier(), false, q.r, q.s};
      break;
    case TheoremId::CORRES6:
      plan = {Sharpening::BabenkoHausdorffYoung, q.n, g + 0.5 * q.n / q.m, false,
              2.0 * g + q.n / q.m, 2.0 * g + q.n / q.m};
      break;
    case TheoremId::RELAM1:
      return std::nullopt;
  }
  return plan;
}

}  // namespace

double ProblemParams::inv_r() const { return std::isinf(r) ? 0.0 : 1.0 / r; }
double ProblemParams::inv_s() const { return std::isinf(s) ? 0.0 : 1.0 / s; }

double ProblemParams::alpha_convolution() const {
  double denom = 1.0 - inv_r() - inv_s();
  return denom > 0.0 ? 1.0 / denom : kInf;
}

double ProblemParams::alpha_fourier() const {
  double sum = inv_r() + inv_s();
  return sum > 0.0 ? 1.0 / sum : kInf;
}

double ProblemParams::alpha_imag() const { return 1.0 - 0.5 * n * (inv_r() + inv_s()); }

double ProblemParams::holder_beta() const { return 1.0 / (inv_r() + 1.0 / p); }

double ProblemParams::holder_gamma() const {
  double denom = 1.0 / p - inv_s();
  return denom > 0.0 ? 1.0 / denom : kInf;
}

std::string to_string(TheoremId id) {
  switch (id) {
    case TheoremId::RES1: return "RES1";
    case TheoremId::COR1: return "COR1";
    case TheoremId::CORQ1: return "CORQ1";
    case TheoremId::CORQ2: return "CORQ2";
    case TheoremId::RES2: return "RES2";
    case TheoremId::CORRES21: return "CORRES21";
    case TheoremId::CORRES22: return "CORRES22";
    case TheoremId::CORRES2W: return "CORRES2W";
    case TheoremId::RES3: return "RES3";
    case TheoremId::CORIM: return "CORIM";
    case TheoremId::CORIM1: return "CORIM1";
    case TheoremId::RESULT4: return "RESULT4";
    case TheoremId::RELAM1: return "RELAM1";
    case TheoremId::CORGEN: return "CORGEN";
    case TheoremId::RESULT5: return "RESULT5";
    case TheoremId::RESULT6: return "RESULT6";
    case TheoremId::CORRES6: return "CORRES6";
  }
  return "UNKNOWN";
}

std::optional<TheoremId> theorem_from_string(const std::string& name) {
  for (TheoremId id : kAllTheorems)
    if (to_string(id) == name) return id;
  return std::nullopt;
}

std::string to_string(SpectralMeasure m) {
  switch (m) {
    case SpectralMeasure::Modulus: return "MODULUS";
    case SpectralMeasure::NegRealPart: return "NEG_REAL_PART";
    case SpectralMeasure::AbsImagPart: return "ABS_IMAG_PART";
  }
  return "UNKNOWN";
}

std::string to_string(Sharpening s) {
  switch (s) {
    case Sharpening::None: return "NONE";
    case Sharpening::BecknerYoung: return "BECKNER_YOUNG";
    case Sharpening::BabenkoHausdorffYoung: return "BABENKO_HY";
  }
  return "UNKNOWN";
}

std::optional<double> BoundCertificate::radius() const {
  if (!admissible || !(exponent > 0.0)) return std::nullopt;
  return std::pow(constant * norm_product, 1.0 / exponent);
}

BoundCertificate certify(TheoremId id, const ProblemParams& params, const NormInputs& norms) {
  switch (id) {
    case TheoremId::RES1: return certify_res1_impl(params, norms);
    case TheoremId::COR1: return certify_cor1_impl(params, norms);
    case TheoremId::CORQ1: return certify_corq1_impl(params, norms);
    case TheoremId::CORQ2: return certify_corq2_impl(params, norms);
    case TheoremId::RES2: return certify_res2_impl(params, norms);
    case TheoremId::CORRES21: return certify_corres21_impl(params, norms);
    case TheoremId::CORRES22: return certify_corres22_impl(params, norms);
    case TheoremId::CORRES2W: return certify_corres2w_impl(params, norms);
    case TheoremId::RES3: return certify_res3_impl(params, norms);
    case TheoremId::CORIM: return certify_corim_impl(params, norms);
    case TheoremId::CORIM1: return certify_corim1_impl(params, norms);
    case TheoremId::RESULT4: return certify_result4_impl(params, norms);
    case TheoremId::RELAM1: return certify_relam1_impl(params, norms);
    case TheoremId::CORGEN: return certify_corgen_impl(params, norms);
    case TheoremId::RESULT5: return certify_result5_impl(params, norms);
    case TheoremId::RESULT6: return certify_result6_impl(params, norms);
    case TheoremId::CORRES6: return certify_corres6_impl(params, norms);
  }
  throw std::logic_error("certify: unknown theorem id");
}

BoundCertificate certify_res1(const ProblemParams& q, double norm_a, double norm_b) {
  NormInputs norms;
  norms.norm_a = norm_a;
  norms.norm_b = norm_b;
  return certify(TheoremId::RES1, q, norms);
}

BoundCertificate certify_cor_3d(const ProblemParams& q, const NormInputs& norms) {
  if (q.tau) return certify(TheoremId::CORQ2, q, norms);
  if (q.gamma_moment) return certify(TheoremId::CORQ1, q, norms);
  return certify(TheoremId::COR1, q, norms);
}

BoundCertificate certify_res2(const ProblemParams& q, const NormInputs& norms) {
  if (q.tau) return certify(TheoremId::CORRES2W, q, norms);
  if (q.gamma_moment) return certify(TheoremId::CORRES22, q, norms);
  if (near(q.inv_r(), q.inv_s()) && std::isfinite(q.r))
    return certify(TheoremId::CORRES21, q, norms);
  return certify(TheoremId::RES2, q, norms);
}

BoundCertificate certify_res3(const ProblemParams& q, double norm_a, double norm_b) {
  NormInputs norms;
  norms.norm_a = norm_a;
  norms.norm_b = norm_b;
  return certify(TheoremId::RES3, q, norms);
}

BoundCertificate certify_result4(const ProblemParams& q, double norm_a, double norm_b) {
  NormInputs norms;
  norms.norm_a = norm_a;
  norms.norm_b = norm_b;
  if (std::isinf(q.r) && std::isinf(q.s)) return certify(TheoremId::RELAM1, q, norms);
  return certify(TheoremId::RESULT4, q, norms);
}

BoundCertificate certify_result5(const ProblemParams& q, double norm_a, double norm_b) {
  NormInputs norms;
  norms.norm_a = norm_a;
  norms.norm_b = norm_b;
  return certify(TheoremId::RESULT5, q, norms);
}

BoundCertificate certify_result6(const ProblemParams& q, double norm_a, double norm_b) {
  NormInputs norms;
  norms.norm_a = norm_a;
  norms.norm_b = norm_b;
  return certify(TheoremId::RESULT6, q, norms);
}

BoundCertificate sharpen(const BoundCertificate& cert, const ProblemParams& params) {
  if (!cert.admissible) return cert;
  auto plan = sharpen_plan(cert.theorem, params);
  BoundCertificate out = cert;
  if (!plan) {
    out.sharpening_factor = 1.0;
    return out;
  }
  ProblemParams eff = params;
  eff.r = plan->r_eff;
  eff.s = plan->s_eff;

  std::vector<double> indices;
  double beta = eff.holder_beta();
  indices.push_back(beta);
  if (plan->route == Sharpening::BecknerYoung || cert.theorem == TheoremId::RESULT4 ||
      cert.theorem == TheoremId::RESULT5 || cert.theorem == TheoremId::RESULT6 ||
      cert.theorem == TheoremId::CORGEN || cert.theorem == TheoremId::CORRES6) {
    double gam = eff.holder_gamma();
    double gam_conj = conjugate_exponent(gam);
    indices.push_back(gam_conj);
  }
  if (plan->young_alpha) indices.push_back(eff.alpha_convolution());

  double base = 1.0;
  for (double idx : indices) {
    if (!(idx >= 1.0 - 1e-12 && idx <= 2.0 + 1e-12)) {
      out.sharpening_factor = 1.0;
      out.notes.push_back("sharpening refused: exponent " + num(idx) +
                          " lies outside the sharp-constant window [1, 2]");
      return out;
    }
    base *= specfun::babenko_factor(std::min(2.0, std::max(1.0, idx)));
  }
  double factor = std::pow(std::pow(base, plan->dim), plan->power);
  out.constant *= factor;
  out.sharpening = plan->route;
  out.sharpening_factor = factor;
  return out;
}

std::vector<TheoremStatus> applicable_theorems(const ProblemParams& params) {
  std::vector<TheoremStatus> out;
  NormInputs dummy;
  for (TheoremId id : kAllTheorems) {
    BoundCertificate cert = certify(id, params, dummy);
    TheoremStatus st;
    st.theorem = id;
    st.admissible = cert.admissible;
    st.violated_conditions = cert.violated_conditions;
    out.push_back(std::move(st));
  }
  return out;
}

std::vector<BoundCertificate> certify_over_thetas(TheoremId id, const ProblemParams& params,
                                                  const NormInputs& norms,
                                                  const std::vector<double>& thetas) {
  std::vector<BoundCertificate> out;
  out.reserve(thetas.size());
  ProblemParams q = params;
  for (double t : thetas) {
    q.theta = t;
    out.push_back(certify(id, q, norms));
  }
  return out;
}

}  // namespace specenc::bounds
