#pragma once

#include <complex>
#include <optional>

namespace specenc::kernels {

// A spectral point lambda = modulus * exp(i*theta) strictly off the essential
// spectrum ray [0, inf), i.e. theta in the open interval (0, 2*pi).
struct LambdaPolar {
  double modulus;
  double theta;

  LambdaPolar(double modulus, double theta);

  double re() const;
  double im() const;
  std::complex<double> value() const;
  // mu = -i sqrt(lambda) with the branch Im sqrt(lambda) > 0; Re mu > 0.
  std::complex<double> mu() const;
  double re_mu() const;  // sqrt(modulus) * sin(theta/2)
};

struct KernelNormResult {
  std::optional<double> closed_form;
  double quadrature = 0.0;
  double quadrature_error = 0.0;
  bool agreement = false;
};

// L^alpha norm of the free Green function exp(-mu|x|)/(4*pi*|x|) on R^3,
// 1 <= alpha < 3.  Closed form against an adaptive radial quadrature.
KernelNormResult green3d_norm(double alpha, const LambdaPolar& lambda);

// Laplace-transform bound for the heat-kernel route on R^n, n >= 3,
// 1 <= alpha < n/(n-2), Re(lambda) < 0.  The t-integral is a Gamma identity,
// so closed form and quadrature agree to rounding.
KernelNormResult heat_bound_norm(int n, double alpha, double re_lambda);

// L^alpha norm of the resolvent symbol (|xi|^(2m) - lambda)^(-1) on R^n,
// alpha > n/(2m).  Quadrature is authoritative; the Legendre-function closed
// form is reported when it is defined and agrees.  Within 1e-3 of the
// negative real axis the closed form is replaced by the quadrature value and
// agreement is measured against the real-axis formula.
KernelNormResult symbol_norm(int n, double m, double alpha, const LambdaPolar& lambda);

// sup-norm bound of the resolvent symbol: |Re lambda|^{-1} for Re lambda < 0.
double sup_symbol_norm(double re_lambda);

// Closed value of the symbol norm on the negative real axis
// (theta = pi, lambda = -modulus).
double symbol_norm_real_axis(int n, double m, double alpha, double modulus);

// Surface measure of the unit sphere S^{n-1}: 2 pi^{n/2} / Gamma(n/2).
double sphere_measure(int n);

}  // namespace specenc::kernels
