#pragma once

namespace specenc::specfun {

// Numeric result with an honest error estimate.  converged == true implies
// abs_error_estimate <= 1e-12 * max(1, |value|).
struct SpecfunResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  bool converged = false;
};

// Gamma function for x > 0 (Lanczos approximation, g = 7, 15 terms).
SpecfunResult gamma_fn(double x);

// log Gamma for x > 0.
double log_gamma(double x);

// Beta function B(x, y) = Gamma(x) Gamma(y) / Gamma(x + y), x, y > 0.
SpecfunResult beta_fn(double x, double y);

// Gauss hypergeometric 2F1(a, b; c; x) on 0 <= x < 1.  Direct series for
// x <= 1/2; the (1-x) linear transformation otherwise, with the logarithmic
// limit branch when c - a - b is within 1e-8 of an integer.
SpecfunResult hyp2f1(double a, double b, double c, double x);

// Ferrers function of the first kind P_degree^order(x) on -1 < x < 1,
// evaluated as ((1+x)/(1-x))^(order/2) 2F1(-deg, deg+1; 1-order; (1-x)/2)
// divided by Gamma(1-order).  Degree and order may be any reals for which
// 1-order is not a non-positive integer.
SpecfunResult legendre_p(double degree, double order, double x);

// Sharp Hausdorff-Young / Young constant A_p = (p^(1/p) / p'^(1/p'))^(1/2)
// for p in [1, 2]; A_p <= 1 with equality exactly at the endpoints.
double babenko_factor(double p);

// Digamma function for real x away from the poles 0, -1, -2, ...
double digamma(double x);

namespace testhooks {
// Relative perturbation applied to every legendre_p value.  Used by the
// selfcheck falsifiability test; must stay 0 in normal operation.
extern double legendre_perturbation;
}  // namespace testhooks

}  // namespace specenc::specfun
