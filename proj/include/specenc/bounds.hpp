#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace specenc::bounds {

constexpr double kInf = std::numeric_limits<double>::infinity();

enum class TheoremId {
  RES1,      // 3-d convolution bound on |lambda|, theta-dependent
  COR1,      // RES1 with r = s
  CORQ1,     // moment form, r = 2*gamma + 3
  CORQ2,     // weighted 3-d form, a = (1+|x|^2)^(-tau/2)
  RES2,      // heat-kernel bound on |Re lambda|, n >= 3
  CORRES21,  // RES2 with r = s
  CORRES22,  // moment form of RES2 converted to |lambda| through cos(theta)
  CORRES2W,  // weighted RES2
  RES3,      // oscillatory-group bound on |Im lambda|
  CORIM,     // RES3 with r = s (forces p = 2)
  CORIM1,    // moment form of RES3
  RESULT4,   // Fourier-multiplier bound on |Re lambda|
  RELAM1,    // bounded-potential branch r = s = infinity
  CORGEN,    // moment form of RESULT4
  RESULT5,   // theta-resolved Fourier bound on |lambda|
  RESULT6,   // polyharmonic generalization of RESULT5
  CORRES6,   // moment form of RESULT6
};

inline constexpr TheoremId kAllTheorems[] = {
    TheoremId::RES1,    TheoremId::COR1,     TheoremId::CORQ1,    TheoremId::CORQ2,
    TheoremId::RES2,    TheoremId::CORRES21, TheoremId::CORRES22, TheoremId::CORRES2W,
    TheoremId::RES3,    TheoremId::CORIM,    TheoremId::CORIM1,   TheoremId::RESULT4,
    TheoremId::RELAM1,  TheoremId::CORGEN,   TheoremId::RESULT5,  TheoremId::RESULT6,
    TheoremId::CORRES6,
};

std::string to_string(TheoremId id);
std::optional<TheoremId> theorem_from_string(const std::string& name);

enum class SpectralMeasure { Modulus, NegRealPart, AbsImagPart };
std::string to_string(SpectralMeasure m);

enum class Sharpening { None, BecknerYoung, BabenkoHausdorffYoung };
std::string to_string(Sharpening s);

// All scalar parameters of a bound instance.  r or s may be infinite;
// 1/infinity is read as 0 throughout.
struct ProblemParams {
  int n = 1;        // dimension
  double p = 2.0;   // Lebesgue index of the realization, 1 < p < infinity
  double r = kInf;  // exponent of the factor a
  double s = kInf;  // exponent of the factor b
  double m = 1.0;   // polyharmonic order
  std::optional<double> theta;         // arg(lambda) in (0, 2*pi)
  std::optional<double> tau;           // weight exponent
  std::optional<double> gamma_moment;  // moment-order gamma

  double inv_r() const;
  double inv_s() const;
  // (1 - 1/r - 1/s)^{-1}: the L^alpha class of the convolution kernel
  double alpha_convolution() const;
  // (1/r + 1/s)^{-1}: the L^alpha class of the resolvent symbol
  double alpha_fourier() const;
  // 1 - n(1/r + 1/s)/2: exponent of the imaginary-part bound
  double alpha_imag() const;
  // Hoelder exponents 1/beta = 1/r + 1/p, 1/gamma = 1/p - 1/s
  double holder_beta() const;
  double holder_gamma() const;

  bool operator==(const ProblemParams&) const = default;
};

// Norm data consumed by the certifiers.  Which fields a theorem reads is
// determined by its norm-product convention.
struct NormInputs {
  double norm_a = 0.0;           // ||a||_r
  double norm_b = 0.0;           // ||b||_s
  double q_norm = 0.0;           // ||q||_t (CORIM)
  double q_moment = 0.0;         // integral of |q|^t (moment corollaries)
  double weighted_moment = 0.0;  // integral of |(1+|x|^2)^{tau/2} q|^r
};

struct BoundCertificate {
  TheoremId theorem = TheoremId::RES1;
  SpectralMeasure measure = SpectralMeasure::Modulus;
  double exponent = 0.0;
  double constant = 0.0;
  double norm_product = 0.0;
  bool admissible = false;
  std::vector<std::string> violated_conditions;
  Sharpening sharpening = Sharpening::None;
  double sharpening_factor = 1.0;
  std::vector<std::string> notes;

  // (constant * norm_product)^(1/exponent); absent when inadmissible
  std::optional<double> radius() const;
};

struct TheoremStatus {
  TheoremId theorem;
  bool admissible = false;
  std::vector<std::string> violated_conditions;
};

// Evaluate a single theorem.  An inadmissible parameter set yields a
// certificate with admissible = false and the violated conditions listed.
BoundCertificate certify(TheoremId id, const ProblemParams& params, const NormInputs& norms);

// Spec-shaped entry points; the cor/res families dispatch on the parameter
// pattern (tau present -> weighted, gamma present -> moment form, r == s).
BoundCertificate certify_res1(const ProblemParams&, double norm_a, double norm_b);
BoundCertificate certify_cor_3d(const ProblemParams&, const NormInputs&);
BoundCertificate certify_res2(const ProblemParams&, const NormInputs&);
BoundCertificate certify_res3(const ProblemParams&, double norm_a, double norm_b);
BoundCertificate certify_result4(const ProblemParams&, double norm_a, double norm_b);
BoundCertificate certify_result5(const ProblemParams&, double norm_a, double norm_b);
BoundCertificate certify_result6(const ProblemParams&, double norm_a, double norm_b);

// Multiply the constant by the sharp Young (Beckner) or Hausdorff-Young
// (Babenko) factor when every involved index lies in [1, 2]; otherwise the
// certificate is returned unchanged with factor 1.
BoundCertificate sharpen(const BoundCertificate& cert, const ProblemParams& params);

// Admissibility of every theorem for the given parameters, ordered by id.
std::vector<TheoremStatus> applicable_theorems(const ProblemParams& params);

// Pointwise certificates over a theta grid (theta-independent theorems
// simply repeat).  Entries may be inadmissible, e.g. outside the CORRES22
// angular window.
std::vector<BoundCertificate> certify_over_thetas(TheoremId id, const ProblemParams& params,
                                                  const NormInputs& norms,
                                                  const std::vector<double>& thetas);

namespace testhooks {
// Multiplies every certificate constant; the validation loop must detect a
// corrupted value (falsifiability).  Must stay 1 in normal operation.
extern double constant_scale;
}  // namespace testhooks

}  // namespace specenc::bounds
