#pragma once

#include <complex>
#include <functional>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace specenc::potentials {

using Complex = std::complex<double>;

// Divergent norm integral detected (tail contributions stop decreasing).
struct DivergenceError : std::runtime_error {
  explicit DivergenceError(const std::string& what) : std::runtime_error(what) {}
};

struct GridData {
  double half_width = 0.0;
  std::vector<int> counts;       // samples per axis
  std::vector<Complex> samples;  // row-major over the axes

  // midpoint coordinate of sample index i along an axis
  double coordinate(int axis, int index) const;
  std::size_t total() const;
};

// A complex-valued function on R^n in one of four representations.
class Field {
 public:
  static Field radial(int dimension, std::function<Complex(double)> profile);
  static Field separable(int dimension, std::vector<std::function<Complex(double)>> axes);
  static Field grid(int dimension, GridData data);
  static Field pointwise(int dimension, std::function<Complex(const std::vector<double>&)> f);

  int dimension() const { return dimension_; }
  Complex eval(const std::vector<double>& x) const;

  bool is_radial() const;
  bool is_separable() const;
  bool is_grid() const;
  const GridData* grid_data() const;
  Complex radial_profile(double rho) const;
  Complex axis_profile(int axis, double x) const;

  // pointwise transform preserving the representation where possible
  // (radial/grid always; separable only for multiplicative transforms)
  Field map_radial_or_grid(std::function<Complex(Complex)> f) const;

 private:
  struct Radial {
    std::function<Complex(double)> profile;
  };
  struct Separable {
    std::vector<std::function<Complex(double)>> axes;
  };
  struct Pointwise {
    std::function<Complex(const std::vector<double>&)> f;
  };
  Field() = default;
  int dimension_ = 1;
  std::variant<Radial, Separable, GridData, Pointwise> repr_;
};

enum class FactorizationRule { SqrtSign, Weighted, Explicit };

struct Factorization {
  FactorizationRule rule = FactorizationRule::SqrtSign;
  double tau = 0.0;  // Weighted
  std::function<Complex(const std::vector<double>&)> explicit_a, explicit_b;
};

// A potential q on R^n together with its factorization rule q = a*b.
struct PotentialSpec {
  int dimension = 1;
  Field q;
  Factorization factorization;

  PotentialSpec(int dim, Field field, Factorization f = {})
      : dimension(dim), q(std::move(field)), factorization(std::move(f)) {}
};

enum class NormMethod { Quadrature, GridSum, ClosedForm };
std::string to_string(NormMethod m);

struct NormReport {
  double exponent = 0.0;
  double value = 0.0;
  double error_estimate = 0.0;
  NormMethod method = NormMethod::Quadrature;
};

// L^exponent norm of the field over R^n; exponent may be infinite (ess sup).
// With weight_tau set, the integrand is ((1+|x|^2)^{tau/2} |f|)^exponent.
// Radial fields reduce to a windowed radial quadrature with the surface
// factor 2 pi^{n/2} / Gamma(n/2); separable fields factor across axes; grid
// fields use midpoint sums with a two-resolution error estimate.
NormReport lp_norm(const Field& f, double exponent,
                   std::optional<double> weight_tau = std::nullopt);

// Closed form of ||(1+|x|^2)^{-tau/2}||_r on R^n: value^r =
// pi^{n/2} Gamma((tau r - n)/2) / Gamma(tau r / 2), requires tau*r > n.
NormReport weight_norm_closed(int n, double tau, double r);

// Split q = a*b according to the potential's factorization rule.
std::pair<Field, Field> factorize(const PotentialSpec& pot);

// Text grid-file format (see README): header lines "specenc-grid 1",
// "dim N", "counts c1 [c2 c3]", "half_width L", then one "re im" pair per
// sample, row-major.
GridData read_grid_file(std::istream& in, int& dimension_out);
void write_grid_file(std::ostream& out, int dimension, const GridData& data);

}  // namespace specenc::potentials
