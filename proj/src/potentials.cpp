#include "specenc/potentials.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "specenc/kernels.hpp"
#include "specenc/quadrature.hpp"
#include "specenc/specfun.hpp"

namespace specenc::potentials {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Complex sign_of(Complex q) {
  double a = std::abs(q);
  return a == 0.0 ? Complex(0.0, 0.0) : q / a;
}

// Windowed integral of f over (0, inf) for integrands that eventually decay:
// adaptive panels on [2^k, 2^(k+1)) until the running contribution drops
// below 1e-14 of the accumulated value.  Contributions that stop decreasing
// signal a divergent integral.
struct TailIntegral {
  double value = 0.0;
  double error = 0.0;
};

TailIntegral integrate_decaying(const std::function<double(double)>& f, const std::string& what) {
  TailIntegral out;
  quad::QuadResult head = quad::integrate(f, 0.0, 1.0, 1e-13, 1e-11);
  out.value = head.value;
  out.error = head.abs_error;
  double lo = 1.0;
  double prev = kInf;
  int flat_streak = 0;
  for (int window = 0; window < 3000; ++window) {
    double hi = 2.0 * lo;
    quad::QuadResult part = quad::integrate(f, lo, hi, 1e-13, 1e-11);
    out.value += part.value;
    out.error += part.abs_error;
    double contribution = std::fabs(part.value);
    if (window > 4 && contribution > 0.0) {
      if (contribution >= 0.995 * prev) {
        if (++flat_streak >= 8)
          throw DivergenceError(what + ": tail contributions are not decreasing (divergent norm)");
      } else {
        flat_streak = 0;
      }
    }
    if (contribution <= 1e-14 * std::max(std::fabs(out.value), 1e-300) && window > 2) {
      // geometric tail estimate from the observed decay ratio
      double ratio = prev > 0.0 ? std::min(0.9, contribution / prev) : 0.5;
      out.error += contribution * ratio / (1.0 - ratio);
      return out;
    }
    prev = contribution;
    lo = hi;
  }
  throw DivergenceError(what + ": tail did not converge within the window budget");
}

double weight_at(double rho2, std::optional<double> tau) {
  return tau ? std::pow(1.0 + rho2, 0.5 * *tau) : 1.0;
}

NormReport finish_power_integral(double integral, double error, double exponent, NormMethod method) {
  NormReport rep;
  rep.exponent = exponent;
  rep.method = method;
  rep.value = std::pow(integral, 1.0 / exponent);
  rep.error_estimate =
      integral > 0.0 ? rep.value / exponent * error / integral : std::pow(error, 1.0 / exponent);
  return rep;
}

double sup_on_radial(const Field& f, std::optional<double> tau) {
  // coarse geometric scan, then local refinement around the maximum
  double best = 0.0, best_r = 0.0;
  for (int k = 0; k < 4096; ++k) {
    double rho = 64.0 * k / 4095.0;
    double v = std::abs(f.radial_profile(rho)) * weight_at(rho * rho, tau);
    if (v > best) {
      best = v;
      best_r = rho;
    }
  }
  double lo = std::max(0.0, best_r - 0.1), hi = best_r + 0.1;
  for (int pass = 0; pass < 3; ++pass) {
    double step = (hi - lo) / 512.0;
    for (int k = 0; k <= 512; ++k) {
      double rho = lo + k * step;
      double v = std::abs(f.radial_profile(rho)) * weight_at(rho * rho, tau);
      if (v > best) {
        best = v;
        best_r = rho;
      }
    }
    lo = std::max(0.0, best_r - 4.0 * step);
    hi = best_r + 4.0 * step;
  }
  return best;
}

NormReport grid_norm(const Field& f, double exponent, std::optional<double> tau) {
  const GridData& g = *f.grid_data();
  int dim = f.dimension();
  NormReport rep;
  rep.exponent = exponent;
  rep.method = NormMethod::GridSum;

  auto point_weight = [&](std::size_t flat) {
    if (!tau) return 1.0;
    double rho2 = 0.0;
    std::size_t rest = flat;
    for (int axis = dim - 1; axis >= 0; --axis) {
      int idx = static_cast<int>(rest % g.counts[axis]);
      rest /= g.counts[axis];
      double x = g.coordinate(axis, idx);
      rho2 += x * x;
    }
    return std::pow(1.0 + rho2, 0.5 * *tau);
  };

  if (std::isinf(exponent)) {
    double best = 0.0;
    for (std::size_t i = 0; i < g.samples.size(); ++i)
      best = std::max(best, std::abs(g.samples[i]) * point_weight(i));
    rep.value = best;
    rep.error_estimate = 0.0;
    return rep;
  }

  double cell = 1.0;
  for (int axis = 0; axis < dim; ++axis) cell *= 2.0 * g.half_width / g.counts[axis];

  double full = 0.0;
  for (std::size_t i = 0; i < g.samples.size(); ++i)
    full += std::pow(std::abs(g.samples[i]) * point_weight(i), exponent);
  full *= cell;

  // strided subsample as the coarse resolution for the error estimate
  double coarse = 0.0;
  std::size_t coarse_n = 0;
  std::vector<int> idx(dim, 0);
  bool done = false;
  while (!done) {
    bool strided = true;
    for (int a = 0; a < dim; ++a) strided = strided && idx[a] % 2 == 0;
    if (strided) {
      std::size_t flat = 0;
      for (int a = 0; a < dim; ++a) flat = flat * g.counts[a] + idx[a];
      coarse += std::pow(std::abs(g.samples[flat]) * point_weight(flat), exponent);
      ++coarse_n;
    }
    int a = dim - 1;
    while (a >= 0 && ++idx[a] == g.counts[a]) idx[a--] = 0;
    done = a < 0;
  }
  double volume = 1.0;
  for (int a = 0; a < dim; ++a) volume *= 2.0 * g.half_width;
  double coarse_integral = coarse_n > 0 ? coarse / coarse_n * volume : 0.0;

  double integral = full;
  double err = std::fabs(full - coarse_integral) / 3.0 + 1e-14 * std::fabs(full);
  return finish_power_integral(integral, err, exponent, NormMethod::GridSum);
}

}  // namespace

double GridData::coordinate(int axis, int index) const {
  double h = 2.0 * half_width / counts[axis];
  return -half_width + (index + 0.5) * h;
}

std::size_t GridData::total() const {
  std::size_t t = 1;
  for (int c : counts) t *= static_cast<std::size_t>(c);
  return t;
}

Field Field::radial(int dimension, std::function<Complex(double)> profile) {
  Field f;
  f.dimension_ = dimension;
  f.repr_ = Radial{std::move(profile)};
  return f;
}

Field Field::separable(int dimension, std::vector<std::function<Complex(double)>> axes) {
  if (static_cast<int>(axes.size()) != dimension)
    throw std::invalid_argument("Field::separable: need one profile per axis");
  Field f;
  f.dimension_ = dimension;
  f.repr_ = Separable{std::move(axes)};
  return f;
}

Field Field::grid(int dimension, GridData data) {
  if (static_cast<int>(data.counts.size()) != dimension)
    throw std::invalid_argument("Field::grid: counts size must match dimension");
  for (int c : data.counts)
    if (c < 8) throw std::invalid_argument("Field::grid: need at least 8 samples per axis");
  if (!(data.half_width > 0.0))
    throw std::invalid_argument("Field::grid: half_width must be positive");
  if (data.samples.size() != data.total())
    throw std::invalid_argument("Field::grid: sample count does not match axis counts");
  Field f;
  f.dimension_ = dimension;
  f.repr_ = std::move(data);
  return f;
}

Field Field::pointwise(int dimension, std::function<Complex(const std::vector<double>&)> fn) {
  Field f;
  f.dimension_ = dimension;
  f.repr_ = Pointwise{std::move(fn)};
  return f;
}

bool Field::is_radial() const { return std::holds_alternative<Radial>(repr_); }
bool Field::is_separable() const { return std::holds_alternative<Separable>(repr_); }
bool Field::is_grid() const { return std::holds_alternative<GridData>(repr_); }

const GridData* Field::grid_data() const { return std::get_if<GridData>(&repr_); }

Complex Field::radial_profile(double rho) const {
  return std::get<Radial>(repr_).profile(rho);
}

Complex Field::axis_profile(int axis, double x) const {
  return std::get<Separable>(repr_).axes[axis](x);
}

Complex Field::eval(const std::vector<double>& x) const {
  if (static_cast<int>(x.size()) != dimension_)
    throw std::invalid_argument("Field::eval: point dimension mismatch");
  if (auto* r = std::get_if<Radial>(&repr_)) {
    double rho2 = 0.0;
    for (double v : x) rho2 += v * v;
    return r->profile(std::sqrt(rho2));
  }
  if (auto* s = std::get_if<Separable>(&repr_)) {
    Complex prod = 1.0;
    for (int a = 0; a < dimension_; ++a) prod *= s->axes[a](x[a]);
    return prod;
  }
  if (auto* g = std::get_if<GridData>(&repr_)) {
    // nearest-sample lookup (grid data is used on its own lattice)
    std::size_t flat = 0;
    for (int a = 0; a < dimension_; ++a) {
      double h = 2.0 * g->half_width / g->counts[a];
      int idx = static_cast<int>(std::floor((x[a] + g->half_width) / h));
      idx = std::clamp(idx, 0, g->counts[a] - 1);
      flat = flat * g->counts[a] + static_cast<std::size_t>(idx);
    }
    return g->samples[flat];
  }
  return std::get<Pointwise>(repr_).f(x);
}

Field Field::map_radial_or_grid(std::function<Complex(Complex)> f) const {
  if (auto* r = std::get_if<Radial>(&repr_)) {
    auto base = r->profile;
    return Field::radial(dimension_, [base, f](double rho) { return f(base(rho)); });
  }
  if (auto* g = std::get_if<GridData>(&repr_)) {
    GridData data = *g;
    for (auto& s : data.samples) s = f(s);
    return Field::grid(dimension_, std::move(data));
  }
  auto self = *this;
  return Field::pointwise(dimension_,
                          [self, f](const std::vector<double>& x) { return f(self.eval(x)); });
}

std::string to_string(NormMethod m) {
  switch (m) {
    case NormMethod::Quadrature: return "QUADRATURE";
    case NormMethod::GridSum: return "GRID_SUM";
    case NormMethod::ClosedForm: return "CLOSED_FORM";
  }
  return "UNKNOWN";
}

NormReport lp_norm(const Field& f, double exponent, std::optional<double> weight_tau) {
  if (!(exponent > 0.0)) throw std::domain_error("lp_norm: exponent must be positive");
  int n = f.dimension();

  if (f.is_grid()) return grid_norm(f, exponent, weight_tau);

  if (std::isinf(exponent)) {
    NormReport rep;
    rep.exponent = exponent;
    rep.method = NormMethod::Quadrature;
    if (f.is_radial()) {
      rep.value = sup_on_radial(f, weight_tau);
    } else if (f.is_separable() && !weight_tau) {
      double prod = 1.0;
      for (int a = 0; a < n; ++a) {
        Field axis = Field::radial(1, [&f, a](double t) { return f.axis_profile(a, t); });
        // per-axis sup over both half lines
        Field axis_neg = Field::radial(1, [&f, a](double t) { return f.axis_profile(a, -t); });
        prod *= std::max(sup_on_radial(axis, std::nullopt), sup_on_radial(axis_neg, std::nullopt));
      }
      rep.value = prod;
    } else {
      throw std::invalid_argument("lp_norm: sup norm needs a radial, separable, or grid field");
    }
    rep.error_estimate = 1e-10 * std::max(1.0, rep.value);
    return rep;
  }

  if (f.is_radial()) {
    double surface = kernels::sphere_measure(n);
    auto integrand = [&f, exponent, weight_tau, n](double rho) {
      if (rho < 0.0) return 0.0;
      double v = std::abs(f.radial_profile(rho)) * weight_at(rho * rho, weight_tau);
      if (v == 0.0) return 0.0;
      return std::pow(rho, n - 1.0) * std::pow(v, exponent);
    };
    TailIntegral ti = integrate_decaying(integrand, "lp_norm(radial)");
    return finish_power_integral(surface * ti.value, surface * ti.error, exponent,
                                 NormMethod::Quadrature);
  }

  if (f.is_separable()) {
    if (weight_tau && n > 1)
      throw std::invalid_argument(
          "lp_norm: weighted norms of separable fields need n = 1, a radial, or a grid field");
    double integral = 1.0, rel_err = 0.0;
    for (int a = 0; a < n; ++a) {
      auto axis_abs = [&f, a, exponent, weight_tau](double t) {
        double v = std::abs(f.axis_profile(a, t)) * weight_at(t * t, weight_tau);
        return v == 0.0 ? 0.0 : std::pow(v, exponent);
      };
      TailIntegral pos = integrate_decaying([&axis_abs](double t) { return axis_abs(t); },
                                            "lp_norm(separable,+)");
      TailIntegral neg = integrate_decaying([&axis_abs](double t) { return axis_abs(-t); },
                                            "lp_norm(separable,-)");
      double part = pos.value + neg.value;
      integral *= part;
      rel_err += (pos.error + neg.error) / std::max(part, 1e-300);
    }
    return finish_power_integral(integral, rel_err * integral, exponent, NormMethod::Quadrature);
  }

  if (n == 1) {
    auto point_abs = [&f, exponent, weight_tau](double t) {
      double v = std::abs(f.eval({t})) * weight_at(t * t, weight_tau);
      return v == 0.0 ? 0.0 : std::pow(v, exponent);
    };
    TailIntegral pos = integrate_decaying(point_abs, "lp_norm(1d,+)");
    TailIntegral neg =
        integrate_decaying([&point_abs](double t) { return point_abs(-t); }, "lp_norm(1d,-)");
    return finish_power_integral(pos.value + neg.value, pos.error + neg.error, exponent,
                                 NormMethod::Quadrature);
  }
  throw std::invalid_argument("lp_norm: unsupported representation for this dimension");
}

NormReport weight_norm_closed(int n, double tau, double r) {
  NormReport rep;
  rep.exponent = r;
  rep.method = NormMethod::ClosedForm;
  if (std::isinf(r)) {
    rep.value = 1.0;  // the weight peaks at the origin
    rep.error_estimate = 0.0;
    return rep;
  }
  if (!(tau * r > n)) {
    std::ostringstream os;
    os << "weight_norm_closed: tau*r = " << tau * r << " must exceed n = " << n
       << " (norm diverges)";
    throw DivergenceError(os.str());
  }
  double trn = tau * r;
  double body = std::pow(3.141592653589793238462643, 0.5 * n) *
                specfun::gamma_fn(0.5 * (trn - n)).value / specfun::gamma_fn(0.5 * trn).value;
  rep.value = std::pow(body, 1.0 / r);
  rep.error_estimate = 1e-14 * std::max(1.0, rep.value);
  return rep;
}

std::pair<Field, Field> factorize(const PotentialSpec& pot) {
  const Factorization& fac = pot.factorization;
  switch (fac.rule) {
    case FactorizationRule::SqrtSign: {
      Field a = pot.q.map_radial_or_grid(
          [](Complex q) { return Complex(std::sqrt(std::abs(q)), 0.0); });
      Field b = pot.q.map_radial_or_grid(
          [](Complex q) { return sign_of(q) * std::sqrt(std::abs(q)); });
      return {std::move(a), std::move(b)};
    }
    case FactorizationRule::Weighted: {
      double tau = fac.tau;
      Field a = Field::radial(pot.dimension,
                              [tau](double rho) { return Complex(std::pow(1.0 + rho * rho, -0.5 * tau), 0.0); });
      const Field q = pot.q;
      int dim = pot.dimension;
      Field b = Field::pointwise(dim, [q, tau](const std::vector<double>& x) {
        double rho2 = 0.0;
        for (double v : x) rho2 += v * v;
        return std::pow(1.0 + rho2, 0.5 * tau) * q.eval(x);
      });
      if (q.is_radial()) {
        b = Field::radial(dim, [q, tau](double rho) {
          return std::pow(1.0 + rho * rho, 0.5 * tau) * q.radial_profile(rho);
        });
      } else if (q.is_grid()) {
        GridData data = *q.grid_data();
        for (std::size_t flat = 0; flat < data.samples.size(); ++flat) {
          std::size_t rest = flat;
          double rho2 = 0.0;
          for (int axis = dim - 1; axis >= 0; --axis) {
            int idx = static_cast<int>(rest % data.counts[axis]);
            rest /= data.counts[axis];
            double x = data.coordinate(axis, idx);
            rho2 += x * x;
          }
          data.samples[flat] *= std::pow(1.0 + rho2, 0.5 * tau);
        }
        b = Field::grid(dim, std::move(data));
      }
      return {std::move(a), std::move(b)};
    }
    case FactorizationRule::Explicit: {
      if (!fac.explicit_a || !fac.explicit_b)
        throw std::invalid_argument("factorize: explicit rule needs both callables");
      return {Field::pointwise(pot.dimension, fac.explicit_a),
              Field::pointwise(pot.dimension, fac.explicit_b)};
    }
  }
  throw std::logic_error("factorize: unknown rule");
}

GridData read_grid_file(std::istream& in, int& dimension_out) {
  std::string magic;
  int version = 0;
  if (!(in >> magic >> version) || magic != "specenc-grid" || version != 1)
    throw std::invalid_argument("grid file: expected header 'specenc-grid 1'");
  std::string key;
  GridData g;
  int dim = 0;
  if (!(in >> key >> dim) || key != "dim" || dim < 1 || dim > 3)
    throw std::invalid_argument("grid file: expected 'dim <1|2|3>'");
  if (!(in >> key) || key != "counts") throw std::invalid_argument("grid file: expected 'counts'");
  g.counts.resize(dim);
  for (int a = 0; a < dim; ++a)
    if (!(in >> g.counts[a]) || g.counts[a] < 8)
      throw std::invalid_argument("grid file: counts must be integers >= 8");
  if (!(in >> key >> g.half_width) || key != "half_width" || !(g.half_width > 0.0))
    throw std::invalid_argument("grid file: expected 'half_width <L>' with L > 0");
  g.samples.resize(g.total());
  for (std::size_t i = 0; i < g.samples.size(); ++i) {
    double re = 0.0, im = 0.0;
    if (!(in >> re >> im))
      throw std::invalid_argument("grid file: missing sample pair at row " + std::to_string(i));
    g.samples[i] = Complex(re, im);
  }
  dimension_out = dim;
  return g;
}

void write_grid_file(std::ostream& out, int dimension, const GridData& data) {
  out << "specenc-grid 1\n";
  out << "dim " << dimension << "\n";
  out << "counts";
  for (int c : data.counts) out << ' ' << c;
  out << "\n";
  out.precision(17);
  out << "half_width " << data.half_width << "\n";
  for (const Complex& s : data.samples) out << s.real() << ' ' << s.imag() << "\n";
}

}  // namespace specenc::potentials
