#include "specenc/pipeline.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <thread>

#include "specenc/kernels.hpp"
#include "specenc/specfun.hpp"

namespace specenc::pipeline {

namespace {

constexpr double kPi = 3.141592653589793238462643;
using bounds::BoundCertificate;
using bounds::NormInputs;
using bounds::ProblemParams;
using bounds::TheoremId;

bool is_modulus_theorem(TheoremId id) {
  switch (id) {
    case TheoremId::RES1:
    case TheoremId::COR1:
    case TheoremId::CORQ1:
    case TheoremId::CORQ2:
    case TheoremId::CORRES22:
    case TheoremId::RESULT5:
    case TheoremId::RESULT6:
    case TheoremId::CORRES6:
      return true;
    default:
      return false;
  }
}

double moment_exponent(TheoremId id, const ProblemParams& params) {
  double g = params.gamma_moment.value_or(0.0);
  switch (id) {
    case TheoremId::CORQ1: return g + 1.5;
    case TheoremId::CORRES22:
    case TheoremId::CORIM1:
    case TheoremId::CORGEN: return g + 0.5 * params.n;
    case TheoremId::CORRES6: return g + 0.5 * params.n / params.m;
    default: return 0.0;
  }
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

pipeline::CheckItem make_check(const std::string& name, double lhs, double rhs, double tol) {
  pipeline::CheckItem item;
  item.name = name;
  item.lhs = lhs;
  item.rhs = rhs;
  item.tolerance = tol;
  item.pass = std::fabs(lhs - rhs) <= tol * std::max({std::fabs(lhs), std::fabs(rhs), 1e-300});
  return item;
}

}  // namespace

int worker_count() {
  if (const char* env = std::getenv("SPECENC_WORKERS")) {
    int n = std::atoi(env);
    if (n >= 1) return std::min(n, 64);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(std::min(hw, 16u));
}

void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& f) {
  if (n == 0) return;
  workers = std::max(1, std::min<int>(workers, static_cast<int>(n)));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) f(i);
    });
  }
  for (auto& t : pool) t.join();
}

NormInputs norms_for(TheoremId id, const ProblemParams& params,
                     const potentials::PotentialSpec& pot) {
  NormInputs norms;
  switch (id) {
    case TheoremId::RES1:
    case TheoremId::COR1:
    case TheoremId::RES2:
    case TheoremId::CORRES21:
    case TheoremId::RES3:
    case TheoremId::RESULT4:
    case TheoremId::RELAM1:
    case TheoremId::RESULT5:
    case TheoremId::RESULT6: {
      auto [a, b] = potentials::factorize(pot);
      if (pot.factorization.rule == potentials::FactorizationRule::Weighted) {
        norms.norm_a = potentials::weight_norm_closed(params.n, pot.factorization.tau, params.r).value;
        norms.norm_b = potentials::lp_norm(pot.q, params.s, pot.factorization.tau).value;
      } else {
        norms.norm_a = potentials::lp_norm(a, params.r).value;
        norms.norm_b = potentials::lp_norm(b, params.s).value;
      }
      break;
    }
    case TheoremId::CORQ1:
    case TheoremId::CORRES22:
    case TheoremId::CORIM1:
    case TheoremId::CORGEN:
    case TheoremId::CORRES6: {
      double t = moment_exponent(id, params);
      if (t > 0.0) {
        double norm = potentials::lp_norm(pot.q, t).value;
        norms.q_moment = std::pow(norm, t);
      }
      break;
    }
    case TheoremId::CORQ2:
    case TheoremId::CORRES2W: {
      if (params.tau) {
        double norm = potentials::lp_norm(pot.q, params.r, *params.tau).value;
        norms.weighted_moment = std::pow(norm, params.r);
      }
      break;
    }
    case TheoremId::CORIM: {
      norms.q_norm = potentials::lp_norm(pot.q, 0.5 * params.r).value;
      break;
    }
  }
  return norms;
}

CertificateBundle evaluate_certificates(const ProblemParams& params,
                                        const potentials::PotentialSpec& pot,
                                        const std::vector<double>& theta_grid,
                                        bool apply_sharpening, int workers) {
  CertificateBundle bundle;
  bundle.statuses = bounds::applicable_theorems(params);

  for (TheoremId id : bounds::kAllTheorems) {
    NormInputs norms;
    try {
      norms = norms_for(id, params, pot);
    } catch (const std::exception& e) {
      BoundCertificate cert;
      cert.theorem = id;
      cert.admissible = false;
      cert.violated_conditions.push_back(std::string("norm evaluation failed: ") + e.what());
      bundle.pointwise.push_back(std::move(cert));
      continue;
    }

    BoundCertificate at_params = bounds::certify(id, params, norms);
    if (apply_sharpening && at_params.admissible)
      at_params = bounds::sharpen(at_params, params);
    bundle.pointwise.push_back(at_params);

    if (!is_modulus_theorem(id)) {
      if (at_params.admissible) bundle.scalar.push_back(at_params);
      continue;
    }

    if (theta_grid.empty()) continue;
    // probe on the negative real axis: theta-independent conditions decide
    ProblemParams probe = params;
    probe.theta = kPi;
    if (!bounds::certify(id, probe, norms).admissible) continue;

    regions::CertificateCurve curve;
    curve.id = id;
    curve.at_theta.resize(theta_grid.size());
    parallel_for(theta_grid.size(), workers, [&](std::size_t i) {
      ProblemParams local = params;
      local.theta = theta_grid[i];
      BoundCertificate cert = bounds::certify(id, local, norms);
      if (apply_sharpening && cert.admissible) cert = bounds::sharpen(cert, local);
      curve.at_theta[i] = std::move(cert);
    });
    bundle.curves.push_back(std::move(curve));
  }
  return bundle;
}

regions::EnclosureRegion region_from(const CertificateBundle& bundle,
                                     const std::vector<double>& theta_grid) {
  return regions::build_region(bundle.scalar, bundle.curves, theta_grid);
}

ValidationOutcome run_validation(const ProblemParams& params,
                                 const potentials::PotentialSpec& pot,
                                 const oracle::Discretization& disc, double m,
                                 const std::vector<double>& theta_grid, bool apply_sharpening,
                                 int workers) {
  ValidationOutcome outcome;
  CertificateBundle bundle =
      evaluate_certificates(params, pot, theta_grid, apply_sharpening, workers);
  outcome.region = region_from(bundle, theta_grid);
  outcome.spectrum = oracle::compute_spectrum(pot, disc, m);

  std::vector<std::optional<oracle::BirmanSchwingerReport>> bs;
  bool bs_possible = std::fabs(m - 1.0) <= 1e-12;
  std::optional<std::pair<potentials::Field, potentials::Field>> split;
  if (bs_possible) split = potentials::factorize(pot);
  for (std::size_t i = 0; i < outcome.spectrum.eigenvalues.size(); ++i) {
    if (!outcome.spectrum.discrete_candidate[i]) continue;
    std::optional<oracle::BirmanSchwingerReport> entry;
    if (bs_possible) {
      try {
        entry = oracle::birman_schwinger_norm(split->first, split->second,
                                              outcome.spectrum.eigenvalues[i], disc);
      } catch (const std::exception&) {
        entry.reset();
      }
    }
    bs.push_back(entry);
  }

  outcome.verdicts = oracle::verify_certificates(outcome.spectrum, outcome.region, bs);
  bool any_candidate = !outcome.verdicts.empty();
  outcome.region_usable = outcome.region.has_enclosure || !any_candidate;
  outcome.all_enclosed = outcome.region_usable;
  for (const auto& v : outcome.verdicts) outcome.all_enclosed = outcome.all_enclosed && v.inside;
  return outcome;
}

std::vector<CheckItem> agreement_grid_checks() {
  std::vector<CheckItem> items;

  // resolvent-symbol norms: closed Legendre form vs quadrature, and the
  // real-axis closed form at theta = pi
  const int dims[] = {1, 2, 3, 5};
  const double orders[] = {0.5, 1.0, 2.0};
  const double offsets[] = {0.35, 0.8, 1.4, 2.3, 3.5};
  const std::pair<const char*, double> angles[] = {
      {"pi/6", kPi / 6.0}, {"pi/2", kPi / 2.0}, {"pi", kPi}, {"3pi/2", 1.5 * kPi}};
  for (int n : dims) {
    for (double m : orders) {
      double nu = 0.5 * n / m;
      for (double off : offsets) {
        double alpha = nu + off;
        for (const auto& [label, theta] : angles) {
          kernels::KernelNormResult sym =
              kernels::symbol_norm(n, m, alpha, kernels::LambdaPolar(1.0, theta));
          std::string name = "symbol n=" + std::to_string(n) + " m=" + fmt(m) +
                             " alpha=" + fmt(alpha) + " theta=" + label;
          double closed = sym.closed_form ? *sym.closed_form : sym.quadrature;
          CheckItem item = make_check(name, closed, sym.quadrature,
                                      std::max(1e-8, 10.0 * sym.quadrature_error /
                                                         std::max(sym.quadrature, 1e-300)));
          item.pass = item.pass && sym.agreement;
          items.push_back(item);
          if (std::fabs(theta - kPi) < 1e-12) {
            double axis = kernels::symbol_norm_real_axis(n, m, alpha, 1.0);
            items.push_back(make_check(name + " vs real-axis closed form", axis, sym.quadrature,
                                       1e-8));
          }
        }
      }
    }
  }

  // 3-d Green function norms
  for (double alpha : {1.0, 1.5, 2.0, 2.5, 2.9}) {
    for (const auto& [label, theta] : angles) {
      auto g = kernels::green3d_norm(alpha, kernels::LambdaPolar(1.0, theta));
      CheckItem item = make_check("green3d alpha=" + fmt(alpha) + " theta=" + std::string(label),
                                  *g.closed_form, g.quadrature, 1e-8);
      item.pass = item.pass && g.agreement;
      items.push_back(item);
    }
  }

  // heat-kernel Laplace bound (Re lambda < 0)
  const double heat_alphas3[] = {1.0, 1.4, 1.9, 2.4, 2.9};
  const double heat_alphas5[] = {1.0, 1.15, 1.3, 1.45, 1.6};
  for (double re : {-0.5, -1.0, -3.0}) {
    for (double alpha : heat_alphas3) {
      auto h = kernels::heat_bound_norm(3, alpha, re);
      CheckItem item = make_check("heat n=3 alpha=" + fmt(alpha) + " re=" + fmt(re),
                                  *h.closed_form, h.quadrature, 1e-8);
      item.pass = item.pass && h.agreement;
      items.push_back(item);
    }
    for (double alpha : heat_alphas5) {
      auto h = kernels::heat_bound_norm(5, alpha, re);
      CheckItem item = make_check("heat n=5 alpha=" + fmt(alpha) + " re=" + fmt(re),
                                  *h.closed_form, h.quadrature, 1e-8);
      item.pass = item.pass && h.agreement;
      items.push_back(item);
    }
  }
  return items;
}

std::vector<CheckItem> corollary_consistency_checks() {
  std::vector<CheckItem> items;
  auto radius_of = [](const BoundCertificate& cert) {
    auto r = cert.radius();
    return r ? *r : std::numeric_limits<double>::quiet_NaN();
  };

  // COR1 vs RES1 and CORQ1 vs COR1 on a small parameter grid
  for (double r : {4.0, 5.5, 9.0}) {
    for (double theta : {kPi / 2.0, kPi, 4.4}) {
      ProblemParams q;
      q.n = 3;
      q.p = 2.0;
      q.r = q.s = r;
      q.theta = theta;
      NormInputs norms;
      norms.norm_a = 1.31;
      norms.norm_b = 0.64;
      items.push_back(make_check("COR1=RES1 r=" + fmt(r) + " theta=" + fmt(theta),
                                 radius_of(bounds::certify(TheoremId::COR1, q, norms)),
                                 radius_of(bounds::certify(TheoremId::RES1, q, norms)), 1e-12));
    }
  }
  for (double g : {0.5, 1.0, 2.2}) {
    double r = 2.0 * g + 3.0;
    ProblemParams q;
    q.n = 3;
    q.p = 2.0;
    q.r = q.s = r;
    q.theta = 2.4;
    q.gamma_moment = g;
    double moment = 0.83;
    NormInputs nm;
    nm.q_moment = moment;
    NormInputs nn;
    nn.norm_a = nn.norm_b = std::pow(moment, 0.5 / (g + 1.5));
    items.push_back(make_check("CORQ1=COR1 gamma=" + fmt(g),
                               radius_of(bounds::certify(TheoremId::CORQ1, q, nm)),
                               radius_of(bounds::certify(TheoremId::COR1, q, nn)), 1e-12));
  }

  // CORQ2 vs COR1 with the closed weight norm as ||a||
  {
    ProblemParams q;
    q.n = 3;
    q.p = 2.0;
    q.r = q.s = 4.0;
    q.tau = 2.0;
    q.theta = kPi;
    double weighted = 2.9;
    NormInputs nw;
    nw.weighted_moment = weighted;
    NormInputs nn;
    nn.norm_a = potentials::weight_norm_closed(3, 2.0, 4.0).value;
    nn.norm_b = std::pow(weighted, 0.25);
    items.push_back(make_check("CORQ2=COR1 tau=2 r=4",
                               radius_of(bounds::certify(TheoremId::CORQ2, q, nw)),
                               radius_of(bounds::certify(TheoremId::COR1, q, nn)), 1e-12));
  }

  // heat-route family
  for (double r : {8.0, 12.0}) {
    ProblemParams q;
    q.n = 3;
    q.p = 2.0;
    q.r = q.s = r;
    NormInputs norms;
    norms.norm_a = 0.7;
    norms.norm_b = 1.9;
    items.push_back(make_check("CORRES21=RES2 r=" + fmt(r),
                               radius_of(bounds::certify(TheoremId::CORRES21, q, norms)),
                               radius_of(bounds::certify(TheoremId::RES2, q, norms)), 1e-12));
  }
  {
    double g = 1.3;
    ProblemParams q;
    q.n = 3;
    q.p = 2.0;
    q.r = q.s = 2.0 * g + 3.0;
    q.gamma_moment = g;
    q.theta = 0.85 * kPi;
    double moment = 1.7;
    NormInputs nm;
    nm.q_moment = moment;
    NormInputs nn;
    nn.norm_a = nn.norm_b = std::pow(moment, 0.5 / (g + 1.5));
    double c21 = radius_of(bounds::certify(TheoremId::CORRES21, q, nn));
    double c22 = radius_of(bounds::certify(TheoremId::CORRES22, q, nm));
    items.push_back(
        make_check("CORRES22=CORRES21/|cos| gamma=1.3", c22,
                   c21 / std::fabs(std::cos(*q.theta)), 1e-12));
  }
  {
    ProblemParams q;
    q.n = 3;
    q.p = 2.0;
    q.r = q.s = 4.0;
    q.tau = 2.0;
    double weighted = 0.55;
    NormInputs nw;
    nw.weighted_moment = weighted;
    NormInputs nn;
    nn.norm_a = potentials::weight_norm_closed(3, 2.0, 4.0).value;
    nn.norm_b = std::pow(weighted, 0.25);
    items.push_back(make_check("CORRES2W=CORRES21 tau=2 r=4",
                               radius_of(bounds::certify(TheoremId::CORRES2W, q, nw)),
                               radius_of(bounds::certify(TheoremId::CORRES21, q, nn)), 1e-12));
  }

  // imaginary-part family
  {
    ProblemParams q;
    q.n = 3;
    q.p = 2.0;
    q.r = q.s = 5.0;
    double qn = 1.27;  // ||q||_{r/2}
    NormInputs nq;
    nq.q_norm = qn;
    NormInputs nn;
    nn.norm_a = nn.norm_b = std::sqrt(qn);
    items.push_back(make_check("CORIM=RES3 r=5",
                               radius_of(bounds::certify(TheoremId::CORIM, q, nq)),
                               radius_of(bounds::certify(TheoremId::RES3, q, nn)), 1e-12));
    double g = 1.0;
    ProblemParams q1;
    q1.n = 3;
    q1.p = 2.0;
    q1.r = q1.s = 2.0 * g + 3.0;
    q1.gamma_moment = g;
    double moment = 0.44;
    NormInputs nm;
    nm.q_moment = moment;
    NormInputs nq2;
    nq2.q_norm = std::pow(moment, 1.0 / (g + 1.5));
    items.push_back(make_check("CORIM1=CORIM gamma=1",
                               radius_of(bounds::certify(TheoremId::CORIM1, q1, nm)),
                               radius_of(bounds::certify(TheoremId::CORIM, q1, nq2)), 1e-12));
  }

  // Fourier-route family
  {
    double g = 0.9;
    ProblemParams q;
    q.n = 2;
    q.p = 2.0;
    q.r = q.s = 2.0 * g + 2.0;
    q.gamma_moment = g;
    double moment = 3.3;
    NormInputs nm;
    nm.q_moment = moment;
    NormInputs nn;
    nn.norm_a = nn.norm_b = std::pow(moment, 0.5 / (g + 1.0));
    items.push_back(make_check("CORGEN=RESULT4 gamma=0.9",
                               radius_of(bounds::certify(TheoremId::CORGEN, q, nm)),
                               radius_of(bounds::certify(TheoremId::RESULT4, q, nn)), 1e-12));
  }
  {
    double g = 1.1, m = 2.0;
    int n = 1;
    ProblemParams q;
    q.n = n;
    q.p = 2.0;
    q.m = m;
    q.r = q.s = 2.0 * g + n / m;
    q.gamma_moment = g;
    q.theta = 0.7 * kPi;
    double moment = 0.91;
    NormInputs nm;
    nm.q_moment = moment;
    NormInputs nn;
    nn.norm_a = nn.norm_b = std::pow(moment, 0.5 / (g + 0.5 * n / m));
    items.push_back(make_check("CORRES6=RESULT6 gamma=1.1 m=2",
                               radius_of(bounds::certify(TheoremId::CORRES6, q, nm)),
                               radius_of(bounds::certify(TheoremId::RESULT6, q, nn)), 1e-10));
  }

  // theta = pi and m = 1 cross-validations
  for (int n : {1, 3}) {
    ProblemParams q;
    q.n = n;
    q.p = 2.0;
    q.r = q.s = (n == 3) ? 8.0 : 3.0;
    q.theta = kPi;
    NormInputs norms;
    norms.norm_a = 1.0;
    norms.norm_b = 1.0;
    auto r4 = bounds::certify(TheoremId::RESULT4, q, norms);
    auto r5 = bounds::certify(TheoremId::RESULT5, q, norms);
    items.push_back(make_check("RESULT5(pi)=RESULT4 n=" + std::to_string(n), r5.constant,
                               r4.constant, 1e-8));
  }
  for (double theta : {kPi / 6.0, kPi / 2.0, kPi, 1.4 * kPi}) {
    ProblemParams q;
    q.n = 3;
    q.p = 2.0;
    q.r = q.s = 8.0;
    q.theta = theta;
    NormInputs norms;
    norms.norm_a = 1.0;
    norms.norm_b = 1.0;
    auto r5 = bounds::certify(TheoremId::RESULT5, q, norms);
    auto r6 = bounds::certify(TheoremId::RESULT6, q, norms);
    items.push_back(make_check("RESULT6(m=1)=RESULT5 theta=" + fmt(theta), r6.constant,
                               r5.constant, 1e-8));
  }
  return items;
}

}  // namespace specenc::pipeline
