#include "gftlab/verify_suite.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <variant>

#include "json.hpp"

#include "gftlab/errors.h"
#include "gftlab/labels.h"
#include "gftlab/loewner.h"
#include "gftlab/parallel.h"
#include "gftlab/sampling.h"
#include "gftlab/semigroup.h"
#include "gftlab/weights.h"

namespace gftlab {

using Json = nlohmann::ordered_json;

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

std::string to_string(Comparison c) {
  switch (c) {
    case Comparison::at_most: return "<=";
    case Comparison::at_least: return ">=";
    case Comparison::greater: return ">";
    case Comparison::less: return "<";
  }
  return "?";
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// ---------------------------------------------------------------- config io

using FieldPtr = std::variant<int*, double*, std::uint64_t*, std::vector<std::string>*>;
struct Field {
  const char* name;
  FieldPtr ptr;
};

std::vector<Field> grid_fields(SuiteConfig::Grids& g) {
  return {{"distortion_samples", &g.distortion_samples}, {"distortion_radius", &g.distortion_radius},
          {"shimorin_samples", &g.shimorin_samples},     {"shimorin_radius", &g.shimorin_radius},
          {"semigroup_triples", &g.semigroup_triples},   {"semigroup_radius", &g.semigroup_radius},
          {"semigroup_max_time", &g.semigroup_max_time}, {"bq_levels", &g.bq_levels},
          {"bq_random_boxes", &g.bq_random_boxes},       {"composition_radial", &g.composition_radial},
          {"composition_angular", &g.composition_angular}, {"low_radial", &g.low_radial},
          {"low_angular", &g.low_angular},               {"kernel_scan", &g.kernel_scan}};
}

std::vector<Field> tolerance_fields(SuiteConfig::Tolerances& t) {
  return {{"identity_integral", &t.identity_integral},
          {"elliptic_integral", &t.elliptic_integral},
          {"half_plane_integral", &t.half_plane_integral},
          {"mc_sigmas", &t.mc_sigmas},
          {"semigroup_law", &t.semigroup_law},
          {"dw_derivative", &t.dw_derivative},
          {"distortion", &t.distortion},
          {"koebe_extremal", &t.koebe_extremal},
          {"self_map_shimorin", &t.self_map_shimorin},
          {"loewner_shimorin", &t.loewner_shimorin},
          {"monotonicity", &t.monotonicity},
          {"self_convergence", &t.self_convergence},
          {"variational", &t.variational},
          {"subordination", &t.subordination},
          {"exponent_koebe", &t.exponent_koebe},
          {"exponent_pole", &t.exponent_pole},
          {"exponent_identity", &t.exponent_identity},
          {"bq_unit", &t.bq_unit},
          {"level_growth", &t.level_growth},
          {"divergent_growth", &t.divergent_growth},
          {"refinement_change", &t.refinement_change},
          {"lp_spread", &t.lp_spread},
          {"lp_constant", &t.lp_constant},
          {"composition_decrease", &t.composition_decrease},
          {"continuity", &t.continuity},
          {"q_monotonicity", &t.q_monotonicity}};
}

std::vector<Field> catalog_fields(SuiteConfig::Catalog& c) {
  return {{"conformal_maps", &c.conformal_maps},
          {"models", &c.models},
          {"self_maps", &c.self_maps},
          {"drivers", &c.drivers}};
}

std::vector<Field> quadrature_fields(QuadratureConfig& q) {
  return {{"radial_levels", &q.radial_levels},
          {"first_gap", &q.first_gap},
          {"refinement", &q.refinement},
          {"radial_nodes", &q.radial_nodes},
          {"angular_panels", &q.angular_panels},
          {"max_angular_panels", &q.max_angular_panels},
          {"tolerance", &q.tolerance},
          {"extrapolation_tolerance", &q.extrapolation_tolerance},
          {"mc_samples", &q.mc_samples}};
}

void read_section(const Json& section, std::vector<Field> fields, const std::string& name) {
  if (!section.is_object()) throw UsageError("config: '" + name + "' must be an object");
  for (const auto& [key, value] : section.items()) {
    const auto it = std::find_if(fields.begin(), fields.end(), [&](const Field& f) { return key == f.name; });
    if (it == fields.end()) throw UsageError("config: unknown key '" + name + "." + key + "'");
    try {
      std::visit(
          [&](auto* ptr) {
            using T = std::remove_pointer_t<decltype(ptr)>;
            *ptr = value.get<T>();
          },
          it->ptr);
    } catch (const nlohmann::json::exception&) {
      throw UsageError("config: bad value for '" + name + "." + key + "'");
    }
  }
}

Json write_section(std::vector<Field> fields) {
  Json out = Json::object();
  for (const auto& f : fields) std::visit([&](auto* ptr) { out[f.name] = *ptr; }, f.ptr);
  return out;
}

// ------------------------------------------------------------- check helpers

struct CheckSpec {
  std::string id;
  std::function<CheckResult(const SuiteConfig&)> run;
};

std::string num(double x) {
  std::ostringstream os;
  os.precision(10);
  os << x;
  return os.str();
}

bool satisfied(double measured, double threshold, Comparison c) {
  switch (c) {
    case Comparison::at_most: return measured <= threshold;
    case Comparison::at_least: return measured >= threshold;
    case Comparison::greater: return measured > threshold;
    case Comparison::less: return measured < threshold;
  }
  return false;
}

CheckResult judge(const std::string& anchor, double measured, double threshold, Comparison c, bool conclusive,
                  std::string detail) {
  CheckResult r;
  r.anchor = anchor;
  r.measured = measured;
  r.threshold = threshold;
  r.comparison = c;
  r.detail = std::move(detail);
  if (!conclusive) {
    r.verdict = Verdict::inconclusive;
  } else {
    r.verdict = satisfied(measured, threshold, c) ? Verdict::pass : Verdict::fail;
  }
  return r;
}

QuadratureConfig quadrature_of(const SuiteConfig& cfg) {
  QuadratureConfig q = cfg.quadrature;
  q.tolerance *= cfg.tolerance_scale;
  q.extrapolation_tolerance *= cfg.tolerance_scale;
  q.seed = cfg.seed;
  return q;
}

// A refinement ladder for stability checks: more nodes, more levels, tighter targets.
QuadratureConfig refined(const QuadratureConfig& base, int step) {
  QuadratureConfig q = base;
  q.radial_nodes += 8 * step;
  q.radial_levels += 4 * step;
  q.tolerance = std::max(base.tolerance * std::pow(0.1, step), 1e-14);
  return q;
}

std::uint64_t mix(std::uint64_t seed, std::uint64_t salt) { return CounterRng(seed, salt).bits(0); }

std::vector<Complex> sample_points(const SuiteConfig& cfg, int n, double r_max, std::uint64_t salt) {
  return random_disk_points(static_cast<std::size_t>(n), r_max, mix(cfg.seed, salt));
}

AnalyticMap constant_map(Complex c) {
  AnalyticMap m;
  m.eval = [c](Complex) { return c; };
  m.deriv = [](Complex) { return Complex(0.0); };
  m.label = "const";
  m.value_at_zero = c;
  m.deriv_at_zero = 0.0;
  m.conformal = false;
  return m;
}

}  // namespace

namespace {

// ------------------------------------------------------------------ distortion

std::vector<CheckSpec> distortion_checks(const SuiteConfig& cfg) {
  std::vector<CheckSpec> out;
  out.push_back({"distortion.koebe-extremal", [](const SuiteConfig& c) {
                   const auto k = make_koebe();
                   const double value = std::abs(k(0.5));
                   const auto res = koebe_distortion_check(k, 0.5);
                   std::ostringstream d;
                   d << "|k(0.5)| = " << num(value) << ", upper growth bound 2, growth slack " << num(res.growth);
                   return judge("Koebe map attains the upper growth bound |z|/(1-|z|)^2 on the positive radius",
                                std::abs(value - 2.0), c.tolerances.koebe_extremal, Comparison::at_most, true,
                                d.str());
                 }});
  std::vector<std::string> labels = cfg.catalog.conformal_maps;
  for (const auto& m : cfg.catalog.models) labels.push_back("iterate:t=1;model=" + m);
  for (const auto& label : labels) {
    out.push_back({"distortion.map." + label, [label](const SuiteConfig& c) {
                     const auto f = make_normalized(map_from_label(label));
                     double worst = kInf;
                     Complex where = 0.0;
                     for (Complex z : sample_points(c, c.grids.distortion_samples, c.grids.distortion_radius, 11)) {
                       const double v = koebe_distortion_check(f, z).min();
                       if (!(v >= worst)) {
                         worst = v;
                         where = z;
                       }
                     }
                     std::ostringstream d;
                     d << c.grids.distortion_samples << " uniform samples |z| <= " << c.grids.distortion_radius
                       << "; min slack at z = " << num(where.real()) << (where.imag() < 0 ? "" : "+")
                       << num(where.imag()) << "i";
                     return judge("Koebe growth, derivative and ratio bounds for the normalized map", worst,
                                  -c.tolerances.distortion, Comparison::at_least, std::isfinite(worst), d.str());
                   }});
  }
  return out;
}

// --------------------------------------------------------------- subordination

std::vector<CheckSpec> subordination_checks(const SuiteConfig&) {
  struct Pair {
    std::string f, g;
    double p;
  };
  const std::vector<Pair> pairs{
      {"monomial:n=2", "id", 2.0},
      {"square-arg:map=koebe", "koebe", 1.0},
      {"dilate:s=0.5;map=koebe", "koebe", 1.0},
      {"square-arg:map=parabolic-koenigs", "parabolic-koenigs", 1.0},
      {"square-arg:map=log-pole", "log-pole", 2.0},
      {"square-arg:map=pole:a=0.5", "pole:a=0.5", 2.0},
      {"iterate:t=1;model=elliptic:lambda=1;koenigs=koebe", "id", 2.0},
  };
  std::vector<CheckSpec> out;
  for (const auto& pr : pairs) {
    out.push_back({"subordination." + pr.f + "<" + pr.g, [pr](const SuiteConfig& c) {
                     const auto f = map_from_label(pr.f);
                     const auto g = map_from_label(pr.g);
                     double worst = kInf;
                     std::ostringstream d;
                     d << "p = " << pr.p << "; margins M_p(g) - M_p(f):";
                     for (double r : {0.5, 0.8, 0.95}) {
                       const double m = subordination_check(f, g, pr.p, r);
                       worst = std::min(worst, m);
                       d << " r=" << r << ":" << num(m);
                     }
                     return judge("Littlewood subordination: integral means of f never exceed those of g", worst,
                                  -c.tolerances.subordination, Comparison::at_least, true, d.str());
                   }});
  }

  struct Fit {
    std::string id, label;
    double p, expected;
    double SuiteConfig::Tolerances::*tol;
  };
  const std::vector<Fit> fits{
      {"growth.koebe.p=1", "koebe", 1.0, 1.0, &SuiteConfig::Tolerances::exponent_koebe},
      {"growth.pole.p=2", "pole:a=1", 2.0, 1.0, &SuiteConfig::Tolerances::exponent_pole},
      {"growth.id.p=2", "id", 2.0, 0.0, &SuiteConfig::Tolerances::exponent_identity},
  };
  for (const auto& fit : fits) {
    out.push_back({fit.id, [fit](const SuiteConfig& c) {
                     const double beta = growth_exponent_fit(map_from_label(fit.label), fit.p, default_growth_radii());
                     std::ostringstream d;
                     d << "slope of log M_p against -log(1-r), r = 1 - 2^-j, j = 4..14: " << num(beta)
                       << " (expected " << fit.expected << ")";
                     return judge("Integral means of f = O((1-|z|)^-a) grow like (1-r)^-(ap-1)",
                                  std::abs(beta - fit.expected), c.tolerances.*(fit.tol), Comparison::at_most, true,
                                  d.str());
                   }});
  }

  out.push_back({"integration-operator.anchor", [](const SuiteConfig&) {
                   const auto est = apply_Tg(map_from_label("pole:a=1"), make_identity(), 0.5);
                   const double err = std::abs(est.value - std::log(2.0));
                   return judge("T_g f(z) = int_0^z f g' with f = 1/(1-w), g = w gives -log(1-z)", err, 1e-12,
                                Comparison::at_most, est.converged, "value " + num(est.value.real()));
                 }});
  return out;
}

// -------------------------------------------------------------------- shimorin

std::vector<CheckSpec> shimorin_checks(const SuiteConfig& cfg) {
  const std::vector<double> ps{0.25, 1.0, 1.75};
  std::vector<CheckSpec> out;
  for (const auto& label : cfg.catalog.self_maps) {
    out.push_back({"shimorin.self-map." + label, [label, ps](const SuiteConfig& c) {
                     const auto phi = map_from_label(label);
                     if (std::abs(phi(0.0)) > 1e-12) throw DomainError("self-map does not fix the origin");
                     double worst = kInf;
                     for (Complex z : sample_points(c, c.grids.shimorin_samples, c.grids.shimorin_radius, 21)) {
                       if (std::abs(z) < 1e-6) continue;
                       const Complex w = phi(z), dw = phi.derivative(z);
                       worst = std::min(worst, shimorin_residual(z, w, dw));
                       for (double p : ps) worst = std::min(worst, shimlow_residual(z, w, dw, p));
                     }
                     std::ostringstream d;
                     d << c.grids.shimorin_samples << " samples |z| <= " << c.grids.shimorin_radius
                       << ", p in {0.25, 1, 1.75}; min residual " << num(worst);
                     return judge("Shimorin-type lower bounds for conformal self-maps fixing 0", worst,
                                  -c.tolerances.self_map_shimorin, Comparison::at_least, std::isfinite(worst), d.str());
                   }});
  }
  for (const auto& driver : cfg.catalog.drivers) {
    out.push_back({"shimorin.loewner." + driver, [driver, ps](const SuiteConfig& c) {
                     const auto k = driver_from_label(driver);
                     double worst = kInf;
                     for (Complex z : sample_points(c, c.grids.shimorin_samples, c.grids.shimorin_radius, 22)) {
                       if (std::abs(z) < 1e-6) continue;
                       const auto s = loewner_terminal(k, z, 1.0, 1e-3);
                       worst = std::min(worst, shimorin_residual(z, s.phi, s.dphi));
                       for (double p : ps) worst = std::min(worst, shimlow_residual(z, s.phi, s.dphi, p));
                     }
                     std::ostringstream d;
                     d << "terminal map T = 1, dt = 1e-3; " << c.grids.shimorin_samples << " samples |z| <= "
                       << c.grids.shimorin_radius << ", p in {0.25, 1, 1.75}; min residual " << num(worst);
                     return judge("Shimorin-type lower bounds for Loewner slit maps (integrator tolerance)", worst,
                                  -c.tolerances.loewner_shimorin, Comparison::at_least, std::isfinite(worst), d.str());
                   }});
  }
  out.push_back({"low.elliptic-iterate", [](const SuiteConfig& c) {
                   const auto phi = map_from_label("iterate:t=1;model=elliptic:lambda=1;koenigs=id");
                   const auto low = low_constant(phi, 1.0, SampleGrid::polar(c.grids.low_radial, c.grids.low_angular, 0.99));
                   const double expected = std::exp(-0.5);
                   return judge("|phi'|^{p/2}(1-|phi|^2)/(1-|z|^2) for phi = e^-1 z is minimized at 0 with value e^-1/2",
                                low.infimum, expected * (1.0 - 1e-12), Comparison::at_least, true,
                                low.grid + "; infimum " + num(low.infimum));
                 }});
  out.push_back({"low.parabolic-iterate", [](const SuiteConfig& c) {
                   const auto phi = map_from_label("iterate:t=1;model=parabolic:canonical");
                   const auto inner =
                       low_constant(phi, 1.0, SampleGrid::boundary_clustered(c.grids.low_radial, c.grids.low_angular, 0.99));
                   const auto outer = low_constant(
                       phi, 1.0, SampleGrid::boundary_clustered(c.grids.low_radial, c.grids.low_angular, 0.999));
                   const double decrease = inner.infimum > 0.0 ? std::max(0.0, 1.0 - outer.infimum / inner.infimum) : kInf;
                   std::ostringstream d;
                   d << "p = 1; infimum " << num(inner.infimum) << " on |z| <= 0.99, " << num(outer.infimum)
                     << " on |z| <= 0.999; candidate bound " << num(outer.candidate);
                   return judge("Positive lower constant for a self-map not fixing 0, stable toward the circle",
                                decrease, c.tolerances.composition_decrease, Comparison::at_most,
                                outer.infimum > 0.0, d.str());
                 }});
  return out;
}

// ------------------------------------------------------------ loewner-monotone

std::vector<CheckSpec> loewner_checks(const SuiteConfig& cfg) {
  std::vector<CheckSpec> out;
  for (const auto& driver : cfg.catalog.drivers) {
    out.push_back({"loewner.monotone." + driver, [driver](const SuiteConfig& c) {
                     const auto k = driver_from_label(driver);
                     double worst = -kInf;
                     for (Complex z : {Complex(0.3, 0.0), Complex(0.0, 0.4), Complex(-0.2, 0.5)}) {
                       for (double p : {0.5, 1.0, 1.5}) {
                         worst = std::max(worst, monotonicity_max_increase(k, z, p, 2.0, 1e-3));
                       }
                     }
                     return judge("Q_t(z) = |phi'|^-p |phi/z|^2p / (1-|phi|^2)^2 is nonincreasing along the chain",
                                  worst, c.tolerances.monotonicity, Comparison::at_most, true,
                                  "z in {0.3, 0.4i, -0.2+0.5i}, p in {0.5, 1, 1.5}, T = 2, dt = 1e-3; max increase " +
                                      num(worst));
                   }});
    out.push_back({"loewner.self-convergence." + driver, [driver](const SuiteConfig& c) {
                     const auto k = driver_from_label(driver);
                     const LoewnerOptions plain{0.0, 0};
                     const Complex z(0.3, 0.0);
                     const auto ref = loewner_terminal(k, z, 1.0, 1e-4, plain);
                     const double e1 = std::abs(loewner_terminal(k, z, 1.0, 1e-2, plain).phi - ref.phi);
                     const double e2 = std::abs(loewner_terminal(k, z, 1.0, 5e-3, plain).phi - ref.phi);
                     const double ratio = e1 / e2;
                     return judge("Fourth-order convergence: halving dt divides the error by 16", std::abs(ratio / 16.0 - 1.0),
                                  c.tolerances.self_convergence, Comparison::at_most, e2 > 0.0,
                                  "z = 0.3, T = 1, dt 1e-2 vs 5e-3 against dt = 1e-4; error ratio " + num(ratio));
                   }});
  }
  out.push_back({"loewner.variational-consistency", [](const SuiteConfig& c) {
                   const auto k = driver_from_label(c.catalog.drivers.empty() ? "const:1" : c.catalog.drivers.front());
                   double worst = 0.0;
                   const double h = 1e-5;
                   for (Complex z : {Complex(0.3, 0.0), Complex(0.0, 0.4), Complex(-0.2, 0.5), Complex(0.6, -0.3)}) {
                     const auto s = loewner_terminal(k, z, 1.0, 1e-3);
                     const Complex fd = (loewner_terminal(k, z + h, 1.0, 1e-3).phi -
                                         loewner_terminal(k, z - h, 1.0, 1e-3).phi) / (2.0 * h);
                     worst = std::max(worst, std::abs(fd - s.dphi) / std::abs(s.dphi));
                   }
                   return judge("phi' from the variational equation matches a central difference of phi_T", worst,
                                c.tolerances.variational, Comparison::at_most, true,
                                "T = 1, dt = 1e-3, step 1e-5; max relative gap " + num(worst));
                 }});
  return out;
}

// --------------------------------------------------------------- brennan-range

std::vector<CheckSpec> brennan_checks(const SuiteConfig& cfg) {
  std::vector<CheckSpec> out;
  out.push_back({"brennan.identity", [](const SuiteConfig& c) {
                   const auto q = quadrature_of(c);
                   double worst = 0.0;
                   bool ok = true;
                   for (double p : {-1.5, 0.5}) {
                     const auto est = brennan_integral([](Complex) { return Complex(1.0); }, p, q);
                     worst = std::max(worst, std::abs(est.value - 1.0));
                     ok = ok && est.converged;
                   }
                   return judge("int_D |f'|^p dA = 1 for f = z (normalized area)", worst,
                                c.tolerances.identity_integral, Comparison::at_most, ok, "p in {-1.5, 0.5}");
                 }});
  out.push_back({"brennan.elliptic-iterate", [](const SuiteConfig& c) {
                   const auto q = quadrature_of(c);
                   const auto model = make_identity_elliptic_model(1.0);
                   double worst = 0.0;
                   bool ok = true;
                   for (double t : {0.5, 1.0}) {
                     for (double p : {-1.5, 0.5}) {
                       const auto est = brennan_integral([&](Complex z) { return phi_deriv(model, z, t); }, p, q);
                       worst = std::max(worst, std::abs(est.value - std::exp(-p * t)));
                       ok = ok && est.converged;
                     }
                   }
                   return judge("int_D |phi_t'|^p dA = e^{-pt} for phi_t = e^{-t} z", worst,
                                c.tolerances.elliptic_integral, Comparison::at_most, ok,
                                "(t, p) in {0.5, 1} x {-1.5, 0.5}");
                 }});
  out.push_back({"brennan.half-plane", [](const SuiteConfig& c) {
                   const auto est = brennan_integral(make_half_plane_map(1.0).deriv, -1.0, quadrature_of(c));
                   return judge("int_D |2/(1-z)^2|^-1 dA = 3/4", std::abs(est.value - 0.75),
                                c.tolerances.half_plane_integral, Comparison::at_most, est.converged,
                                "value " + num(est.value) + ", error bound " + num(est.error_bound));
                 }});
  for (const std::string label : {"half-plane:c=1", "koebe"}) {
    out.push_back({"brennan.monte-carlo." + label, [label](const SuiteConfig& c) {
                     const auto f = map_from_label(label);
                     const auto q = quadrature_of(c);
                     const auto quad_est = brennan_integral(f.deriv, -1.0, q);
                     const auto mc = monte_carlo_brennan(f.deriv, -1.0, c.quadrature.mc_samples, mix(c.seed, 31));
                     const double sigmas = std::abs(mc.value - quad_est.value) / mc.error_bound;
                     std::ostringstream d;
                     d << "p = -1; quadrature " << num(quad_est.value) << ", Monte Carlo " << num(mc.value) << " +- "
                       << num(mc.error_bound) << " (n = " << c.quadrature.mc_samples << ", rejected "
                       << mc.rejected_samples << ")";
                     return judge("Polar quadrature and Monte Carlo agree within the standard error budget", sigmas,
                                  c.tolerances.mc_sigmas, Comparison::at_most, quad_est.converged, d.str());
                   }});
  }
  std::vector<std::string> labels = cfg.catalog.conformal_maps;
  for (const auto& m : cfg.catalog.models) labels.push_back("iterate:t=1;model=" + m);
  for (const auto& label : labels) {
    out.push_back({"brennan.range." + label, [label](const SuiteConfig& c) {
                     const auto f = map_from_label(label);
                     const auto q = quadrature_of(c);
                     int failures = 0;
                     std::ostringstream d;
                     for (double p : {-1.9, -1.5, -1.0, 0.3, 0.6}) {
                       const auto est = brennan_integral(f.deriv, p, q);
                       if (!est.converged) ++failures;
                       d << "p=" << p << ":" << num(est.value) << (est.converged ? "" : "(not converged)") << " ";
                     }
                     return judge("int_D |f'|^p dA is finite for p in (-2, 2/3)", failures, 0.0, Comparison::at_most,
                                  true, d.str());
                   }});
  }
  out.push_back({"brennan.koebe-divergence", [](const SuiteConfig& c) {
                   const auto k = make_koebe();
                   int missed = 0;
                   std::ostringstream d;
                   for (double p : {0.7, -2.1}) {
                     const auto est = brennan_integral(k.deriv, p, quadrature_of(c));
                     if (!est.divergence_suspected) ++missed;
                     const auto& s = est.level_sums;
                     d << "p=" << p << ": last level ratio "
                       << (s.size() >= 2 ? num(s.back() / s[s.size() - 2]) : std::string("n/a"))
                       << (est.divergence_suspected ? " (divergent) " : " (not flagged) ");
                   }
                   return judge("Koebe integrals diverge just outside the range: p = 0.7 and p = -2.1", missed, 0.0,
                                Comparison::at_most, true, d.str());
                 }});
  out.push_back({"brennan.feng-macgregor", [](const SuiteConfig& c) {
                   const auto q = quadrature_of(c);
                   double worst = 0.0;
                   bool ok = true;
                   std::string argmax;
                   for (const auto& label : c.catalog.conformal_maps) {
                     const auto f = map_from_label(label);
                     for (double b : {0.1, 0.3, 0.5, 0.65}) {
                       const auto fm = feng_macgregor_ratio(f, b, q);
                       ok = ok && fm.integral.converged;
                       if (fm.ratio > worst) {
                         worst = fm.ratio;
                         argmax = label + " at b=" + num(b);
                       }
                     }
                   }
                   return judge("int_D |f'|^b dA <= C |f'(0)|^b for b in [0, 2/3): finite catalog constant", worst, kInf,
                                Comparison::less, ok, "max ratio " + num(worst) + " for " + argmax);
                 }});
  return out;
}

// ----------------------------------------------------------------- weights-bq

std::vector<CheckSpec> weights_checks(const SuiteConfig&) {
  std::vector<CheckSpec> out;
  out.push_back({"bq.unit-random-boxes", [](const SuiteConfig& c) {
                   const CounterRng rng(c.seed, 0xb0c5);
                   const auto q = quadrature_of(c);
                   double worst = 0.0;
                   bool ok = true;
                   for (int i = 0; i < c.grids.bq_random_boxes; ++i) {
                     const CarlesonBox box(kTwoPi * rng.uniform(2 * i), 1.0 - rng.uniform(2 * i + 1));
                     const double qq = 1.5 + (i % 4);
                     const auto bq = bq_quotient(unit_weight(), qq, 0.0, box, q);
                     worst = std::max(worst, std::abs(bq.value - 1.0));
                     ok = ok && bq.converged;
                   }
                   return judge("B_q quotient of the constant weight is exactly 1", worst, c.tolerances.bq_unit,
                                Comparison::at_most, ok,
                                std::to_string(c.grids.bq_random_boxes) + " random boxes, q in {1.5, 2.5, 3.5, 4.5}");
                 }});
  for (double alpha : {0.3, 0.5, 0.9}) {
    out.push_back({"bq.power-stable.alpha=" + num(alpha), [alpha](const SuiteConfig& c) {
                     const int levels = std::min(c.grids.bq_levels, 7);
                     const auto rep = bq_sup_scan(power_weight(alpha), 2.0, 0.0, levels, quadrature_of(c));
                     const double growth = level_growth(rep, 1, levels) - 1.0;
                     std::ostringstream d;
                     d << rep.family << "; q = 2; level maxima";
                     for (double m : rep.level_maxima) d << " " << num(m);
                     return judge("(1-|z|^2)^alpha with alpha < q-1 has bounded B_2 quotients", growth,
                                  c.tolerances.level_growth, Comparison::at_most, rep.all_converged && !rep.any_divergent,
                                  d.str());
                   }});
  }
  for (double alpha : {1.5, 2.5}) {
    out.push_back({"bq.power-divergent.alpha=" + num(alpha), [alpha](const SuiteConfig& c) {
                     const int levels = std::min(c.grids.bq_levels, 7);
                     const auto q = quadrature_of(c);
                     double weakest = kInf;
                     int flagged = 0, boxes = 0;
                     for (int l = 1; l <= levels; ++l) {
                       const double h = std::ldexp(1.0, -l);
                       for (long j = 0; j < (1L << l); ++j) {
                         const auto bq = bq_quotient(power_weight(alpha), 2.0, 0.0, CarlesonBox(kTwoPi * j * h, h), q);
                         weakest = std::min(weakest, bq.profile_growth);
                         flagged += bq.diverges ? 1 : 0;
                         ++boxes;
                       }
                     }
                     std::ostringstream d;
                     d << boxes << " dyadic boxes, levels 1.." << levels << "; dual integral flagged divergent in "
                       << flagged << "; weakest growth over seven layers toward the circle " << num(weakest);
                     const double measured = flagged == boxes ? weakest : 0.0;
                     return judge("(1-|z|^2)^alpha with alpha > q-1 fails B_2: box quotients grow without bound",
                                  measured, c.tolerances.divergent_growth, Comparison::at_least, true, d.str());
                   }});
  }
  struct Koenigs {
    std::string name, label;
  };
  const std::vector<Koenigs> maps{{"parabolic", "parabolic-koenigs"},
                                  {"koebe", "koebe"},
                                  {"z-over-1-minus-z2", "spirallike:lambda=1;atoms=0.5@1,0.5@-1"}};
  for (const auto& km : maps) {
    for (double p : {-1.2, -1.5, -1.9}) {
      out.push_back({"bq.koenigs-b4." + km.name + ".p=" + num(p), [km, p](const SuiteConfig& c) {
                       const auto rep = bq_sup_scan(koenigs_weight(map_from_label(km.label), p), 4.0, 0.0,
                                                    c.grids.bq_levels, quadrature_of(c), 1);
                       const int last = std::min(8, rep.levels);
                       const double growth = level_growth(rep, 2, last) - 1.0;
                       std::ostringstream d;
                       d << rep.family << "; q = 4; level maxima";
                       for (double m : rep.level_maxima) d << " " << num(m);
                       d << "; max/min - 1 over levels 2.." << last << " = " << num(level_variation(rep, 2, last));
                       return judge("|h'|^p for a Koenigs map h and p in (-2,-1) lies in B_4: no growth across levels",
                                    growth, c.tolerances.level_growth, Comparison::at_most,
                                    rep.all_converged && !rep.any_divergent, d.str());
                     }});
    }
  }
  out.push_back({"bq.monotone-in-q", [](const SuiteConfig& c) {
                   struct Case {
                     Weight w;
                     double q, q_next;
                   };
                   const std::vector<Case> cases{{power_weight(0.5), 2.0, 3.0},
                                                 {koenigs_weight(make_parabolic_koenigs(), -1.5), 4.0, 6.0}};
                   const auto quad = quadrature_of(c);
                   const int levels = std::min(c.grids.bq_levels, 5);
                   double worst = 0.0;
                   for (const auto& cs : cases) {
                     const auto a = bq_sup_scan(cs.w, cs.q, 0.0, levels, quad);
                     const auto b = bq_sup_scan(cs.w, cs.q_next, 0.0, levels, quad);
                     for (std::size_t i = 0; i < a.boxes.size(); ++i) {
                       worst = std::max(worst, b.boxes[i].quotient / a.boxes[i].quotient);
                     }
                   }
                   return judge("B_q is contained in B_q' for q' > q: box quotients do not increase with q", worst,
                                1.0 + c.tolerances.q_monotonicity, Comparison::at_most, true,
                                "power alpha=0.5 (q 2 -> 3), parabolic |h'|^-1.5 (q 4 -> 6); max quotient ratio " +
                                    num(worst));
                 }});
  out.push_back({"binf.unit", [](const SuiteConfig& c) {
                   const auto rep = b_infinity_quotient(unit_weight(), CarlesonBox(1.0, 0.5), 8, quadrature_of(c));
                   return judge("Maximal averages of the constant weight never exceed its average", rep.quotient,
                                1.0 + 1e-12, Comparison::at_most, true, rep.discretization);
                 }});
  for (double alpha : {0.5, -0.5}) {
    out.push_back({"binf.power.alpha=" + num(alpha), [alpha](const SuiteConfig& c) {
                     const auto quad = quadrature_of(c);
                     std::vector<double> values;
                     std::ostringstream d;
                     d << "S(1, 0.5), depths 2,4,6,8:";
                     for (int depth : {2, 4, 6, 8}) {
                       values.push_back(
                           b_infinity_quotient(power_weight(alpha), CarlesonBox(1.0, 0.5), depth, quad).quotient);
                       d << " " << num(values.back());
                     }
                     // Deeper trees only add finer averages, so the quotient is nondecreasing in
                     // depth; boundedness shows as increments that die out.
                     const double last_step = values.back() / values[values.size() - 2] - 1.0;
                     return judge("B_infinity quotient of a B_q weight levels off as the dyadic tree deepens",
                                  last_step, c.tolerances.level_growth, Comparison::at_most, true, d.str());
                   }});
  }
  return out;
}

// ---------------------------------------------------------------------- kernel

const std::vector<Complex>& kernel_points() {
  static const std::vector<Complex> pts{0.0, 0.5, 0.9, std::polar(0.99, kPi / 3.0)};
  return pts;
}

std::vector<CheckSpec> kernel_checks(const SuiteConfig&) {
  std::vector<CheckSpec> out;
  out.push_back({"kernel.unit", [](const SuiteConfig& c) {
                   const auto q = quadrature_of(c);
                   double worst = 0.0;
                   bool ok = true;
                   std::ostringstream d;
                   d << "gamma = 1; residuals";
                   for (Complex z : kernel_points()) {
                     const auto res = kernel_domination_residual(unit_weight(), 1.0, z, q);
                     worst = std::max(worst, res.value);
                     ok = ok && res.converged;
                     d << " " << num(res.value);
                   }
                   d << "; series limit 4/pi = " << num(4.0 / kPi);
                   return judge("Bergman kernel domination for w = 1 holds with a constant below 4/pi", worst,
                                4.0 / kPi, Comparison::at_most, ok, d.str());
                 }});
  out.push_back({"kernel.unit.refinement", [](const SuiteConfig& c) {
                   const auto base = quadrature_of(c);
                   double change = 0.0;
                   std::ostringstream d;
                   d << "quadrature ladder 0..2 at z in {0, 0.5, 0.9, 0.99 e^{i pi/3}}:";
                   for (Complex z : kernel_points()) {
                     double prev = 0.0;
                     for (int step = 0; step <= 2; ++step) {
                       const double v = kernel_domination_residual(unit_weight(), 1.0, z, refined(base, step)).value;
                       if (step > 0) change = std::max(change, std::abs(v / prev - 1.0));
                       prev = v;
                       d << " " << num(v);
                     }
                   }
                   return judge("The kernel residual is a property of the weight, not of the discretization", change,
                                c.tolerances.refinement_change, Comparison::at_most, true, d.str());
                 }});
  out.push_back({"kernel.koenigs-scan", [](const SuiteConfig& c) {
                   const auto base = quadrature_of(c);
                   const auto w = koenigs_weight(make_parabolic_koenigs(), -1.5);
                   const int n = std::max(2, c.grids.kernel_scan);
                   double largest = 0.0, change = 0.0;
                   bool ok = true;
                   std::ostringstream d;
                   d << "w = |h'|^-1.5 (parabolic), gamma = 2, |z| = 0.95 k/" << (n - 1)
                     << ", arg z in {0, pi/2, pi}, quadrature ladder 0..1:";
                   for (int k = 0; k < n; ++k) {
                     const double r = 0.95 * k / (n - 1);
                     for (double a : {0.0, kPi / 2.0, kPi}) {
                       const auto coarse = kernel_domination_residual(w, 2.0, std::polar(r, a), base);
                       const auto fine = kernel_domination_residual(w, 2.0, std::polar(r, a), refined(base, 1));
                       ok = ok && coarse.converged && fine.converged;
                       largest = std::max(largest, fine.value);
                       change = std::max(change, std::abs(fine.value / coarse.value - 1.0));
                       d << " " << num(fine.value);
                     }
                   }
                   d << "; max " << num(largest) << ", max refinement change " << num(change);
                   return judge("Kernel residual of a Koenigs weight on a scan |z| <= 0.95: finite and independent of the "
                                "quadrature",
                                change, c.tolerances.refinement_change, Comparison::at_most,
                                ok && std::isfinite(largest), d.str());
                 }});
  // The weight vanishes like |1 - z|^3 at the Denjoy-Wolff point, so gamma = 2 leaves a factor
  // (1 - |z|)^-1 there; from gamma > 3 on the residual is bounded along the radius.
  out.push_back({"kernel.koenigs-radial", [](const SuiteConfig& c) {
                   // The kernel peak moves to level ~13 at 1 - |z| = 1e-4; extra levels resolve its tail.
                   const auto q = refined(quadrature_of(c), 2);
                   const auto w = koenigs_weight(make_parabolic_koenigs(), -1.5);
                   std::vector<double> values;
                   bool ok = true;
                   std::ostringstream d;
                   d << "w = |h'|^-1.5 (parabolic), gamma = 4, z = 1 - 10^-k, k = 1..4:";
                   for (double r : {0.9, 0.99, 0.999, 0.9999}) {
                     const auto res = kernel_domination_residual(w, 4.0, r, q);
                     ok = ok && res.converged;
                     values.push_back(res.value);
                     d << " " << num(res.value);
                   }
                   const double last_step = values.back() / values[values.size() - 2] - 1.0;
                   return judge("With gamma above the vanishing order the residual levels off toward the Denjoy-Wolff "
                                "point",
                                last_step, c.tolerances.level_growth, Comparison::at_most, ok, d.str());
                 }});
  struct Holder {
    std::string name, label;
  };
  for (const auto& hm : std::vector<Holder>{{"koebe", "spirallike:lambda=1;atoms=1@1"},
                                            {"two-atoms", "spirallike:lambda=1;atoms=0.5@1,0.5@-1"}}) {
    out.push_back({"kernel.holder." + hm.name, [hm](const SuiteConfig& c) {
                     const auto h = map_from_label(hm.label);
                     // |u|^r decays only like (1 - |w|)^0.2 per level near the zeros of u.
                     const auto q = refined(quadrature_of(c), 1);
                     double worst = 0.0, mismatch = 0.0;
                     bool ok = true;
                     std::ostringstream d;
                     d << "p = -1.5, r = -1.8, gamma = 2; combined / bound:";
                     for (Complex z : {Complex(0.0), Complex(0.5), Complex(0.0, 0.7), Complex(-0.8), std::polar(0.9, kPi / 4)}) {
                       const auto hc = holder_combination_check(h, -1.5, -1.8, 2.0, z, q);
                       const double ratio = hc.combined / hc.holder_bound;
                       worst = std::max(worst, ratio);
                       mismatch = std::max(mismatch, hc.factorization_mismatch);
                       ok = ok && hc.converged;
                       d << " " << num(ratio) << " (u " << num(hc.u_factor) << ", w1 " << num(hc.omega1_factor)
                         << ")";
                     }
                     d << "; factorization mismatch " << num(mismatch);
                     return judge("Hoelder combination of the kernel residuals of |u|^r and w1 bounds that of |h'|^p",
                                  worst, 1.0 + 1e-6, Comparison::at_most, ok && mismatch <= 1e-10, d.str());
                   }});
  }
  return out;
}

// -------------------------------------------------------------------- lp-ratio

std::vector<CheckSpec> lp_checks(const SuiteConfig&) {
  std::vector<CheckSpec> out;
  auto normalized_weight = [](const QuadratureConfig& q) {
    const auto w = koenigs_weight(make_parabolic_koenigs(), -1.5);
    const double mass = integrate_disk(w.eval, q).value;
    return scaled_weight(w, mass);
  };
  out.push_back({"lp.family-spread", [normalized_weight](const SuiteConfig& c) {
                   const auto q = quadrature_of(c);
                   const auto w = normalized_weight(q);
                   double lo = kInf, hi = 0.0;
                   bool ok = true;
                   std::ostringstream d;
                   d << "w = |h'|^-1.5 / int w (parabolic h), p = 2; ratios";
                   for (const std::string label : {"id", "monomial:n=2", "pole:a=0.5", "dilate:s=0.5;map=koebe"}) {
                     const auto lp = littlewood_paley_ratio(map_from_label(label), 2.0, w, q);
                     lo = std::min(lo, lp.ratio);
                     hi = std::max(hi, lp.ratio);
                     ok = ok && lp.converged;
                     d << " " << label << ":" << num(lp.ratio);
                   }
                   return judge("Littlewood-Paley: int |f|^p w is comparable to |f(0)|^p + int |f'|^p (1-|z|^2)^p w",
                                hi / lo, c.tolerances.lp_spread, Comparison::at_most, ok && lo > 0.0, d.str());
                 }});
  out.push_back({"lp.constant", [normalized_weight](const SuiteConfig& c) {
                   const auto q = quadrature_of(c);
                   const auto lp = littlewood_paley_ratio(constant_map(1.0), 2.0, normalized_weight(q), q);
                   return judge("For f = 1 both sides equal int w dA, so the normalized ratio is 1",
                                std::abs(lp.ratio - 1.0), c.tolerances.lp_constant, Comparison::at_most, lp.converged,
                                "lhs " + num(lp.lhs) + ", rhs " + num(lp.rhs));
                 }});
  return out;
}

// ----------------------------------------------------------- composition-bound

std::vector<CheckSpec> composition_checks(const SuiteConfig&) {
  std::vector<CheckSpec> out;
  for (double t : {0.5, 1.0}) {
    out.push_back({"composition.parabolic.t=" + num(t), [t](const SuiteConfig& c) {
                     const auto m = make_parabolic_model();
                     const auto& g = c.grids;
                     const auto inner = composition_bound_infimum(
                         m, -1.5, t, SampleGrid::boundary_clustered(g.composition_radial, g.composition_angular, 0.99));
                     const auto outer = composition_bound_infimum(
                         m, -1.5, t, SampleGrid::boundary_clustered(g.composition_radial, g.composition_angular, 0.999));
                     const double decrease =
                         inner.infimum > 0.0 ? std::max(0.0, 1.0 - outer.infimum / inner.infimum) : kInf;
                     std::ostringstream d;
                     d << "p = -1.5; infimum " << num(inner.infimum) << " on |z| <= 0.99, " << num(outer.infimum)
                       << " on |z| <= 0.999 (at " << num(outer.argmin.real()) << (outer.argmin.imag() < 0 ? "" : "+")
                       << num(outer.argmin.imag()) << "i); " << outer.grid;
                     return judge("|phi_t'|^|p| ((1-|phi_t|^2)/(1-|z|^2))^2 has a positive infimum that is stable "
                                  "toward the circle",
                                  decrease, c.tolerances.composition_decrease, Comparison::at_most,
                                  outer.infimum > 0.0 && std::isfinite(outer.infimum), d.str());
                   }});
  }
  out.push_back({"composition.elliptic-identity", [](const SuiteConfig& c) {
                   const auto m = make_identity_elliptic_model(1.0);
                   double worst = kInf;
                   std::ostringstream d;
                   d << "phi_t = e^-t z, p = -1.5; infimum / e^{-|p| t}:";
                   for (double t : {0.5, 1.0}) {
                     const auto inf = composition_bound_infimum(
                         m, -1.5, t,
                         SampleGrid::boundary_clustered(c.grids.composition_radial, c.grids.composition_angular, 0.999));
                     const double ratio = inf.infimum / std::exp(-1.5 * t);
                     worst = std::min(worst, ratio);
                     d << " t=" << t << ":" << num(ratio);
                   }
                   return judge("For a rotation-free elliptic iterate the bound is attained at the origin", worst,
                                1.0 - 1e-12, Comparison::at_least, true, d.str());
                 }});
  return out;
}

// ------------------------------------------------------------ semigroup-axioms

std::vector<CheckSpec> semigroup_checks(const SuiteConfig& cfg) {
  std::vector<CheckSpec> out;
  for (const auto& label : cfg.catalog.models) {
    out.push_back({"semigroup.law." + label, [label](const SuiteConfig& c) {
                     const auto m = model_from_label(label);
                     const auto& g = c.grids;
                     const auto pts = sample_points(c, g.semigroup_triples, g.semigroup_radius, 41);
                     const CounterRng rng(c.seed, 42);
                     double worst = 0.0;
                     for (std::size_t i = 0; i < pts.size(); ++i) {
                       const double t = g.semigroup_max_time * rng.uniform(2 * i);
                       const double s = g.semigroup_max_time * rng.uniform(2 * i + 1);
                       worst = std::max(worst, semigroup_residual(m, pts[i], t, s));
                     }
                     std::ostringstream d;
                     d << g.semigroup_triples << " triples, |z| <= " << g.semigroup_radius << ", t, s in [0, "
                       << g.semigroup_max_time << "]; max |phi_{t+s} - phi_t o phi_s| " << num(worst);
                     return judge("Semigroup law phi_{t+s} = phi_t o phi_s", worst, c.tolerances.semigroup_law,
                                  Comparison::at_most, true, d.str());
                   }});
    out.push_back({"semigroup.identity." + label, [label](const SuiteConfig& c) {
                     const auto m = model_from_label(label);
                     int mismatches = 0;
                     for (Complex z : sample_points(c, 1000, 0.999, 43)) mismatches += evolve(m, z, 0.0) != z ? 1 : 0;
                     return judge("phi_0 is the identity, bit for bit", mismatches, 0.0, Comparison::at_most, true,
                                  "1000 samples |z| <= 0.999");
                   }});
    out.push_back({"semigroup.containment." + label, [label](const SuiteConfig& c) {
                     const auto m = model_from_label(label);
                     double largest = 0.0;
                     for (Complex z : sample_points(c, 200, c.grids.semigroup_radius, 44)) {
                       for (double t : {0.1, 1.0, 3.0, 10.0}) largest = std::max(largest, std::abs(evolve(m, z, t)));
                     }
                     return judge("Iterates are self-maps of the disk", largest, 1.0, Comparison::less, true,
                                  "200 samples, t in {0.1, 1, 3, 10}; max |phi_t(z)| " + num(largest));
                   }});
    out.push_back({"semigroup.continuity." + label, [label](const SuiteConfig& c) {
                     const auto m = model_from_label(label);
                     double d3 = 0.0, d4 = 0.0;
                     for (Complex z : sample_points(c, 200, 0.9, 45)) {
                       d3 = std::max(d3, std::abs(evolve(m, z, 1e-3) - z));
                       d4 = std::max(d4, std::abs(evolve(m, z, 1e-4) - z));
                     }
                     const double ratio = d3 / d4;
                     return judge("t -> phi_t is continuous at 0 with a linear modulus", std::abs(ratio / 10.0 - 1.0),
                                  c.tolerances.continuity, Comparison::at_most, d4 > 0.0,
                                  "200 samples |z| <= 0.9; sup|phi_t - id| at t = 1e-3 over t = 1e-4: " + num(ratio));
                   }});
    const auto model = model_from_label(label);
    if (!model.kind.elliptic) {
      out.push_back({"semigroup.dw-derivative." + label, [label](const SuiteConfig& c) {
                       const auto m = model_from_label(label);
                       double worst = 0.0;
                       bool ok = true;
                       std::ostringstream d;
                       d << "angular derivative at the Denjoy-Wolff point, radii 1 - 2^-j, j = 4..12:";
                       for (double t : {0.5, 1.0}) {
                         const auto ad = dw_derivative_check(m, t);
                         worst = std::max(worst, std::abs(ad.estimate - ad.expected));
                         ok = ok && ad.converged;
                         d << " t=" << t << ":" << num(ad.estimate.real());
                       }
                       return judge("phi_t'(tau) = e^{-lambda t} at the Denjoy-Wolff point", worst,
                                    c.tolerances.dw_derivative, Comparison::at_most, ok, d.str());
                     }});
    }
  }
  return out;
}

using SuiteBuilder = std::vector<CheckSpec> (*)(const SuiteConfig&);

const std::vector<std::pair<std::string, SuiteBuilder>>& suites() {
  static const std::vector<std::pair<std::string, SuiteBuilder>> table{
      {"distortion", distortion_checks},   {"subordination", subordination_checks},
      {"shimorin", shimorin_checks},       {"loewner-monotone", loewner_checks},
      {"brennan-range", brennan_checks},   {"weights-bq", weights_checks},
      {"kernel", kernel_checks},           {"lp-ratio", lp_checks},
      {"composition-bound", composition_checks}, {"semigroup-axioms", semigroup_checks}};
  return table;
}

Json number_json(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "+inf" : "-inf";
  return x;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

SuiteConfig parse_suite_config(const std::string& json_text) {
  Json doc;
  try {
    doc = Json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("config: ") + e.what());
  }
  if (!doc.is_object()) throw UsageError("config: top level must be an object");
  SuiteConfig cfg;
  for (const auto& [key, value] : doc.items()) {
    try {
      if (key == "seed") cfg.seed = value.get<std::uint64_t>();
      else if (key == "tolerance_scale") cfg.tolerance_scale = value.get<double>();
      else if (key == "threads") cfg.threads = value.get<int>();
      else if (key == "grids") read_section(value, grid_fields(cfg.grids), key);
      else if (key == "tolerances") read_section(value, tolerance_fields(cfg.tolerances), key);
      else if (key == "catalog") read_section(value, catalog_fields(cfg.catalog), key);
      else if (key == "quadrature") read_section(value, quadrature_fields(cfg.quadrature), key);
      else throw UsageError("config: unknown key '" + key + "'");
    } catch (const nlohmann::json::exception&) {
      throw UsageError("config: bad value for '" + key + "'");
    }
  }
  if (!(cfg.tolerance_scale > 0.0)) throw UsageError("config: tolerance_scale must be positive");
  if (cfg.threads < 1) throw UsageError("config: threads must be >= 1");
  try {
    validate(quadrature_of(cfg));
  } catch (const DomainError& e) {
    throw UsageError(std::string("config: ") + e.what());
  }
  return cfg;
}

namespace {

Json config_document(const SuiteConfig& cfg) {
  SuiteConfig c = cfg;
  Json j;
  j["seed"] = c.seed;
  j["tolerance_scale"] = c.tolerance_scale;
  j["grids"] = write_section(grid_fields(c.grids));
  j["tolerances"] = write_section(tolerance_fields(c.tolerances));
  j["catalog"] = write_section(catalog_fields(c.catalog));
  j["quadrature"] = write_section(quadrature_fields(c.quadrature));
  return j;
}

}  // namespace

std::string config_json(const SuiteConfig& cfg) { return config_document(cfg).dump(2); }

std::vector<std::string> suite_names() {
  std::vector<std::string> names;
  for (const auto& [name, _] : suites()) names.push_back(name);
  names.push_back("all");
  return names;
}

std::vector<CheckResult> run_suite(const std::string& name, const SuiteConfig& cfg) {
  std::vector<CheckSpec> specs;
  std::set<std::string> seen;
  bool known = false;
  for (const auto& [suite, build] : suites()) {
    if (name != "all" && name != suite) continue;
    known = true;
    for (auto& spec : build(cfg)) {
      if (seen.insert(spec.id).second) specs.push_back(std::move(spec));
    }
  }
  if (!known) throw UsageError("unknown suite '" + name + "'");

  std::vector<CheckResult> results(specs.size());
  parallel_for(specs.size(), cfg.threads, [&](std::size_t i) {
    const auto start = std::chrono::steady_clock::now();
    CheckResult r;
    try {
      r = specs[i].run(cfg);
    } catch (const NumericalError& e) {
      r.verdict = Verdict::inconclusive;
      r.detail = std::string("numerical failure: ") + e.what();
    } catch (const DomainError& e) {
      r.verdict = Verdict::fail;
      r.detail = std::string("domain error: ") + e.what();
    } catch (const UsageError& e) {
      r.verdict = Verdict::fail;
      r.detail = std::string("bad catalog entry: ") + e.what();
    }
    r.check_id = specs[i].id;
    r.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start)
                       .count();
    results[i] = std::move(r);
  });
  std::sort(results.begin(), results.end(),
            [](const CheckResult& a, const CheckResult& b) { return a.check_id < b.check_id; });
  return results;
}

std::string report_json(const std::string& suite, const SuiteConfig& cfg, const std::vector<CheckResult>& results,
                        bool include_timings) {
  Json doc;
  doc["suite"] = suite;
  doc["config"] = config_document(cfg);
  Json checks = Json::array();
  std::map<std::string, int> counts{{"pass", 0}, {"fail", 0}, {"inconclusive", 0}};
  for (const auto& r : results) {
    Json j;
    j["check_id"] = r.check_id;
    j["anchor"] = r.anchor;
    j["verdict"] = to_string(r.verdict);
    j["measured"] = number_json(r.measured);
    j["comparison"] = to_string(r.comparison);
    j["threshold"] = number_json(r.threshold);
    if (include_timings) j["runtime_ms"] = r.runtime_ms;
    j["detail"] = r.detail;
    checks.push_back(std::move(j));
    ++counts[to_string(r.verdict)];
  }
  doc["checks"] = std::move(checks);
  doc["summary"] = {{"total", results.size()},
                    {"pass", counts["pass"]},
                    {"fail", counts["fail"]},
                    {"inconclusive", counts["inconclusive"]},
                    {"exit_code", exit_code_for(results)}};
  return doc.dump(2) + "\n";
}

std::string report_csv(const std::vector<CheckResult>& results, bool include_timings) {
  std::ostringstream os;
  os << "check_id,verdict,measured,comparison,threshold" << (include_timings ? ",runtime_ms" : "") << ",anchor,detail\n";
  for (const auto& r : results) {
    os << csv_field(r.check_id) << ',' << to_string(r.verdict) << ',' << num(r.measured) << ','
       << csv_field(to_string(r.comparison)) << ',' << num(r.threshold);
    if (include_timings) os << ',' << r.runtime_ms;
    os << ',' << csv_field(r.anchor) << ',' << csv_field(r.detail) << '\n';
  }
  return os.str();
}

std::string summary_table(const std::vector<CheckResult>& results) {
  std::size_t width = 8;
  for (const auto& r : results) width = std::max(width, r.check_id.size());
  std::ostringstream os;
  os << std::left << std::setw(static_cast<int>(width)) << "check" << "  " << std::setw(12) << "verdict"
     << "measured" << '\n';
  int fails = 0, open = 0;
  for (const auto& r : results) {
    os << std::left << std::setw(static_cast<int>(width)) << r.check_id << "  " << std::setw(12) << to_string(r.verdict)
       << num(r.measured) << ' ' << to_string(r.comparison) << ' ' << num(r.threshold) << '\n';
    fails += r.verdict == Verdict::fail;
    open += r.verdict == Verdict::inconclusive;
  }
  os << results.size() << " checks, " << results.size() - fails - open << " pass, " << fails << " fail, " << open
     << " inconclusive\n";
  return os.str();
}

int exit_code_for(const std::vector<CheckResult>& results) {
  bool inconclusive = false;
  for (const auto& r : results) {
    if (r.verdict == Verdict::fail) return 1;
    inconclusive = inconclusive || r.verdict == Verdict::inconclusive;
  }
  return inconclusive ? 2 : 0;
}

}  // namespace gftlab
