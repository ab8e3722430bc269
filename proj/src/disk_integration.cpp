#include "gftlab/disk_integration.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gftlab/errors.h"
#include "gftlab/quadrature.h"
#include "gftlab/sampling.h"

namespace gftlab {

namespace {

constexpr double kDivergenceRatio = 1.05;
constexpr double kConvergentRatio = 0.98;

struct LevelResult {
  double value = 0.0;
  double error = 0.0;
  bool capped = false;
  bool finite = true;
};

LevelResult integrate_annulus(const std::function<double(Complex)>& g, double r_lo, double r_hi, double a_lo,
                              double a_hi, const quad::GaussRule& rule, int panels, const QuadratureConfig& cfg,
                              double rel_tol, double abs_tol) {
  const double mid = 0.5 * (r_lo + r_hi);
  const double half = 0.5 * (r_hi - r_lo);
  std::vector<double> radii(rule.nodes.size());
  std::vector<double> wr(rule.nodes.size());
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    radii[i] = mid + half * rule.nodes[i];
    wr[i] = half * rule.weights[i] * radii[i];
  }
  auto radial = [&](double theta) {
    const Complex dir = std::polar(1.0, theta);
    double acc = 0.0;
    for (std::size_t i = 0; i < radii.size(); ++i) acc += wr[i] * g(radii[i] * dir);
    return acc;
  };
  const auto est = quad::gauss_kronrod<double>(radial, a_lo, a_hi, rel_tol, abs_tol, panels,
                                               cfg.max_angular_panels);
  LevelResult out;
  out.value = est.value;
  out.error = est.error;
  out.finite = std::isfinite(est.value) && std::isfinite(est.error);
  out.capped = out.finite && !est.converged;
  return out;
}

}  // namespace

void validate(const QuadratureConfig& cfg) {
  if (cfg.radial_levels < 3) throw DomainError("QuadratureConfig: need at least 3 radial levels");
  if (!(cfg.first_gap > 0.0 && cfg.first_gap < 1.0)) throw DomainError("QuadratureConfig: first_gap in (0,1)");
  if (!(cfg.refinement > 0.0 && cfg.refinement < 1.0)) throw DomainError("QuadratureConfig: refinement in (0,1)");
  if (cfg.radial_nodes < 2) throw DomainError("QuadratureConfig: need at least 2 radial nodes");
  if (cfg.angular_panels < 16) throw DomainError("QuadratureConfig: angular_panels must be >= 16");
  if (cfg.max_angular_panels < cfg.angular_panels) throw DomainError("QuadratureConfig: panel cap too small");
  if (!(cfg.tolerance > 0.0)) throw DomainError("QuadratureConfig: tolerance must be positive");
}

IntegralEstimate extrapolate_levels(const std::vector<double>& level_sums, double quadrature_error,
                                    double extrapolation_tolerance) {
  IntegralEstimate est;
  est.level_sums = level_sums;
  double partial = 0.0;
  for (double s : level_sums) partial += s;
  est.value = partial;
  est.error_bound = std::numeric_limits<double>::infinity();
  const std::size_t n = level_sums.size();
  if (n < 3) return est;

  if (n >= 5) {
    bool growing = true;
    for (std::size_t j = n - 4; j < n; ++j) {
      if (!(level_sums[j - 1] > 0.0 && level_sums[j] > kDivergenceRatio * level_sums[j - 1])) growing = false;
    }
    if (growing) {
      est.divergence_suspected = true;
      return est;
    }
  }

  const double s2 = level_sums[n - 3], s1 = level_sums[n - 2], s0 = level_sums[n - 1];
  if (s0 == 0.0) {
    est.error_bound = quadrature_error;
    est.converged = true;
    return est;
  }
  if (s1 == 0.0 || s2 == 0.0) return est;
  const double q = s0 / s1;
  const double q_prev = s1 / s2;
  if (!(q > 0.0 && q < kConvergentRatio && q_prev > 0.0 && q_prev < kConvergentRatio)) return est;
  const double current = partial + s0 * q / (1.0 - q);
  const double previous = (partial - s0) + s1 * q_prev / (1.0 - q_prev);
  est.value = current;
  est.error_bound = std::abs(current - previous) + quadrature_error;
  est.converged = est.error_bound <= extrapolation_tolerance * std::abs(current);
  return est;
}

IntegralEstimate integrate_polar_region(const std::function<double(Complex)>& g, const PolarRegion& region,
                                        const QuadratureConfig& cfg) {
  validate(cfg);
  if (!(region.depth > 0.0 && region.depth <= 1.0)) throw DomainError("integrate_polar_region: depth in (0,1]");
  const double span = region.angle_hi - region.angle_lo;
  if (!(span > 0.0 && span <= kTwoPi + 1e-12)) throw DomainError("integrate_polar_region: bad angle range");

  const int base_panels = std::max(1, static_cast<int>(std::ceil(cfg.angular_panels * span / kTwoPi - 1e-9)));
  std::vector<double> sums;
  double quad_error = 0.0;
  int cap_hits = 0;
  double r_lo = 1.0 - region.depth;
  double accumulated = 0.0;
  const auto rule = quad::gauss_legendre(cfg.radial_nodes);
  for (int j = 1; j <= cfg.radial_levels; ++j) {
    const double gap = region.depth * cfg.first_gap * std::pow(cfg.refinement, j - 1);
    const double r_hi = 1.0 - gap;
    // Deep levels only need accuracy relative to what is already accumulated.
    // Near the circle, 1 - |z|^2 evaluated from z carries relative noise of
    // order eps / gap, which no angular refinement can beat.
    const double abs_tol = std::max(1e-300, cfg.tolerance * std::abs(accumulated));
    const double rel_tol = std::max(cfg.tolerance, 16.0 * std::numeric_limits<double>::epsilon() / gap);
    LevelResult level =
        integrate_annulus(g, r_lo, r_hi, region.angle_lo, region.angle_hi, rule, base_panels, cfg, rel_tol, abs_tol);
    if (!level.finite) {
      // A node landed on a singularity: shift every node and try once more.
      level = integrate_annulus(g, r_lo, r_hi, region.angle_lo, region.angle_hi,
                                quad::gauss_legendre(cfg.radial_nodes + 1), base_panels + 1, cfg, rel_tol, abs_tol);
      if (!level.finite) throw NumericalError("integrate_polar_region: non-finite integrand at quadrature nodes");
    }
    if (level.capped) {
      ++cap_hits;
      level.error *= 10.0;
    }
    accumulated += level.value;
    sums.push_back(level.value / kPi);
    quad_error += level.error / kPi;
    r_lo = r_hi;
  }
  IntegralEstimate est = extrapolate_levels(sums, quad_error, cfg.extrapolation_tolerance);
  est.angular_cap_hits = cap_hits;
  return est;
}

IntegralEstimate integrate_disk(const std::function<double(Complex)>& g, const QuadratureConfig& cfg) {
  return integrate_polar_region(g, PolarRegion{}, cfg);
}

IntegralEstimate brennan_integral(const std::function<Complex(Complex)>& fprime, double p,
                                  const QuadratureConfig& cfg) {
  if (!(p > -3.0 && p < 2.0)) throw DomainError("brennan_integral: p must lie in (-3, 2)");
  return integrate_disk([&](Complex z) { return std::pow(std::abs(fprime(z)), p); }, cfg);
}

IntegralEstimate monte_carlo_brennan(const std::function<Complex(Complex)>& fprime, double p, std::size_t n,
                                     std::uint64_t seed) {
  if (n < 1000) throw DomainError("monte_carlo_brennan: need at least 1000 samples");
  const CounterRng rng(seed, 0xb7e1);
  std::uint64_t counter = 0;
  std::size_t accepted = 0, rejected = 0;
  double mean = 0.0, m2 = 0.0;
  while (accepted < n) {
    const double u = rng.uniform(counter++);
    const double v = rng.uniform(counter++);
    const Complex z = std::polar(std::sqrt(u), kTwoPi * v);
    const double x = std::pow(std::abs(fprime(z)), p);
    if (!std::isfinite(x)) {
      if (++rejected > n) throw NumericalError("monte_carlo_brennan: too many non-finite samples");
      continue;
    }
    ++accepted;
    const double delta = x - mean;
    mean += delta / static_cast<double>(accepted);
    m2 += delta * (x - mean);
  }
  IntegralEstimate est;
  est.value = mean;
  est.error_bound = std::sqrt(m2 / static_cast<double>(n - 1) / static_cast<double>(n));
  est.converged = true;
  est.rejected_samples = rejected;
  return est;
}

double circle_mean(const AnalyticMap& f, double p, double r, int n) {
  if (!(r > 0.0 && r < 1.0)) throw DomainError("circle_mean: r must lie in (0, 1)");
  if (n < 1) throw DomainError("circle_mean: need at least one node");
  double acc = 0.0;
  for (int k = 0; k < n; ++k) acc += std::pow(std::abs(f(std::polar(r, kTwoPi * k / n))), p);
  return acc / n;
}

int circle_nodes_for(double r) {
  int n = 256;
  while (n < 64.0 / (1.0 - r) && n < (1 << 22)) n *= 2;
  return n;
}

std::vector<double> default_growth_radii() {
  std::vector<double> radii;
  for (int j = 4; j <= 14; ++j) radii.push_back(1.0 - std::ldexp(1.0, -j));
  return radii;
}

double growth_exponent_fit(const AnalyticMap& f, double p, const std::vector<double>& radii) {
  if (radii.size() < 4) throw DomainError("growth_exponent_fit: need at least 4 radii");
  std::vector<double> xs, ys;
  for (double r : radii) {
    xs.push_back(-std::log(1.0 - r));
    ys.push_back(std::log(circle_mean(f, p, r, circle_nodes_for(r))));
  }
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  return sxy / sxx;
}

double subordination_check(const AnalyticMap& f, const AnalyticMap& g, double p, double r) {
  const int n = circle_nodes_for(r);
  return circle_mean(g, p, r, n) - circle_mean(f, p, r, n);
}

ComplexEstimate apply_Tg(const AnalyticMap& f, const AnalyticMap& g, Complex z, double tolerance) {
  if (!(std::norm(z) < 1.0)) throw DomainError("apply_Tg: z must lie in the open disk");
  ComplexEstimate out;
  if (z == Complex(0.0)) {
    out.converged = true;
    return out;
  }
  auto integrand = [&](double s) { return f(s * z) * g.derivative(s * z) * z; };
  const auto est = quad::gauss_kronrod<Complex>(integrand, 0.0, 1.0, tolerance, 1e-16, 1, 4000);
  out.value = est.value;
  out.error = est.error;
  out.converged = est.converged;
  return out;
}

LittlewoodPaley littlewood_paley_ratio(const AnalyticMap& f, double p, const Weight& omega,
                                       const QuadratureConfig& cfg) {
  if (!(p > 0.0)) throw DomainError("littlewood_paley_ratio: p must be positive");
  const auto lhs = integrate_disk([&](Complex z) { return std::pow(std::abs(f(z)), p) * omega(z); }, cfg);
  const auto tail = integrate_disk(
      [&](Complex z) {
        return std::pow(std::abs(f.derivative(z)) * (1.0 - std::norm(z)), p) * omega(z);
      },
      cfg);
  LittlewoodPaley out;
  out.lhs = lhs.value;
  out.rhs = std::pow(std::abs(f(0.0)), p) + tail.value;
  if (out.rhs == 0.0) throw DomainError("littlewood_paley_ratio: f vanishes identically");
  out.ratio = out.lhs / out.rhs;
  out.converged = lhs.converged && tail.converged;
  return out;
}

FengMacGregor feng_macgregor_ratio(const AnalyticMap& f, double b, const QuadratureConfig& cfg) {
  if (!(b >= 0.0 && b < 2.0 / 3.0)) throw DomainError("feng_macgregor_ratio: b must lie in [0, 2/3)");
  FengMacGregor out;
  out.integral = brennan_integral(f.deriv, b, cfg);
  out.ratio = out.integral.value / std::pow(std::abs(f.derivative(0.0)), b);
  return out;
}

}  // namespace gftlab
