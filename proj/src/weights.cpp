#include "gftlab/weights.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "gftlab/errors.h"
#include "gftlab/parallel.h"
#include "gftlab/quadrature.h"

namespace gftlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string format_real(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

PolarRegion region_of(const CarlesonBox& box) { return PolarRegion{box.h(), box.angle_lo(), box.angle_hi()}; }

// int over {r_lo < r < r_hi, a_lo < t < a_hi} of g in dA, tensor Gauss-Legendre.
double tensor_cell(const Weight& g, double r_lo, double r_hi, double a_lo, double a_hi,
                   const quad::GaussRule& rule) {
  const double rm = 0.5 * (r_lo + r_hi), rh = 0.5 * (r_hi - r_lo);
  const double am = 0.5 * (a_lo + a_hi), ah = 0.5 * (a_hi - a_lo);
  double acc = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double r = rm + rh * rule.nodes[i];
    double inner = 0.0;
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
      inner += rule.weights[k] * g(std::polar(r, am + ah * rule.nodes[k]));
    }
    acc += rule.weights[i] * r * inner;
  }
  return acc * rh * ah / kPi;
}

}  // namespace

Weight unit_weight() { return Weight{[](Complex) { return 1.0; }, "one", {}}; }

Weight power_weight(double alpha) {
  if (!std::isfinite(alpha)) throw DomainError("power_weight: exponent must be finite");
  return Weight{[alpha](Complex z) { return std::pow(1.0 - std::norm(z), alpha); }, "power:alpha=" + format_real(alpha),
                {}};
}

Weight scaled_weight(const Weight& w, double c) {
  if (!(c > 0.0) || !std::isfinite(c)) throw DomainError("scaled_weight: constant must be positive");
  auto inner = w.eval;
  return Weight{[inner, c](Complex z) { return inner(z) / c; }, w.label + "/" + format_real(c), w.singular_set};
}

Weight koenigs_weight(const AnalyticMap& h, double p) {
  auto deriv = h.deriv;
  Weight w{[deriv, p](Complex z) { return std::pow(std::abs(deriv(z)), p); },
           "koenigs:p=" + format_real(p) + ";map=" + h.label,
           {}};
  if (h.fixed_point && h.fixed_point->on_boundary()) w.singular_set.push_back(*h.fixed_point);
  return w;
}

BqQuotient bq_quotient(const Weight& omega, double q, double eta, const CarlesonBox& box,
                       const QuadratureConfig& cfg) {
  if (!(q > 1.0)) throw DomainError("bq_quotient: q must exceed 1");
  if (!(eta > -1.0)) throw DomainError("bq_quotient: eta must exceed -1");
  const double area = box_measure(box, eta);
  auto density = [eta](Complex z) { return eta == 0.0 ? 1.0 : (1.0 + eta) * std::pow(1.0 - std::norm(z), eta); };
  const double dual_exponent = -1.0 / (q - 1.0);
  const PolarRegion region = region_of(box);
  const auto direct = integrate_polar_region([&](Complex z) { return omega(z) * density(z); }, region, cfg);
  const auto dual = integrate_polar_region(
      [&](Complex z) { return std::pow(omega(z), dual_exponent) * density(z); }, region, cfg);

  BqQuotient out;
  auto quotient = [&](double a, double b) { return a * std::pow(b, q - 1.0) / std::pow(area, q); };
  double partial_direct = 0.0, partial_dual = 0.0;
  for (std::size_t j = 0; j < direct.level_sums.size(); ++j) {
    partial_direct += direct.level_sums[j];
    partial_dual += dual.level_sums[j];
    out.profile.push_back(quotient(partial_direct, partial_dual));
  }
  if (out.profile.size() >= 8) out.profile_growth = out.profile.back() / out.profile[out.profile.size() - 8];

  if (direct.divergence_suspected || dual.divergence_suspected) {
    out.value = kInf;
    out.diverges = true;
    return out;
  }
  out.value = quotient(direct.value, dual.value);
  out.converged = direct.converged && dual.converged;
  return out;
}

BqReport bq_sup_scan(const Weight& omega, double q, double eta, int levels, const QuadratureConfig& cfg,
                     int threads) {
  if (levels < 1 || levels > 12) throw DomainError("bq_sup_scan: levels must lie in 1..12");
  constexpr int kFullLevels = 8;
  constexpr long kSampledBoxes = 256;
  BqReport report;
  report.q = q;
  report.eta = eta;
  report.levels = levels;
  for (int l = 1; l <= levels; ++l) {
    const long count = 1L << l;
    const double h = std::ldexp(1.0, -l);
    if (l <= kFullLevels) {
      for (long j = 0; j < count; ++j) report.boxes.push_back({CarlesonBox(kTwoPi * j * h, h), l, j});
    } else {
      report.complete = false;
      for (long k = 0; k < kSampledBoxes; ++k) {
        const long j = k * (count / kSampledBoxes);
        report.boxes.push_back({CarlesonBox(kTwoPi * j * h, h), l, j});
      }
    }
  }
  std::ostringstream family;
  family << "dyadic S(2*pi*j*2^-l, 2^-l), l=1.." << levels;
  if (!report.complete) family << " (" << kSampledBoxes << " boxes per level above " << kFullLevels << ")";
  report.family = family.str();

  parallel_for(report.boxes.size(), threads, [&](std::size_t i) {
    auto& b = report.boxes[i];
    const auto bq = bq_quotient(omega, q, eta, b.box, cfg);
    b.quotient = bq.value;
    b.diverges = bq.diverges;
    b.converged = bq.converged;
  });

  report.level_maxima.assign(levels, 0.0);
  for (const auto& b : report.boxes) {
    report.level_maxima[b.level - 1] = std::max(report.level_maxima[b.level - 1], b.quotient);
    report.sup_quotient = std::max(report.sup_quotient, b.quotient);
    report.any_divergent = report.any_divergent || b.diverges;
    report.all_converged = report.all_converged && (b.converged || b.diverges);
  }
  return report;
}

double level_variation(const BqReport& report, int first, int last) {
  if (first < 1 || last > report.levels || first > last) throw DomainError("level_variation: bad level range");
  const auto begin = report.level_maxima.begin() + (first - 1);
  const auto end = report.level_maxima.begin() + last;
  const double hi = *std::max_element(begin, end);
  const double lo = *std::min_element(begin, end);
  if (!std::isfinite(hi)) return kInf;
  return hi / lo - 1.0;
}

double level_growth(const BqReport& report, int first, int last) {
  if (first < 1 || last > report.levels || first >= last) throw DomainError("level_growth: bad level range");
  double growth = 0.0;
  for (int a = first; a < last; ++a) {
    for (int b = a + 1; b <= last; ++b) {
      const double lo = report.level_maxima[a - 1];
      const double hi = report.level_maxima[b - 1];
      if (!std::isfinite(hi)) return kInf;
      growth = std::max(growth, hi / lo);
    }
  }
  return growth;
}

BInfinityReport b_infinity_quotient(const Weight& omega, const CarlesonBox& box, int depth,
                                    const QuadratureConfig& cfg) {
  if (depth < 0 || depth > 10) throw DomainError("b_infinity_quotient: depth must lie in 0..10");
  const std::size_t nodes = (std::size_t{2} << depth) - 1;
  const std::size_t first_leaf = (std::size_t{1} << depth) - 1;
  const auto rule = quad::gauss_legendre(16);

  std::vector<double> whitney(nodes, 0.0), total(nodes, 0.0), area(nodes, 0.0), whitney_area(nodes, 0.0);
  auto geometry = [&](std::size_t i, double& a_lo, double& h) {
    int d = 0;
    while (((std::size_t{2} << d) - 1) <= i) ++d;
    const std::size_t k = i - ((std::size_t{1} << d) - 1);
    h = std::ldexp(box.h(), -d);
    a_lo = box.angle_lo() + static_cast<double>(k) * h;
  };

  for (std::size_t i = nodes; i-- > 0;) {
    double a_lo = 0.0, h = 0.0;
    geometry(i, a_lo, h);
    area[i] = box_measure(CarlesonBox(a_lo + 0.5 * h, h), 0.0);
    if (i >= first_leaf) {
      const auto est = integrate_polar_region(omega.eval, PolarRegion{h, a_lo, a_lo + h}, cfg);
      if (est.divergence_suspected || !std::isfinite(est.value)) {
        throw NumericalError("b_infinity_quotient: weight not integrable on a leaf box");
      }
      total[i] = est.value;
    } else {
      whitney[i] = tensor_cell(omega, 1.0 - h, 1.0 - 0.5 * h, a_lo, a_lo + h, rule);
      whitney_area[i] = h / kTwoPi * ((1.0 - 0.5 * h) * (1.0 - 0.5 * h) - (1.0 - h) * (1.0 - h));
      total[i] = whitney[i] + total[2 * i + 1] + total[2 * i + 2];
    }
  }

  std::vector<double> running_max(nodes, 0.0);
  double maximal_integral = 0.0;
  for (std::size_t i = 0; i < nodes; ++i) {
    const double average = total[i] / area[i];
    running_max[i] = i == 0 ? average : std::max(running_max[(i - 1) / 2], average);
    maximal_integral += (i >= first_leaf ? area[i] : whitney_area[i]) * running_max[i];
  }

  BInfinityReport report;
  report.quotient = maximal_integral / total[0];
  report.depth = depth;
  report.cells = nodes;
  std::ostringstream os;
  os << "dyadic tree depth " << depth << " below S(" << box.theta() << "," << box.h()
     << "): Whitney halves by 16x16 Gauss-Legendre, leaf boxes by polar quadrature";
  report.discretization = os.str();
  return report;
}

KernelResidual kernel_domination_residual(const Weight& omega, double gamma, Complex z, const QuadratureConfig& cfg) {
  if (!(gamma > 0.0)) throw DomainError("kernel_domination_residual: gamma must be positive");
  if (!(std::norm(z) < 1.0)) throw DomainError("kernel_domination_residual: z must lie in the open disk");
  const Complex zc = std::conj(z);
  const double power = gamma + 2.0;
  // Start the angular range at arg z so the kernel peak sits on a panel edge.
  const double start = z == Complex(0.0) ? 0.0 : std::arg(z);
  const auto est = integrate_polar_region(
      [&](Complex w) { return omega(w) / std::pow(std::abs(1.0 - zc * w), power); },
      PolarRegion{1.0, start, start + kTwoPi}, cfg);
  const double scale = std::pow(1.0 - std::norm(z), gamma) / omega(z);
  KernelResidual out;
  out.value = est.divergence_suspected ? kInf : est.value * scale;
  out.error_bound = est.error_bound * scale;
  out.converged = est.converged;
  return out;
}

double composition_bound_residual(const SemigroupModel& m, double p, double t, Complex z) {
  if (!(p > -2.0 && p < -1.0)) throw DomainError("composition_bound_residual: p must lie in (-2, -1)");
  if (!(t >= 0.0)) throw DomainError("composition_bound_residual: t must be nonnegative");
  const Complex phi = evolve(m, z, t);
  const Complex dphi = phi_deriv(m, z, t);
  const double ratio = (1.0 - std::norm(phi)) / (1.0 - std::norm(z));
  return std::pow(std::abs(dphi), -p) * ratio * ratio;
}

GridInfimum composition_bound_infimum(const SemigroupModel& m, double p, double t, const SampleGrid& grid) {
  GridInfimum out;
  out.infimum = kInf;
  out.grid = grid.describe();
  for (Complex z : grid.points()) {
    const double v = composition_bound_residual(m, p, t, z);
    if (v < out.infimum) {
      out.infimum = v;
      out.argmin = z;
    }
  }
  return out;
}

HolderCheck holder_combination_check(const AnalyticMap& h, double p, double r, double gamma, Complex z,
                                     const QuadratureConfig& cfg) {
  if (!h.spirallike) throw DomainError("holder_combination_check: map carries no Herglotz data");
  if (!(r < p && p < 0.0)) throw DomainError("holder_combination_check: need r < p < 0");
  if (!(gamma > 0.0)) throw DomainError("holder_combination_check: gamma must be positive");
  const auto data = h.spirallike;
  auto quotient = [h](Complex w) { return w == Complex(0.0) ? h.deriv_at_zero : h(w) / w; };
  const double e1 = p * r / (r - p);

  const Weight full{[h, p](Complex w) { return std::pow(std::abs(h.derivative(w)), p); }, "|h'|^p", {}};
  const Weight u_weight{[data, r](Complex w) { return std::pow(std::abs(herglotz_eval(data->mu, w)), r); }, "|u|^r",
                        {}};
  const Weight w1{[quotient, e1](Complex w) { return std::pow(std::abs(quotient(w)), e1); }, "|h/z|^(pr/(r-p))", {}};

  HolderCheck out;
  out.delta = 2.0 * p / r + gamma * (r - p) / r;
  const auto combined = kernel_domination_residual(full, out.delta, z, cfg);
  const auto uf = kernel_domination_residual(u_weight, 2.0, z, cfg);
  const auto of = kernel_domination_residual(w1, gamma, z, cfg);
  out.combined = combined.value;
  out.u_factor = uf.value;
  out.omega1_factor = of.value;
  out.holder_bound = std::pow(uf.value, p / r) * std::pow(of.value, (r - p) / r);
  out.converged = combined.converged && uf.converged && of.converged;

  const double lambda_factor = std::pow(std::abs(data->lambda), p);
  for (int k = 0; k < 64; ++k) {
    const Complex w = std::polar(0.95 * (k + 1) / 64.0, kTwoPi * 0.6180339887498949 * k);
    const double direct = full(w);
    const double split = lambda_factor * std::pow(u_weight(w), p / r) * std::pow(w1(w), (r - p) / r);
    out.factorization_mismatch = std::max(out.factorization_mismatch, std::abs(direct - split) / direct);
  }
  return out;
}

}  // namespace gftlab
