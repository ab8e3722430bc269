#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "gftlab/map_catalog.h"
#include "gftlab/weight.h"

namespace gftlab {

/// Polar quadrature settings. Levels are annuli r_{j-1} < r < r_j with
/// 1 - r_j = depth * first_gap * refinement^{j-1}, so the nodes approach the
/// boundary geometrically and never reach it.
struct QuadratureConfig {
  int radial_levels = 20;
  double first_gap = 0.5;
  double refinement = 0.5;
  int radial_nodes = 16;       // Gauss-Legendre nodes per annulus
  int angular_panels = 16;     // initial Gauss-Kronrod panels on the full circle
  int max_angular_panels = 4096;
  double tolerance = 1e-10;    // relative target per annulus
  double extrapolation_tolerance = 1e-4;
  std::size_t mc_samples = 1000000;
  std::uint64_t seed = 20240601;
};

/// Throws DomainError when the config violates its invariants.
void validate(const QuadratureConfig& cfg);

struct IntegralEstimate {
  double value = 0.0;
  double error_bound = 0.0;
  bool converged = false;
  bool divergence_suspected = false;
  /// Per-level contributions (quadrature) in order toward the boundary.
  std::vector<double> level_sums;
  int angular_cap_hits = 0;
  std::size_t rejected_samples = 0;
};

/// Region { 1 - depth < r < 1, angle_lo < t < angle_hi }; depth = 1 with a
/// full turn is the disk.
struct PolarRegion {
  double depth = 1.0;
  double angle_lo = 0.0;
  double angle_hi = kTwoPi;
};

/// Integral of g over the region in normalized area measure dA = r dr dt / pi.
///
/// Each annulus is integrated by Gauss-Legendre in r and adaptive Gauss-Kronrod
/// in the angle; the tail beyond the last level is extrapolated from the ratio
/// of the final level sums. Divergence is flagged when the last five level sums
/// grow with ratio above 1.05.
IntegralEstimate integrate_polar_region(const std::function<double(Complex)>& g, const PolarRegion& region,
                                        const QuadratureConfig& cfg);
IntegralEstimate integrate_disk(const std::function<double(Complex)>& g, const QuadratureConfig& cfg);

/// Tail extrapolation and convergence verdict from per-level sums.
IntegralEstimate extrapolate_levels(const std::vector<double>& level_sums, double quadrature_error,
                                    double extrapolation_tolerance);

/// int_D |f'|^p dA. Accepts p in (-3, 2).
IntegralEstimate brennan_integral(const std::function<Complex(Complex)>& fprime, double p,
                                  const QuadratureConfig& cfg = {});

/// Uniform Monte Carlo estimate (r = sqrt(u), theta uniform) with standard error
/// in error_bound. Non-finite samples are redrawn and counted. n >= 1000.
IntegralEstimate monte_carlo_brennan(const std::function<Complex(Complex)>& fprime, double p, std::size_t n,
                                     std::uint64_t seed);

/// (1/2pi) int |f(r e^{it})|^p dt by the n-point trapezoid rule, 0 < r < 1.
double circle_mean(const AnalyticMap& f, double p, double r, int n);
/// Trapezoid node count that resolves features of width ~ (1 - r).
int circle_nodes_for(double r);

/// Default radii 1 - 2^{-j}, j = 4..14.
std::vector<double> default_growth_radii();
/// Least-squares slope of log M_p(f, r) against -log(1 - r). At least four radii.
double growth_exponent_fit(const AnalyticMap& f, double p, const std::vector<double>& radii);

/// circle_mean(g) - circle_mean(f); nonnegative when f is subordinate to g.
double subordination_check(const AnalyticMap& f, const AnalyticMap& g, double p, double r);

struct ComplexEstimate {
  Complex value{0.0};
  double error = 0.0;
  bool converged = false;
};
/// T_g f (z) = int_0^z f(w) g'(w) dw along the radius [0, z].
ComplexEstimate apply_Tg(const AnalyticMap& f, const AnalyticMap& g, Complex z, double tolerance = 1e-12);

/// [int |f|^p w dA] / [|f(0)|^p + int |f'|^p (1 - |z|^2)^p w dA].
struct LittlewoodPaley {
  double ratio = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  bool converged = false;
};
LittlewoodPaley littlewood_paley_ratio(const AnalyticMap& f, double p, const Weight& omega,
                                       const QuadratureConfig& cfg = {});

/// brennan_integral(f', b) / |f'(0)|^b for b in [0, 2/3).
struct FengMacGregor {
  double ratio = 0.0;
  IntegralEstimate integral;
};
FengMacGregor feng_macgregor_ratio(const AnalyticMap& f, double b, const QuadratureConfig& cfg = {});

}  // namespace gftlab
