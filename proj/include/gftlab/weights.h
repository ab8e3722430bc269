#pragma once

#include <string>
#include <vector>

#include "gftlab/disk_integration.h"
#include "gftlab/semigroup.h"
#include "gftlab/weight.h"

namespace gftlab {

/// omega = |h'|^p. The singular set holds the Denjoy-Wolff point when h
/// records one on the boundary.
Weight koenigs_weight(const AnalyticMap& h, double p);

/// B_q(eta) quotient of one box:
///   [int_S w dA_eta] [int_S w^{-1/(q-1)} dA_eta]^{q-1} / A_eta(S)^q.
struct BqQuotient {
  /// +infinity when either box integral diverges.
  double value = 0.0;
  bool diverges = false;
  bool converged = false;
  /// Quotient built from partial sums over the first j radial levels of the
  /// box (levels halve the distance to the circle). Without extrapolation, so
  /// it stays finite and exposes how a divergent dual integral grows.
  std::vector<double> profile;
  /// Growth of the profile over the last seven dyadic layers next to the
  /// circle. Close to 1 when both integrals converge; about 2^{7(a-1)} when the
  /// dual integrand blows up like (1 - |z|)^{-a}, a > 1.
  double profile_growth = 1.0;
};
BqQuotient bq_quotient(const Weight& omega, double q, double eta, const CarlesonBox& box,
                       const QuadratureConfig& cfg = {});

struct BoxQuotient {
  CarlesonBox box;
  int level = 0;
  long index = 0;
  double quotient = 0.0;
  bool diverges = false;
  bool converged = false;
};

struct BqReport {
  double q = 2.0;
  double eta = 0.0;
  int levels = 0;
  /// Ordered by (level, index).
  std::vector<BoxQuotient> boxes;
  double sup_quotient = 0.0;
  /// level_maxima[l - 1] is the largest quotient among the level-l boxes.
  std::vector<double> level_maxima;
  /// False when some level was sampled instead of enumerated in full.
  bool complete = true;
  bool any_divergent = false;
  bool all_converged = true;
  std::string family;
};

/// Scans the dyadic boxes S(2 pi j 2^{-l}, 2^{-l}), l = 1..levels (levels <= 12).
/// Levels above 8 are sampled with 256 evenly spread boxes including j = 0.
BqReport bq_sup_scan(const Weight& omega, double q, double eta, int levels, const QuadratureConfig& cfg = {},
                     int threads = 1);

/// max/min - 1 of the level maxima over levels first..last (1-based).
double level_variation(const BqReport& report, int first, int last);
/// Largest ratio max_l2 / max_l1 with first <= l1 < l2 <= last. Values above
/// 1.05 count as growth.
double level_growth(const BqReport& report, int first, int last);

/// Dyadic maximal quotient (1 / int_S w) int_S M(w 1_S) dA, with M restricted to
/// the dyadic tree below S: each node splits into a top Whitney half and two
/// child boxes S(theta -+ h/4, h/2); the tree stops at `depth`. M is constant
/// on every Whitney cell and leaf box, so the outer integral is a finite sum.
struct BInfinityReport {
  double quotient = 0.0;
  int depth = 0;
  std::size_t cells = 0;
  std::string discretization;
};
BInfinityReport b_infinity_quotient(const Weight& omega, const CarlesonBox& box, int depth,
                                    const QuadratureConfig& cfg = {});

/// [int w(v) / |1 - conj(z) v|^{gamma+2} dA(v)] (1 - |z|^2)^gamma / w(z).
struct KernelResidual {
  double value = 0.0;
  bool converged = false;
  double error_bound = 0.0;
};
KernelResidual kernel_domination_residual(const Weight& omega, double gamma, Complex z,
                                          const QuadratureConfig& cfg = {});

/// |phi_t'(z)|^{|p|} ((1 - |phi_t(z)|^2) / (1 - |z|^2))^2 for p in (-2, -1).
double composition_bound_residual(const SemigroupModel& m, double p, double t, Complex z);

struct GridInfimum {
  double infimum = 0.0;
  Complex argmin{0.0};
  std::string grid;
};
GridInfimum composition_bound_infimum(const SemigroupModel& m, double p, double t, const SampleGrid& grid);

/// Splits |h'|^p for a spirallike h with h' = lambda (h/z) u into
///   (|u|^r)^{p/r} (w1)^{(r-p)/r},   w1 = |h/z|^{pr/(r-p)},
/// and compares the kernel residual of |h'|^p at exponent
/// delta = 2p/r + gamma (r-p)/r with the Hoelder product of the residuals of
/// |u|^r (exponent 2) and w1 (exponent gamma). Requires r < p < 0.
struct HolderCheck {
  double delta = 0.0;
  double combined = 0.0;         // residual of |h'|^p at delta
  double u_factor = 0.0;         // residual of |u|^r at 2
  double omega1_factor = 0.0;    // residual of w1 at gamma
  double holder_bound = 0.0;     // u_factor^{p/r} * omega1_factor^{(r-p)/r}
  double factorization_mismatch = 0.0;  // max relative gap |h'|^p vs split form on a probe set
  bool converged = false;
};
HolderCheck holder_combination_check(const AnalyticMap& h, double p, double r, double gamma, Complex z,
                                     const QuadratureConfig& cfg = {});

}  // namespace gftlab
