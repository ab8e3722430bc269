#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gftlab/core_geometry.h"
#include "gftlab/sampling.h"

namespace gftlab {

/// Finite positive atomic measure on the unit circle, plus an optional
/// imaginary constant for the Herglotz formula.
class HerglotzMeasure {
 public:
  struct Atom {
    DiskPoint zeta;  // boundary-tagged
    double mass;
  };

  /// Throws DomainError unless every atom is on the boundary with positive mass
  /// and the list is nonempty.
  HerglotzMeasure(std::vector<Atom> atoms, double imaginary_offset = 0.0);

  const std::vector<Atom>& atoms() const { return atoms_; }
  double imaginary_offset() const { return imaginary_offset_; }
  double total_mass() const;
  /// u(0) = total_mass + i * offset.
  Complex value_at_zero() const { return Complex(total_mass(), imaginary_offset_); }

 private:
  std::vector<Atom> atoms_;
  double imaginary_offset_ = 0.0;
};

/// u(z) = i c + sum_j c_j (zeta_j + z) / (zeta_j - z).
Complex herglotz_eval(const HerglotzMeasure& mu, Complex z);
/// sum_j c_j / (zeta_j - z).
Complex cauchy_transform(const HerglotzMeasure& mu, Complex z);

/// Data kept alongside a map built from a Herglotz measure.
struct SpirallikeData {
  Complex lambda;
  HerglotzMeasure mu;
};

/// A holomorphic function on the disk with its derivative and metadata.
struct AnalyticMap {
  std::function<Complex(Complex)> eval;
  std::function<Complex(Complex)> deriv;
  std::string label;
  Complex value_at_zero{0.0};
  Complex deriv_at_zero{1.0};
  /// Zero of h for spirallike maps, Denjoy-Wolff point for Koenigs maps.
  std::optional<DiskPoint> fixed_point;
  bool conformal = true;
  /// Maps the disk into itself.
  bool self_map = false;
  std::shared_ptr<const SpirallikeData> spirallike;

  Complex operator()(Complex z) const { return eval(z); }
  Complex derivative(Complex z) const { return deriv(z); }
};

AnalyticMap make_identity();
/// k(z) = z / (1 - z)^2.
AnalyticMap make_koebe();
/// g(z) = (conj(c) z + c) / (1 - z), onto the right half-plane. Requires Re c > 0.
AnalyticMap make_half_plane_map(Complex c);
/// h(z) = i (1 + z) / (1 - z), starlike at infinity with respect to 1.
AnalyticMap make_parabolic_koenigs();
/// h(z) = i log((1 + z) / (1 - z)), onto the vertical strip |Re w| < pi/2.
AnalyticMap make_strip_koenigs();
/// h(z) = arcsin(i (1 + z) / (1 - z)), onto the half-strip |Re w| < pi/2, Im w > 0.
AnalyticMap make_half_strip_koenigs();

/// How make_spirallike evaluates log(h(z) / z) = int_0^z (lambda u(w) - 1) / w dw.
enum class RadialIntegral {
  /// Sum of -2 lambda c_j log(1 - conj(zeta_j) z): exact for atomic measures.
  closed_form,
  /// Adaptive Gauss-Kronrod along [0, z]; the divided difference (u(w) - u(0)) / w
  /// goes through the Cauchy transform, so there is no removable singularity at 0.
  quadrature,
};

/// lambda-spirallike map h(z) = z exp(int_0^z (lambda u(w) - 1) / w dw) with u the
/// Herglotz function of mu. Requires |lambda * u(0) - 1| <= 1e-12 (DomainError
/// otherwise). `tolerance` is the relative target of the quadrature variant.
AnalyticMap make_spirallike(Complex lambda, HerglotzMeasure mu, RadialIntegral method = RadialIntegral::closed_form,
                            double tolerance = 1e-12);

/// z^n.
AnalyticMap make_monomial(int n);
/// 1 / (1 - a z), |a| <= 1.
AnalyticMap make_simple_pole(Complex a);
/// log(1 / (1 - z)).
AnalyticMap make_log_pole();
/// f(s z) for |s| <= 1.
AnalyticMap make_dilation(const AnalyticMap& f, Complex s);
/// f(z^2).
AnalyticMap make_square_argument(const AnalyticMap& f);
/// (f - f(0)) / f'(0).
AnalyticMap make_normalized(const AnalyticMap& f);

/// max over the grid of max(0, -Re[(1/lambda)(z - tau)(1 - conj(tau) z) h'(z) / h(z)]).
/// The point z = tau is skipped.
double verify_spirallike(const AnalyticMap& h, Complex lambda, Complex tau, const SampleGrid& grid);
/// Same quantity over an explicit point list.
double verify_spirallike(const AnalyticMap& h, Complex lambda, Complex tau,
                         const std::vector<Complex>& points);

/// max over the grid of max(0, -Im[conj(tau)(tau - z)^2 h'(z)]).
double verify_starlike_at_infinity(const AnalyticMap& h, const DiskPoint& tau, const SampleGrid& grid);

/// Grid maximum of (1 - |z|^2)|g'(z)|, a lower bound for the Bloch seminorm.
struct BlochEstimate {
  double value = 0.0;
  Complex argmax{0.0};
  std::string grid;
};
BlochEstimate bloch_seminorm(const AnalyticMap& g, const SampleGrid& grid);

/// Signed slack in the three two-sided Koebe distortion bounds at z, each
/// relative to the bound it is measured against: min((v - lo)/lo, (hi - v)/hi).
/// Nonnegative means the bound holds. At z = 0 the limiting values are used.
struct DistortionResiduals {
  double growth = 0.0;
  double derivative = 0.0;
  double ratio = 0.0;
  double min() const;
};
DistortionResiduals koebe_distortion_check(const AnalyticMap& f, Complex z);

}  // namespace gftlab
