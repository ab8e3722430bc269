#pragma once

#include <complex>
#include <numbers>

namespace gftlab {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// A point of the closed unit disk.
///
/// Interior points satisfy |z| < 1. Boundary points carry an explicit tag and
/// are stored by angle, so their modulus is 1 by construction rather than by
/// floating-point accident.
class DiskPoint {
 public:
  /// Interior point. Throws DomainError when |z| >= 1.
  explicit DiskPoint(Complex z);
  DiskPoint(double re, double im) : DiskPoint(Complex(re, im)) {}

  /// Boundary point e^{i angle}.
  static DiskPoint boundary(double angle);
  /// Boundary point in the direction of zeta (zeta != 0).
  static DiskPoint boundary_toward(Complex zeta);

  Complex value() const { return value_; }
  double re() const { return value_.real(); }
  double im() const { return value_.imag(); }
  bool on_boundary() const { return on_boundary_; }
  /// Angle in [0, 2pi).
  double angle() const;
  double modulus() const { return on_boundary_ ? 1.0 : std::abs(value_); }

 private:
  DiskPoint(Complex z, bool boundary) : value_(z), on_boundary_(boundary) {}

  Complex value_;
  bool on_boundary_ = false;
};

/// Reduce an angle to [0, 2pi).
double normalize_angle(double angle);
/// Shortest distance between two angles on the circle, in [0, pi].
double angular_distance(double a, double b);

/// Disk automorphism T_w(z) = (w - z) / (1 - conj(w) z).
class MobiusAutomorphism {
 public:
  explicit MobiusAutomorphism(DiskPoint w);

  DiskPoint center() const { return w_; }
  Complex operator()(Complex z) const;
  Complex derivative(Complex z) const;

 private:
  DiskPoint w_;
};

/// Applies T_w to z. Interior maps to interior, boundary maps to boundary.
/// Throws DomainError on the degenerate pole (|w| = |z| = 1, conj(w) z = 1).
DiskPoint mobius_apply(const MobiusAutomorphism& t, const DiskPoint& z);

/// Carleson box S(theta, h) = { r e^{it} : 1 - h < r < 1, |t - theta| < h / 2 }.
class CarlesonBox {
 public:
  /// Throws DomainError unless 0 < h <= 1.
  CarlesonBox(double theta, double h);

  double theta() const { return theta_; }
  double h() const { return h_; }
  double angle_lo() const { return theta_ - 0.5 * h_; }
  double angle_hi() const { return theta_ + 0.5 * h_; }

 private:
  double theta_;
  double h_;
};

bool box_contains(const CarlesonBox& box, const DiskPoint& z);

/// A_eta(S) for dA_eta = (1 + eta)(1 - |z|^2)^eta dA, with A(D) = 1.
/// Closed form (h / 2pi) (2h - h^2)^{1 + eta}. Throws DomainError for eta <= -1.
double box_measure(const CarlesonBox& box, double eta);

/// (1 - h/2) e^{i theta}.
DiskPoint box_center(const CarlesonBox& box);

}  // namespace gftlab
