#include "gftlab/core_geometry.h"

#include <algorithm>
#include <cmath>

#include "gftlab/errors.h"

namespace gftlab {

DiskPoint::DiskPoint(Complex z) : value_(z) {
  if (!(std::norm(z) < 1.0)) {
    throw DomainError("DiskPoint: interior point must satisfy |z| < 1");
  }
}

DiskPoint DiskPoint::boundary(double angle) {
  return DiskPoint(std::polar(1.0, angle), true);
}

DiskPoint DiskPoint::boundary_toward(Complex zeta) {
  if (zeta == Complex(0.0)) {
    throw DomainError("DiskPoint: boundary direction must be nonzero");
  }
  // Exact for the four axis directions so that 1, -1, i, -i stay exact.
  if (zeta.imag() == 0.0) return DiskPoint(Complex(zeta.real() > 0 ? 1.0 : -1.0, 0.0), true);
  if (zeta.real() == 0.0) return DiskPoint(Complex(0.0, zeta.imag() > 0 ? 1.0 : -1.0), true);
  return boundary(std::arg(zeta));
}

double DiskPoint::angle() const { return normalize_angle(std::arg(value_)); }

double normalize_angle(double angle) {
  double a = std::fmod(angle, kTwoPi);
  if (a < 0.0) a += kTwoPi;
  if (a >= kTwoPi) a = 0.0;
  return a;
}

double angular_distance(double a, double b) {
  const double d = std::fmod(std::abs(a - b), kTwoPi);
  return std::min(d, kTwoPi - d);
}

MobiusAutomorphism::MobiusAutomorphism(DiskPoint w) : w_(w) {
  if (w.on_boundary()) {
    throw DomainError("MobiusAutomorphism: center must lie in the open disk");
  }
}

Complex MobiusAutomorphism::operator()(Complex z) const {
  const Complex w = w_.value();
  const Complex denom = 1.0 - std::conj(w) * z;
  if (denom == Complex(0.0)) {
    throw DomainError("mobius_apply: degenerate denominator");
  }
  return (w - z) / denom;
}

Complex MobiusAutomorphism::derivative(Complex z) const {
  const Complex w = w_.value();
  const Complex denom = 1.0 - std::conj(w) * z;
  return (std::norm(w) - 1.0) / (denom * denom);
}

DiskPoint mobius_apply(const MobiusAutomorphism& t, const DiskPoint& z) {
  const Complex image = t(z.value());
  if (z.on_boundary()) return DiskPoint::boundary_toward(image);
  // Rounding can push images of points very close to the circle onto it.
  if (!(std::norm(image) < 1.0)) {
    throw DomainError("mobius_apply: image of an interior point rounded onto the circle");
  }
  return DiskPoint(image);
}

CarlesonBox::CarlesonBox(double theta, double h) : theta_(normalize_angle(theta)), h_(h) {
  if (!(h > 0.0 && h <= 1.0)) {
    throw DomainError("CarlesonBox: side length must satisfy 0 < h <= 1");
  }
}

bool box_contains(const CarlesonBox& box, const DiskPoint& z) {
  if (z.on_boundary()) return false;
  const double r = z.modulus();
  if (!(r > 1.0 - box.h() && r < 1.0)) return false;
  return angular_distance(z.angle(), box.theta()) < 0.5 * box.h();
}

double box_measure(const CarlesonBox& box, double eta) {
  if (!(eta > -1.0)) throw DomainError("box_measure: eta must exceed -1");
  const double h = box.h();
  return h / kTwoPi * std::pow(2.0 * h - h * h, 1.0 + eta);
}

DiskPoint box_center(const CarlesonBox& box) {
  return DiskPoint(std::polar(1.0 - 0.5 * box.h(), box.theta()));
}

}  // namespace gftlab
