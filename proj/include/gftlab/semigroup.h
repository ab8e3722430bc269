#pragma once

#include <functional>
#include <optional>
#include <string>

#include "gftlab/map_catalog.h"

namespace gftlab {

/// Linear model of the semigroup: psi_t(w) = e^{-lambda t} w (elliptic) or
/// w + i t (non-elliptic).
struct SemigroupClass {
  bool elliptic = true;
  /// Elliptic: spiral rate. Non-elliptic: boundary rate, phi_t'(tau) = e^{-lambda t}.
  Complex lambda{1.0};
};

/// Exact phi_t and phi_t' for models where the Koenigs inversion is available
/// in closed form.
struct ClosedForm {
  std::function<Complex(Complex, double)> phi;
  std::function<Complex(Complex, double)> dphi;
};

struct NewtonOptions {
  int max_iterations = 50;
  double tolerance = 1e-13;  // on |h(x) - target| / max(1, |target|)
  int max_substeps = 1024;   // continuation fallback cap
};

/// Continuous semigroup phi_t = h^{-1} o psi_t o h.
struct SemigroupModel {
  std::string label;
  AnalyticMap koenigs;
  SemigroupClass kind;
  DiskPoint dw_point{0.0, 0.0};
  std::optional<ClosedForm> closed_form;
  NewtonOptions newton;
};

/// Elliptic model with Denjoy-Wolff point 0 from a lambda-spirallike Koenigs map
/// (h(0) must vanish).
SemigroupModel make_elliptic_model(const AnalyticMap& h, Complex lambda);
/// phi_t(z) = e^{-lambda t} z with the closed form attached.
SemigroupModel make_identity_elliptic_model(Complex lambda);
/// Non-elliptic model from a map starlike at infinity with respect to tau.
SemigroupModel make_non_elliptic_model(const AnalyticMap& h, const DiskPoint& tau, double boundary_rate);
/// h = i(1+z)/(1-z); phi_t(z) = (z(2-t) + t) / ((2+t) - t z).
SemigroupModel make_parabolic_model();
/// h = i log((1+z)/(1-z)); phi_t(z) = tanh(artanh z + t/2). A hyperbolic group.
SemigroupModel make_strip_model();
/// h = arcsin(i(1+z)/(1-z)); hyperbolic, not a group.
SemigroupModel make_half_strip_model();
/// Same model with the closed form removed, forcing numerical inversion.
SemigroupModel without_closed_form(SemigroupModel m);

/// psi_t(w). Throws DomainError for t < 0.
Complex psi(const SemigroupClass& kind, double t, Complex w);

/// Solves h(x) = target in the disk by damped Newton iteration from seed.
std::optional<Complex> invert_koenigs(const AnalyticMap& h, Complex target, Complex seed,
                                      const NewtonOptions& opts);

/// phi_t(z). Uses the closed form when present; otherwise Newton inversion seeded
/// at z, then continuation over substeps of [0, t]. Throws NumericalError rather
/// than return a point outside the disk.
Complex evolve(const SemigroupModel& m, Complex z, double t);
/// phi_t'(z) = psi_t'(h(z)) h'(z) / h'(phi_t(z)).
Complex phi_deriv(const SemigroupModel& m, Complex z, double t);
/// |phi_{t+s}(z) - phi_t(phi_s(z))|.
double semigroup_residual(const SemigroupModel& m, Complex z, double t, double s);

/// phi_t as an analytic self-map of the disk.
AnalyticMap make_iterate_map(const SemigroupModel& m, double t);

/// Radial limit of phi_t' at the boundary Denjoy-Wolff point, by Richardson
/// extrapolation in 1 - r over r_j = 1 - 2^{-j}.
struct AngularDerivative {
  Complex estimate{0.0};
  Complex expected{0.0};  // e^{-lambda t} from the construction
  double last_change = 0.0;
  bool converged = false;
};
AngularDerivative dw_derivative_check(const SemigroupModel& m, double t, int j_first = 4, int j_last = 12);

}  // namespace gftlab
