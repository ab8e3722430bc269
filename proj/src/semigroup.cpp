#include "gftlab/semigroup.h"

#include <cmath>
#include <sstream>
#include <limits>
#include <vector>

#include "gftlab/errors.h"

namespace gftlab {

namespace {

constexpr Complex kI(0.0, 1.0);

void require_time(double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError("semigroup: time must be finite and >= 0");
}

}  // namespace

Complex psi(const SemigroupClass& kind, double t, Complex w) {
  require_time(t);
  if (kind.elliptic) return std::exp(-kind.lambda * t) * w;
  return w + kI * t;
}

SemigroupModel make_elliptic_model(const AnalyticMap& h, Complex lambda) {
  if (!(lambda.real() >= 0.0)) throw DomainError("elliptic model: Re lambda must be >= 0");
  if (std::abs(h(0.0)) > 1e-12) throw DomainError("elliptic model: Koenigs map must vanish at 0");
  SemigroupModel m;
  m.koenigs = h;
  m.kind = {true, lambda};
  m.dw_point = DiskPoint(0.0, 0.0);
  std::ostringstream os;
  os << "elliptic:lambda=" << lambda.real();
  if (lambda.imag() != 0.0) os << (lambda.imag() < 0 ? "" : "+") << lambda.imag() << "i";
  os << ";koenigs=" << h.label;
  m.label = os.str();
  return m;
}

SemigroupModel make_identity_elliptic_model(Complex lambda) {
  SemigroupModel m = make_elliptic_model(make_identity(), lambda);
  m.closed_form = ClosedForm{
      [lambda](Complex z, double t) { return std::exp(-lambda * t) * z; },
      [lambda](Complex, double t) { return std::exp(-lambda * t); }};
  return m;
}

SemigroupModel make_non_elliptic_model(const AnalyticMap& h, const DiskPoint& tau, double boundary_rate) {
  if (!tau.on_boundary()) throw DomainError("non-elliptic model: tau must be a boundary point");
  if (!(boundary_rate >= 0.0)) throw DomainError("non-elliptic model: boundary rate must be >= 0");
  SemigroupModel m;
  m.koenigs = h;
  m.kind = {false, boundary_rate};
  m.dw_point = tau;
  m.label = (boundary_rate == 0.0 ? "parabolic:koenigs=" : "hyperbolic:koenigs=") + h.label;
  return m;
}

SemigroupModel make_parabolic_model() {
  SemigroupModel m = make_non_elliptic_model(make_parabolic_koenigs(), DiskPoint::boundary(0.0), 0.0);
  m.label = "parabolic:canonical";
  m.closed_form = ClosedForm{
      [](Complex z, double t) { return (z * (2.0 - t) + t) / ((2.0 + t) - t * z); },
      [](Complex z, double t) {
        const Complex d = (2.0 + t) - t * z;
        return 4.0 / (d * d);
      }};
  return m;
}

SemigroupModel make_strip_model() {
  SemigroupModel m = make_non_elliptic_model(make_strip_koenigs(), DiskPoint::boundary(0.0), 1.0);
  m.label = "hyperbolic:strip";
  m.closed_form = ClosedForm{
      [](Complex z, double t) { return std::tanh(std::atanh(z) + 0.5 * t); },
      [](Complex z, double t) {
        const Complex phi = std::tanh(std::atanh(z) + 0.5 * t);
        return (1.0 - phi * phi) / (1.0 - z * z);
      }};
  return m;
}

SemigroupModel make_half_strip_model() {
  SemigroupModel m = make_non_elliptic_model(make_half_strip_koenigs(), DiskPoint::boundary(0.0), 1.0);
  m.label = "hyperbolic:half-strip";
  const AnalyticMap h = m.koenigs;
  m.closed_form = ClosedForm{
      [h](Complex z, double t) {
        const Complex s = std::sin(h(z) + kI * t);
        return (s - kI) / (s + kI);
      },
      [h](Complex z, double t) {
        const Complex w = h(z) + kI * t;
        const Complex s = std::sin(w);
        // d/dz of (s - i)/(s + i) = 2i s' / (s + i)^2 with s' = cos(w) h'(z).
        return 2.0 * kI * std::cos(w) * h.derivative(z) / ((s + kI) * (s + kI));
      }};
  return m;
}

SemigroupModel without_closed_form(SemigroupModel m) {
  m.closed_form.reset();
  return m;
}

std::optional<Complex> invert_koenigs(const AnalyticMap& h, Complex target, Complex seed,
                                      const NewtonOptions& opts) {
  Complex x = seed;
  const double scale = std::max(1.0, std::abs(target));
  for (int it = 0; it < opts.max_iterations; ++it) {
    const Complex residual = h(x) - target;
    if (!std::isfinite(std::abs(residual))) return std::nullopt;
    if (std::abs(residual) <= opts.tolerance * scale) return x;
    const Complex d = h.derivative(x);
    if (d == Complex(0.0)) return std::nullopt;
    const Complex step = residual / d;
    double damping = 1.0;
    Complex next = x - step;
    while (!(std::norm(next) < 1.0)) {
      damping *= 0.5;
      if (damping < 1e-12) return std::nullopt;
      next = x - damping * step;
    }
    // Stagnation at rounding level: accept only if the residual is already small.
    if (std::abs(next - x) <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(x)) {
      if (std::abs(residual) <= 1e-8 * scale) return next;
      return std::nullopt;
    }
    x = next;
  }
  const Complex residual = h(x) - target;
  if (std::abs(residual) <= opts.tolerance * scale) return x;
  return std::nullopt;
}

Complex evolve(const SemigroupModel& m, Complex z, double t) {
  require_time(t);
  if (!(std::norm(z) < 1.0)) throw DomainError("evolve: z must lie in the open disk");
  if (t == 0.0) return z;
  if (m.closed_form) return m.closed_form->phi(z, t);

  const Complex w0 = m.koenigs(z);
  const Complex target = psi(m.kind, t, w0);
  if (auto x = invert_koenigs(m.koenigs, target, z, m.newton)) return *x;
  // Near a critical point of h on the circle (the slit tip of Koebe) Newton from z
  // stalls; the linearized flow e^{-lambda t} z is then a better start.
  if (m.kind.elliptic) {
    if (auto x = invert_koenigs(m.koenigs, target, std::exp(-m.kind.lambda * t) * z, m.newton)) return *x;
  }

  for (int n = 2; n <= m.newton.max_substeps; n *= 2) {
    Complex x = z;
    bool ok = true;
    for (int k = 1; k <= n && ok; ++k) {
      auto next = invert_koenigs(m.koenigs, psi(m.kind, t * k / n, w0), x, m.newton);
      if (next) x = *next;
      else ok = false;
    }
    if (ok) return x;
  }
  throw NumericalError("evolve: Koenigs inversion did not converge");
}

Complex phi_deriv(const SemigroupModel& m, Complex z, double t) {
  require_time(t);
  if (t == 0.0) return 1.0;
  if (m.closed_form) return m.closed_form->dphi(z, t);
  const Complex phi = evolve(m, z, t);
  const Complex dh_phi = m.koenigs.derivative(phi);
  if (dh_phi == Complex(0.0)) throw NumericalError("phi_deriv: h' vanishes at phi_t(z)");
  const Complex dpsi = m.kind.elliptic ? std::exp(-m.kind.lambda * t) : Complex(1.0);
  return dpsi * m.koenigs.derivative(z) / dh_phi;
}

double semigroup_residual(const SemigroupModel& m, Complex z, double t, double s) {
  return std::abs(evolve(m, z, t + s) - evolve(m, evolve(m, z, s), t));
}

AnalyticMap make_iterate_map(const SemigroupModel& m, double t) {
  require_time(t);
  AnalyticMap f;
  f.eval = [m, t](Complex z) { return evolve(m, z, t); };
  f.deriv = [m, t](Complex z) { return phi_deriv(m, z, t); };
  std::ostringstream os;
  os << "iterate:t=" << t << ";model=" << m.label;
  f.label = os.str();
  f.value_at_zero = evolve(m, 0.0, t);
  f.deriv_at_zero = phi_deriv(m, 0.0, t);
  f.self_map = true;
  if (m.kind.elliptic) f.fixed_point = m.dw_point;
  return f;
}

AngularDerivative dw_derivative_check(const SemigroupModel& m, double t, int j_first, int j_last) {
  if (m.kind.elliptic) throw DomainError("dw_derivative_check: model must be non-elliptic");
  require_time(t);
  if (j_last - j_first < 2) throw DomainError("dw_derivative_check: need at least three radii");
  AngularDerivative out;
  out.expected = std::exp(-m.kind.lambda * t);
  if (t == 0.0) {
    out.estimate = 1.0;
    out.converged = true;
    return out;
  }
  const Complex tau = m.dw_point.value();
  constexpr int kMaxOrder = 4;
  std::vector<Complex> prev;
  Complex last_diag{0.0}, diag{0.0};
  for (int j = j_first; j <= j_last; ++j) {
    const double r = 1.0 - std::ldexp(1.0, -j);
    std::vector<Complex> row{phi_deriv(m, r * tau, t)};
    // Richardson in eps = 1 - r with ratio 2 between successive radii.
    for (int k = 1; k <= std::min<int>(prev.size(), kMaxOrder); ++k) {
      const double f = std::ldexp(1.0, k);
      row.push_back((f * row[k - 1] - prev[k - 1]) / (f - 1.0));
    }
    last_diag = diag;
    diag = row.back();
    prev = std::move(row);
  }
  out.estimate = diag;
  out.last_change = std::abs(diag - last_diag);
  out.converged = out.last_change <= 1e-6 * std::max(1.0, std::abs(diag));
  return out;
}

}  // namespace gftlab
