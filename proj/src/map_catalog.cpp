#include "gftlab/map_catalog.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "gftlab/errors.h"
#include "gftlab/quadrature.h"

namespace gftlab {

namespace {

constexpr Complex kI(0.0, 1.0);

void require_interior(Complex z, const char* what) {
  if (!(std::norm(z) < 1.0)) throw DomainError(std::string(what) + ": z must lie in the open disk");
}

std::string format_complex(Complex c) {
  std::ostringstream os;
  os.precision(12);
  os << c.real();
  if (c.imag() != 0.0) os << (c.imag() < 0 ? "" : "+") << c.imag() << "i";
  return os.str();
}

}  // namespace

HerglotzMeasure::HerglotzMeasure(std::vector<Atom> atoms, double imaginary_offset)
    : atoms_(std::move(atoms)), imaginary_offset_(imaginary_offset) {
  if (atoms_.empty()) throw DomainError("HerglotzMeasure: at least one atom required");
  for (const auto& a : atoms_) {
    if (!a.zeta.on_boundary()) throw DomainError("HerglotzMeasure: atoms must lie on the unit circle");
    if (!(a.mass > 0.0) || !std::isfinite(a.mass)) {
      throw DomainError("HerglotzMeasure: atom masses must be positive and finite");
    }
  }
}

double HerglotzMeasure::total_mass() const {
  double m = 0.0;
  for (const auto& a : atoms_) m += a.mass;
  return m;
}

Complex herglotz_eval(const HerglotzMeasure& mu, Complex z) {
  require_interior(z, "herglotz_eval");
  Complex u(0.0, mu.imaginary_offset());
  for (const auto& a : mu.atoms()) {
    const Complex zeta = a.zeta.value();
    u += a.mass * (zeta + z) / (zeta - z);
  }
  return u;
}

Complex cauchy_transform(const HerglotzMeasure& mu, Complex z) {
  require_interior(z, "cauchy_transform");
  Complex c(0.0);
  for (const auto& a : mu.atoms()) c += a.mass / (a.zeta.value() - z);
  return c;
}

AnalyticMap make_identity() {
  AnalyticMap m;
  m.eval = [](Complex z) { return z; };
  m.deriv = [](Complex) { return Complex(1.0); };
  m.label = "id";
  m.fixed_point = DiskPoint(0.0, 0.0);
  m.self_map = true;
  return m;
}

AnalyticMap make_koebe() {
  AnalyticMap m;
  m.eval = [](Complex z) {
    if (z == Complex(1.0)) throw DomainError("koebe: pole at z = 1");
    const Complex d = 1.0 - z;
    return z / (d * d);
  };
  m.deriv = [](Complex z) {
    if (z == Complex(1.0)) throw DomainError("koebe: pole at z = 1");
    const Complex d = 1.0 - z;
    return (1.0 + z) / (d * d * d);
  };
  m.label = "koebe";
  m.fixed_point = DiskPoint(0.0, 0.0);
  return m;
}

AnalyticMap make_half_plane_map(Complex c) {
  if (!(c.real() > 0.0)) throw DomainError("half-plane map: Re c must be positive");
  AnalyticMap m;
  m.eval = [c](Complex z) {
    if (z == Complex(1.0)) throw DomainError("half-plane map: pole at z = 1");
    return (std::conj(c) * z + c) / (1.0 - z);
  };
  m.deriv = [c](Complex z) {
    if (z == Complex(1.0)) throw DomainError("half-plane map: pole at z = 1");
    const Complex d = 1.0 - z;
    return 2.0 * c.real() / (d * d);
  };
  m.label = "half-plane:c=" + format_complex(c);
  m.value_at_zero = c;
  m.deriv_at_zero = 2.0 * c.real();
  return m;
}

AnalyticMap make_parabolic_koenigs() {
  AnalyticMap m;
  m.eval = [](Complex z) {
    if (z == Complex(1.0)) throw DomainError("parabolic-koenigs: pole at z = 1");
    return kI * (1.0 + z) / (1.0 - z);
  };
  m.deriv = [](Complex z) {
    if (z == Complex(1.0)) throw DomainError("parabolic-koenigs: pole at z = 1");
    const Complex d = 1.0 - z;
    return 2.0 * kI / (d * d);
  };
  m.label = "parabolic-koenigs";
  m.value_at_zero = kI;
  m.deriv_at_zero = 2.0 * kI;
  m.fixed_point = DiskPoint::boundary(0.0);
  return m;
}

AnalyticMap make_strip_koenigs() {
  AnalyticMap m;
  m.eval = [](Complex z) {
    require_interior(z, "strip");
    return kI * std::log((1.0 + z) / (1.0 - z));
  };
  m.deriv = [](Complex z) {
    require_interior(z, "strip");
    return 2.0 * kI / (1.0 - z * z);
  };
  m.label = "strip";
  m.value_at_zero = 0.0;
  m.deriv_at_zero = 2.0 * kI;
  m.fixed_point = DiskPoint::boundary(0.0);
  return m;
}

AnalyticMap make_half_strip_koenigs() {
  AnalyticMap m;
  m.eval = [](Complex z) {
    require_interior(z, "half-strip");
    return std::asin(kI * (1.0 + z) / (1.0 - z));
  };
  m.deriv = [](Complex z) {
    require_interior(z, "half-strip");
    const Complex d = 1.0 - z;
    const Complex big_h = kI * (1.0 + z) / d;
    return 2.0 * kI / (d * d) / std::sqrt(1.0 - big_h * big_h);
  };
  m.label = "half-strip";
  m.value_at_zero = std::asin(kI);
  m.deriv_at_zero = 2.0 * kI / std::sqrt(2.0);
  m.fixed_point = DiskPoint::boundary(0.0);
  return m;
}

AnalyticMap make_spirallike(Complex lambda, HerglotzMeasure mu, RadialIntegral method, double tolerance) {
  if (!(lambda.real() > 0.0)) throw DomainError("spirallike: Re lambda must be positive");
  if (std::abs(lambda * mu.value_at_zero() - 1.0) > 1e-12) {
    throw DomainError("spirallike: lambda * u(0) must equal 1");
  }
  auto data = std::make_shared<const SpirallikeData>(SpirallikeData{lambda, std::move(mu)});

  // log(h(z) / z) = int_0^z 2 lambda C(w) dw along the radius.
  std::function<Complex(Complex)> log_ratio;
  if (method == RadialIntegral::quadrature) {
    log_ratio = [data, tolerance](Complex z) -> Complex {
      require_interior(z, "spirallike");
      if (z == Complex(0.0)) return 0.0;
      auto integrand = [&](double s) { return cauchy_transform(data->mu, s * z); };
      const auto est = quad::gauss_kronrod<Complex>(integrand, 0.0, 1.0, tolerance, 1e-16, 1, 4000);
      if (!est.converged) throw NumericalError("spirallike: radial quadrature did not converge");
      return 2.0 * data->lambda * z * est.value;
    };
  } else {
    // Each atom contributes int_0^z c / (zeta - w) dw = -c log(1 - conj(zeta) z); the
    // argument stays in the right half-plane, so the principal branch is continuous.
    log_ratio = [data](Complex z) -> Complex {
      require_interior(z, "spirallike");
      Complex acc(0.0);
      for (const auto& a : data->mu.atoms()) acc -= a.mass * std::log(1.0 - std::conj(a.zeta.value()) * z);
      return 2.0 * data->lambda * acc;
    };
  }

  AnalyticMap m;
  m.eval = [log_ratio](Complex z) { return z * std::exp(log_ratio(z)); };
  m.deriv = [log_ratio, data](Complex z) {
    return data->lambda * std::exp(log_ratio(z)) * herglotz_eval(data->mu, z);
  };
  std::ostringstream label;
  label << "spirallike:lambda=" << format_complex(lambda) << ";atoms=";
  for (std::size_t j = 0; j < data->mu.atoms().size(); ++j) {
    const auto& a = data->mu.atoms()[j];
    label << (j ? "," : "") << a.mass << "@t" << a.zeta.angle();
  }
  if (data->mu.imaginary_offset() != 0.0) label << ";offset=" << data->mu.imaginary_offset();
  m.label = label.str();
  m.fixed_point = DiskPoint(0.0, 0.0);
  m.spirallike = data;
  return m;
}

AnalyticMap make_monomial(int n) {
  if (n < 1) throw DomainError("monomial: degree must be positive");
  AnalyticMap m;
  m.eval = [n](Complex z) { return std::pow(z, n); };
  m.deriv = [n](Complex z) { return n == 1 ? Complex(1.0) : static_cast<double>(n) * std::pow(z, n - 1); };
  m.label = "monomial:n=" + std::to_string(n);
  m.deriv_at_zero = n == 1 ? 1.0 : 0.0;
  m.conformal = n == 1;
  m.self_map = true;
  return m;
}

AnalyticMap make_simple_pole(Complex a) {
  if (std::abs(a) > 1.0) throw DomainError("simple pole: |a| must not exceed 1");
  AnalyticMap m;
  m.eval = [a](Complex z) { return 1.0 / (1.0 - a * z); };
  m.deriv = [a](Complex z) {
    const Complex d = 1.0 - a * z;
    return a / (d * d);
  };
  m.label = "pole:a=" + format_complex(a);
  m.value_at_zero = 1.0;
  m.deriv_at_zero = a;
  m.conformal = a != Complex(0.0);
  return m;
}

AnalyticMap make_log_pole() {
  AnalyticMap m;
  m.eval = [](Complex z) { return -std::log(1.0 - z); };
  m.deriv = [](Complex z) { return 1.0 / (1.0 - z); };
  m.label = "log-pole";
  return m;
}

AnalyticMap make_dilation(const AnalyticMap& f, Complex s) {
  if (std::abs(s) > 1.0 + 1e-12) throw DomainError("dilation: |s| must not exceed 1");
  // A rotation typed with finitely many digits may land a rounding error outside the circle.
  if (std::abs(s) > 1.0) s /= std::abs(s);
  AnalyticMap m;
  m.eval = [f, s](Complex z) { return f.eval(s * z); };
  m.deriv = [f, s](Complex z) { return s * f.deriv(s * z); };
  m.label = "dilate:s=" + format_complex(s) + ";map=" + f.label;
  m.value_at_zero = f.value_at_zero;
  m.deriv_at_zero = s * f.deriv_at_zero;
  m.conformal = f.conformal && s != Complex(0.0);
  m.self_map = f.self_map;
  return m;
}

AnalyticMap make_square_argument(const AnalyticMap& f) {
  AnalyticMap m;
  m.eval = [f](Complex z) { return f.eval(z * z); };
  m.deriv = [f](Complex z) { return 2.0 * z * f.deriv(z * z); };
  m.label = "square-arg:map=" + f.label;
  m.value_at_zero = f.value_at_zero;
  m.deriv_at_zero = 0.0;
  m.conformal = false;
  m.self_map = f.self_map;
  return m;
}

AnalyticMap make_normalized(const AnalyticMap& f) {
  if (f.deriv_at_zero == Complex(0.0)) throw DomainError("normalize: f'(0) = 0");
  const Complex a = f.value_at_zero;
  const Complex b = f.deriv_at_zero;
  AnalyticMap m;
  m.eval = [f, a, b](Complex z) { return (f.eval(z) - a) / b; };
  m.deriv = [f, b](Complex z) { return f.deriv(z) / b; };
  m.label = "normalized:map=" + f.label;
  m.conformal = f.conformal;
  m.fixed_point = DiskPoint(0.0, 0.0);
  return m;
}

double verify_spirallike(const AnalyticMap& h, Complex lambda, Complex tau,
                         const std::vector<Complex>& points) {
  double worst = 0.0;
  for (const Complex z : points) {
    if (std::abs(z - tau) < 1e-14) continue;
    const Complex q = (z - tau) * (1.0 - std::conj(tau) * z) * h.derivative(z) / h(z) / lambda;
    worst = std::max(worst, -q.real());
  }
  return worst;
}

double verify_spirallike(const AnalyticMap& h, Complex lambda, Complex tau, const SampleGrid& grid) {
  return verify_spirallike(h, lambda, tau, grid.points());
}

double verify_starlike_at_infinity(const AnalyticMap& h, const DiskPoint& tau, const SampleGrid& grid) {
  if (!tau.on_boundary()) throw DomainError("verify_starlike_at_infinity: tau must be a boundary point");
  const Complex t = tau.value();
  double worst = 0.0;
  for (const Complex z : grid.points()) {
    const Complex d = t - z;
    const double q = (std::conj(t) * d * d * h.derivative(z)).imag();
    worst = std::max(worst, -q);
  }
  return worst;
}

BlochEstimate bloch_seminorm(const AnalyticMap& g, const SampleGrid& grid) {
  BlochEstimate est;
  est.grid = grid.describe();
  for (const Complex z : grid.points()) {
    const double v = (1.0 - std::norm(z)) * std::abs(g.derivative(z));
    if (v > est.value) {
      est.value = v;
      est.argmax = z;
    }
  }
  return est;
}

double DistortionResiduals::min() const { return std::min({growth, derivative, ratio}); }

DistortionResiduals koebe_distortion_check(const AnalyticMap& f, Complex z) {
  require_interior(z, "koebe_distortion_check");
  if (std::abs(f(0.0)) > 1e-12 || std::abs(f.derivative(0.0) - 1.0) > 1e-12) {
    throw DomainError("koebe_distortion_check: map must satisfy f(0) = 0, f'(0) = 1");
  }
  auto slack = [](double v, double lo, double hi) {
    return std::min((v - lo) / lo, (hi - v) / hi);
  };
  DistortionResiduals res;
  const double r = std::abs(z);
  if (r == 0.0) return res;
  const Complex fz = f(z);
  const Complex dfz = f.derivative(z);
  res.growth = slack(std::abs(fz), r / ((1 + r) * (1 + r)), r / ((1 - r) * (1 - r)));
  res.derivative = slack(std::abs(dfz), (1 - r) / std::pow(1 + r, 3), (1 + r) / std::pow(1 - r, 3));
  res.ratio = slack(std::abs(z * dfz / fz), (1 - r) / (1 + r), (1 + r) / (1 - r));
  return res;
}

}  // namespace gftlab
