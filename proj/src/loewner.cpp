#include "gftlab/loewner.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "gftlab/errors.h"

namespace gftlab {

namespace {

struct State {
  Complex phi;
  Complex dphi;
};

class ChainStepper {
 public:
  ChainStepper(const DrivingFunction& k, const LoewnerOptions& opts) : k_(k), opts_(opts) {}

  State advance(double t, State y, double h) const {
    if (opts_.local_tolerance <= 0.0) return rk4(t, y, h);
    return controlled(t, y, h, 0);
  }

 private:
  State field(double t, const State& y) const {
    const Complex k = k_.at(t).value();
    const Complex kp = k * y.phi;
    const Complex denom = 1.0 - kp;
    if (std::abs(denom) < 1e-10) {
      std::ostringstream os;
      os << "loewner: |1 - k phi| < 1e-10 at t = " << t;
      throw NumericalError(os.str());
    }
    const Complex ratio = (1.0 + kp) / denom;
    return {-y.phi * ratio, -y.dphi * (ratio + 2.0 * kp / (denom * denom))};
  }

  State rk4(double t, const State& y, double h) const {
    auto shift = [](const State& s, const State& d, double a) {
      return State{s.phi + a * d.phi, s.dphi + a * d.dphi};
    };
    const State k1 = field(t, y);
    const State k2 = field(t + 0.5 * h, shift(y, k1, 0.5 * h));
    const State k3 = field(t + 0.5 * h, shift(y, k2, 0.5 * h));
    const State k4 = field(t + h, shift(y, k3, h));
    return {y.phi + h / 6.0 * (k1.phi + 2.0 * k2.phi + 2.0 * k3.phi + k4.phi),
            y.dphi + h / 6.0 * (k1.dphi + 2.0 * k2.dphi + 2.0 * k3.dphi + k4.dphi)};
  }

  State controlled(double t, const State& y, double h, int depth) const {
    const State full = rk4(t, y, h);
    const State mid = rk4(t, y, 0.5 * h);
    const State two = rk4(t + 0.5 * h, mid, 0.5 * h);
    const double err = std::abs(full.phi - two.phi) +
                       std::abs(full.dphi - two.dphi) / std::max(1.0, std::abs(two.dphi));
    if (err <= opts_.local_tolerance || depth >= opts_.max_halvings) return two;
    const State left = controlled(t, y, 0.5 * h, depth + 1);
    return controlled(t + 0.5 * h, left, 0.5 * h, depth + 1);
  }

  const DrivingFunction& k_;
  const LoewnerOptions& opts_;
};

void check_inputs(Complex z, double T, double dt) {
  if (!(std::norm(z) < 1.0)) throw DomainError("loewner: z must lie in the open disk");
  if (!(dt > 0.0)) throw DomainError("loewner: dt must be positive");
  if (!(T >= 0.0)) throw DomainError("loewner: T must be >= 0");
}

void check_state(const State& y, double t) {
  if (!(std::norm(y.phi) <= 1.0) || !std::isfinite(std::abs(y.dphi))) {
    std::ostringstream os;
    os << "loewner: trajectory left the closed disk at t = " << t;
    throw NumericalError(os.str());
  }
}

template <class Visitor>
void run_chain(const DrivingFunction& k, Complex z, double T, double dt, const LoewnerOptions& opts,
               Visitor&& visit) {
  check_inputs(z, T, dt);
  const ChainStepper stepper(k, opts);
  State y{z, 1.0};
  visit(ChainState{0.0, y.phi, y.dphi, z});
  const auto steps = static_cast<long>(std::floor(T / dt + 1e-9));
  double t = 0.0;
  for (long n = 1; n <= steps; ++n) {
    y = stepper.advance(t, y, dt);
    t = n * dt;
    check_state(y, t);
    visit(ChainState{t, y.phi, y.dphi, z});
  }
  const double rest = T - t;
  if (rest > 1e-12 * std::max(1.0, T)) {
    y = stepper.advance(t, y, rest);
    check_state(y, T);
    visit(ChainState{T, y.phi, y.dphi, z});
  }
}

}  // namespace

DrivingFunction constant_driver(const DiskPoint& zeta) {
  if (!zeta.on_boundary()) throw DomainError("constant_driver: value must be a boundary point");
  const double a = zeta.angle();
  std::ostringstream os;
  os << "const:t" << a;
  return {[a](double) { return a; }, os.str()};
}

DrivingFunction rotating_driver(double omega) {
  std::ostringstream os;
  os << "rot:omega=" << omega;
  return {[omega](double t) { return omega * t; }, os.str()};
}

std::vector<ChainState> integrate_chain(const DrivingFunction& k, Complex z, double T, double dt,
                                        const LoewnerOptions& opts) {
  std::vector<ChainState> out;
  run_chain(k, z, T, dt, opts, [&](const ChainState& s) { out.push_back(s); });
  return out;
}

ChainState loewner_terminal(const DrivingFunction& k, Complex z, double T, double dt,
                            const LoewnerOptions& opts) {
  ChainState last;
  run_chain(k, z, T, dt, opts, [&](const ChainState& s) { last = s; });
  return last;
}

double shimorin_Q(const ChainState& state, double p) {
  if (!(p > 0.0 && p < 2.0)) throw DomainError("shimorin_Q: p must lie in (0, 2)");
  if (state.z0 == Complex(0.0)) throw DomainError("shimorin_Q: z = 0 is excluded");
  const double one_minus = 1.0 - std::norm(state.phi);
  return std::pow(std::abs(state.dphi), -p) * std::pow(std::abs(state.phi / state.z0), 2.0 * p) /
         (one_minus * one_minus);
}

double monotonicity_max_increase(const DrivingFunction& k, Complex z, double p, double T, double dt,
                                 const LoewnerOptions& opts) {
  if (!(p > 0.0 && p < 2.0)) throw DomainError("monotonicity: p must lie in (0, 2)");
  double worst = 0.0;
  bool first = true;
  double prev = 0.0;
  run_chain(k, z, T, dt, opts, [&](const ChainState& s) {
    const double q = shimorin_Q(s, p);
    if (!first) worst = std::max(worst, q - prev);
    prev = q;
    first = false;
  });
  return worst;
}

double shimorin_residual(Complex z, Complex phi, Complex dphi) {
  if (z == Complex(0.0)) throw DomainError("shimorin_residual: z = 0 is excluded");
  const double ratio = std::abs(z) / std::abs(phi);
  return std::abs(dphi) * ratio * ratio - (1.0 - std::norm(z)) / (1.0 - std::norm(phi));
}

double shimorin_residual(const AnalyticMap& phi, Complex z) {
  return shimorin_residual(z, phi(z), phi.derivative(z));
}

double shimlow_residual(Complex z, Complex phi, Complex dphi, double p) {
  if (z == Complex(0.0)) throw DomainError("shimlow_residual: z = 0 is excluded");
  if (!(p > 0.0 && p < 2.0)) throw DomainError("shimlow_residual: p must lie in (0, 2)");
  const double area = (1.0 - std::norm(z)) / (1.0 - std::norm(phi));
  return std::pow(std::abs(dphi), p) - area * area * std::pow(std::abs(phi / z), 2.0 * p);
}

double shimlow_residual(const AnalyticMap& phi, Complex z, double p) {
  return shimlow_residual(z, phi(z), phi.derivative(z), p);
}

LowConstant low_constant(const AnalyticMap& phi, double p, const SampleGrid& grid) {
  if (!(p > 0.0 && p < 2.0)) throw DomainError("low_constant: p must lie in (0, 2)");
  LowConstant out;
  out.grid = grid.describe();
  out.infimum = std::numeric_limits<double>::infinity();
  auto consider = [&](Complex z) {
    const double v = std::pow(std::abs(phi.derivative(z)), 0.5 * p) * (1.0 - std::norm(phi(z))) /
                     (1.0 - std::norm(z));
    if (v < out.infimum) {
      out.infimum = v;
      out.argmin = z;
    }
  };
  consider(0.0);
  for (const Complex z : grid.points()) consider(z);
  const Complex a = phi(0.0);
  out.candidate = std::pow(std::abs(phi.derivative(0.0)) / (4.0 * (1.0 - std::norm(a))), p);
  return out;
}

AnalyticMap make_loewner_map(const DrivingFunction& k, double T, double dt, const LoewnerOptions& opts) {
  AnalyticMap m;
  m.eval = [k, T, dt, opts](Complex z) { return loewner_terminal(k, z, T, dt, opts).phi; };
  m.deriv = [k, T, dt, opts](Complex z) { return loewner_terminal(k, z, T, dt, opts).dphi; };
  std::ostringstream os;
  os << "loewner:T=" << T << ";dt=" << dt << ";driver=" << k.label;
  m.label = os.str();
  m.value_at_zero = 0.0;
  m.deriv_at_zero = std::exp(-T);
  m.fixed_point = DiskPoint(0.0, 0.0);
  m.self_map = true;
  return m;
}

}  // namespace gftlab
