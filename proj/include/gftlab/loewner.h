#pragma once

#include <functional>
#include <string>
#include <vector>

#include "gftlab/map_catalog.h"

namespace gftlab {

/// Unimodular control k(t) = e^{i angle(t)} of the radial Loewner equation.
struct DrivingFunction {
  std::function<double(double)> angle;
  std::string label;

  DiskPoint at(double t) const { return DiskPoint::boundary(angle(t)); }
};

/// k(t) = zeta for a boundary point zeta.
DrivingFunction constant_driver(const DiskPoint& zeta);
/// k(t) = e^{i omega t}.
DrivingFunction rotating_driver(double omega);

struct ChainState {
  double t = 0.0;
  Complex phi{0.0};
  Complex dphi{1.0};
  Complex z0{0.0};
};

struct LoewnerOptions {
  /// Per-step tolerance for step-halving control; <= 0 gives plain fixed-step RK4.
  double local_tolerance = 1e-12;
  int max_halvings = 24;
};

/// Fourth-order Runge-Kutta integration of
///   d/dt phi  = -phi (1 + k phi) / (1 - k phi),
///   d/dt phi' = -phi' [ (1 + k phi)/(1 - k phi) + 2 k phi / (1 - k phi)^2 ],
/// from phi_0 = z, phi_0' = 1, sampled every dt up to T.
/// Throws NumericalError (with the failure time) when |1 - k phi| < 1e-10 or the
/// trajectory leaves the closed disk.
std::vector<ChainState> integrate_chain(const DrivingFunction& k, Complex z, double T, double dt,
                                        const LoewnerOptions& opts = {});
/// Final state only.
ChainState loewner_terminal(const DrivingFunction& k, Complex z, double T, double dt,
                            const LoewnerOptions& opts = {});

/// Q_t(z) = |phi'|^{-p} |phi / z|^{2p} / (1 - |phi|^2)^2. Requires 0 < p < 2, z != 0.
double shimorin_Q(const ChainState& state, double p);

/// max_k (Q_{t_{k+1}} - Q_{t_k}) along the sampled trajectory; 0 for T = 0.
double monotonicity_max_increase(const DrivingFunction& k, Complex z, double p, double T, double dt,
                                 const LoewnerOptions& opts = {});

/// |phi'(z)| (|z| / |phi(z)|)^2 - (1 - |z|^2) / (1 - |phi(z)|^2).
double shimorin_residual(Complex z, Complex phi, Complex dphi);
double shimorin_residual(const AnalyticMap& phi, Complex z);
/// |phi'(z)|^p - ((1 - |z|^2)/(1 - |phi(z)|^2))^2 |phi(z)/z|^{2p}.
double shimlow_residual(Complex z, Complex phi, Complex dphi, double p);
double shimlow_residual(const AnalyticMap& phi, Complex z, double p);

/// Grid infimum of |phi'|^{p/2} (1 - |phi|^2) / (1 - |z|^2), with the explicit
/// lower bound (|phi'(0)| / (4 (1 - |phi(0)|^2)))^p for comparison.
struct LowConstant {
  double infimum = 0.0;
  Complex argmin{0.0};
  double candidate = 0.0;
  std::string grid;
};
LowConstant low_constant(const AnalyticMap& phi, double p, const SampleGrid& grid);

/// Terminal map z -> phi_T(z) of the chain driven by k.
AnalyticMap make_loewner_map(const DrivingFunction& k, double T, double dt, const LoewnerOptions& opts = {});

}  // namespace gftlab
