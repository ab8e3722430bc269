#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "gftlab/errors.h"
#include "gftlab/loewner.h"

using namespace gftlab;
using doctest::Approx;

namespace {

// With k = 1 the chain has the first integral g(phi_t) = e^{-t} g(z) for
// g(z) = z / (1 + z)^2, which inverts through the Koebe inverse: g^{-1}(w) = -k^{-1}(-w).
Complex g(Complex z) { return z / ((1.0 + z) * (1.0 + z)); }
Complex dg(Complex z) { return (1.0 - z) / std::pow(1.0 + z, 3); }
Complex g_inverse(Complex w) {
  const Complex s = std::sqrt(1.0 - 4.0 * w);
  return -(s - 1.0) / (s + 1.0);
}

struct Exact {
  Complex phi, dphi;
};
Exact constant_driver_oracle(Complex z, double T) {
  const Complex phi = g_inverse(std::exp(-T) * g(z));
  return {phi, std::exp(-T) * dg(z) / dg(phi)};
}

AnalyticMap disk_map(Complex (*f)(Complex), Complex (*df)(Complex)) {
  AnalyticMap m;
  m.eval = f;
  m.deriv = df;
  return m;
}

}  // namespace

TEST_CASE("constant driver matches the closed-form chain") {
  const auto k = constant_driver(DiskPoint::boundary(0.0));
  for (Complex z : {Complex(0.3, 0.0), Complex(0.5, 0.5), Complex(-0.9, 0.1), Complex(0.0, -0.95)}) {
    for (double T : {0.5, 2.0}) {
      const auto s = loewner_terminal(k, z, T, 1e-3);
      const auto e = constant_driver_oracle(z, T);
      CHECK(s.t == Approx(T));
      CHECK(std::abs(s.phi - e.phi) < 1e-10);
      CHECK(std::abs(s.dphi - e.dphi) < 1e-9 * std::abs(e.dphi));
    }
  }
  CHECK(std::abs(loewner_terminal(k, 0.0, 1.5, 1e-2).dphi - std::exp(-1.5)) < 1e-10);
}

TEST_CASE("T = 0 gives the initial state") {
  const auto states = integrate_chain(rotating_driver(1.0), Complex(0.2, 0.1), 0.0, 1e-3);
  REQUIRE(states.size() == 1);
  CHECK(states[0].t == 0.0);
  CHECK(states[0].phi == Complex(0.2, 0.1));
  CHECK(states[0].dphi == Complex(1.0));
  CHECK(monotonicity_max_increase(rotating_driver(1.0), 0.4, 1.0, 0.0, 1e-3) == 0.0);
}

TEST_CASE("fixed-step RK4 converges at fourth order") {
  const auto k = constant_driver(DiskPoint::boundary(0.0));
  const Complex z(0.4, 0.3);
  const auto e = constant_driver_oracle(z, 1.0);
  LoewnerOptions fixed;
  fixed.local_tolerance = 0.0;
  const double e1 = std::abs(loewner_terminal(k, z, 1.0, 0.1, fixed).phi - e.phi);
  const double e2 = std::abs(loewner_terminal(k, z, 1.0, 0.05, fixed).phi - e.phi);
  const double order = std::log2(e1 / e2);
  CHECK(order > 3.6);
  CHECK(order < 4.6);
}

TEST_CASE("Shimorin functional is nonincreasing along the chain") {
  CHECK(monotonicity_max_increase(constant_driver(DiskPoint::boundary(0.0)), 0.3, 1.0, 2.0, 1e-3) <= 1e-6);
  CHECK(monotonicity_max_increase(rotating_driver(1.0), Complex(0.0, 0.4), 0.5, 2.0, 1e-3) <= 1e-6);
  const auto states = integrate_chain(rotating_driver(1.0), Complex(0.0, 0.4), 1.0, 0.1);
  CHECK(states.size() == 11);
  CHECK(shimorin_Q(states.back(), 1.5) <= shimorin_Q(states.front(), 1.5) + 1e-12);
  CHECK_THROWS_AS(shimorin_Q(states.front(), 2.5), DomainError);
  CHECK_THROWS_AS(integrate_chain(rotating_driver(1.0), 1.0, 1.0, 1e-3), DomainError);
}

TEST_CASE("pointwise Shimorin residuals") {
  const auto half = disk_map([](Complex z) { return z / (2.0 - z); },
                             [](Complex z) { return 2.0 / ((2.0 - z) * (2.0 - z)); });
  CHECK(shimorin_residual(half, 0.5) == Approx(1.15625).epsilon(1e-12));
  CHECK(shimlow_residual(half, 0.5, 1.0) == Approx(0.88889 - 0.31640).epsilon(1e-4));

  const auto id = disk_map([](Complex z) { return z; }, [](Complex) { return Complex(1.0); });
  const auto rot = disk_map([](Complex z) { return std::exp(Complex(0.0, 0.7)) * z; },
                            [](Complex) { return std::exp(Complex(0.0, 0.7)); });
  for (Complex z : {Complex(0.5, 0.0), Complex(-0.3, 0.8)}) {
    CHECK(std::abs(shimorin_residual(id, z)) < 1e-14);
    CHECK(std::abs(shimorin_residual(rot, z)) < 1e-14);
    CHECK(std::abs(shimlow_residual(id, z, 1.3)) < 1e-14);
  }
  CHECK_THROWS_AS(shimorin_residual(id, 0.0), DomainError);

  // Terminal Loewner maps satisfy both inequalities.
  const auto chain = make_loewner_map(rotating_driver(2.0), 1.0, 1e-2);
  for (Complex z : {Complex(0.5, 0.0), Complex(-0.3, 0.8), Complex(0.0, -0.95)}) {
    CHECK(shimorin_residual(chain, z) >= -1e-10);
    CHECK(shimlow_residual(chain, z, 0.7) >= -1e-10);
  }
}

TEST_CASE("low constant") {
  const auto id = disk_map([](Complex z) { return z; }, [](Complex) { return Complex(1.0); });
  const auto grid = SampleGrid::boundary_clustered(30, 32, 0.999);
  CHECK(low_constant(id, 1.0, grid).infimum == Approx(1.0));

  const auto phi1 = disk_map([](Complex z) { return (z + 1.0) / (3.0 - z); },
                             [](Complex z) { return 4.0 / ((3.0 - z) * (3.0 - z)); });
  const auto lc = low_constant(phi1, 1.0, grid);
  CHECK(lc.infimum > 0.0);
  CHECK(lc.infimum >= lc.candidate);
  // phi_1(0) = 1/3, phi_1'(0) = 4/9: (4/9 / (4 (1 - 1/9)))^1 = 1/8.
  CHECK(lc.candidate == Approx(0.125));
  CHECK_THROWS_AS(low_constant(id, 2.0, grid), DomainError);
}
