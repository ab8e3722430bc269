#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "gftlab/disk_integration.h"
#include "gftlab/errors.h"
#include "gftlab/map_catalog.h"

using namespace gftlab;
using doctest::Approx;

namespace {

Complex half_plane_prime(Complex z) { return 2.0 / ((1.0 - z) * (1.0 - z)); }
Complex koebe_prime(Complex z) { return (1.0 + z) / std::pow(1.0 - z, 3); }

AnalyticMap constant_one() {
  AnalyticMap m;
  m.eval = [](Complex) { return Complex(1.0); };
  m.deriv = [](Complex) { return Complex(0.0); };
  m.value_at_zero = 1.0;
  m.deriv_at_zero = 0.0;
  return m;
}

// Composite Simpson in r times the periodic trapezoid rule in t, both written
// out here so they share nothing with the library quadrature.
double simpson_trapezoid(const std::function<double(Complex)>& g, int nr, int nt) {
  const double dr = 1.0 / nr;
  double sum = 0.0;
  for (int i = 0; i <= nr; ++i) {
    const double r = i * dr;
    const double w = (i == 0 || i == nr) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    double ring = 0.0;
    for (int j = 0; j < nt; ++j) ring += g(std::polar(r, kTwoPi * j / nt));
    sum += w * r * ring * kTwoPi / nt;
  }
  return sum * dr / 3.0 / kPi;
}

}  // namespace

TEST_CASE("brennan integral anchors") {
  for (double p : {-1.5, 0.5, 1.9}) {
    const auto one = brennan_integral([](Complex) { return Complex(1.0); }, p);
    CHECK(one.converged);
    CHECK(one.value == Approx(1.0).epsilon(1e-10));
  }
  const double t = 0.7;
  CHECK(brennan_integral([&](Complex) { return Complex(std::exp(-t)); }, -1.3).value ==
        Approx(std::exp(1.3 * t)).epsilon(1e-10));

  const auto hp = brennan_integral(half_plane_prime, -1.0);
  CHECK(hp.converged);
  CHECK(hp.value == Approx(0.75).epsilon(1e-8));
  CHECK_THROWS_AS(brennan_integral(half_plane_prime, 2.5), DomainError);
}

TEST_CASE("polar quadrature agrees with an independent Simpson-trapezoid rule on a smooth integrand") {
  // |1 / (1 - a z)|^2 with a = 0.5 has exact integral -log(1 - a^2) / a^2.
  const auto g = [](Complex z) { return 1.0 / std::norm(1.0 - 0.5 * z); };
  const double exact = -std::log(0.75) / 0.25;
  const double oracle = simpson_trapezoid(g, 2000, 256);
  CHECK(oracle == Approx(exact).epsilon(1e-9));
  CHECK(integrate_disk(g, {}).value == Approx(oracle).epsilon(1e-9));
}

TEST_CASE("region integral of 1 is the box measure") {
  for (double h : {1.0, 0.5, 0.0625}) {
    const CarlesonBox box(1.0, h);
    const PolarRegion region{h, 1.0 - h / 2.0, 1.0 + h / 2.0};
    const auto est = integrate_polar_region([](Complex) { return 1.0; }, region, {});
    CHECK(est.value == Approx(box_measure(box, 0.0)).epsilon(1e-10));
  }
}

TEST_CASE("Monte Carlo cross-check") {
  const auto one = monte_carlo_brennan([](Complex) { return Complex(1.0); }, -1.0, 1000, 1);
  CHECK(one.value == Approx(1.0).epsilon(1e-15));
  CHECK(one.error_bound == 0.0);

  const auto mc = monte_carlo_brennan(half_plane_prime, -1.0, 1000000, 20240601);
  CHECK(std::abs(mc.value - 0.75) < 3.0 * mc.error_bound);

  const auto q = brennan_integral(koebe_prime, -1.0);
  const auto m = monte_carlo_brennan(koebe_prime, -1.0, 1000000, 20240601);
  CHECK(q.converged);
  CHECK(std::abs(q.value - m.value) < 3.0 * m.error_bound);
  CHECK_THROWS_AS(monte_carlo_brennan(koebe_prime, -1.0, 10, 1), DomainError);
}

TEST_CASE("divergence outside the integrability range is flagged") {
  const auto div = brennan_integral(koebe_prime, 0.7);
  CHECK(div.divergence_suspected);
  CHECK_FALSE(div.converged);
  const auto conv = brennan_integral(koebe_prime, 0.3);
  CHECK(conv.converged);
  CHECK_FALSE(conv.divergence_suspected);
}

TEST_CASE("circle means and growth exponents") {
  CHECK(circle_mean(make_identity(), 2.0, 0.6, 64) == Approx(0.36));
  CHECK(circle_mean(make_simple_pole(1.0), 2.0, 0.5, 64) == Approx(4.0 / 3.0).epsilon(1e-12));
  CHECK_THROWS_AS(circle_mean(make_identity(), 2.0, 0.0, 64), DomainError);

  const auto radii = default_growth_radii();
  CHECK(std::abs(growth_exponent_fit(make_identity(), 1.0, radii)) < 1e-2);
  CHECK(growth_exponent_fit(make_simple_pole(1.0), 2.0, radii) == Approx(1.0).epsilon(5e-3));
  CHECK(growth_exponent_fit(make_koebe(), 1.0, radii) == Approx(1.0).epsilon(2e-2));
  CHECK_THROWS_AS(growth_exponent_fit(make_koebe(), 1.0, {0.5, 0.6, 0.7}), DomainError);
}

TEST_CASE("Littlewood subordination") {
  CHECK(subordination_check(make_koebe(), make_koebe(), 1.0, 0.9) == 0.0);
  CHECK(subordination_check(make_monomial(2), make_identity(), 2.0, 0.8) == Approx(0.2304).epsilon(1e-12));
  CHECK(subordination_check(make_square_argument(make_koebe()), make_koebe(), 1.0, 0.9) >= 0.0);
}

TEST_CASE("integration operator T_g") {
  const auto one = constant_one();
  const Complex z(0.3, -0.5);
  CHECK(std::abs(apply_Tg(one, make_identity(), z).value - z) < 1e-14);
  CHECK(std::abs(apply_Tg(one, make_monomial(2), z).value - z * z) < 1e-14);
  const auto lg = apply_Tg(make_simple_pole(1.0), make_identity(), 0.5);
  CHECK(lg.converged);
  CHECK(lg.value.real() == Approx(std::log(2.0)).epsilon(1e-12));
  // T_g f with g = log-pole and f = 1 is g - g(0) itself.
  CHECK(std::abs(apply_Tg(one, make_log_pole(), z).value - make_log_pole()(z)) < 1e-12);
}

TEST_CASE("Littlewood-Paley ratio") {
  CHECK(littlewood_paley_ratio(make_identity(), 2.0, unit_weight()).ratio == Approx(1.5).epsilon(1e-9));
  CHECK(littlewood_paley_ratio(constant_one(), 1.0, unit_weight()).ratio == Approx(1.0).epsilon(1e-10));
  const double r = littlewood_paley_ratio(make_simple_pole(0.5), 2.0, unit_weight()).ratio;
  CHECK(r >= 0.1);
  CHECK(r <= 10.0);
  AnalyticMap zero;
  zero.eval = [](Complex) { return Complex(0.0); };
  zero.deriv = [](Complex) { return Complex(0.0); };
  CHECK_THROWS_AS(littlewood_paley_ratio(zero, 2.0, unit_weight()), DomainError);
}

TEST_CASE("Feng-MacGregor ratio") {
  CHECK(feng_macgregor_ratio(make_identity(), 0.4).ratio == Approx(1.0).epsilon(1e-10));
  CHECK(feng_macgregor_ratio(make_koebe(), 0.0).ratio == Approx(1.0).epsilon(1e-10));
  const auto k = feng_macgregor_ratio(make_koebe(), 0.5);
  CHECK(k.integral.converged);
  QuadratureConfig fine;
  fine.radial_nodes = 24;
  fine.tolerance = 1e-12;
  CHECK(feng_macgregor_ratio(make_koebe(), 0.5, fine).ratio == Approx(k.ratio).epsilon(1e-6));
  CHECK_THROWS_AS(feng_macgregor_ratio(make_koebe(), 0.7), DomainError);
}
