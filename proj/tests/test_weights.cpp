#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "gftlab/errors.h"
#include "gftlab/map_catalog.h"
#include "gftlab/semigroup.h"
#include "gftlab/weights.h"

using namespace gftlab;
using doctest::Approx;

namespace {

// For w = (1 - |z|^2)^alpha every box integral is a power of s = 2h - h^2, and the
// h-dependence cancels from the B_q quotient.
double power_bq(double alpha, double q, double eta) {
  const double dual = -alpha / (q - 1.0);
  return (1.0 + eta) / (1.0 + eta + alpha) * std::pow((1.0 + eta) / (1.0 + eta + dual), q - 1.0);
}

// int_{S(., h)} (1 - |z|^2)^alpha dA.
double power_box(double alpha, double h) { return h / kTwoPi * std::pow(2.0 * h - h * h, 1.0 + alpha) / (1.0 + alpha); }

// Dyadic maximal quotient for a power weight with alpha < 0: box averages
// increase as boxes shrink, so M on a cell is the average over the smallest tree
// box containing it, and the outer integral (plain area) collapses to one term
// per level.
double power_binf_oracle(double alpha, double h0, int depth) {
  const auto area = [](double h) { return power_box(0.0, h); };
  const auto avg = [&](double h) { return power_box(alpha, h) / area(h); };
  double total = 0.0, h = h0, count = 1.0;
  for (int level = 0; level < depth; ++level) {
    // Top Whitney half: the box minus the band 1 - h/2 < r < 1 of angular width h.
    const double band = h / kTwoPi * (h - h * h / 4.0);
    total += count * avg(h) * (area(h) - band);
    h /= 2.0;
    count *= 2.0;
  }
  total += count * avg(h) * area(h);
  return total / power_box(alpha, h0);
}

// (1 - x) sum_n c_n^2 x^n / (n + 1), c_n = Gamma(n + 3/2) / (n! Gamma(3/2)): the
// kernel residual of w = 1 at gamma = 1 from the power series of (1 - conj(z) v)^{-3/2}.
double forelli_rudin_series(double x) {
  double c = 1.0, sum = 0.0;
  for (int n = 0; n < 20000; ++n) {
    sum += c * c * std::pow(x, n) / (n + 1);
    c *= (n + 1.5) / (n + 1.0);
  }
  return (1.0 - x) * sum;
}

}  // namespace

TEST_CASE("koenigs weight of the identity is 1") {
  const auto w = koenigs_weight(make_identity(), -1.5);
  CHECK(w(Complex(0.3, 0.9)) == 1.0);
  const auto p = koenigs_weight(make_parabolic_koenigs(), -1.5);
  REQUIRE(p.singular_set.size() == 1);
  CHECK(p.singular_set[0].angle() == Approx(0.0));
  CHECK(p(0.0) == Approx(std::pow(2.0, -1.5)));
}

TEST_CASE("B_q quotient of the unit weight is 1") {
  for (double h : {1.0, 0.25, 1.0 / 64.0}) {
    for (double q : {1.5, 2.0, 4.0}) {
      const auto r = bq_quotient(unit_weight(), q, 0.0, CarlesonBox(2.0, h));
      CHECK(r.converged);
      CHECK(r.value == Approx(1.0).epsilon(1e-8));
    }
  }
  const auto scan = bq_sup_scan(unit_weight(), 2.0, 0.0, 6);
  CHECK(scan.sup_quotient == Approx(1.0).epsilon(1e-8));
  CHECK(scan.boxes.size() == 2 + 4 + 8 + 16 + 32 + 64);
}

TEST_CASE("B_q quotient of power weights matches the closed form") {
  struct Case {
    double alpha, q, eta;
  };
  for (const auto& c : {Case{0.5, 2.0, 0.0}, Case{0.3, 2.0, 0.0}, Case{-0.5, 2.0, 0.0}, Case{1.5, 4.0, 0.0},
                        Case{0.5, 3.0, 1.0}, Case{0.9, 2.0, 0.5}}) {
    CAPTURE(c.alpha);
    CAPTURE(c.q);
    CAPTURE(c.eta);
    for (double h : {0.5, 1.0 / 32.0}) {
      const auto r = bq_quotient(power_weight(c.alpha), c.q, c.eta, CarlesonBox(0.3, h));
      CHECK(r.converged);
      CHECK(r.value == Approx(power_bq(c.alpha, c.q, c.eta)).epsilon(1e-7));
    }
  }
  CHECK(power_bq(0.5, 2.0, 0.0) == Approx(1.0 / (1.0 - 0.25)));
}

TEST_CASE("divergent dual integrals are reported with their growth") {
  const auto r = bq_quotient(power_weight(1.5), 2.0, 0.0, CarlesonBox(0.0, 1.0 / 64.0));
  CHECK(r.diverges);
  CHECK(std::isinf(r.value));
  CHECK(r.profile_growth >= 10.0);
  const auto ok = bq_quotient(power_weight(0.5), 2.0, 0.0, CarlesonBox(0.0, 1.0 / 64.0));
  CHECK_FALSE(ok.diverges);
  CHECK(ok.profile_growth < 1.05);
}

TEST_CASE("B_4 scan of |h'|^{-1.5} for the parabolic Koenigs map") {
  const auto scan = bq_sup_scan(koenigs_weight(make_parabolic_koenigs(), -1.5), 4.0, 0.0, 3);
  REQUIRE(scan.level_maxima.size() == 3);
  // Reference values from an independent tensor-product adaptive quadrature.
  CHECK(scan.level_maxima[0] == Approx(5.032528914).epsilon(1e-7));
  CHECK(scan.level_maxima[1] == Approx(4.762124259).epsilon(1e-7));
  CHECK(level_growth(scan, 1, 3) <= 1.0 + 1e-12);
  CHECK(level_variation(scan, 1, 2) == Approx(5.032528914 / 4.762124259 - 1.0).epsilon(1e-6));
  CHECK_THROWS_AS(bq_sup_scan(unit_weight(), 2.0, 0.0, 13), DomainError);
}

TEST_CASE("dyadic maximal quotient") {
  const CarlesonBox box(1.0, 0.5);
  CHECK(b_infinity_quotient(unit_weight(), box, 6).quotient == Approx(1.0).epsilon(1e-10));
  for (double alpha : {0.5, 3.5}) CHECK(b_infinity_quotient(power_weight(alpha), box, 6).quotient == Approx(1.0).epsilon(1e-10));
  for (int depth : {2, 4, 6}) {
    CAPTURE(depth);
    CHECK(b_infinity_quotient(power_weight(-0.5), box, depth).quotient ==
          Approx(power_binf_oracle(-0.5, 0.5, depth)).epsilon(1e-7));
  }
}

TEST_CASE("kernel domination residual") {
  CHECK(kernel_domination_residual(unit_weight(), 1.0, 0.0).value == Approx(1.0).epsilon(1e-10));
  for (double r : {0.5, 0.7, 0.9}) {
    const auto k = kernel_domination_residual(unit_weight(), 1.0, std::polar(r, 1.1));
    CHECK(k.converged);
    CHECK(k.value == Approx(forelli_rudin_series(r * r)).epsilon(1e-7));
    CHECK(k.value <= 4.0 / kPi);
  }
}

TEST_CASE("composition bound") {
  const auto id = make_identity_elliptic_model(1.0);
  const auto par = make_parabolic_model();
  for (Complex z : {Complex(0.0, 0.0), Complex(0.5, 0.5), Complex(-0.99, 0.0)}) {
    CHECK(composition_bound_residual(par, -1.5, 0.0, z) == Approx(1.0));
    const double t = 0.8;
    const double expected =
        std::exp(-1.5 * t) * std::pow((1.0 - std::exp(-2.0 * t) * std::norm(z)) / (1.0 - std::norm(z)), 2);
    CHECK(composition_bound_residual(id, -1.5, t, z) == Approx(expected).epsilon(1e-12));
    CHECK(composition_bound_residual(id, -1.5, t, z) >= std::exp(-1.5 * t) * (1.0 - 1e-12));
  }
  const auto inf = composition_bound_infimum(par, -1.5, 1.0, SampleGrid::boundary_clustered(30, 64, 0.999));
  CHECK(inf.infimum > 0.0);
  CHECK_THROWS_AS(composition_bound_residual(par, -0.5, 1.0, 0.0), DomainError);
}

TEST_CASE("Hoelder split of |h'|^p for a spirallike map") {
  const auto h = make_spirallike(1.0, HerglotzMeasure({{DiskPoint::boundary(0.0), 0.5},
                                                       {DiskPoint::boundary(kPi), 0.5}}));
  const auto c = holder_combination_check(h, -1.5, -1.8, 2.0, 0.5);
  CHECK(c.delta == Approx(2.0));
  CHECK(c.factorization_mismatch < 1e-10);
  CHECK(c.combined <= c.holder_bound * (1.0 + 1e-6));
  CHECK_THROWS_AS(holder_combination_check(h, -1.5, -1.0, 2.0, 0.5), DomainError);
}
