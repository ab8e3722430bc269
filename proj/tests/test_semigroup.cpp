#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "gftlab/errors.h"
#include "gftlab/labels.h"
#include "gftlab/sampling.h"
#include "gftlab/semigroup.h"

using namespace gftlab;
using doctest::Approx;

namespace {

// Inverse of the Koebe map on the slit plane: k^{-1}(w) = (s - 1)/(s + 1),
// s = sqrt(1 + 4w) on the principal branch.
Complex koebe_inverse(Complex w) {
  const Complex s = std::sqrt(1.0 + 4.0 * w);
  return (s - 1.0) / (s + 1.0);
}

}  // namespace

TEST_CASE("linear models psi_t") {
  const SemigroupClass ell{true, 1.0};
  const SemigroupClass par{false, 0.0};
  CHECK(std::abs(psi(ell, 0.0, Complex(0.3, 0.2)) - Complex(0.3, 0.2)) == 0.0);
  CHECK(psi(ell, 1.0, 1.0).real() == Approx(0.367879).epsilon(1e-6));
  CHECK(std::abs(psi(par, 2.0, Complex(0.0, 3.0)) - Complex(0.0, 5.0)) < 1e-15);
  CHECK_THROWS_AS(psi(ell, -0.1, 1.0), DomainError);
}

TEST_CASE("evolve and phi_deriv on the closed-form models") {
  const auto id = make_identity_elliptic_model(1.0);
  CHECK(evolve(id, 0.5, 1.0).real() == Approx(0.5 * std::exp(-1.0)));
  CHECK(evolve(id, 0.5, 1.0).real() == Approx(0.183940).epsilon(1e-6));
  CHECK(phi_deriv(id, Complex(0.4, -0.3), 1.0).real() == Approx(std::exp(-1.0)));

  const auto par = make_parabolic_model();
  CHECK(evolve(par, 0.0, 1.0).real() == Approx(1.0 / 3.0));
  CHECK(phi_deriv(par, 0.0, 1.0).real() == Approx(4.0 / 9.0));
  CHECK(semigroup_residual(par, 0.0, 1.0, 1.0) < 1e-15);
  CHECK(evolve(par, 1.0 / 3.0, 1.0).real() == Approx(0.5));

  const auto spiral = make_identity_elliptic_model(Complex(1.0, 1.0));
  const auto pts = random_disk_points(50, 0.99, 7);
  for (Complex z : pts) CHECK(semigroup_residual(spiral, z, 0.3, 0.7) < 1e-12);

  for (const auto* m : {&id, &par, &spiral}) {
    const Complex z(0.2, -0.6);
    CHECK(std::abs(evolve(*m, z, 0.0) - z) < 1e-15);
    CHECK(std::abs(phi_deriv(*m, z, 0.0) - 1.0) < 1e-14);
    CHECK(semigroup_residual(*m, z, 0.0, 0.8) < 1e-15);
    CHECK(semigroup_residual(*m, z, 0.8, 0.0) < 1e-15);
  }
  CHECK_THROWS_AS(evolve(par, 0.1, -1.0), DomainError);
}

TEST_CASE("Newton inversion reproduces the closed forms") {
  for (const auto& base : {make_parabolic_model(), make_strip_model(), make_half_strip_model()}) {
    CAPTURE(base.label);
    REQUIRE(base.closed_form.has_value());
    const auto numeric = without_closed_form(base);
    CHECK_FALSE(numeric.closed_form.has_value());
    for (Complex z : {Complex(0.0, 0.0), Complex(0.5, 0.4), Complex(-0.9, 0.0), Complex(0.1, -0.95)}) {
      for (double t : {0.1, 1.0, 3.0}) {
        const Complex exact = evolve(base, z, t);
        CHECK(std::abs(evolve(numeric, z, t) - exact) < 1e-10);
        CHECK(std::abs(phi_deriv(numeric, z, t) - phi_deriv(base, z, t)) < 1e-8 * std::abs(phi_deriv(base, z, t)));
      }
    }
  }
}

TEST_CASE("Koebe elliptic iterate matches the explicit slit-plane inverse") {
  const auto m = make_elliptic_model(make_koebe(), 1.0);
  const auto k = make_koebe();
  for (Complex z : {Complex(0.3, 0.3), Complex(-0.95, 0.05), Complex(0.0, 0.99), Complex(0.9, 0.0)}) {
    for (double t : {0.2, 1.0, 2.5}) {
      const Complex oracle = koebe_inverse(std::exp(-t) * k(z));
      CHECK(std::abs(evolve(m, z, t) - oracle) < 1e-10);
    }
  }
  CHECK(std::abs(phi_deriv(m, 0.0, 1.0) - std::exp(-1.0)) < 1e-12);
  for (Complex z : random_disk_points(40, 0.95, 3)) CHECK(semigroup_residual(m, z, 0.4, 0.9) < 1e-10);
}

TEST_CASE("iterates of a spirallike model stay in the disk") {
  const auto m = model_from_label("elliptic:lambda=1+i;koenigs=spirallike:lambda=1+i;atoms=0.5@1;offset=-0.5");
  CHECK(m.kind.elliptic);
  for (Complex z : SampleGrid::polar(6, 16, 0.98).points()) {
    const Complex w = evolve(m, z, 1.0);
    CHECK(std::abs(w) < 1.0);
    CHECK(std::abs(w) <= std::abs(z) + 1e-12);  // Schwarz lemma, phi_t(0) = 0
    CHECK(semigroup_residual(m, z, 0.5, 0.5) < 1e-9);
  }
  CHECK(std::abs(phi_deriv(m, 0.0, 1.0) - std::exp(-Complex(1.0, 1.0))) < 1e-10);
}

TEST_CASE("angular derivative at the Denjoy-Wolff point") {
  const auto par = make_parabolic_model();
  const auto d = dw_derivative_check(par, 1.0);
  CHECK(d.converged);
  CHECK(std::abs(d.estimate - 1.0) < 1e-6);
  CHECK(std::abs(d.expected - 1.0) < 1e-15);
  CHECK(std::abs(dw_derivative_check(par, 0.0).estimate - 1.0) < 1e-12);

  const auto strip = make_strip_model();
  for (double t : {0.5, 1.0, 2.0}) {
    const auto s = dw_derivative_check(strip, t);
    CHECK(s.converged);
    CHECK(std::abs(s.estimate - std::exp(-t)) < 1e-6);
  }
  CHECK(std::abs(dw_derivative_check(make_half_strip_model(), 1.0).estimate - std::exp(-1.0)) < 1e-4);
}

TEST_CASE("continuity in t is linear in the step") {
  const auto par = make_parabolic_model();
  const Complex z(0.3, 0.5);
  const double d1 = std::abs(evolve(par, z, 1.0 + 1e-3) - evolve(par, z, 1.0));
  const double d2 = std::abs(evolve(par, z, 1.0 + 1e-4) - evolve(par, z, 1.0));
  CHECK(d1 / d2 == Approx(10.0).epsilon(1e-2));
}
