#include <cmath>

#include "test_support.hpp"
#include "wedge/errors.hpp"
#include "wedge/ideal_edge_source.hpp"
#include "wedge/sommerfeld.hpp"
#include "wedge/validation.hpp"

using namespace wedge;
using wedge::testing::uniform;
using wedge::testing::uniform_complex;

namespace {

QuadratureConfig tight() {
  QuadratureConfig cfg;
  cfg.rel_tol = 1e-10;
  cfg.abs_tol = 1e-13;
  return cfg;
}

}  // namespace

TEST_CASE("G function") {
  CHECK(std::abs(g_function(0.0, 1.3)) < 1e-15);
  CHECK(std::abs(g_function_product(0.0, 1.3)) == 0.0);
  int compared = 0;
  for (int i = 0; i < 10000; ++i) {
    const Complex a = uniform_complex(-6.0, 6.0, -3.0, 3.0);
    const ComplexAngle t0(uniform_complex(0.0, 1.5 * kPi, -2.0, 2.0));
    Complex diff, prod, neg;
    try {
      diff = g_function(a, t0);
      prod = g_function_product(a, t0);
      neg = g_function(-a, t0);
    } catch (const SingularEvaluation&) {
      continue;
    }
    ++compared;
    CHECK_CLOSE(diff, prod, 1e-12 * std::max(1.0, std::abs(diff)));
    CHECK_CLOSE(neg, -diff, 1e-12 * std::max(1.0, std::abs(diff)));
  }
  CHECK(compared > 9900);
  // Pole at alpha = pi + theta0.
  CHECK_THROWS_AS(g_function(kPi + 0.8, 0.8), SingularEvaluation);
}

TEST_CASE("G poles") {
  const double th = 0.9;
  const ComplexAngle t0(1.1, 0.3);
  const auto poles = g_poles(th, t0);
  CHECK(poles.size() == 20);
  for (const Complex p : poles) {
    const Complex a = th + p;
    const Complex c0 = std::cos(2.0 / 3.0 * t0.value());
    const double gap = std::min(std::abs(c0 - std::cos(2.0 / 3.0 * (a - kPi))), std::abs(c0 - std::cos(2.0 / 3.0 * (a + kPi))));
    CHECK(gap < 1e-12);
  }
}

TEST_CASE("G and beta identities") {
  SUBCASE("real parameters") {
    for (int i = 0; i < 2000; ++i) {
      const double th = uniform(0.0, 1.5 * kPi), t0 = uniform(0.0, 1.5 * kPi), eta = uniform(0.01, 8.0);
      const auto r = g_beta_identities(th, t0, eta);
      CHECK(std::abs(r.even_check) < 1e-11);
      CHECK(std::abs(r.odd_check) < 1e-11);
    }
  }
  SUBCASE("complex incidence") {
    for (int i = 0; i < 2000; ++i) {
      const double th = uniform(0.0, 1.5 * kPi), eta = uniform(0.01, 6.0);
      const ComplexAngle t0(uniform_complex(0.0, 1.5 * kPi, -2.0, 2.0));
      const auto r = g_beta_identities(th, t0, eta);
      CHECK(std::abs(r.even_check) < 1e-10);
      CHECK(std::abs(r.odd_check) < 1e-10);
    }
  }
  SUBCASE("odd identity at eta = 0") {
    CHECK(std::abs(beta_tilde_dirichlet(2.0 / 3.0, 1.0, 2.0, 0.0)) == 0.0);
    CHECK(std::abs(g_beta_identities(1.0, 2.0, 0.0).odd_check) < 1e-14);
  }
}

TEST_CASE("four-term trigonometric identities") {
  for (int i = 0; i < 10000; ++i) {
    const Complex a = uniform_complex(-3, 3, -1, 1), b = uniform_complex(-3, 3, -1, 1), c = uniform_complex(-3, 3, -1, 1);
    const Complex scale = std::sin(a) / (std::cos(a) - std::cos(b + c));
    const double s = std::max({1.0, std::abs(scale), std::abs(std::sin(c) / (std::cos(c) - std::cos(a + b))),
                               std::abs(std::sin(a) / (std::cos(a) - std::cos(b - c))),
                               std::abs(std::sin(c) / (std::cos(c) - std::cos(a - b)))});
    CHECK(std::abs(four_term_identity_even(a, b, c)) < 1e-12 * s * s);
    CHECK(std::abs(four_term_identity_odd(a, b, c)) < 1e-12 * s * s);
  }
}

TEST_CASE("Dirichlet contour solution") {
  const QuadratureConfig cfg = tight();
  SUBCASE("real incidence reduces to the ideal decomposition term by term") {
    const IncidentPlaneWave inc(1.0, 1.0);
    for (const double th : {0.3, 1.5, 2.6, 4.4}) {
      const FieldPoint rcv{20.0, th, 0.0};
      const auto contour = dirichlet_total_contour(inc, rcv, cfg);
      const auto edge = dirichlet_total_edge_form(inc, rcv, cfg);
      const auto ideal = ideal_total_field(inc, rcv, BoundaryConditionPair::dirichlet(), cfg);
      for (const TermKind kind : kGeometricalTerms) {
        CHECK(contour.term(kind).value() == edge.term(kind).value());
        CHECK_CLOSE(contour.term(kind).value(), ideal.term(kind).value(), 1e-15);
      }
      CHECK_CLOSE(contour.diffracted, edge.diffracted, 1e-8);
    }
  }
  SUBCASE("total vanishes on the faces") {
    for (int i = 0; i < 10; ++i) {
      const IncidentPlaneWave inc(uniform(0.05, 1.5 * kPi - 0.05), uniform(0.5, 2.0));
      for (const double th : {0.0, 1.5 * kPi}) {
        const auto d = dirichlet_total_contour(inc, FieldPoint{uniform(1.0, 15.0), th, 0.0}, cfg);
        CHECK(std::abs(d.total()) < 1e-9);
      }
    }
  }
  SUBCASE("complex incidence: totals agree while the diffracted terms differ") {
    const IncidentPlaneWave inc(ComplexAngle(kPi / 2, 0.3), 1.0);
    for (const double th : {0.4, 2.2, 3.9}) {
      const FieldPoint rcv{8.0, th, 0.0};
      const auto contour = dirichlet_total_contour(inc, rcv, cfg);
      const auto edge = dirichlet_total_edge_form(inc, rcv, cfg);
      CHECK_CLOSE(contour.total(), edge.total(), 1e-8);
    }
  }
  SUBCASE("between the shifted and unshifted boundaries the difference is one plane-wave term") {
    const ComplexAngle t0(kPi / 2, 0.3);
    const IncidentPlaneWave inc(t0, 1.0);
    const double shifted = kPi - t0.re - gudermannian(t0.im), unshifted = kPi - t0.re;
    const FieldPoint rcv{6.0, 0.5 * (shifted + unshifted), 0.0};
    const auto contour = dirichlet_total_contour(inc, rcv, cfg);
    const auto edge = dirichlet_total_edge_form(inc, rcv, cfg);
    CHECK(contour.term(TermKind::Reflected1).weight() == 0.0);
    CHECK(edge.term(TermKind::Reflected1).weight() == 1.0);
    const Complex plane = -plane_wave_phase(inc.k * rcv.r, rcv.theta + t0.value(), -1.0);
    CHECK(edge.term(TermKind::Reflected1).value() == plane);
    CHECK(std::abs(contour.diffracted - edge.diffracted) > 0.1);
    CHECK_CLOSE(contour.diffracted - edge.diffracted, plane, 1e-8);
  }
  SUBCASE("principal value on the shadow boundary gives the two-sided mean") {
    const double t0 = 1.0;
    const IncidentPlaneWave inc(t0, 1.0);
    const double boundary = kPi + t0;
    const auto on = dirichlet_total_contour(inc, FieldPoint{10.0, boundary, 0.0}, cfg);
    CHECK(on.on_zone_boundary());
    CHECK(on.diffracted_report.pv_applied);
    const auto up = dirichlet_total_contour(inc, FieldPoint{10.0, boundary + 1e-4, 0.0}, cfg);
    const auto dn = dirichlet_total_contour(inc, FieldPoint{10.0, boundary - 1e-4, 0.0}, cfg);
    CHECK_CLOSE(on.total(), 0.5 * (up.total() + dn.total()), 1e-5);
    // Continuity of the total across the boundary.
    CHECK_CLOSE(up.total(), dn.total(), 1e-2);
    const auto edge = dirichlet_total_edge_form(inc, FieldPoint{10.0, boundary, 0.0}, cfg);
    CHECK_CLOSE(on.total(), edge.total(), 1e-8);
  }
  SUBCASE("complex incidence on an unshifted boundary is refused by the edge form") {
    const ComplexAngle t0(kPi / 2, 0.3);
    const IncidentPlaneWave inc(t0, 1.0);
    CHECK_THROWS_AS(dirichlet_total_edge_form(inc, FieldPoint{5.0, kPi / 2, 0.0}, cfg), SingularEvaluation);
  }
  SUBCASE("receiver outside the domain") {
    CHECK_THROWS_AS(dirichlet_total_contour(IncidentPlaneWave(1.0, 1.0), FieldPoint{1.0, 5.0, 0.0}, cfg), DomainError);
  }
  SUBCASE("far field") {
    const IncidentPlaneWave inc(1.0, 1.0);
    const std::vector<double> krs{50.0, 100.0, 200.0, 400.0};
    const auto est = far_field_extrapolation(
        [&](double kr) { return dirichlet_total_contour(inc, FieldPoint{kr, 3.0, 0.0}, cfg).diffracted; }, krs);
    CHECK_CLOSE(est.coefficient, ideal_diffraction_coefficient(BoundaryKind::Dirichlet, 3.0, 1.0), 1e-5);
    CHECK(est.observed_order == doctest::Approx(1.0).epsilon(0.05));
  }
}
