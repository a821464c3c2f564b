#include <cmath>
#include <vector>

#include "test_support.hpp"
#include "wedge/errors.hpp"
#include "wedge/validation.hpp"

using namespace wedge;

namespace {

const Complex kI{0.0, 1.0};
const double kRight = 1.5 * kPi;

FieldEvaluator plane_wave(double k, double dir) {
  return [=](const FieldPoint& p) { return std::exp(kI * k * (p.x() * std::cos(dir) + p.y() * std::sin(dir))); };
}

}  // namespace

TEST_CASE("polar coordinates inside the wedge") {
  const auto a = polar_in_wedge(1.0, 0.0, kRight);
  CHECK(a.theta == 0.0);
  CHECK(polar_in_wedge(0.0, -2.0, kRight).theta == doctest::Approx(kRight));
  CHECK(polar_in_wedge(0.0, -2.0, kRight).r == doctest::Approx(2.0));
  // Just below face 1, outside the wedge: a small negative angle, not near 2 pi.
  CHECK(polar_in_wedge(1.0, -1e-3, kRight).theta == doctest::Approx(-1e-3));
  CHECK(polar_in_wedge(1e-3, -1.0, kRight).theta > kRight);
}

TEST_CASE("five-point Helmholtz residual of an exact solution is second order") {
  const double k = 2.0;
  const auto p = plane_wave(k, 0.7);
  const std::vector<FieldPoint> pts = {{1.0, 0.5, 0.0}, {2.0, 2.0, 0.0}, {1.5, 4.0, 0.0}};
  const auto coarse = helmholtz_residual(p, pts, k, 2e-2);
  const auto fine = helmholtz_residual(p, pts, k, 1e-2);
  CHECK(coarse.sample_count == pts.size());
  CHECK(coarse.grid_spacing == 2e-2);
  // Leading error (k^2 h^2 / 12)(cos^4 + sin^4) is at most k^2 h^2 / 12.
  CHECK(coarse.max_helmholtz_residual <= k * k * 4e-4 / 12.0);
  CHECK(coarse.max_helmholtz_residual / fine.max_helmholtz_residual == doctest::Approx(4.0).epsilon(0.01));

  // A non-solution is caught.
  const FieldEvaluator wrong = [](const FieldPoint& q) { return std::exp(kI * 1.5 * q.x()); };
  CHECK(helmholtz_residual(wrong, pts, k, 1e-2).max_helmholtz_residual > 0.4);
}

TEST_CASE("Helmholtz residual refuses stencils touching a face or the apex") {
  const auto p = plane_wave(1.0, 0.0);
  const std::vector<FieldPoint> near_face = {{1.0, 0.01, 0.0}};
  const std::vector<FieldPoint> near_apex = {{0.02, 1.0, 0.0}};
  CHECK_THROWS_AS(helmholtz_residual(p, near_face, 1.0, 1e-2), DomainError);
  CHECK_THROWS_AS(helmholtz_residual(p, near_apex, 1.0, 1e-2), DomainError);
  CHECK_THROWS_AS(helmholtz_residual(p, std::vector<FieldPoint>{{1.0, 1.0, 0.0}}, 1.0, 0.0), DomainError);
}

TEST_CASE("face residuals on exact single-face solutions") {
  const double k = 1.5;
  const std::vector<double> radii = {0.5, 1.0, 2.0};
  const double h = 1e-4;
  SUBCASE("impedance on the first face") {
    // exp(ik(c x - mu y)) with c^2 + mu^2 = 1; outward normal is -y.
    const Complex mu{0.4, -0.3};
    const Complex c = std::sqrt(1.0 - mu * mu);
    const FieldEvaluator p = [&](const FieldPoint& q) { return std::exp(kI * k * (c * q.x() - mu * q.y())); };
    const auto good = boundary_residual(p, Face::First, {FaceCondition::Kind::Impedance, mu}, k, h, radii);
    CHECK(good.max_bc_residual[0] < 1e-7);
    CHECK(good.max_bc_residual[1] == 0.0);
    CHECK(good.sample_count == radii.size());
    const auto bad = boundary_residual(p, Face::First, {FaceCondition::Kind::Impedance, 0.5 * mu}, k, h, radii);
    CHECK(bad.max_bc_residual[0] > 0.1);
  }
  SUBCASE("Neumann and Dirichlet on the second face") {
    // Face 2 is the negative y axis; its outward normal is -x.
    const FieldEvaluator cosine = [&](const FieldPoint& q) { return std::cos(k * q.x()) + 0.0 * kI; };
    const FieldEvaluator sine = [&](const FieldPoint& q) { return std::sin(k * q.x()) + 0.0 * kI; };
    CHECK(boundary_residual(cosine, Face::Second, {FaceCondition::Kind::Neumann, 0.0}, k, h, radii)
              .max_bc_residual[1] < 1e-7);
    CHECK(boundary_residual(sine, Face::Second, {FaceCondition::Kind::Dirichlet, 0.0}, k, h, radii)
              .max_bc_residual[1] < 1e-12);
    CHECK(boundary_residual(sine, Face::Second, {FaceCondition::Kind::Neumann, 0.0}, k, h, radii)
              .max_bc_residual[1] > 0.5);
  }
  CHECK_THROWS_AS(boundary_residual(plane_wave(1.0, 0.0), Face::First, {}, 1.0, 0.2, radii), DomainError);
}

TEST_CASE("face conditions of boundary pairs") {
  using K = FaceCondition::Kind;
  CHECK(FaceCondition::of(BoundaryConditionPair::dirichlet_neumann(), Face::First).kind == K::Dirichlet);
  CHECK(FaceCondition::of(BoundaryConditionPair::dirichlet_neumann(), Face::Second).kind == K::Neumann);
  CHECK(FaceCondition::of(BoundaryConditionPair::neumann_dirichlet(), Face::First).kind == K::Neumann);
  const auto imp = BoundaryConditionPair::with_impedance({0.2, -0.1}, 0.7);
  CHECK(FaceCondition::of(imp, Face::First).mu == Complex{0.2, -0.1});
  CHECK(FaceCondition::of(imp, Face::Second).mu == Complex{0.7, 0.0});
}

TEST_CASE("far-field extrapolation of a synthetic asymptotic series") {
  const Complex d{0.3, -0.2}, c1{1.1, 0.4}, c2{-0.7, 2.0};
  const auto field = [&](double kr) {
    return std::exp(kI * kr) / std::sqrt(kr) * (d + c1 / kr + c2 / (kr * kr));
  };
  const std::vector<double> krs = {50, 100, 200, 400};
  const auto est = far_field_extrapolation(field, krs);
  CHECK_CLOSE(est.coefficient, d, 1e-12);
  CHECK(est.observed_order == doctest::Approx(1.0).epsilon(0.02));
  CHECK_FALSE(est.flagged);
  CHECK(est.scaled.size() == krs.size());

  // Noise the fit cannot absorb is flagged.
  const auto noisy = [&](double kr) { return field(kr) * (1.0 + 1e-3 * std::sin(7.0 * kr)); };
  CHECK(far_field_extrapolation(noisy, krs).flagged);

  CHECK_THROWS_AS(far_field_extrapolation(field, std::vector<double>{50, 100}), DomainError);
  CHECK_THROWS_AS(far_field_extrapolation(field, std::vector<double>{50, 100, 150}), DomainError);
  CHECK_THROWS_AS(far_field_extrapolation(field, std::vector<double>{400, 200, 100}), DomainError);
}
