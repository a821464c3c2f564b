#include "wedge/sommerfeld.hpp"

#include <cmath>

#include "wedge/errors.hpp"
#include "wedge/ideal_edge_source.hpp"

namespace wedge {

namespace {

constexpr double kPoleGuard = 1e-13;
const Complex kI{0.0, 1.0};

void check_receiver(double theta) {
  if (theta < 0.0 || theta > 1.5 * kPi) throw DomainError("receiver angle must lie in [0, 3 pi / 2]");
}

}  // namespace

Complex g_function(Complex alpha, ComplexAngle theta0) {
  const Complex c0 = std::cos(2.0 / 3.0 * theta0.value());
  const Complex d1 = c0 - std::cos(2.0 / 3.0 * (alpha - kPi));
  const Complex d2 = c0 - std::cos(2.0 / 3.0 * (alpha + kPi));
  if (std::abs(d1) < kPoleGuard || std::abs(d2) < kPoleGuard) {
    throw SingularEvaluation("G evaluated at a pole");
  }
  return 1.0 / d1 - 1.0 / d2;
}

Complex g_function_product(Complex alpha, ComplexAngle theta0) {
  const Complex t0 = theta0.value();
  const Complex num = std::sqrt(3.0) * std::sin(2.0 / 3.0 * alpha);
  const Complex den = (0.5 + std::cos(2.0 / 3.0 * (alpha - t0))) * (0.5 + std::cos(2.0 / 3.0 * (alpha + t0)));
  if (std::abs(den) < kPoleGuard) throw SingularEvaluation("G evaluated at a pole");
  return num / den;
}

std::vector<Complex> g_poles(double theta, ComplexAngle theta0) {
  std::vector<Complex> out;
  const Complex t0 = theta0.value();
  for (int n = -2; n <= 2; ++n) {
    for (const double s_pi : {1.0, -1.0}) {
      for (const double s_t0 : {1.0, -1.0}) {
        out.push_back(-theta + s_pi * kPi + s_t0 * t0 + 3.0 * kPi * n);
      }
    }
  }
  return out;
}

SommerfeldIntegrand::SommerfeldIntegrand(double theta, ComplexAngle theta0)
    : theta_(theta), theta0_(theta0), prefactor_(std::sin(2.0 / 3.0 * theta0.value())) {}

Complex SommerfeldIntegrand::operator()(Complex alpha) const {
  return prefactor_ * g_function(theta_ + alpha, theta0_);
}

FieldDecomposition dirichlet_total_contour(const IncidentPlaneWave& inc, const FieldPoint& rcv,
                                          const QuadratureConfig& cfg) {
  check_receiver(rcv.theta);
  FieldDecomposition out;
  for (const auto& term : geometrical_acoustics(inc, rcv, BoundaryConditionPair::dirichlet())) {
    out.term(term.kind) = term;
  }
  out.term(TermKind::Surface1).kind = TermKind::Surface1;
  out.term(TermKind::Surface2).kind = TermKind::Surface2;

  QuadratureConfig qc = cfg;
  qc.principal_value = cfg.principal_value || out.on_zone_boundary();
  const SommerfeldIntegrand integrand(rcv.theta, inc.theta0);
  const auto poles = integrand.poles();
  QuadratureReport rep = integrate_contour_s(integrand, inc.k, rcv.r, qc, poles);
  const Complex factor = -1.0 / (3.0 * kPi * kI);
  rep.value *= factor;
  rep.error_estimate *= std::abs(factor);
  if (!rep.converged) throw QuadratureFailure("Dirichlet contour integral did not converge", rep);
  out.diffracted_report = rep;
  out.diffracted = rep.value;
  return out;
}

FieldDecomposition dirichlet_total_edge_form(const IncidentPlaneWave& inc, const FieldPoint& rcv,
                                            const QuadratureConfig& cfg) {
  check_receiver(rcv.theta);
  const double kr = inc.k * rcv.r;
  const double th = rcv.theta;
  const Complex t0 = inc.theta0.value();
  const double re0 = inc.theta0.re;

  FieldDecomposition out;
  out.term(TermKind::Incident) = {TermKind::Incident, 1.0, kPi - std::abs(th - re0),
                                  plane_wave_phase(kr, th - t0, -1.0)};
  out.term(TermKind::Reflected1) = {TermKind::Reflected1, -1.0, kPi - std::abs(th + re0),
                                    plane_wave_phase(kr, th + t0, -1.0)};
  out.term(TermKind::Reflected2) = {TermKind::Reflected2, -1.0, kPi - std::abs(th + re0 - 3 * kPi),
                                    plane_wave_phase(kr, th + t0, 1.0)};
  out.term(TermKind::Surface1).kind = TermKind::Surface1;
  out.term(TermKind::Surface2).kind = TermKind::Surface2;

  if (!inc.theta0.is_real() && out.on_zone_boundary()) {
    // The unshifted gate vanishes exactly where a kernel pole reaches the
    // real eta axis (at eta = |Im theta0|), away from the apex.
    throw SingularEvaluation("edge-source form evaluated on an unshifted zone boundary with complex theta0");
  }

  const DirectivityKernel kernel(BoundaryKind::Dirichlet, WedgeGeometry::right_angled(), th,
                                 inc.theta0);
  out.diffracted_report = edge_integral_plane_wave(inc, rcv, kernel, cfg);
  out.diffracted_report.pv_applied = out.on_zone_boundary();
  out.diffracted = out.diffracted_report.value;
  return out;
}

IdentityResiduals g_beta_identities(double theta, ComplexAngle theta0, double eta) {
  const double nu = 2.0 / 3.0;
  const Complex s0 = std::sin(nu * theta0.value());
  const Complex gp = g_function(theta + kI * eta, theta0);
  const Complex gm = g_function(theta - kI * eta, theta0);
  const Complex beta = beta_ideal(BoundaryKind::Dirichlet, nu, theta, theta0, eta);
  const Complex beta_tilde = beta_tilde_dirichlet(nu, theta, theta0, eta);
  return {s0 * (gp + gm) + beta, s0 * (gp - gm) + kI * beta_tilde};
}

Complex four_term_identity_even(Complex a, Complex b, Complex c) {
  using std::cos;
  using std::sin;
  return sin(a) / (cos(a) - cos(b + c)) + sin(a) / (cos(a) - cos(b - c)) +
         sin(a + b) / (cos(c) - cos(a + b)) + sin(a - b) / (cos(c) - cos(a - b));
}

Complex four_term_identity_odd(Complex a, Complex b, Complex c) {
  using std::cos;
  using std::sin;
  return sin(a) / (cos(a) - cos(b + c)) - sin(a) / (cos(a) - cos(b - c)) -
         sin(c) / (cos(c) - cos(a + b)) + sin(c) / (cos(c) - cos(a - b));
}

}  // namespace wedge
