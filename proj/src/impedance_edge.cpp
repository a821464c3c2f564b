#include "wedge/impedance_edge.hpp"

#include <algorithm>
#include <cmath>

#include "wedge/errors.hpp"
#include "wedge/ideal_edge_source.hpp"

namespace wedge {

namespace {

constexpr double kNuRight = 2.0 / 3.0;
constexpr double kPoleOnPathTol = 1e-9;

}  // namespace

EvenOddSplit q_decomposition(Complex alpha, double theta, ComplexAngle theta1, ComplexAngle theta2) {
  const double c = std::cos(theta), s = std::sin(theta);
  const Complex s1 = sin(theta1), c2 = cos(theta2);
  const Complex ca = std::cos(alpha), sa = std::sin(alpha);
  return {c * s * (ca * ca - sa * sa) + (s1 * c + c2 * s) * ca + s1 * c2,
          (c * c - s * s) * ca * sa + (c2 * c - s1 * s) * sa};
}

EvenOddSplit q_hyperbolic(double eta, double theta, ComplexAngle theta1, ComplexAngle theta2) {
  const double c = std::cos(theta), s = std::sin(theta);
  const Complex s1 = sin(theta1), c2 = cos(theta2);
  const double ch = std::cosh(eta), sh = std::sinh(eta);
  return {c * s * (ch * ch + sh * sh) + (s1 * c + c2 * s) * ch + s1 * c2,
          (s * s - c * c) * ch * sh + (s1 * s - c2 * c) * sh};
}

ImpedanceKernel::ImpedanceKernel(double theta, ComplexAngle theta0, const ImpedanceFaces& faces)
    : theta_(theta),
      faces_(faces),
      angles_(theta0, faces.theta1, faces.theta2),
      prefactor_(impedance_prefactor(theta0, faces.theta1, faces.theta2)) {
  if (theta < -1e-12 || theta > 1.5 * kPi + 1e-12) {
    throw DomainError("receiver angle outside the propagation domain");
  }
  static const char* const names[3] = {"sin(2 theta0 / 3)", "sin(2 theta1 / 3)", "sin(2 theta2 / 3)"};
  for (int j = 0; j < 3; ++j) {
    const Complex sj = std::sin(kNuRight * angles_.theta[j].value());
    const double scale = std::max(1.0, std::abs(std::cos(kNuRight * angles_.theta[j].value())));
    if (std::abs(sj) < kDegeneracyTol * scale) throw DegenerateParameter(names[j], std::abs(sj));
    weight_over_sin_[j] = angles_.weight[j] / sj;
  }
}

Complex ImpedanceKernel::operator()(double eta) const {
  const auto [q, qt] = q_hyperbolic(eta, theta_, faces_.theta1, faces_.theta2);
  Complex sum{0.0, 0.0};
  for (int j = 0; j < 3; ++j) {
    Complex term = q * beta_ideal(BoundaryKind::Dirichlet, kNuRight, theta_, angles_.theta[j], eta);
    // q~ vanishes at the apex, where beta~ may be 0 / 0.
    if (eta > 0.0) term += qt * beta_tilde_dirichlet(kNuRight, theta_, angles_.theta[j], eta);
    sum += weight_over_sin_[j] * term;
  }
  return prefactor_ * sum;
}

double ImpedanceKernel::structure_extent() const {
  double extent = 0.0;
  for (int j = 0; j < 3; ++j) {
    if (!angles_.theta[j].is_real()) {
      extent = std::max(extent, std::cosh(std::abs(angles_.theta[j].im)) + 1.0);
    }
  }
  return extent;
}

std::array<ZoneTerm, 5> impedance_edge_zone_terms(const IncidentPlaneWave& inc, const FieldPoint& rcv,
                                                  const ImpedanceFaces& faces) {
  auto terms = impedance_zone_terms(inc, rcv, faces);
  terms[static_cast<int>(TermKind::Surface1)].heaviside_arg = kPi - rcv.theta - faces.theta1.re;
  terms[static_cast<int>(TermKind::Surface2)].heaviside_arg = rcv.theta + faces.theta2.re - 2 * kPi;
  return terms;
}

bool edge_gate_degenerate(double theta, const ImpedanceFaces& faces) {
  return on_zone_boundary(kPi - theta - faces.theta1.re) ||
         on_zone_boundary(theta + faces.theta2.re - 2 * kPi);
}

FieldDecomposition impedance_total_edge_source(const IncidentPlaneWave& inc, const FieldPoint& rcv,
                                               const ImpedanceFaces& faces, const QuadratureConfig& cfg) {
  if (std::abs(inc.phi0 - kPi / 2) > 1e-12) {
    throw DomainError("impedance edge-source form supports perpendicular incidence only");
  }
  FieldDecomposition out;
  out.geometrical = impedance_edge_zone_terms(inc, rcv, faces);

  const ImpedanceKernel kernel(rcv.theta, inc.theta0, faces);
  EdgeKernelHints hints{kernel.structure_extent()};
  // At a degenerate corner the surface-wave pole sits on the path at eta = |Im theta_j|;
  // its principal value pairs with the half-weight gate.
  const auto& t = out.geometrical;
  if (on_zone_boundary(t[static_cast<int>(TermKind::Surface1)].heaviside_arg) &&
      std::abs(faces.theta1.im) > kPoleOnPathTol) {
    hints.pole_eta = std::abs(faces.theta1.im);
  } else if (on_zone_boundary(t[static_cast<int>(TermKind::Surface2)].heaviside_arg) &&
             std::abs(faces.theta2.im) > kPoleOnPathTol) {
    hints.pole_eta = std::abs(faces.theta2.im);
  }
  QuadratureReport rep = integrate_edge([&](double eta) { return kernel(eta); }, inc.k, rcv.r, cfg, hints);
  const double factor = 1.0 / (3.0 * kPi);
  rep.value *= -factor;
  rep.error_estimate *= factor;
  if (!rep.converged) throw QuadratureFailure("impedance edge integral did not converge", rep);
  rep.pv_applied = rep.pv_applied || out.on_zone_boundary();
  out.diffracted_report = rep;
  out.diffracted = rep.value;
  return out;
}

}  // namespace wedge
