#include "wedge/ideal_edge_source.hpp"

#include <algorithm>
#include <cmath>

#include "wedge/errors.hpp"

namespace wedge {

namespace {

// cosh(a) - cos(b) = 2 sinh^2(a/2) + 2 sin^2(b/2), free of cancellation near a = b = 0.
Complex hyperbolic_gap(double a, Complex b) {
  const double sh = std::sinh(0.5 * a);
  const Complex sn = std::sin(0.5 * b);
  return 2.0 * sh * sh + 2.0 * sn * sn;
}

// nu * phi congruent to 0 mod 2 pi: the edge-source pole sits at eta = 0.
bool pole_at_apex(Complex nu_phi, double nu) {
  const double m = std::round(nu_phi.real() / (2 * kPi));
  return std::abs(nu_phi - Complex(2 * kPi * m, 0.0)) <= nu * kZoneBoundaryTol;
}

Complex checked(Complex value, const char* what) {
  if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) {
    throw SingularEvaluation(std::string(what) + " evaluated on a zone-boundary pole");
  }
  return value;
}

Complex beta_term(double nu, Complex phi, double eta) {
  const Complex x = nu * phi;
  if (pole_at_apex(x, nu)) return {0.0, 0.0};
  return checked(std::sin(x) / hyperbolic_gap(nu * eta, x), "beta");
}

Complex beta_mixed_term(double nu, Complex phi, double eta) {
  const Complex x = nu * phi;
  if (pole_at_apex(x, nu)) return {0.0, 0.0};
  return checked(2.0 * std::sin(0.5 * x) * std::cosh(0.5 * nu * eta) / hyperbolic_gap(nu * eta, x),
                 "beta'");
}

Complex beta_dirichlet_neumann(double nu, double theta, ComplexAngle theta0, double eta) {
  const auto phi = edge_angles(theta, theta0);
  return -beta_mixed_term(nu, phi[0], eta) + beta_mixed_term(nu, phi[1], eta) +
         beta_mixed_term(nu, phi[2], eta) - beta_mixed_term(nu, phi[3], eta);
}

}  // namespace

std::array<Complex, 4> edge_angles(double theta, ComplexAngle theta0) {
  const Complex t0 = theta0.value();
  return {kPi + t0 + theta, kPi + t0 - theta, kPi - t0 + theta, kPi - t0 - theta};
}

Complex beta_ideal(BoundaryKind bc, double nu, double theta, ComplexAngle theta0, double eta) {
  if (!(eta >= 0.0)) throw DomainError("eta must be non-negative");
  switch (bc) {
    case BoundaryKind::Dirichlet: {
      const auto phi = edge_angles(theta, theta0);
      return -beta_term(nu, phi[0], eta) + beta_term(nu, phi[1], eta) + beta_term(nu, phi[2], eta) -
             beta_term(nu, phi[3], eta);
    }
    case BoundaryKind::Neumann: {
      const auto phi = edge_angles(theta, theta0);
      return beta_term(nu, phi[0], eta) + beta_term(nu, phi[1], eta) + beta_term(nu, phi[2], eta) +
             beta_term(nu, phi[3], eta);
    }
    case BoundaryKind::DirichletNeumann:
      return beta_dirichlet_neumann(nu, theta, theta0, eta);
    case BoundaryKind::NeumannDirichlet: {
      const double theta_w = kPi / nu;
      return beta_dirichlet_neumann(nu, theta_w - theta, ComplexAngle(theta_w) - theta0, eta);
    }
    case BoundaryKind::Impedance: break;
  }
  throw DomainError("beta_ideal needs an ideal boundary-condition pair");
}

Complex beta_tilde_dirichlet(double nu, double theta, ComplexAngle theta0, double eta) {
  if (!(eta >= 0.0)) throw DomainError("eta must be non-negative");
  const auto phi = edge_angles(theta, theta0);
  const double sh = std::sinh(nu * eta);
  auto term = [&](Complex p) { return checked(sh / hyperbolic_gap(nu * eta, nu * p), "beta~"); };
  return term(phi[0]) + term(phi[1]) - term(phi[2]) - term(phi[3]);
}

DirectivityKernel::DirectivityKernel(BoundaryKind bc, WedgeGeometry wedge, double theta,
                                     ComplexAngle theta0)
    : bc_(bc), wedge_(wedge), theta_(theta), theta0_(theta0) {
  if (bc == BoundaryKind::Impedance) {
    throw DomainError("DirectivityKernel covers ideal boundary conditions only");
  }
  if (theta < -1e-12 || theta > wedge.theta_w() + 1e-12) {
    throw DomainError("receiver angle outside the propagation domain");
  }
}

Complex DirectivityKernel::operator()(double eta) const {
  return beta_ideal(bc_, wedge_.nu(), theta_, theta0_, eta);
}

double DirectivityKernel::structure_extent() const {
  if (theta0_.is_real()) return 0.0;
  // Poles sit at cosh(eta) = cos(phi_i + 2 pi m / nu), bounded by cosh(Im phi_i).
  return std::cosh(std::abs(theta0_.im)) + 1.0;
}

QuadratureReport edge_integral_point_source(const PointSourceSpec& src, const FieldPoint& rcv,
                                            const DirectivityKernel& kernel,
                                            const QuadratureConfig& cfg) {
  const double k = src.k;
  const double nu = kernel.nu();
  auto integrand = [&](double z) {
    const double zr = z - rcv.z;
    const double l = std::hypot(rcv.r, zr);
    const double l0 = std::hypot(src.r0, z - src.z0);
    const double eta = eta_point_source(z, rcv, src);
    return std::exp(Complex(0.0, k * (l + l0))) / (l * l0) * kernel(eta);
  };
  const double extent = 4.0 * std::max({rcv.r, src.r0, std::abs(src.z0), std::abs(rcv.z), 1.0 / k});
  QuadratureReport rep = integrate_line_oscillatory(integrand, 2.0 * k, extent, cfg);
  rep.value *= -nu / (4.0 * kPi);
  rep.error_estimate *= nu / (4.0 * kPi);
  if (!rep.converged) throw QuadratureFailure("point-source edge integral did not converge", rep);
  return rep;
}

QuadratureReport edge_integral_point_source_half(const PointSourceSpec& src, const FieldPoint& rcv,
                                                 const DirectivityKernel& kernel,
                                                 const QuadratureConfig& cfg) {
  const double k = src.k;
  const double nu = kernel.nu();
  auto integrand = [&](double z) -> Complex {
    if (z < 0.0) return {0.0, 0.0};
    const double zr = z - rcv.z;
    const double l = std::hypot(rcv.r, zr);
    const double l0 = std::hypot(src.r0, z - src.z0);
    const double eta = eta_point_source(z, rcv, src);
    return std::exp(Complex(0.0, k * (l + l0))) / (l * l0) * kernel(eta);
  };
  const double extent = 4.0 * std::max({rcv.r, src.r0, std::abs(src.z0), std::abs(rcv.z), 1.0 / k});
  QuadratureReport rep = integrate_line_oscillatory(integrand, 2.0 * k, extent, cfg);
  rep.value *= -nu / (4.0 * kPi);
  rep.error_estimate *= nu / (4.0 * kPi);
  if (!rep.converged) throw QuadratureFailure("point-source edge integral did not converge", rep);
  return rep;
}

QuadratureReport edge_integral_plane_wave(const IncidentPlaneWave& inc, const FieldPoint& rcv,
                                          const DirectivityKernel& kernel,
                                          const QuadratureConfig& cfg) {
  if (std::abs(inc.phi0 - kPi / 2) > 1e-12) {
    throw DomainError("plane-wave edge integral supports perpendicular incidence only");
  }
  const double nu = kernel.nu();
  QuadratureReport rep = integrate_edge([&](double eta) { return kernel(eta); }, inc.k, rcv.r, cfg,
                                        {kernel.structure_extent()});
  rep.value *= -nu / (2.0 * kPi);
  rep.error_estimate *= nu / (2.0 * kPi);
  if (!rep.converged) throw QuadratureFailure("plane-wave edge integral did not converge", rep);
  return rep;
}

double cosh_two_thirds_eta_via_lambda(double w) {
  const double lambda = w + std::sqrt(w * w - 1.0);
  return 0.5 * (std::pow(lambda, -2.0 / 3.0) + std::pow(lambda, 2.0 / 3.0));
}

std::vector<ZoneTerm> geometrical_acoustics(const IncidentPlaneWave& inc, const FieldPoint& rcv,
                                            const BoundaryConditionPair& bc) {
  const auto [r1, r2] = bc.ideal_reflection();
  const double kr = inc.k * rcv.r;
  const double th = rcv.theta;
  const Complex t0 = inc.theta0.value();
  // For real theta0 the shift vanishes and the gates reduce to
  // H[pi - |th - th0|], H[pi - th - th0], H[th + th0 - 2 pi].
  const double shifted = inc.theta0.re + gudermannian(inc.theta0.im);
  return {
      {TermKind::Incident, 1.0, kPi - std::abs(th - shifted), plane_wave_phase(kr, th - t0, -1.0)},
      {TermKind::Reflected1, r1, kPi - std::abs(th + shifted), plane_wave_phase(kr, th + t0, -1.0)},
      {TermKind::Reflected2, r2, kPi - std::abs(th + shifted - 3 * kPi),
       plane_wave_phase(kr, th + t0, 1.0)},
  };
}

Complex point_source_geometrical(const PointSourceSpec& src, const FieldPoint& rcv,
                                 const BoundaryConditionPair& bc) {
  const auto [r1, r2] = bc.ideal_reflection();
  auto spherical = [&](double source_angle) {
    const double dx = rcv.r * std::cos(rcv.theta) - src.r0 * std::cos(source_angle);
    const double dy = rcv.r * std::sin(rcv.theta) - src.r0 * std::sin(source_angle);
    const double dist = std::sqrt(dx * dx + dy * dy + (rcv.z - src.z0) * (rcv.z - src.z0));
    return std::exp(Complex(0.0, src.k * dist)) / dist;
  };
  const double th = rcv.theta;
  const double t0 = src.theta0;
  return heaviside(kPi - std::abs(th - t0)) * spherical(t0) +
         r1 * heaviside(kPi - th - t0) * spherical(-t0) +
         r2 * heaviside(th + t0 - 2 * kPi) * spherical(3 * kPi - t0);
}

FieldDecomposition ideal_total_field(const IncidentPlaneWave& inc, const FieldPoint& rcv,
                                     const BoundaryConditionPair& bc, const QuadratureConfig& cfg) {
  if (!bc.is_ideal()) throw DomainError("ideal_total_field needs an ideal boundary-condition pair");
  if (!inc.theta0.is_real()) throw DomainError("ideal_total_field needs a real incidence angle");
  FieldDecomposition out;
  for (const auto& term : geometrical_acoustics(inc, rcv, bc)) out.term(term.kind) = term;
  out.term(TermKind::Surface1).kind = TermKind::Surface1;
  out.term(TermKind::Surface2).kind = TermKind::Surface2;
  const DirectivityKernel kernel(bc.kind, WedgeGeometry::right_angled(), rcv.theta, inc.theta0);
  out.diffracted_report = edge_integral_plane_wave(inc, rcv, kernel, cfg);
  out.diffracted_report.pv_applied = out.on_zone_boundary();
  out.diffracted = out.diffracted_report.value;
  return out;
}

Complex ideal_diffraction_coefficient(BoundaryKind bc, double theta, ComplexAngle theta0) {
  const double nu = 2.0 / 3.0;
  const Complex b0 = beta_ideal(bc, nu, theta, theta0, 0.0);
  return -nu * b0 * std::exp(Complex(0.0, kPi / 4)) / (2.0 * std::sqrt(2.0 * kPi));
}

}  // namespace wedge
