#include "wedge/geometry.hpp"

#include <cmath>
#include <string>

#include "wedge/errors.hpp"

namespace wedge {

Complex sin(ComplexAngle a) { return std::sin(a.value()); }
Complex cos(ComplexAngle a) { return std::cos(a.value()); }

WedgeGeometry::WedgeGeometry(double theta_w) : theta_w_(theta_w) {
  if (!std::isfinite(theta_w) || theta_w <= kPi || theta_w >= 2 * kPi) {
    throw DomainError("wedge exterior angle must satisfy pi < theta_w < 2 pi, got " +
                      std::to_string(theta_w));
  }
}

bool WedgeGeometry::is_right_angled() const noexcept {
  return std::abs(theta_w_ - 1.5 * kPi) < 1e-14;
}

ImpedanceFaces ImpedanceFaces::from_admittance(Complex mu1, Complex mu2) {
  auto [t1, t2] = admittance_to_angles(mu1, mu2);
  return {mu1, mu2, t1, t2};
}

ImpedanceFaces ImpedanceFaces::from_angles(ComplexAngle theta1, ComplexAngle theta2) {
  if (theta1.re < kPi - 1e-12 || theta1.re > 1.5 * kPi + 1e-12) {
    throw DomainError("Re theta1 must lie in [pi, 3 pi / 2]");
  }
  if (theta2.re < -1e-12 || theta2.re > 0.5 * kPi + 1e-12) {
    throw DomainError("Re theta2 must lie in [0, pi / 2]");
  }
  auto [mu1, mu2] = angles_to_admittance(theta1, theta2);
  return {mu1, mu2, theta1, theta2};
}

std::string_view to_string(BoundaryKind kind) {
  switch (kind) {
    case BoundaryKind::Dirichlet: return "dirichlet";
    case BoundaryKind::Neumann: return "neumann";
    case BoundaryKind::DirichletNeumann: return "dirichlet-neumann";
    case BoundaryKind::NeumannDirichlet: return "neumann-dirichlet";
    case BoundaryKind::Impedance: return "impedance";
  }
  return "unknown";
}

std::pair<double, double> BoundaryConditionPair::ideal_reflection() const {
  switch (kind) {
    case BoundaryKind::Dirichlet: return {-1.0, -1.0};
    case BoundaryKind::Neumann: return {1.0, 1.0};
    case BoundaryKind::DirichletNeumann: return {-1.0, 1.0};
    case BoundaryKind::NeumannDirichlet: return {1.0, -1.0};
    case BoundaryKind::Impedance: break;
  }
  throw DomainError("ideal reflection coefficients requested for an impedance wedge");
}

IncidentPlaneWave::IncidentPlaneWave(ComplexAngle theta0_, double k_, double phi0_)
    : theta0(theta0_), k(k_), phi0(phi0_) {
  if (!(k > 0.0) || !std::isfinite(k)) throw DomainError("wavenumber must be positive");
  if (!std::isfinite(theta0.re) || !std::isfinite(theta0.im)) {
    throw DomainError("incidence angle must be finite");
  }
  if (theta0.re < 0.0 || theta0.re > 1.5 * kPi) {
    throw DomainError("Re theta0 must lie in [0, 3 pi / 2]");
  }
}

PointSourceSpec::PointSourceSpec(double r0_, double theta0_, double z0_, double k_)
    : r0(r0_), theta0(theta0_), z0(z0_), k(k_) {
  if (!(r0 > 0.0)) throw DomainError("source radius must be positive");
  if (!(k > 0.0)) throw DomainError("wavenumber must be positive");
}

double FieldPoint::x() const { return r * std::cos(theta); }
double FieldPoint::y() const { return r * std::sin(theta); }

FieldPoint FieldPoint::from_cartesian(double x, double y) {
  double theta = std::atan2(y, x);
  // The propagation domain is 0 <= theta <= 3 pi / 2; the fourth quadrant
  // belongs to the wedge, so the branch cut of atan2 is moved to -pi/2
  // (the face x = 0, y < 0 itself maps to 3 pi / 2).
  if (theta <= -0.5 * kPi) theta += 2 * kPi;
  return {std::hypot(x, y), theta, 0.0};
}

double gudermannian(double x) { return std::atan(std::sinh(x)); }

double clamped_acosh(double x) {
  if (x < 1.0) {
    if (x >= 1.0 - 1e-10) return 0.0;
    throw DomainError("acosh argument " + std::to_string(x) + " < 1: inconsistent geometry");
  }
  return std::acosh(x);
}

double eta_point_source(double z_edge, const FieldPoint& rcv, const PointSourceSpec& src) {
  if (!(rcv.r > 0.0)) throw DomainError("receiver radius must be positive");
  const double z = z_edge - rcv.z;
  const double z0 = src.z0 - rcv.z;
  const double l = std::hypot(rcv.r, z);
  const double l0 = std::hypot(src.r0, z - z0);
  return clamped_acosh(((z - z0) * z + l0 * l) / (src.r0 * rcv.r));
}

double eta_plane_wave(double z_edge, double r) {
  if (!(r > 0.0)) throw DomainError("receiver radius must be positive");
  // acosh(sqrt(1 + (z/r)^2)) == asinh(|z| / r), without the cancellation near 0.
  return std::asinh(std::abs(z_edge) / r);
}

double eta_from_angles(double phi0, double phi) {
  return clamped_acosh((1.0 + std::cos(phi0) * std::cos(phi)) / (std::sin(phi0) * std::sin(phi)));
}

LocalSpherical local_spherical(const FieldPoint& p) {
  if (!(p.r > 0.0)) throw DomainError("receiver radius must be positive");
  return {std::hypot(p.r, p.z), std::atan2(p.r, -p.z)};
}

std::pair<ComplexAngle, ComplexAngle> admittance_to_angles(Complex mu1, Complex mu2) {
  if (mu1.real() < 0.0 || mu2.real() < 0.0) {
    throw PassivityViolation("admittance with Re mu < 0 violates passivity");
  }
  // For real mu > 1 the principal asin/acos sit on their branch cuts; a
  // negative-zero imaginary part would silently pick the other side.
  auto normalise = [](Complex mu) {
    return mu.imag() == 0.0 ? Complex(mu.real(), 0.0) : mu;
  };
  const Complex a = std::asin(normalise(mu1));
  const Complex b = std::acos(normalise(mu2));
  return {ComplexAngle(kPi + a.real(), a.imag()), ComplexAngle(b)};
}

std::pair<Complex, Complex> angles_to_admittance(ComplexAngle theta1, ComplexAngle theta2) {
  return {-sin(theta1), cos(theta2)};
}

}  // namespace wedge
