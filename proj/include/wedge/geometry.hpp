#pragma once

// Shared wedge geometry: complex angles, boundary conditions, incident waves,
// receivers, and the small closed forms every other module leans on.

#include <complex>
#include <numbers>
#include <optional>
#include <string_view>
#include <utility>

namespace wedge {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;

/// Angle in radians with real and imaginary parts. No wrapping is applied.
struct ComplexAngle {
  double re = 0.0;
  double im = 0.0;

  constexpr ComplexAngle() = default;
  constexpr ComplexAngle(double real) : re(real) {}  // NOLINT(implicit)
  constexpr ComplexAngle(double real, double imag) : re(real), im(imag) {}
  explicit ComplexAngle(Complex z) : re(z.real()), im(z.imag()) {}

  Complex value() const { return {re, im}; }
  bool is_real() const { return im == 0.0; }

  friend ComplexAngle operator+(ComplexAngle a, ComplexAngle b) { return {a.re + b.re, a.im + b.im}; }
  friend ComplexAngle operator-(ComplexAngle a, ComplexAngle b) { return {a.re - b.re, a.im - b.im}; }
  friend ComplexAngle operator-(ComplexAngle a) { return {-a.re, -a.im}; }
  friend ComplexAngle operator*(double s, ComplexAngle a) { return {s * a.re, s * a.im}; }
  friend bool operator==(ComplexAngle, ComplexAngle) = default;
};

Complex sin(ComplexAngle a);
Complex cos(ComplexAngle a);

/// Exterior angle of the propagation domain, pi < theta_w < 2 pi.
class WedgeGeometry {
 public:
  explicit WedgeGeometry(double theta_w);
  static WedgeGeometry right_angled() { return WedgeGeometry(1.5 * kPi); }

  double theta_w() const noexcept { return theta_w_; }
  /// Wedge index nu = pi / theta_w, in (1/2, 1).
  double nu() const noexcept { return kPi / theta_w_; }
  bool is_right_angled() const noexcept;

 private:
  double theta_w_;
};

/// Face admittances of a right-angled impedance wedge together with their
/// angle parameterisation mu1 = -sin(theta1) on theta = 0 and
/// mu2 = cos(theta2) on theta = 3 pi / 2.
struct ImpedanceFaces {
  Complex mu1;
  Complex mu2;
  ComplexAngle theta1;
  ComplexAngle theta2;

  static ImpedanceFaces from_admittance(Complex mu1, Complex mu2);
  static ImpedanceFaces from_angles(ComplexAngle theta1, ComplexAngle theta2);
};

enum class BoundaryKind { Dirichlet, Neumann, DirichletNeumann, NeumannDirichlet, Impedance };

std::string_view to_string(BoundaryKind kind);

struct BoundaryConditionPair {
  BoundaryKind kind = BoundaryKind::Dirichlet;
  std::optional<ImpedanceFaces> impedance;

  static BoundaryConditionPair dirichlet() { return {BoundaryKind::Dirichlet, {}}; }
  static BoundaryConditionPair neumann() { return {BoundaryKind::Neumann, {}}; }
  static BoundaryConditionPair dirichlet_neumann() { return {BoundaryKind::DirichletNeumann, {}}; }
  static BoundaryConditionPair neumann_dirichlet() { return {BoundaryKind::NeumannDirichlet, {}}; }
  static BoundaryConditionPair with_impedance(Complex mu1, Complex mu2) {
    return {BoundaryKind::Impedance, ImpedanceFaces::from_admittance(mu1, mu2)};
  }

  bool is_ideal() const noexcept { return kind != BoundaryKind::Impedance; }
  /// Reflection coefficients (R1, R2) of the ideal variants.
  std::pair<double, double> ideal_reflection() const;
};

/// Plane wave e^{-i k r cos(theta - theta0)}; phi0 = pi/2 is perpendicular incidence.
struct IncidentPlaneWave {
  ComplexAngle theta0;
  double k = 1.0;
  double phi0 = kPi / 2;

  IncidentPlaneWave(ComplexAngle theta0, double k, double phi0 = kPi / 2);
};

/// Monopole source in cylindrical coordinates.
struct PointSourceSpec {
  double r0;
  double theta0;
  double z0;
  double k;

  PointSourceSpec(double r0, double theta0, double z0, double k);
};

struct FieldPoint {
  double r = 0.0;
  double theta = 0.0;
  double z = 0.0;

  double x() const;
  double y() const;
  static FieldPoint from_cartesian(double x, double y);
};

/// gd(x) = atan(sinh x).
double gudermannian(double x);

/// Edge coordinate eta for a point source, edge point at z_edge and receiver
/// at rcv (the receiver's own z is honoured by shifting).
double eta_point_source(double z_edge, const FieldPoint& rcv, const PointSourceSpec& src);

/// eta for perpendicular plane-wave incidence: acosh(l / r), l = sqrt(r^2 + z^2).
double eta_plane_wave(double z_edge, double r);

/// eta from the local spherical angles of source and receiver.
double eta_from_angles(double phi0, double phi);

struct LocalSpherical {
  double l;
  double phi;
};

/// l = sqrt(r^2 + z^2), r = l sin(phi), z = -l cos(phi).
LocalSpherical local_spherical(const FieldPoint& p);

/// theta1 = pi + asin(mu1), theta2 = acos(mu2) on the principal branches.
std::pair<ComplexAngle, ComplexAngle> admittance_to_angles(Complex mu1, Complex mu2);
std::pair<Complex, Complex> angles_to_admittance(ComplexAngle theta1, ComplexAngle theta2);

/// acosh with arguments in [1 - 1e-10, 1) clamped to 1.
double clamped_acosh(double x);

}  // namespace wedge
