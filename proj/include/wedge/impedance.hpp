#pragma once

// Right-angled impedance wedge, contour-integral form.
//
// With mu1 = -sin(th1) on theta = 0 and mu2 = cos(th2) on theta = 3 pi / 2, the
// total field is incident + R1, R2 reflections + T1, T2 surface waves + p^I_d,
//
//   p^I_d = -(1 / 3 pi i) int_S e^{ikr cos a} P (sin(a + th) + sin th1)(cos(a + th) + cos th2)
//           * sum_j (cos(2 th_{j+2}/3) - cos(2 th_{j+1}/3)) G(a + th, th_j) da,
//   P = sin(2 th0/3) / ((cos(2 th2/3) - cos(2 th1/3)) (sin th0 - sin th1)(cos th0 - cos th2)),
//
// where th_j cycles through (th0, th1, th2). The field is the image of a
// Dirichlet solution with complex incidence under the operator
//   L = d^2/dx dy + ik (sin th1 d/dx + cos th2 d/dy) - k^2 sin th1 cos th2;
// only the already-evaluated result above is implemented.

#include <array>
#include <vector>

#include "wedge/field.hpp"
#include "wedge/geometry.hpp"
#include "wedge/quadrature.hpp"

namespace wedge {

/// Relative threshold below which a guarded denominator counts as zero.
inline constexpr double kDegeneracyTol = 1e-12;

/// |H-argument| below which the far-field coefficient is flagged as unreliable.
inline constexpr double kFarFieldZoneGuard = 0.05;

struct ImpedanceCoefficients {
  Complex R1;
  Complex R2;
  Complex T1;
  Complex T2;
};

ImpedanceCoefficients impedance_coefficients(ComplexAngle theta0, ComplexAngle theta1,
                                             ComplexAngle theta2);

/// The cyclic angle table (th0, th1, th2, th3 = th0, th4 = th1) and the
/// weights w_j = cos(2 th_{j+2}/3) - cos(2 th_{j+1}/3), j = 0, 1, 2.
struct CyclicAngles {
  std::array<ComplexAngle, 5> theta;
  std::array<Complex, 3> weight;

  CyclicAngles(ComplexAngle theta0, ComplexAngle theta1, ComplexAngle theta2);
};

/// sin(2 th0/3) / ((cos(2 th2/3) - cos(2 th1/3))(sin th0 - sin th1)(cos th0 - cos th2)),
/// with every factor guarded.
Complex impedance_prefactor(ComplexAngle theta0, ComplexAngle theta1, ComplexAngle theta2);

struct AngularInterval {
  double lo = 0.0;
  double hi = 0.0;
  bool lo_closed = true;
  bool hi_closed = true;

  bool empty() const { return lo > hi || (lo == hi && !(lo_closed && hi_closed)); }
  bool contains(double theta) const;
};

struct SurfaceWaveStatus {
  bool face1_excited = false;
  bool face2_excited = false;
  AngularInterval region1;
  AngularInterval region2;
  /// The same question answered from Re mu >= 0, Im mu < Re mu / sqrt(1 + (Re mu)^2).
  bool face1_admittance_predicate = false;
  bool face2_admittance_predicate = false;

  bool criteria_agree() const {
    return face1_excited == face1_admittance_predicate && face2_excited == face2_admittance_predicate;
  }
};

SurfaceWaveStatus surface_wave_status(ComplexAngle theta1, ComplexAngle theta2);

/// Contour integrand of p^I_d without the exponential factor.
class ImpedanceContourIntegrand {
 public:
  ImpedanceContourIntegrand(double theta, ComplexAngle theta0, const ImpedanceFaces& faces);
  Complex operator()(Complex alpha) const;
  /// Poles of the integrand that are not cancelled by its numerator.
  const std::vector<Complex>& poles() const { return poles_; }
  /// Poles of G cancelled by a zero of the numerator (real theta1 or theta2).
  const std::vector<Complex>& removable_poles() const { return removable_; }

 private:
  static constexpr double kRemovableTol = 1e-10;
  static constexpr double kRemovableRadius = 1e-5;

  Complex numerator(Complex alpha) const;
  Complex direct(Complex alpha) const;

  double theta_;
  CyclicAngles angles_;
  Complex sin_theta1_;
  Complex cos_theta2_;
  Complex prefactor_;
  std::vector<Complex> poles_;
  std::vector<Complex> removable_;
};

/// The geometrical part (incident, reflections, surface waves) of the contour
/// decomposition, with gd-shifted surface-wave gates.
std::array<ZoneTerm, 5> impedance_zone_terms(const IncidentPlaneWave& inc, const FieldPoint& rcv,
                                             const ImpedanceFaces& faces);

FieldDecomposition impedance_total_contour(const IncidentPlaneWave& inc, const FieldPoint& rcv,
                                           const ImpedanceFaces& faces, const QuadratureConfig& cfg);

struct FarFieldCoefficient {
  Complex value;
  bool near_zone_boundary = false;
};

/// D(theta, theta0) with p^I_d ~ D e^{ikr} / sqrt(kr).
FarFieldCoefficient far_field_coefficient(double theta, ComplexAngle theta0, const ImpedanceFaces& faces);

}  // namespace wedge
