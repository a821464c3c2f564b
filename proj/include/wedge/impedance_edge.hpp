#pragma once

// Edge-source form of the right-angled impedance wedge.
//
// Splitting (sin(a + th) + sin th1)(cos(a + th) + cos th2) = Q(a) + Q~(a) into
// even and odd parts in a, and folding the S contour onto a = +-i eta, gives
//
//   p^I_{d,edge} = -(1 / 3 pi) int_0^inf e^{ikl} / l beta^I dz,
//   beta^I = P sum_j w_j / sin(2 th_j / 3) (q beta^{D,th_j} + q~ beta~^{D,th_j}),
//
// with q = Q(i eta) and q~ = i Q~(i eta). The surface-wave gates lose their gd
// shifts, so away from two corner cases any surface wave lives inside the
// edge integral.

#include <array>

#include "wedge/field.hpp"
#include "wedge/geometry.hpp"
#include "wedge/impedance.hpp"
#include "wedge/quadrature.hpp"

namespace wedge {

struct EvenOddSplit {
  Complex even;
  Complex odd;
};

/// Q (even) and Q~ (odd) parts of the numerator at complex alpha.
EvenOddSplit q_decomposition(Complex alpha, double theta, ComplexAngle theta1, ComplexAngle theta2);

/// Hyperbolic forms q, q~ on alpha = i eta.
EvenOddSplit q_hyperbolic(double eta, double theta, ComplexAngle theta1, ComplexAngle theta2);

class ImpedanceKernel {
 public:
  ImpedanceKernel(double theta, ComplexAngle theta0, const ImpedanceFaces& faces);

  Complex operator()(double eta) const;
  double theta() const noexcept { return theta_; }
  const CyclicAngles& angles() const noexcept { return angles_; }
  Complex prefactor() const noexcept { return prefactor_; }
  double structure_extent() const;

 private:
  double theta_;
  ImpedanceFaces faces_;
  CyclicAngles angles_;
  Complex prefactor_;
  std::array<Complex, 3> weight_over_sin_;
};

inline Complex beta_impedance(const ImpedanceKernel& kernel, double eta) { return kernel(eta); }

/// The edge-source decomposition: zone terms with unshifted surface-wave gates.
std::array<ZoneTerm, 5> impedance_edge_zone_terms(const IncidentPlaneWave& inc, const FieldPoint& rcv,
                                                  const ImpedanceFaces& faces);

/// True at the corner configurations where an unshifted surface-wave gate is nonzero.
bool edge_gate_degenerate(double theta, const ImpedanceFaces& faces);

FieldDecomposition impedance_total_edge_source(const IncidentPlaneWave& inc, const FieldPoint& rcv,
                                               const ImpedanceFaces& faces, const QuadratureConfig& cfg);

}  // namespace wedge
