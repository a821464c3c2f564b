#pragma once

// Sommerfeld contour-integral solution of the right-angled Dirichlet wedge,
// valid for complex incidence angles:
//
//   p^D_d = -(1 / 3 pi i) int_S e^{ikr cos a} sin(2 th0 / 3) G(th + a, th0) da,
//   G(a, th0) = 1 / (cos(2 th0/3) - cos(2(a - pi)/3)) - 1 / (cos(2 th0/3) - cos(2(a + pi)/3)).
//
// Deforming S onto the imaginary axis and folding it onto alpha = i eta turns
// the integral into the edge-source form, via
//   sin(2 th0/3) (G(th + i eta) + G(th - i eta)) = -beta^D,
//   sin(2 th0/3) (G(th + i eta) - G(th - i eta)) = -i beta~^D.

#include <vector>

#include "wedge/field.hpp"
#include "wedge/geometry.hpp"
#include "wedge/quadrature.hpp"

namespace wedge {

/// Difference form of G; raises SingularEvaluation within 1e-13 of a pole.
Complex g_function(Complex alpha, ComplexAngle theta0);

/// The equivalent product form sqrt(3) sin(2a/3) / ((1/2 + cos(2(a - th0)/3)) (1/2 + cos(2(a + th0)/3))).
Complex g_function_product(Complex alpha, ComplexAngle theta0);

/// Poles of alpha' -> G(theta + alpha', theta0) with |Re| within a few periods of the saddle.
std::vector<Complex> g_poles(double theta, ComplexAngle theta0);

/// Integrand of p^D_d without the exponential: sin(2 th0/3) G(theta + alpha', th0).
class SommerfeldIntegrand {
 public:
  SommerfeldIntegrand(double theta, ComplexAngle theta0);
  Complex operator()(Complex alpha) const;
  std::vector<Complex> poles() const { return g_poles(theta_, theta0_); }

 private:
  double theta_;
  ComplexAngle theta0_;
  Complex prefactor_;
};

/// Total Dirichlet field with gd-shifted gates and the S-contour diffracted term.
FieldDecomposition dirichlet_total_contour(const IncidentPlaneWave& inc, const FieldPoint& rcv,
                                          const QuadratureConfig& cfg);

/// Total Dirichlet field with unshifted gates and the edge-source diffracted term.
FieldDecomposition dirichlet_total_edge_form(const IncidentPlaneWave& inc, const FieldPoint& rcv,
                                            const QuadratureConfig& cfg);

struct IdentityResiduals {
  Complex even_check;
  Complex odd_check;
};

/// Residuals of the two G <-> beta identities at (theta, theta0, eta).
IdentityResiduals g_beta_identities(double theta, ComplexAngle theta0, double eta);

/// sin a/(cos a - cos(b+c)) + sin a/(cos a - cos(b-c))
///   + sin(a+b)/(cos c - cos(a+b)) + sin(a-b)/(cos c - cos(a-b)), which vanishes.
Complex four_term_identity_even(Complex a, Complex b, Complex c);

/// sin a/(cos a - cos(b+c)) - sin a/(cos a - cos(b-c))
///   - sin c/(cos c - cos(a+b)) + sin c/(cos c - cos(a-b)), which vanishes.
Complex four_term_identity_odd(Complex a, Complex b, Complex c);

}  // namespace wedge
