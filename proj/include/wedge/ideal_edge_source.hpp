#pragma once

// Secondary edge-source solutions for ideal (Dirichlet, Neumann, mixed) wedges.
//
// The diffracted field is a line integral over the edge,
//     p_d = -(nu / 4 pi) int e^{ik(l0 + l)} / (l0 l) beta dz,
// with the directivity beta built from
//     beta_i = sin(nu phi_i) / (cosh(nu eta) - cos(nu phi_i)),
//     phi_{1..4} = pi + th0 + th, pi + th0 - th, pi - th0 + th, pi - th0 - th.

#include <array>
#include <vector>

#include "wedge/field.hpp"
#include "wedge/geometry.hpp"
#include "wedge/quadrature.hpp"

namespace wedge {

/// phi_1..phi_4 for receiver angle theta and (possibly complex) incidence theta0.
std::array<Complex, 4> edge_angles(double theta, ComplexAngle theta0);

/// beta for an ideal boundary-condition pair. Terms whose pole sits exactly
/// at eta = 0 (zone boundary) contribute their principal value, zero.
Complex beta_ideal(BoundaryKind bc, double nu, double theta, ComplexAngle theta0, double eta);

/// The odd companion kernel beta~ = b~1 + b~2 - b~3 - b~4 with
/// b~_i = sinh(nu eta) / (cosh(nu eta) - cos(nu phi_i)); used for right-angled
/// impedance wedges (nu = 2/3).
Complex beta_tilde_dirichlet(double nu, double theta, ComplexAngle theta0, double eta);

/// Immutable directivity evaluator for a fixed boundary pair and geometry.
class DirectivityKernel {
 public:
  DirectivityKernel(BoundaryKind bc, WedgeGeometry wedge, double theta, ComplexAngle theta0);

  Complex operator()(double eta) const;
  BoundaryKind bc() const noexcept { return bc_; }
  double nu() const noexcept { return wedge_.nu(); }
  double theta() const noexcept { return theta_; }
  ComplexAngle theta0() const noexcept { return theta0_; }
  /// Poles of beta in s = cosh(eta) - 1, used to place the smooth tail.
  double structure_extent() const;

 private:
  BoundaryKind bc_;
  WedgeGeometry wedge_;
  double theta_;
  ComplexAngle theta0_;
};

/// Point-source edge integral over the whole edge.
QuadratureReport edge_integral_point_source(const PointSourceSpec& src, const FieldPoint& rcv,
                                            const DirectivityKernel& kernel,
                                            const QuadratureConfig& cfg);

/// Same integral restricted to z >= 0 (for z0 = 0 it is half of the full one).
QuadratureReport edge_integral_point_source_half(const PointSourceSpec& src, const FieldPoint& rcv,
                                                 const DirectivityKernel& kernel,
                                                 const QuadratureConfig& cfg);

/// Perpendicular plane wave: p_d = -(nu / 2 pi) int_0^inf e^{ikl} / l beta dz.
QuadratureReport edge_integral_plane_wave(const IncidentPlaneWave& inc, const FieldPoint& rcv,
                                          const DirectivityKernel& kernel,
                                          const QuadratureConfig& cfg);

/// cosh(2 eta / 3) through lambda = w + sqrt(w^2 - 1), w = l / r.
double cosh_two_thirds_eta_via_lambda(double w);

/// Geometrical-acoustics terms of the right-angled wedge. Real theta0 uses the
/// plain gates; complex theta0 shifts them by gd(Im theta0).
std::vector<ZoneTerm> geometrical_acoustics(const IncidentPlaneWave& inc, const FieldPoint& rcv,
                                            const BoundaryConditionPair& bc);

/// Image-source geometrical field for a point source at a right-angled wedge,
/// free-field convention e^{ikR} / R.
Complex point_source_geometrical(const PointSourceSpec& src, const FieldPoint& rcv,
                                 const BoundaryConditionPair& bc);

/// Total field of an ideal right-angled wedge under perpendicular plane-wave incidence.
FieldDecomposition ideal_total_field(const IncidentPlaneWave& inc, const FieldPoint& rcv,
                                     const BoundaryConditionPair& bc, const QuadratureConfig& cfg);

/// Stationary-phase limit of the plane-wave edge integral: p_d ~ D e^{ikr} / sqrt(kr).
Complex ideal_diffraction_coefficient(BoundaryKind bc, double theta, ComplexAngle theta0);

}  // namespace wedge
