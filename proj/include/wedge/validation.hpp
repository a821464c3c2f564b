#pragma once

// Independent oracles: finite-difference residuals of the Helmholtz equation
// and the face conditions, edge-vs-contour comparison, and far-field
// extrapolation. Nothing here uses analytic derivatives of the field.

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "wedge/geometry.hpp"
#include "wedge/impedance.hpp"
#include "wedge/quadrature.hpp"

namespace wedge {

/// Field value at a receiver (polar, inside the propagation domain).
using FieldEvaluator = std::function<Complex(const FieldPoint&)>;

/// Polar coordinates of (x, y) with theta in [-(2 pi - theta_w)/2, theta_w + (2 pi - theta_w)/2).
FieldPoint polar_in_wedge(double x, double y, double theta_w);

struct ResidualReport {
  double max_helmholtz_residual = 0.0;
  /// Per face (theta = 0, theta = theta_w); zero for faces not checked.
  std::array<double, 2> max_bc_residual{0.0, 0.0};
  double grid_spacing = 0.0;
  std::size_t sample_count = 0;
};

/// |(laplacian + k^2) p| / (k^2 max(1, |p|)) with the five-point stencil, maximised over the points.
/// Every stencil node must stay 3h away from the faces and the apex.
ResidualReport helmholtz_residual(const FieldEvaluator& p, std::span<const FieldPoint> region, double k,
                                  double h, double theta_w = 1.5 * kPi);

enum class Face { First, Second };

/// Condition on one face: p = 0, dp/dn = 0, or dp/dn = i k mu p (outward normal).
struct FaceCondition {
  enum class Kind { Dirichlet, Neumann, Impedance };
  Kind kind = Kind::Dirichlet;
  Complex mu{0.0, 0.0};

  static FaceCondition of(const BoundaryConditionPair& bc, Face face);
};

/// Samples at the given radii on `face`. Dirichlet faces report |p|; the others
/// |dp/dn - i k mu p| / (k max(1, |p|)) with the second-order one-sided difference.
ResidualReport boundary_residual(const FieldEvaluator& p, Face face, const FaceCondition& condition,
                                 double k, double h, std::span<const double> radii,
                                 double theta_w = 1.5 * kPi);

struct CrossRow {
  FieldPoint rcv;
  Complex total_contour;
  Complex total_edge;
  /// p_{d,edge} - p_d
  Complex diffracted_diff;
  /// Surface-wave content predicted to move into the edge integral.
  Complex predicted_surface;
  bool in_surface_region = false;

  double total_diff() const { return std::abs(total_edge - total_contour); }
  double extraction_error() const { return std::abs(diffracted_diff - predicted_surface); }
};

std::vector<CrossRow> cross_representation_diff(const IncidentPlaneWave& inc,
                                                std::span<const FieldPoint> receivers,
                                                const ImpedanceFaces& faces, const QuadratureConfig& cfg);

struct FarFieldEstimate {
  Complex coefficient;
  double observed_order = 0.0;
  /// Change between the last two extrapolation levels.
  double fit_residual = 0.0;
  bool flagged = false;
  std::vector<Complex> scaled;  // sqrt(kr) e^{-ikr} p_d at each kr
};

/// Extrapolates sqrt(kr) e^{-ikr} p_d(kr) = D + c1 / kr + c2 / kr^2 + ... over a
/// geometric kr sequence. Flagged when the fit residual exceeds `fit_tol`.
FarFieldEstimate far_field_extrapolation(const std::function<Complex(double kr)>& diffracted,
                                         std::span<const double> kr_sequence, double fit_tol = 1e-5);

}  // namespace wedge
