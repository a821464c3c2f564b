#include "wedge/validation.hpp"

#include <algorithm>
#include <cmath>

#include "wedge/errors.hpp"
#include "wedge/impedance_edge.hpp"

namespace wedge {

namespace {

const Complex kI{0.0, 1.0};

struct Vec2 {
  double x;
  double y;
};

// Unit outward normal and unit tangent (pointing away from the apex) of a face.
std::pair<Vec2, Vec2> face_frame(Face face, double theta_w) {
  if (face == Face::First) return {{0.0, -1.0}, {1.0, 0.0}};
  const Vec2 t{std::cos(theta_w), std::sin(theta_w)};
  return {{-t.y, t.x}, t};
}

double distance_to_faces(double x, double y, double theta_w) {
  const FieldPoint p = polar_in_wedge(x, y, theta_w);
  if (p.theta < 0.0 || p.theta > theta_w) return -1.0;
  const double d1 = p.theta < kPi / 2 ? p.r * std::sin(p.theta) : p.r;
  const double d2 = theta_w - p.theta < kPi / 2 ? p.r * std::sin(theta_w - p.theta) : p.r;
  return std::min({d1, d2, p.r});
}

}  // namespace

FieldPoint polar_in_wedge(double x, double y, double theta_w) {
  double theta = std::atan2(y, x);
  if (theta < 0.0) theta += 2 * kPi;
  if (theta >= 0.5 * (theta_w + 2 * kPi)) theta -= 2 * kPi;
  return {std::hypot(x, y), theta, 0.0};
}

ResidualReport helmholtz_residual(const FieldEvaluator& p, std::span<const FieldPoint> region, double k,
                                  double h, double theta_w) {
  if (!(h > 0.0) || !(k > 0.0)) throw DomainError("step and wavenumber must be positive");
  ResidualReport out;
  out.grid_spacing = h;
  for (const auto& pt : region) {
    const double x = pt.r * std::cos(pt.theta), y = pt.r * std::sin(pt.theta);
    if (distance_to_faces(x, y, theta_w) < 4.0 * h) {
      throw DomainError("stencil comes within 3h of a face or the apex");
    }
    auto at = [&](double dx, double dy) { return p(polar_in_wedge(x + dx, y + dy, theta_w)); };
    const Complex c = at(0.0, 0.0);
    const Complex lap = (at(h, 0.0) + at(-h, 0.0) + at(0.0, h) + at(0.0, -h) - 4.0 * c) / (h * h);
    const double res = std::abs(lap + k * k * c) / (k * k * std::max(1.0, std::abs(c)));
    out.max_helmholtz_residual = std::max(out.max_helmholtz_residual, res);
    ++out.sample_count;
  }
  return out;
}

FaceCondition FaceCondition::of(const BoundaryConditionPair& bc, Face face) {
  using K = FaceCondition::Kind;
  const bool first = face == Face::First;
  switch (bc.kind) {
    case BoundaryKind::Dirichlet: return {K::Dirichlet, 0.0};
    case BoundaryKind::Neumann: return {K::Neumann, 0.0};
    case BoundaryKind::DirichletNeumann: return {first ? K::Dirichlet : K::Neumann, 0.0};
    case BoundaryKind::NeumannDirichlet: return {first ? K::Neumann : K::Dirichlet, 0.0};
    case BoundaryKind::Impedance:
      if (!bc.impedance) throw DomainError("impedance boundary pair without admittances");
      return {K::Impedance, first ? bc.impedance->mu1 : bc.impedance->mu2};
  }
  throw DomainError("unknown boundary kind");
}

ResidualReport boundary_residual(const FieldEvaluator& p, Face face, const FaceCondition& condition,
                                 double k, double h, std::span<const double> radii, double theta_w) {
  if (!(h > 0.0) || !(k > 0.0)) throw DomainError("step and wavenumber must be positive");
  const auto [n, t] = face_frame(face, theta_w);
  ResidualReport out;
  out.grid_spacing = h;
  double& worst = out.max_bc_residual[face == Face::First ? 0 : 1];
  for (const double r : radii) {
    if (r < 3.0 * h) throw DomainError("face sample closer than 3h to the apex");
    const double x = r * t.x, y = r * t.y;
    // Stencil nodes step inward, against the outward normal.
    auto at = [&](int j) {
      FieldPoint q = polar_in_wedge(x - j * h * n.x, y - j * h * n.y, theta_w);
      if (j == 0) q.theta = face == Face::First ? 0.0 : theta_w;
      return p(q);
    };
    const Complex f0 = at(0);
    double res = 0.0;
    if (condition.kind == FaceCondition::Kind::Dirichlet) {
      res = std::abs(f0);
    } else {
      const Complex dn = (3.0 * f0 - 4.0 * at(1) + at(2)) / (2.0 * h);
      const Complex target = condition.kind == FaceCondition::Kind::Impedance ? kI * k * condition.mu * f0
                                                                              : Complex{0.0, 0.0};
      res = std::abs(dn - target) / (k * std::max(1.0, std::abs(f0)));
    }
    worst = std::max(worst, res);
    ++out.sample_count;
  }
  return out;
}

std::vector<CrossRow> cross_representation_diff(const IncidentPlaneWave& inc,
                                                std::span<const FieldPoint> receivers,
                                                const ImpedanceFaces& faces, const QuadratureConfig& cfg) {
  const auto sw = surface_wave_status(faces.theta1, faces.theta2);
  std::vector<CrossRow> rows;
  rows.reserve(receivers.size());
  for (const auto& rcv : receivers) {
    const auto contour = impedance_total_contour(inc, rcv, faces, cfg);
    const auto edge = impedance_total_edge_source(inc, rcv, faces, cfg);
    CrossRow row;
    row.rcv = rcv;
    row.total_contour = contour.total();
    row.total_edge = edge.total();
    row.diffracted_diff = edge.diffracted - contour.diffracted;
    for (const TermKind kind : {TermKind::Surface1, TermKind::Surface2}) {
      row.predicted_surface += contour.term(kind).value() - edge.term(kind).value();
    }
    row.in_surface_region = (sw.face1_excited && sw.region1.contains(rcv.theta)) ||
                            (sw.face2_excited && sw.region2.contains(rcv.theta));
    rows.push_back(row);
  }
  return rows;
}

FarFieldEstimate far_field_extrapolation(const std::function<Complex(double kr)>& diffracted,
                                         std::span<const double> kr_sequence, double fit_tol) {
  const std::size_t n = kr_sequence.size();
  if (n < 3) throw DomainError("far-field extrapolation needs at least three kr values");
  const double ratio = kr_sequence[1] / kr_sequence[0];
  for (std::size_t i = 1; i < n; ++i) {
    if (std::abs(kr_sequence[i] / kr_sequence[i - 1] - ratio) > 1e-12 * ratio || ratio <= 1.0) {
      throw DomainError("kr sequence must be increasing and geometric");
    }
  }

  FarFieldEstimate out;
  for (const double kr : kr_sequence) {
    out.scaled.push_back(std::sqrt(kr) * std::exp(-kI * kr) * diffracted(kr));
  }
  const auto& a = out.scaled;
  out.observed_order = std::log(std::abs(a[n - 3] - a[n - 2]) / std::abs(a[n - 2] - a[n - 1])) / std::log(ratio);

  // Richardson in 1/kr: level p removes the (kr)^{-p} term.
  std::vector<Complex> level = a;
  Complex previous_top = level[n - 1];
  for (std::size_t p = 1; p < n; ++p) {
    const double f = std::pow(ratio, static_cast<double>(p));
    previous_top = level[n - p];
    for (std::size_t i = 0; i + p < n; ++i) level[i] = (f * level[i + 1] - level[i]) / (f - 1.0);
  }
  // previous_top ends as the estimate that skips the smallest kr.
  out.coefficient = level[0];
  out.fit_residual = std::abs(level[0] - previous_top);
  out.flagged = !(out.fit_residual <= fit_tol);
  return out;
}

}  // namespace wedge
