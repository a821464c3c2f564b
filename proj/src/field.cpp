#include "wedge/field.hpp"

#include <cmath>

namespace wedge {

double heaviside(double t) {
  if (on_zone_boundary(t)) return 0.5;
  return t > 0.0 ? 1.0 : 0.0;
}

bool on_zone_boundary(double t) { return std::abs(t) <= kZoneBoundaryTol; }

std::string_view to_string(TermKind kind) {
  switch (kind) {
    case TermKind::Incident: return "incident";
    case TermKind::Reflected1: return "reflected1";
    case TermKind::Reflected2: return "reflected2";
    case TermKind::Surface1: return "surface1";
    case TermKind::Surface2: return "surface2";
  }
  return "unknown";
}

Complex FieldDecomposition::geometrical_total() const {
  Complex sum{0.0, 0.0};
  for (const auto& t : geometrical) sum += t.value();
  return sum;
}

bool FieldDecomposition::on_zone_boundary() const {
  for (const auto& t : geometrical) {
    if (t.coefficient != Complex{0.0, 0.0} && t.on_boundary()) return true;
  }
  return false;
}

Complex plane_wave_phase(double kr, Complex angle, double sign) {
  return std::exp(Complex(0.0, sign * kr) * std::cos(angle));
}

}  // namespace wedge
