#pragma once

#include <array>
#include <string_view>

#include "wedge/geometry.hpp"
#include "wedge/quadrature.hpp"

namespace wedge {

/// |H-argument| below this counts as sitting on a zone boundary.
inline constexpr double kZoneBoundaryTol = 1e-9;

/// Heaviside step with H[0] = 1/2, where "0" means |t| <= kZoneBoundaryTol.
double heaviside(double t);
bool on_zone_boundary(double t);

enum class TermKind { Incident, Reflected1, Reflected2, Surface1, Surface2 };

inline constexpr std::array<TermKind, 5> kGeometricalTerms = {
    TermKind::Incident, TermKind::Reflected1, TermKind::Reflected2, TermKind::Surface1,
    TermKind::Surface2};

std::string_view to_string(TermKind kind);

/// One gated plane-wave term: coefficient * H[heaviside_arg] * phase.
struct ZoneTerm {
  TermKind kind = TermKind::Incident;
  Complex coefficient{0.0, 0.0};
  double heaviside_arg = 0.0;
  /// Plane-wave factor evaluated at the receiver.
  Complex phase{0.0, 0.0};

  double weight() const { return heaviside(heaviside_arg); }
  /// Gated-off terms are exactly zero even when the phase overflows.
  Complex value() const {
    const double w = weight();
    return w == 0.0 ? Complex{0.0, 0.0} : coefficient * w * phase;
  }
  bool on_boundary() const { return on_zone_boundary(heaviside_arg); }
};

/// Total field split into named pieces. Terms not present in a given
/// representation (surface waves for ideal wedges) carry a zero coefficient.
struct FieldDecomposition {
  std::array<ZoneTerm, 5> geometrical{};
  Complex diffracted{0.0, 0.0};
  QuadratureReport diffracted_report;

  const ZoneTerm& term(TermKind kind) const { return geometrical[static_cast<int>(kind)]; }
  ZoneTerm& term(TermKind kind) { return geometrical[static_cast<int>(kind)]; }
  Complex geometrical_total() const;
  Complex total() const { return geometrical_total() + diffracted; }
  /// True when any gate sits exactly on its zone boundary.
  bool on_zone_boundary() const;
};

/// e^{sign * i kr cos(angle)}.
Complex plane_wave_phase(double kr, Complex angle, double sign);

}  // namespace wedge
