#include "wedge/impedance.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wedge/errors.hpp"
#include "wedge/sommerfeld.hpp"

namespace wedge {

namespace {

const Complex kI{0.0, 1.0};

void check_receiver(double theta) {
  if (theta < 0.0 || theta > 1.5 * kPi) throw DomainError("receiver angle must lie in [0, 3 pi / 2]");
}

// value is a difference of terms of size `scale`; loud failure when it cancels.
Complex guarded(Complex value, double scale, const char* factor) {
  const double mag = std::abs(value);
  if (mag < kDegeneracyTol * std::max(1.0, scale)) throw DegenerateParameter(factor, mag);
  return value;
}

Complex two_thirds_cos(ComplexAngle a) { return std::cos(2.0 / 3.0 * a.value()); }
Complex two_thirds_sin(ComplexAngle a) { return std::sin(2.0 / 3.0 * a.value()); }

Complex sin_diff(ComplexAngle theta0, ComplexAngle theta1) {
  const Complex a = sin(theta0), b = sin(theta1);
  return guarded(a - b, std::abs(a) + std::abs(b), "sin(theta0) - sin(theta1)");
}

Complex cos_diff(ComplexAngle theta0, ComplexAngle theta2) {
  const Complex a = cos(theta0), b = cos(theta2);
  return guarded(a - b, std::abs(a) + std::abs(b), "cos(theta0) - cos(theta2)");
}

Complex two_thirds_cos_diff(ComplexAngle theta1, ComplexAngle theta2) {
  const Complex a = two_thirds_cos(theta2), b = two_thirds_cos(theta1);
  return guarded(a - b, std::abs(a) + std::abs(b), "cos(2 theta2 / 3) - cos(2 theta1 / 3)");
}

Complex two_thirds_sin_guarded(ComplexAngle a, const char* factor) {
  return guarded(two_thirds_sin(a), std::abs(two_thirds_cos(a)), factor);
}

}  // namespace

ImpedanceCoefficients impedance_coefficients(ComplexAngle theta0, ComplexAngle theta1,
                                             ComplexAngle theta2) {
  const Complex ds = sin_diff(theta0, theta1);
  const Complex dc = cos_diff(theta0, theta2);
  const Complex d23 = two_thirds_cos_diff(theta1, theta2);
  const Complex s1 = two_thirds_sin_guarded(theta1, "sin(2 theta1 / 3)");
  const Complex s2 = two_thirds_sin_guarded(theta2, "sin(2 theta2 / 3)");
  const Complex s0 = two_thirds_sin(theta0);
  const Complex c0 = two_thirds_cos(theta0), c1 = two_thirds_cos(theta1), c2 = two_thirds_cos(theta2);

  ImpedanceCoefficients out;
  out.R1 = (sin(theta0) + sin(theta1)) / ds;
  out.R2 = (cos(theta0) + cos(theta2)) / dc;
  out.T1 = 2.0 * s0 * (c2 - c0) / (s1 * d23) * sin(theta1) * (cos(theta2) - cos(theta1)) / (ds * dc);
  out.T2 = 2.0 * s0 * (c1 - c0) / (s2 * d23) * cos(theta2) * (sin(theta2) - sin(theta1)) / (ds * dc);
  return out;
}

CyclicAngles::CyclicAngles(ComplexAngle theta0, ComplexAngle theta1, ComplexAngle theta2)
    : theta{theta0, theta1, theta2, theta0, theta1} {
  for (int j = 0; j < 3; ++j) {
    weight[j] = two_thirds_cos(theta[j + 2]) - two_thirds_cos(theta[j + 1]);
  }
}

Complex impedance_prefactor(ComplexAngle theta0, ComplexAngle theta1, ComplexAngle theta2) {
  return two_thirds_sin(theta0) /
         (two_thirds_cos_diff(theta1, theta2) * sin_diff(theta0, theta1) * cos_diff(theta0, theta2));
}

bool AngularInterval::contains(double theta) const {
  const bool above = lo_closed ? theta >= lo : theta > lo;
  const bool below = hi_closed ? theta <= hi : theta < hi;
  return above && below;
}

SurfaceWaveStatus surface_wave_status(ComplexAngle theta1, ComplexAngle theta2) {
  SurfaceWaveStatus out;
  const double g1 = gudermannian(theta1.im);
  const double g2 = gudermannian(theta2.im);
  out.face1_excited = theta1.re >= kPi && theta1.re < kPi - g1;
  out.face2_excited = kPi / 2 - g2 < theta2.re && theta2.re < kPi / 2;
  out.region1 = {0.0, kPi - theta1.re - g1, true, false};
  out.region2 = {2 * kPi - theta2.re - g2, 1.5 * kPi, false, true};
  if (!out.face1_excited) out.region1 = {0.0, 0.0, true, false};
  if (!out.face2_excited) out.region2 = {1.5 * kPi, 1.5 * kPi, false, true};

  const auto admittance_predicate = [](Complex mu) {
    // sin/cos round-off near the hard-face angles; an exact 0 sits on the boundary.
    const auto snap = [](double v) { return std::abs(v) < 1e-14 ? 0.0 : v; };
    mu = {snap(mu.real()), snap(mu.imag())};
    return mu.real() >= 0.0 && mu.imag() < mu.real() / std::sqrt(1.0 + mu.real() * mu.real());
  };
  out.face1_admittance_predicate = admittance_predicate(-sin(theta1));
  out.face2_admittance_predicate = admittance_predicate(cos(theta2));
  return out;
}

ImpedanceContourIntegrand::ImpedanceContourIntegrand(double theta, ComplexAngle theta0,
                                                     const ImpedanceFaces& faces)
    : theta_(theta),
      angles_(theta0, faces.theta1, faces.theta2),
      sin_theta1_(sin(faces.theta1)),
      cos_theta2_(cos(faces.theta2)),
      prefactor_(impedance_prefactor(theta0, faces.theta1, faces.theta2)) {
  for (int j = 0; j < 3; ++j) {
    for (const Complex p : g_poles(theta_, angles_.theta[j])) {
      (std::abs(numerator(p)) < kRemovableTol ? removable_ : poles_).push_back(p);
    }
  }
}

Complex ImpedanceContourIntegrand::numerator(Complex alpha) const {
  const Complex a = theta_ + alpha;
  return (std::sin(a) + sin_theta1_) * (std::cos(a) + cos_theta2_);
}

Complex ImpedanceContourIntegrand::direct(Complex alpha) const {
  const Complex a = theta_ + alpha;
  Complex sum{0.0, 0.0};
  for (int j = 0; j < 3; ++j) sum += angles_.weight[j] * g_function(a, angles_.theta[j]);
  return prefactor_ * numerator(alpha) * sum;
}

Complex ImpedanceContourIntegrand::operator()(Complex alpha) const {
  for (const Complex p : removable_) {
    if (std::abs(alpha - p) < kRemovableRadius) {
      // 0 * inf near a cancelled pole: symmetric means, Richardson in delta^2.
      constexpr double d = 1e-3;
      const Complex coarse = 0.5 * (direct(alpha + d) + direct(alpha - d));
      const Complex fine = 0.5 * (direct(alpha + 0.5 * d) + direct(alpha - 0.5 * d));
      return (4.0 * fine - coarse) / 3.0;
    }
  }
  return direct(alpha);
}

std::array<ZoneTerm, 5> impedance_zone_terms(const IncidentPlaneWave& inc, const FieldPoint& rcv,
                                             const ImpedanceFaces& faces) {
  if (!inc.theta0.is_real()) throw DomainError("impedance wedge requires a real incidence angle");
  check_receiver(rcv.theta);
  const auto co = impedance_coefficients(inc.theta0, faces.theta1, faces.theta2);
  const double kr = inc.k * rcv.r;
  const double th = rcv.theta;
  const double t0 = inc.theta0.re;
  const ComplexAngle t1 = faces.theta1, t2 = faces.theta2;
  return {{
      {TermKind::Incident, 1.0, kPi - std::abs(th - t0), plane_wave_phase(kr, th - t0, -1.0)},
      {TermKind::Reflected1, co.R1, kPi - th - t0, plane_wave_phase(kr, th + t0, -1.0)},
      {TermKind::Reflected2, co.R2, th + t0 - 2 * kPi, plane_wave_phase(kr, th + t0, 1.0)},
      {TermKind::Surface1, co.T1, kPi - th - t1.re - gudermannian(t1.im),
       plane_wave_phase(kr, th + t1.value(), -1.0)},
      {TermKind::Surface2, co.T2, th + t2.re + gudermannian(t2.im) - 2 * kPi,
       plane_wave_phase(kr, th + t2.value(), 1.0)},
  }};
}

FieldDecomposition impedance_total_contour(const IncidentPlaneWave& inc, const FieldPoint& rcv,
                                           const ImpedanceFaces& faces, const QuadratureConfig& cfg) {
  FieldDecomposition out;
  out.geometrical = impedance_zone_terms(inc, rcv, faces);

  QuadratureConfig qc = cfg;
  qc.principal_value = cfg.principal_value || out.on_zone_boundary();
  const ImpedanceContourIntegrand integrand(rcv.theta, inc.theta0, faces);
  QuadratureReport rep = integrate_contour_s(integrand, inc.k, rcv.r, qc, integrand.poles());
  const Complex factor = -1.0 / (3.0 * kPi * kI);
  rep.value *= factor;
  rep.error_estimate *= std::abs(factor);
  if (!rep.converged) throw QuadratureFailure("impedance contour integral did not converge", rep);
  out.diffracted_report = rep;
  out.diffracted = rep.value;
  return out;
}

FarFieldCoefficient far_field_coefficient(double theta, ComplexAngle theta0, const ImpedanceFaces& faces) {
  check_receiver(theta);
  const ImpedanceContourIntegrand integrand(theta, theta0, faces);
  FarFieldCoefficient out;
  out.value = std::sqrt(2.0) * std::exp(kI * (kPi / 4)) / (3.0 * std::sqrt(kPi)) * integrand(0.0);

  if (theta0.is_real()) {
    const IncidentPlaneWave inc(theta0, 1.0);
    const auto terms = impedance_zone_terms(inc, FieldPoint{1.0, theta, 0.0}, faces);
    for (const auto& t : terms) {
      if (t.coefficient != Complex{0.0, 0.0} && std::abs(t.heaviside_arg) < kFarFieldZoneGuard) {
        out.near_zone_boundary = true;
      }
    }
  }
  return out;
}

}  // namespace wedge
