#pragma once

// Numerical integration for the wedge engine:
//  * adaptive Gauss-Kronrod (7/15) on finite intervals,
//  * the semi-infinite oscillatory edge integral
//        I = int_0^inf e^{i k r cosh(eta)} beta(eta) d eta,
//    integrated in eta near the apex and in s = cosh(eta) - 1 further out,
//    where the oscillation has the constant period 2 pi / (k r). The far
//    part is split into half-period panels whose partial sums alternate and
//    are accelerated with Wynn's epsilon algorithm,
//  * integrals over the steepest-descent contour S: alpha(t) = -gd(t) + i t,
//    on which e^{i k r cos alpha} = e^{i k r} e^{-k r sinh(t) tanh(t)},
//  * principal values by symmetric excision and Richardson extrapolation.

#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "wedge/errors.hpp"
#include "wedge/geometry.hpp"

namespace wedge {

struct QuadratureConfig {
  double rel_tol = 1e-8;
  double abs_tol = 1e-12;
  std::size_t max_nodes = 4'000'000;
  /// Envelope level below which the contour integrand is dropped.
  double truncation_decay_target = std::exp(-36.0);
  /// Initial excision half-width for principal values; 0 selects it from the interval.
  double pv_epsilon = 0.0;
  /// Poles closer than this (in contour parameter units) count as lying on the contour.
  double pole_on_contour_tol = 1e-9;
  /// Whether poles on the contour may be handled as principal values.
  bool principal_value = false;

  void validate() const;
  QuadratureConfig tightened(double factor) const;
};

struct QuadratureReport {
  Complex value{0.0, 0.0};
  double error_estimate = 0.0;
  std::size_t nodes_used = 0;
  double truncation_point = 0.0;
  bool pv_applied = false;
  bool converged = true;

  /// Accumulate another report for a piece of the same integral.
  QuadratureReport& operator+=(const QuadratureReport& other);
  std::string describe() const;
};

class QuadratureFailure : public Error {
 public:
  QuadratureFailure(const std::string& what, QuadratureReport report)
      : Error(what + " [" + report.describe() + "]"), report_(report) {}
  const QuadratureReport& report() const noexcept { return report_; }

 private:
  QuadratureReport report_;
};

using RealIntegrand = std::function<Complex(double)>;

/// Adaptive Gauss-Kronrod 7/15 on [a, b] (global subdivision, worst panel first).
QuadratureReport integrate_interval(const RealIntegrand& f, double a, double b,
                                    const QuadratureConfig& cfg);

/// Hints about the edge kernel's structure. Beyond s_structure (in the
/// s = cosh(eta) - 1 variable) the kernel is assumed smooth and slowly varying.
struct EdgeKernelHints {
  double s_structure = 0.0;
  /// Simple pole of beta on the path (eta > 0); the integral is then a principal value.
  double pole_eta = 0.0;
};

using EdgeKernel = std::function<Complex(double eta)>;

/// int_0^inf e^{i k r cosh(eta)} beta(eta) d eta. Equivalent to
/// int_0^inf e^{i k l} / l * beta dz with z = r sinh(eta).
QuadratureReport integrate_edge(const EdgeKernel& beta, double k, double r,
                                const QuadratureConfig& cfg, EdgeKernelHints hints = {});

/// Real line integral int_{-inf}^{inf} f(z) dz of an integrand that behaves
/// like e^{i omega |z|} times a slowly varying envelope for |z| > z_structure.
QuadratureReport integrate_line_oscillatory(const RealIntegrand& f, double omega,
                                            double z_structure, const QuadratureConfig& cfg);

/// Point on the steepest-descent contour S and its derivative.
Complex contour_s_point(double t);
Complex contour_s_derivative(double t);

/// e^{i k r cos alpha(t)} on S, computed as e^{i k r} e^{-k r sinh t tanh t}.
Complex contour_s_weight(double kr, double t);

/// Half-length T of the truncated parameter range, kr sinh(T) tanh(T) = -log(target).
double contour_s_truncation(double kr, double decay_target);

using ContourIntegrand = std::function<Complex(Complex alpha)>;

/// int_S f(alpha) e^{i k r cos alpha} d alpha, with S traversed from its
/// upper end (t = +inf) to its lower end (t = -inf). poles lists simple poles
/// of f; those on S are handled as principal values when cfg.principal_value
/// is set and raise SingularEvaluation otherwise.
QuadratureReport integrate_contour_s(const ContourIntegrand& f, double k, double r,
                                     const QuadratureConfig& cfg,
                                     std::span<const Complex> poles = {});

/// Principal value of int_a^b f(t) dt with a simple pole at t0 in (a, b):
/// symmetric excision eps_n = eps_0 / 2^n, four-term Richardson in odd powers of eps.
QuadratureReport principal_value(const RealIntegrand& f, double a, double b, double t0,
                                 const QuadratureConfig& cfg);

/// Wynn epsilon extrapolation of a sequence of partial sums. Returns the
/// estimate and an error indicator.
struct Extrapolation {
  Complex value;
  double error;
};
Extrapolation wynn_epsilon(std::span<const Complex> partial_sums);

/// Pairwise (cascade) summation, deterministic for a fixed input order.
Complex pairwise_sum(std::span<const Complex> terms);

}  // namespace wedge
