#include "wedge/quadrature.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <sstream>

namespace wedge {

namespace {

// Gauss-Kronrod 7/15 abscissae and weights on [-1, 1].
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Panel {
  double a;
  double b;
  Complex value;
  double error;
  double l1;
};

Panel gauss_kronrod(const RealIntegrand& f, double a, double b) {
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  std::array<Complex, 15> fv;
  fv[7] = f(centre);
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    fv[j] = f(centre - dx);
    fv[14 - j] = f(centre + dx);
  }
  Complex kronrod = fv[7] * kWgk[7];
  Complex gauss = fv[7] * kWg[3];
  double abs_sum = std::abs(fv[7]) * kWgk[7];
  for (int j = 0; j < 7; ++j) {
    const Complex pair = fv[j] + fv[14 - j];
    kronrod += kWgk[j] * pair;
    abs_sum += kWgk[j] * (std::abs(fv[j]) + std::abs(fv[14 - j]));
    if (j % 2 == 1) gauss += kWg[j / 2] * pair;
  }
  const Complex mean = 0.5 * kronrod;
  double asc = kWgk[7] * std::abs(fv[7] - mean);
  for (int j = 0; j < 7; ++j) {
    asc += kWgk[j] * (std::abs(fv[j] - mean) + std::abs(fv[14 - j] - mean));
  }
  kronrod *= half;
  gauss *= half;
  asc *= std::abs(half);
  abs_sum *= std::abs(half);

  for (const auto& v : fv) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw SingularEvaluation("integrand returned a non-finite value on [" + std::to_string(a) +
                               ", " + std::to_string(b) + "]");
    }
  }

  // QUADPACK error heuristic.
  double err = std::abs(kronrod - gauss);
  if (asc != 0.0 && err != 0.0) err = asc * std::min(1.0, std::pow(200.0 * err / asc, 1.5));
  if (abs_sum > std::numeric_limits<double>::min() / (50 * kEps)) {
    err = std::max(err, 50 * kEps * abs_sum);
  }
  return {a, b, kronrod, err, abs_sum};
}

double target_error(const QuadratureConfig& cfg, Complex value) {
  return std::max(cfg.abs_tol, cfg.rel_tol * std::abs(value));
}

}  // namespace

void QuadratureConfig::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) throw DomainError("quadrature tolerances must be positive");
  if (max_nodes < 64) throw DomainError("max_nodes must be at least 64");
  if (!(truncation_decay_target > 0.0) || truncation_decay_target >= 1.0) {
    throw DomainError("truncation_decay_target must lie in (0, 1)");
  }
}

QuadratureConfig QuadratureConfig::tightened(double factor) const {
  QuadratureConfig c = *this;
  c.rel_tol /= factor;
  c.abs_tol /= factor;
  return c;
}

QuadratureReport& QuadratureReport::operator+=(const QuadratureReport& other) {
  value += other.value;
  error_estimate += other.error_estimate;
  nodes_used += other.nodes_used;
  truncation_point = std::max(truncation_point, other.truncation_point);
  pv_applied = pv_applied || other.pv_applied;
  converged = converged && other.converged;
  return *this;
}

std::string QuadratureReport::describe() const {
  std::ostringstream os;
  os.precision(6);
  os << "value=(" << value.real() << "," << value.imag() << ") error=" << error_estimate
     << " nodes=" << nodes_used << " truncation=" << truncation_point
     << " pv=" << (pv_applied ? "yes" : "no") << " converged=" << (converged ? "yes" : "no");
  return os.str();
}

Complex pairwise_sum(std::span<const Complex> terms) {
  if (terms.empty()) return {0.0, 0.0};
  if (terms.size() <= 8) {
    Complex s{0.0, 0.0};
    for (const auto& t : terms) s += t;
    return s;
  }
  const std::size_t mid = terms.size() / 2;
  return pairwise_sum(terms.first(mid)) + pairwise_sum(terms.subspan(mid));
}

QuadratureReport integrate_interval(const RealIntegrand& f, double a, double b,
                                    const QuadratureConfig& cfg) {
  QuadratureReport report;
  if (a == b) return report;

  std::vector<Panel> panels{gauss_kronrod(f, a, b)};
  report.nodes_used = 15;
  const double min_width = 64 * kEps * std::max({std::abs(a), std::abs(b), 1e-300});

  Complex value = panels.front().value;
  double err = panels.front().error;
  double l1 = panels.front().l1;
  // Cancelling integrands cannot beat round-off relative to their L1 norm.
  auto target = [&]() { return std::max(target_error(cfg, value), 100 * kEps * l1); };
  while (err > target()) {
    if (report.nodes_used + 30 > cfg.max_nodes) break;
    auto worst = std::max_element(panels.begin(), panels.end(),
                                  [](const Panel& x, const Panel& y) { return x.error < y.error; });
    const double mid = 0.5 * (worst->a + worst->b);
    if (std::abs(worst->b - worst->a) < min_width) break;
    const Panel left = gauss_kronrod(f, worst->a, mid);
    const Panel right = gauss_kronrod(f, mid, worst->b);
    value += left.value + right.value - worst->value;
    err += left.error + right.error - worst->error;
    l1 += left.l1 + right.l1 - worst->l1;
    *worst = left;
    panels.push_back(right);
    report.nodes_used += 30;
  }
  err = 0.0;
  for (const auto& p : panels) err += p.error;

  std::sort(panels.begin(), panels.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
  std::vector<Complex> values;
  values.reserve(panels.size());
  for (const auto& p : panels) values.push_back(p.value);
  report.value = pairwise_sum(values);
  report.error_estimate = err;
  report.truncation_point = b;
  value = report.value;
  report.converged = err <= target();
  return report;
}

Extrapolation wynn_epsilon(std::span<const Complex> s) {
  const std::size_t n = s.size();
  if (n == 0) return {{0.0, 0.0}, std::numeric_limits<double>::infinity()};
  if (n < 3) return {s.back(), n == 2 ? std::abs(s[1] - s[0]) : std::numeric_limits<double>::infinity()};

  std::vector<Complex> prev(n + 1, Complex{0.0, 0.0});  // column k-1
  std::vector<Complex> cur(s.begin(), s.end());          // column k
  Complex best = s.back();
  double best_err = std::abs(s[n - 1] - s[n - 2]);
  Complex last_even = s.back();

  for (std::size_t k = 1; k < n; ++k) {
    std::vector<Complex> next(cur.size() - 1);
    for (std::size_t j = 0; j + 1 < cur.size(); ++j) {
      const Complex diff = cur[j + 1] - cur[j];
      if (std::abs(diff) <= 1e-300 + 1e-15 * std::abs(cur[j + 1])) {
        // Even columns hold estimates: one that stopped moving is the answer.
        if ((k - 1) % 2 == 0) return {cur[j + 1], 1e-15 * std::abs(cur[j + 1])};
        return {best, best_err};
      }
      next[j] = prev[j + 1] + 1.0 / diff;
    }
    prev.assign(cur.begin(), cur.end());
    cur = std::move(next);
    if (k % 2 == 0 && !cur.empty()) {
      const Complex est = cur.back();
      const double e = std::abs(est - last_even);
      if (std::isfinite(est.real()) && std::isfinite(est.imag()) && e <= best_err) {
        best = est;
        best_err = e;
      }
      last_even = est;
    }
    if (cur.size() < 2) break;
  }
  return {best, best_err};
}

QuadratureReport integrate_edge(const EdgeKernel& beta, double k, double r,
                                const QuadratureConfig& cfg, EdgeKernelHints hints) {
  cfg.validate();
  if (!(k > 0.0) || !(r > 0.0)) {
    throw QuadratureFailure("edge integral needs k > 0 and r > 0 (apex receivers are unsupported)",
                            QuadratureReport{{0, 0}, 0, 0, 0, false, false});
  }
  const double kr = k * r;
  const Complex ikr(0.0, kr);

  auto in_eta = [&](double eta) { return std::exp(ikr * std::cosh(eta)) * beta(eta); };
  QuadratureConfig inner = cfg;
  inner.rel_tol = cfg.rel_tol * 0.1;
  inner.abs_tol = cfg.abs_tol * 0.1;

  // Pole on the path: fold a symmetric window onto itself (the pole cancels)
  // and cut that window out of everything below.
  double cut_lo = 0.0, cut_hi = 0.0;
  QuadratureReport report;
  if (hints.pole_eta > 0.0) {
    const double w = std::min(0.5 * hints.pole_eta, 0.25);
    cut_lo = hints.pole_eta - w;
    cut_hi = hints.pole_eta + w;
    report = integrate_interval(
        [&](double u) { return in_eta(hints.pole_eta + u) + in_eta(hints.pole_eta - u); }, 0.0, w, inner);
    report.pv_applied = true;
  }
  // [a, b] minus the cut window.
  auto outside_cut = [&](const RealIntegrand& f, double a, double b, double lo, double hi,
                         const QuadratureConfig& c) {
    if (!(hi > lo) || hi <= a || lo >= b) return integrate_interval(f, a, b, c);
    QuadratureReport out;
    if (lo > a) out += integrate_interval(f, a, lo, c);
    if (hi < b) out += integrate_interval(f, hi, b, c);
    return out;
  };

  // Near the apex: integrate in eta, where the integrand is regular.
  const double s_apex = 1.0;
  const double eta_apex = std::acosh(1.0 + s_apex);
  report += outside_cut(in_eta, 0.0, eta_apex, cut_lo, cut_hi, inner);
  const double scale = std::max(std::abs(report.value), 1e-300);

  // Further out: s = cosh(eta) - 1, half-period panels of the constant phase rate kr.
  auto in_s = [&](double s) {
    const double eta = std::log1p(s + std::sqrt(s * (s + 2.0)));
    return std::exp(ikr * (1.0 + s)) * beta(eta) / std::sqrt(s * (s + 2.0));
  };
  const double s_cut_lo = std::cosh(cut_lo) - 1.0, s_cut_hi = std::cosh(cut_hi) - 1.0;
  const double h = kPi / kr;
  QuadratureConfig panel_cfg = cfg;
  panel_cfg.abs_tol = 0.01 * std::max(cfg.abs_tol, cfg.rel_tol * scale);
  panel_cfg.rel_tol = 0.01 * cfg.rel_tol;

  std::vector<Complex> tail_panels;
  std::vector<Complex> partial;  // partial sums once the kernel is smooth
  Complex running = report.value;
  Complex last_estimate{0.0, 0.0};
  int stable_hits = 0;
  double extrap_err = std::numeric_limits<double>::infinity();
  double s = s_apex;
  bool done = false;
  double panel_error = 0.0;

  while (!done) {
    const QuadratureReport p = outside_cut(in_s, s, s + h, s_cut_lo, s_cut_hi, panel_cfg);
    report.nodes_used += p.nodes_used;
    panel_error += p.error_estimate;
    tail_panels.push_back(p.value);
    running += p.value;
    s += h;

    if (s > hints.s_structure + 4 * h) {
      partial.push_back(running);
      const std::size_t window = 41;
      const std::size_t first = partial.size() > window ? partial.size() - window : 0;
      std::span<const Complex> seq(partial.data() + first, partial.size() - first);
      if (seq.size() >= 7) {
        // Odd-length windows end on an even epsilon column.
        if (seq.size() % 2 == 0) seq = seq.subspan(1);
        const Extrapolation ex = wynn_epsilon(seq);
        const double tol = target_error(cfg, ex.value) * 0.1;
        const double change = std::abs(ex.value - last_estimate);
        last_estimate = ex.value;
        stable_hits = (change <= tol && ex.error <= tol) ? stable_hits + 1 : 0;
        extrap_err = std::max(change, ex.error);
        if (stable_hits >= 3) done = true;
      }
      if (std::abs(p.value) == 0.0 && std::abs(running - report.value) == 0.0 && partial.size() >= 3) {
        // Identically vanishing kernel.
        last_estimate = running;
        extrap_err = 0.0;
        done = true;
      }
    }
    if (!done && report.nodes_used > cfg.max_nodes) {
      report.value = partial.empty() ? running : last_estimate;
      report.error_estimate += panel_error + extrap_err;
      report.truncation_point = std::acosh(1.0 + s);
      report.converged = false;
      return report;
    }
  }

  report.value = last_estimate;
  report.error_estimate += panel_error + extrap_err;
  report.truncation_point = std::acosh(1.0 + s);
  report.converged = report.error_estimate <= 10 * target_error(cfg, report.value);
  return report;
}

QuadratureReport integrate_line_oscillatory(const RealIntegrand& f, double omega,
                                            double z_structure, const QuadratureConfig& cfg) {
  cfg.validate();
  if (!(omega > 0.0)) throw DomainError("oscillation rate must be positive");
  const double zs = std::max(z_structure, kPi / omega);
  QuadratureConfig inner = cfg.tightened(10.0);
  QuadratureReport report = integrate_interval(f, -zs, zs, inner);
  const double scale = std::max(std::abs(report.value), 1e-300);
  const double h = kPi / omega;
  QuadratureConfig panel_cfg = cfg;
  panel_cfg.abs_tol = 0.01 * std::max(cfg.abs_tol, cfg.rel_tol * scale);
  panel_cfg.rel_tol = 0.01 * cfg.rel_tol;

  for (const double side : {1.0, -1.0}) {
    std::vector<Complex> partial;
    Complex running{0.0, 0.0};
    Complex last{0.0, 0.0};
    int hits = 0;
    double z = zs;
    double err = 0.0;
    double extrap_err = std::numeric_limits<double>::infinity();
    std::size_t nodes = 0;
    while (true) {
      const QuadratureReport p = integrate_interval([&](double u) { return f(side * u); }, z, z + h,
                                                    panel_cfg);
      nodes += p.nodes_used;
      err += p.error_estimate;
      running += p.value;
      partial.push_back(running);
      z += h;
      if (partial.size() >= 7) {
        const std::size_t first = partial.size() > 41 ? partial.size() - 41 : 0;
        std::span<const Complex> seq(partial.data() + first, partial.size() - first);
        if (seq.size() % 2 == 0) seq = seq.subspan(1);
        const Extrapolation ex = wynn_epsilon(seq);
        const double tol = 0.1 * target_error(cfg, ex.value + report.value);
        const double change = std::abs(ex.value - last);
        last = ex.value;
        hits = (change <= tol && ex.error <= tol) ? hits + 1 : 0;
        extrap_err = std::max(change, ex.error);
        if (hits >= 3) break;
      }
      if (report.nodes_used + nodes > cfg.max_nodes) {
        QuadratureReport failed = report;
        failed.value += last;
        failed.nodes_used += nodes;
        failed.converged = false;
        failed.truncation_point = z;
        return failed;
      }
    }
    QuadratureReport tail;
    tail.value = last;
    tail.error_estimate = err + extrap_err;
    tail.nodes_used = nodes;
    tail.truncation_point = z;
    report += tail;
  }
  report.converged = report.error_estimate <= 10 * target_error(cfg, report.value);
  return report;
}

Complex contour_s_point(double t) { return {-gudermannian(t), t}; }

Complex contour_s_derivative(double t) { return {-1.0 / std::cosh(t), 1.0}; }

Complex contour_s_weight(double kr, double t) {
  return std::exp(Complex(0.0, kr)) * std::exp(-kr * std::sinh(t) * std::tanh(t));
}

double contour_s_truncation(double kr, double decay_target) {
  const double level = -std::log(decay_target);
  double lo = 0.0;
  double hi = 1.0;
  while (kr * std::sinh(hi) * std::tanh(hi) < level) hi *= 2.0;
  for (int i = 0; i < 200 && hi - lo > 1e-14 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (kr * std::sinh(mid) * std::tanh(mid) < level ? lo : hi) = mid;
  }
  return hi;
}

namespace {

QuadratureReport principal_value_fixed(const RealIntegrand& f, double a, double b, double t0,
                                       double eps0, const QuadratureConfig& cfg,
                                       double& richardson_change) {
  QuadratureConfig inner = cfg.tightened(100.0);
  QuadratureReport report = integrate_interval(f, a, t0 - eps0, inner);
  report += integrate_interval(f, t0 + eps0, b, inner);

  // I_n: excision half-width eps0 / 2^n.
  std::array<Complex, 4> excised{};
  excised[0] = report.value;
  double eps = eps0;
  for (int n = 1; n < 4; ++n) {
    const double next = 0.5 * eps;
    QuadratureReport ring = integrate_interval(f, t0 - eps, t0 - next, inner);
    ring += integrate_interval(f, t0 + next, t0 + eps, inner);
    report.nodes_used += ring.nodes_used;
    report.error_estimate += ring.error_estimate;
    report.converged = report.converged && ring.converged;
    excised[n] = excised[n - 1] + ring.value;
    eps = next;
  }

  // The excised piece is an odd power series in eps.
  std::array<Complex, 4> level = excised;
  int size = 4;
  for (const double factor : {2.0, 8.0, 32.0}) {
    for (int n = 0; n + 1 < size; ++n) level[n] = (factor * level[n + 1] - level[n]) / (factor - 1.0);
    --size;
  }
  // level[1] still holds the finer estimate of the previous elimination.
  richardson_change = std::abs(level[0] - level[1]);
  report.value = level[0];
  report.error_estimate += richardson_change;
  report.pv_applied = true;
  return report;
}

}  // namespace

QuadratureReport principal_value(const RealIntegrand& f, double a, double b, double t0,
                                 const QuadratureConfig& cfg) {
  if (!(a < t0 && t0 < b)) throw DomainError("principal value pole must lie inside the interval");
  const double room = std::min(t0 - a, b - t0);
  double change = 0.0;
  if (cfg.pv_epsilon > 0.0) {
    QuadratureReport rep =
        principal_value_fixed(f, a, b, t0, std::min(cfg.pv_epsilon, 0.5 * room), cfg, change);
    rep.converged = rep.converged && change <= 10 * target_error(cfg, rep.value);
    return rep;
  }
  // Shrink the excision until the Richardson table settles.
  double eps0 = 0.1 * std::min(room, 1.0);
  QuadratureReport best;
  double best_change = std::numeric_limits<double>::infinity();
  std::size_t nodes = 0;
  for (int attempt = 0; attempt < 8; ++attempt, eps0 *= 0.25) {
    QuadratureReport rep = principal_value_fixed(f, a, b, t0, eps0, cfg, change);
    nodes += rep.nodes_used;
    if (change < best_change) {
      best = rep;
      best_change = change;
    }
    if (change <= target_error(cfg, rep.value)) break;
  }
  best.nodes_used = nodes;
  best.converged = best.converged && best_change <= 10 * target_error(cfg, best.value);
  return best;
}

QuadratureReport integrate_contour_s(const ContourIntegrand& f, double k, double r,
                                     const QuadratureConfig& cfg, std::span<const Complex> poles) {
  cfg.validate();
  const double kr = k * r;
  if (!(kr > 0.0)) throw DomainError("contour integral needs k r > 0");
  const double big_t = contour_s_truncation(kr, cfg.truncation_decay_target);

  // S runs from t = +inf down to t = -inf, hence the sign.
  const RealIntegrand g = [&](double t) {
    return -f(contour_s_point(t)) * contour_s_weight(kr, t) * contour_s_derivative(t);
  };

  std::vector<double> on_contour;
  for (const Complex& p : poles) {
    const double t = p.imag();
    if (std::abs(t) >= big_t) continue;
    if (std::abs(p.real() + gudermannian(t)) < cfg.pole_on_contour_tol) {
      if (!cfg.principal_value) {
        throw SingularEvaluation("pole at (" + std::to_string(p.real()) + ", " +
                                 std::to_string(p.imag()) +
                                 ") lies on the contour; principal-value mode is required");
      }
      if (std::none_of(on_contour.begin(), on_contour.end(),
                       [t](double u) { return std::abs(u - t) < 1e-12; })) {
        on_contour.push_back(t);
      }
    }
  }
  std::sort(on_contour.begin(), on_contour.end());

  std::vector<double> cuts{-big_t};
  for (std::size_t i = 0; i + 1 < on_contour.size(); ++i) {
    cuts.push_back(0.5 * (on_contour[i] + on_contour[i + 1]));
  }
  cuts.push_back(big_t);

  QuadratureReport report;
  report.value = {0.0, 0.0};
  if (on_contour.empty()) {
    report = integrate_interval(g, -big_t, 0.0, cfg);
    report += integrate_interval(g, 0.0, big_t, cfg);
  } else {
    for (std::size_t i = 0; i < on_contour.size(); ++i) {
      report += principal_value(g, cuts[i], cuts[i + 1], on_contour[i], cfg);
    }
  }
  report.truncation_point = big_t;
  return report;
}

}  // namespace wedge
