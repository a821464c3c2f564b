#include "cli.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "wedge/errors.hpp"
#include "wedge/field.hpp"
#include "wedge/ideal_edge_source.hpp"
#include "wedge/impedance.hpp"
#include "wedge/impedance_edge.hpp"
#include "wedge/sommerfeld.hpp"
#include "wedge/validation.hpp"

#ifndef WEDGE_VERSION
#define WEDGE_VERSION "0.0.0"
#endif

namespace wedge::cli {

using nlohmann::json;

std::string_view version() { return WEDGE_VERSION; }

namespace {

// ------------------------------------------------------------ config parsing

Complex complex_of(const json& v, const std::string& key) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return {v[0].get<double>(), v[1].get<double>()};
  }
  throw ConfigError("'" + key + "' must be a number or a [re, im] pair");
}

double number_of(const json& obj, const std::string& key, double fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number()) throw ConfigError("'" + key + "' must be a number");
  return obj[key].get<double>();
}

std::vector<double> range_of(const json& v, const std::string& key) {
  if (v.is_number()) return {v.get<double>()};
  if (v.is_array()) {
    std::vector<double> out;
    for (const auto& x : v) {
      if (!x.is_number()) throw ConfigError("'" + key + "' list entries must be numbers");
      out.push_back(x.get<double>());
    }
    if (out.empty()) throw ConfigError("'" + key + "' is empty");
    return out;
  }
  if (v.is_object()) {
    const double lo = number_of(v, "min", 0.0), hi = number_of(v, "max", 0.0);
    if (!v.contains("count") || !v["count"].is_number_integer()) {
      throw ConfigError("'" + key + "' range needs an integer 'count'");
    }
    const long long n = v["count"].get<long long>();
    if (n < 1) throw ConfigError("'" + key + "' count must be at least 1");
    if (n > 1 && !(hi > lo)) throw ConfigError("'" + key + "' range needs max > min");
    std::vector<double> out;
    for (long long i = 0; i < n; ++i) out.push_back(n == 1 ? lo : lo + (hi - lo) * i / (n - 1));
    return out;
  }
  throw ConfigError("'" + key + "' must be a number, a list, or {min, max, count}");
}

BoundaryConditionPair boundary_of(const json& b) {
  const std::string kind = b.is_string() ? b.get<std::string>() : b.value("kind", std::string{});
  if (kind == "dirichlet") return BoundaryConditionPair::dirichlet();
  if (kind == "neumann") return BoundaryConditionPair::neumann();
  if (kind == "dirichlet-neumann") return BoundaryConditionPair::dirichlet_neumann();
  if (kind == "neumann-dirichlet") return BoundaryConditionPair::neumann_dirichlet();
  if (kind == "impedance") {
    if (!b.is_object() || !b.contains("mu1") || !b.contains("mu2")) {
      throw ConfigError("impedance boundary needs 'mu1' and 'mu2'");
    }
    return BoundaryConditionPair::with_impedance(complex_of(b["mu1"], "mu1"), complex_of(b["mu2"], "mu2"));
  }
  throw ConfigError("unknown boundary kind '" + kind +
                    "' (dirichlet, neumann, dirichlet-neumann, neumann-dirichlet, impedance)");
}

// ------------------------------------------------------------ evaluation

const Complex kI{0.0, 1.0};

bool is_impedance(const ScenarioConfig& c) { return c.bc.kind == BoundaryKind::Impedance; }

const ImpedanceFaces& faces_of(const ScenarioConfig& c) { return *c.bc.impedance; }

bool contour_available(const ScenarioConfig& c) {
  return c.bc.kind == BoundaryKind::Dirichlet || c.bc.kind == BoundaryKind::Neumann || is_impedance(c);
}

void require_right_angle(const ScenarioConfig& c, const char* what) {
  if (!c.right_angled()) throw ConfigError(std::string(what) + " supports the right-angled wedge only");
}

std::string describe_point(const FieldPoint& p) {
  std::ostringstream os;
  os.precision(17);
  os << "receiver (r=" << p.r << ", theta=" << p.theta << ")";
  return os.str();
}

// Re-raise any failure under the CLI's two error classes, naming where it happened.
[[noreturn]] void rethrow_at(const std::string& where, const std::exception_ptr& e) {
  try {
    std::rethrow_exception(e);
  } catch (const ConfigError& err) {
    throw ConfigError(where + ": " + err.what());
  } catch (const NumericalError& err) {
    throw NumericalError(where + ": " + err.what());
  } catch (const PassivityViolation& err) {
    throw ConfigError(where + ": " + err.what());
  } catch (const QuadratureFailure& err) {
    throw NumericalError(where + ": quadrature: " + err.what());
  } catch (const DomainError& err) {
    throw ConfigError(where + ": " + err.what());
  } catch (const Error& err) {
    throw NumericalError(where + ": " + err.what());
  } catch (const std::exception& err) {
    throw NumericalError(where + ": " + err.what());
  }
}

// Runs fn(i) for i < n on up to `threads` workers; failures surface in index order.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn,
                  const std::function<std::string(std::size_t)>& where) {
  std::vector<std::exception_ptr> errors(n);
  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  auto work = [&](unsigned w) {
    for (std::size_t i = w; i < n; i += workers) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (errors[i]) rethrow_at(where(i), errors[i]);
  }
}

// Flipping the image-term sign of an ideal kernel swaps soft and hard on face 1.
BoundaryKind complementary(BoundaryKind k) {
  switch (k) {
    case BoundaryKind::Dirichlet: return BoundaryKind::Neumann;
    case BoundaryKind::Neumann: return BoundaryKind::Dirichlet;
    case BoundaryKind::DirichletNeumann: return BoundaryKind::NeumannDirichlet;
    case BoundaryKind::NeumannDirichlet: return BoundaryKind::DirichletNeumann;
    case BoundaryKind::Impedance: break;
  }
  throw ConfigError("corrupt_kernel_sign applies to ideal faces only");
}

FieldDecomposition evaluate(const ScenarioConfig& c, Representation rep, const FieldPoint& p) {
  require_right_angle(c, "field evaluation");
  const IncidentPlaneWave inc(c.theta0, c.k);
  const QuadratureConfig& q = c.quadrature;
  FieldDecomposition d;
  const bool contour = rep == Representation::Contour;
  switch (c.bc.kind) {
    case BoundaryKind::Dirichlet:
      d = contour ? dirichlet_total_contour(inc, p, q) : dirichlet_total_edge_form(inc, p, q);
      break;
    case BoundaryKind::Neumann:
      d = contour ? impedance_total_contour(inc, p, ImpedanceFaces::from_admittance(0.0, 0.0), q)
                  : ideal_total_field(inc, p, c.bc, q);
      break;
    case BoundaryKind::DirichletNeumann:
    case BoundaryKind::NeumannDirichlet:
      if (contour) throw ConfigError("mixed wedges have no contour form; use --representation edge");
      d = ideal_total_field(inc, p, c.bc, q);
      break;
    case BoundaryKind::Impedance:
      d = contour ? impedance_total_contour(inc, p, faces_of(c), q)
                  : impedance_total_edge_source(inc, p, faces_of(c), q);
      break;
  }
  if (c.corrupt_kernel_sign) {
    ScenarioConfig other = c;
    other.bc = {complementary(c.bc.kind), {}};
    other.corrupt_kernel_sign = false;
    d.diffracted = evaluate(other, rep, p).diffracted;
  }
  return d;
}

bool near_boundary(const FieldDecomposition& d) {
  for (const auto& t : d.geometrical) {
    if (t.coefficient != Complex{0.0, 0.0} && std::abs(t.heaviside_arg) < kFarFieldZoneGuard) return true;
  }
  return false;
}

std::vector<Representation> expand(Representation r) {
  if (r == Representation::Both) return {Representation::Contour, Representation::Edge};
  return {r};
}

std::string rep_name(Representation r) {
  switch (r) {
    case Representation::Edge: return "edge";
    case Representation::Contour: return "contour";
    case Representation::Both: return "both";
  }
  return "?";
}

void check_representation(const ScenarioConfig& c, Representation r) {
  if (r != Representation::Edge && !contour_available(c)) {
    throw ConfigError("mixed wedges have no contour form; use --representation edge");
  }
}

void push_complex(std::vector<Cell>& row, Complex v) {
  row.emplace_back(v.real());
  row.emplace_back(v.imag());
}

// Receiver angle at least this far from every gate, picked from a fine sweep.
double quiet_angle(const ScenarioConfig& c) {
  const IncidentPlaneWave inc(c.theta0, c.k);
  double best = 1.0, best_gap = -1.0;
  for (int i = 0; i <= 400; ++i) {
    const double th = 0.1 + (c.wedge_angle - 0.2) * i / 400.0;
    const auto d = evaluate(c, c.bc.kind == BoundaryKind::DirichletNeumann || c.bc.kind == BoundaryKind::NeumannDirichlet
                                   ? Representation::Edge
                                   : Representation::Contour,
                            FieldPoint{1.0, th, 0.0});
    double gap = std::min(th, c.wedge_angle - th);
    for (const auto& t : d.geometrical) {
      if (t.coefficient != Complex{0.0, 0.0}) gap = std::min(gap, std::abs(t.heaviside_arg));
    }
    if (gap > best_gap) {
      best_gap = gap;
      best = th;
    }
  }
  return best;
}

}  // namespace

bool ScenarioConfig::right_angled() const { return std::abs(wedge_angle - 1.5 * kPi) < 1e-12; }

Representation parse_representation(const std::string& s) {
  if (s == "edge") return Representation::Edge;
  if (s == "contour") return Representation::Contour;
  if (s == "both") return Representation::Both;
  throw ConfigError("representation must be edge, contour or both");
}

ScenarioConfig parse_config(const json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  ScenarioConfig c;
  try {
    if (j.contains("wedge")) {
      const auto& w = j["wedge"];
      if (w.is_string() && w.get<std::string>() == "right") {
        c.wedge_angle = 1.5 * kPi;
      } else if (w.is_number()) {
        c.wedge_angle = WedgeGeometry(w.get<double>()).theta_w();
      } else {
        throw ConfigError("'wedge' must be \"right\" or an exterior angle in radians");
      }
    }
    if (!j.contains("boundary")) throw ConfigError("missing 'boundary'");
    c.bc = boundary_of(j["boundary"]);
    if (is_impedance(c)) require_right_angle(c, "the impedance wedge");

    if (!j.contains("incidence") || !j["incidence"].is_object()) throw ConfigError("missing 'incidence' object");
    const auto& inc = j["incidence"];
    if (!inc.contains("theta0")) throw ConfigError("missing 'incidence.theta0'");
    c.theta0 = ComplexAngle(complex_of(inc["theta0"], "theta0"));
    c.k = number_of(inc, "k", 1.0);
    if (!(c.k > 0.0)) throw ConfigError("'k' must be positive");
    if (c.theta0.re < 0.0 || c.theta0.re > c.wedge_angle) throw ConfigError("Re theta0 must lie in [0, wedge]");
    if (is_impedance(c) && !c.theta0.is_real()) throw ConfigError("the impedance wedge requires a real theta0");

    if (j.contains("receivers")) {
      const auto& r = j["receivers"];
      if (r.contains("list")) {
        for (const auto& p : r["list"]) {
          if (!p.is_array() || p.size() != 2) throw ConfigError("receiver list entries are [r, theta]");
          c.receivers.push_back({p[0].get<double>(), p[1].get<double>(), 0.0});
          c.thetas.push_back(p[1].get<double>());
        }
      } else {
        if (!r.contains("r") || !r.contains("theta")) throw ConfigError("'receivers' needs 'r' and 'theta' or 'list'");
        const auto rs = range_of(r["r"], "receivers.r");
        c.thetas = range_of(r["theta"], "receivers.theta");
        for (const double th : c.thetas) {
          for (const double rr : rs) c.receivers.push_back({rr, th, 0.0});
        }
      }
      for (const auto& p : c.receivers) {
        if (!(p.r > 0.0)) throw ConfigError("receiver radii must be positive");
        if (p.theta < 0.0 || p.theta > c.wedge_angle) throw ConfigError("receiver angles must lie in [0, wedge]");
      }
    }

    if (j.contains("quadrature")) {
      const auto& q = j["quadrature"];
      c.quadrature.rel_tol = number_of(q, "rel_tol", c.quadrature.rel_tol);
      c.quadrature.abs_tol = number_of(q, "abs_tol", c.quadrature.abs_tol);
      if (q.contains("max_nodes")) c.quadrature.max_nodes = q["max_nodes"].get<std::size_t>();
      c.quadrature.pv_epsilon = number_of(q, "pv_epsilon", c.quadrature.pv_epsilon);
      if (q.contains("principal_value")) c.quadrature.principal_value = q["principal_value"].get<bool>();
      c.quadrature.validate();
    }

    if (j.contains("directivity")) {
      const auto& d = j["directivity"];
      c.directivity.theta = number_of(d, "theta", c.directivity.theta);
      if (d.contains("eta")) c.directivity.eta = range_of(d["eta"], "directivity.eta");
    }
    if (c.directivity.eta.empty()) c.directivity.eta = range_of(json{{"min", 0.0}, {"max", 5.0}, {"count", 51}}, "eta");

    if (j.contains("validate")) {
      const auto& v = j["validate"];
      auto& s = c.validate;
      if (v.contains("samples")) s.samples = v["samples"].get<int>();
      if (s.samples < 1) throw ConfigError("'validate.samples' must be at least 1");
      s.helmholtz_h = number_of(v, "helmholtz_h", s.helmholtz_h);
      s.bc_h = number_of(v, "bc_h", s.bc_h);
      s.helmholtz_tol = number_of(v, "helmholtz_tol", s.helmholtz_tol);
      s.cross_tol = number_of(v, "cross_tol", s.cross_tol);
      s.far_field_tol = number_of(v, "far_field_tol", s.far_field_tol);
      if (v.contains("far_field_kr")) s.far_field_kr = range_of(v["far_field_kr"], "far_field_kr");
      if (v.contains("far_field_theta")) s.far_field_theta = v["far_field_theta"].get<double>();
    }

    if (j.contains("test_hooks")) c.corrupt_kernel_sign = j["test_hooks"].value("corrupt_kernel_sign", false);
    if (c.corrupt_kernel_sign) complementary(c.bc.kind);
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(e.what());
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  c.canonical = j.dump();
  return c;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("cannot parse '" + path + "': " + e.what());
  }
  return parse_config(j);
}

// ------------------------------------------------------------ commands

Table field_map(const ScenarioConfig& cfg, const RunOptions& opt) {
  if (cfg.receivers.empty()) throw ConfigError("field-map needs 'receivers'");
  check_representation(cfg, opt.representation);
  const auto reps = expand(opt.representation);
  Table t;
  t.header = {"r", "theta", "x", "y"};
  for (const auto rep : reps) {
    const std::string pre = reps.size() > 1 ? rep_name(rep) + "_" : "";
    for (const char* part : {"re_total", "im_total", "abs_total"}) t.header.push_back(pre + part);
    for (int k = 0; k < 5; ++k) {
      const std::string name(to_string(static_cast<TermKind>(k)));
      t.header.push_back(pre + "re_" + name);
      t.header.push_back(pre + "im_" + name);
    }
    t.header.push_back(pre + "re_diffracted");
    t.header.push_back(pre + "im_diffracted");
  }
  if (reps.size() > 1) {
    t.header.push_back("abs_total_diff");
    t.header.push_back("abs_diffracted_diff");
  }
  t.header.push_back("near_boundary");

  t.rows.resize(cfg.receivers.size());
  parallel_for(
      cfg.receivers.size(), opt.threads,
      [&](std::size_t i) {
        const FieldPoint& p = cfg.receivers[i];
        std::vector<Cell> row{p.r, p.theta, p.r * std::cos(p.theta), p.r * std::sin(p.theta)};
        std::vector<FieldDecomposition> decs;
        for (const auto rep : reps) {
          const auto d = evaluate(cfg, rep, p);
          const Complex total = d.total();
          if (!std::isfinite(total.real()) || !std::isfinite(total.imag())) {
            throw NumericalError("non-finite total in the " + rep_name(rep) + " representation");
          }
          push_complex(row, total);
          row.emplace_back(std::abs(total));
          for (const auto& term : d.geometrical) push_complex(row, term.value());
          push_complex(row, d.diffracted);
          decs.push_back(d);
        }
        if (decs.size() > 1) {
          row.emplace_back(std::abs(decs[0].total() - decs[1].total()));
          row.emplace_back(std::abs(decs[0].diffracted - decs[1].diffracted));
        }
        row.emplace_back(static_cast<long long>(near_boundary(decs[0])));
        t.rows[i] = std::move(row);
      },
      [&](std::size_t i) { return describe_point(cfg.receivers[i]); });
  return t;
}

Table diffraction_coeff(const ScenarioConfig& cfg, const RunOptions& opt) {
  require_right_angle(cfg, "diffraction-coeff");
  if (cfg.thetas.empty()) throw ConfigError("diffraction-coeff needs a 'receivers.theta' sweep");
  Table t;
  t.header = {"theta", "re_D", "im_D", "abs_D", "zone_warning"};
  t.rows.resize(cfg.thetas.size());
  const IncidentPlaneWave inc(cfg.theta0, cfg.k);
  parallel_for(
      cfg.thetas.size(), opt.threads,
      [&](std::size_t i) {
        const double th = cfg.thetas[i];
        Complex d;
        bool warn = false;
        try {
          if (is_impedance(cfg)) {
            const auto f = far_field_coefficient(th, cfg.theta0, faces_of(cfg));
            d = f.value;
            warn = f.near_zone_boundary;
          } else {
            const BoundaryKind kind = cfg.corrupt_kernel_sign ? complementary(cfg.bc.kind) : cfg.bc.kind;
            d = ideal_diffraction_coefficient(kind, th, cfg.theta0);
            for (const auto& term : geometrical_acoustics(inc, FieldPoint{1.0, th, 0.0}, cfg.bc)) {
              if (term.coefficient != Complex{0.0, 0.0} && std::abs(term.heaviside_arg) < kFarFieldZoneGuard) warn = true;
            }
          }
        } catch (const SingularEvaluation&) {
          // Exactly on a zone boundary the coefficient is unbounded.
          const double inf = std::numeric_limits<double>::infinity();
          d = {inf, inf};
          warn = true;
        }
        t.rows[i] = {th, d.real(), d.imag(), std::abs(d), static_cast<long long>(warn)};
      },
      [&](std::size_t i) { return "theta=" + std::to_string(cfg.thetas[i]); });
  return t;
}

Table directivity(const ScenarioConfig& cfg, const RunOptions& opt) {
  const double th = cfg.directivity.theta;
  if (th < 0.0 || th > cfg.wedge_angle) throw ConfigError("directivity.theta must lie in [0, wedge]");
  Table t;
  t.header = {"eta", "re_beta", "im_beta", "abs_beta"};
  t.rows.resize(cfg.directivity.eta.size());
  std::function<Complex(double)> beta;
  try {
    if (is_impedance(cfg)) {
      auto k = std::make_shared<ImpedanceKernel>(th, cfg.theta0, faces_of(cfg));
      beta = [k](double eta) { return (*k)(eta); };
    } else {
      const BoundaryKind kind = cfg.corrupt_kernel_sign ? complementary(cfg.bc.kind) : cfg.bc.kind;
      auto k = std::make_shared<DirectivityKernel>(kind, WedgeGeometry(cfg.wedge_angle), th, cfg.theta0);
      beta = [k](double eta) { return (*k)(eta); };
    }
  } catch (...) {
    rethrow_at("directivity kernel", std::current_exception());
  }
  parallel_for(
      cfg.directivity.eta.size(), opt.threads,
      [&](std::size_t i) {
        const double eta = cfg.directivity.eta[i];
        if (eta < 0.0) throw ConfigError("eta must be non-negative");
        const Complex b = beta(eta);
        t.rows[i] = {eta, b.real(), b.imag(), std::abs(b)};
      },
      [&](std::size_t i) { return "eta=" + std::to_string(cfg.directivity.eta[i]); });
  return t;
}

Table cross_check(const ScenarioConfig& cfg, const RunOptions& opt) {
  if (cfg.receivers.empty()) throw ConfigError("cross-check needs 'receivers'");
  if (!contour_available(cfg)) throw ConfigError("cross-check needs both representations; mixed wedges have only one");
  Table t;
  t.header = {"r", "theta", "re_total_contour", "im_total_contour", "re_total_edge", "im_total_edge",
              "abs_total_diff", "re_diffracted_diff", "im_diffracted_diff", "abs_extraction_error",
              "in_surface_region"};
  std::optional<SurfaceWaveStatus> sw;
  if (is_impedance(cfg)) sw = surface_wave_status(faces_of(cfg).theta1, faces_of(cfg).theta2);
  t.rows.resize(cfg.receivers.size());
  parallel_for(
      cfg.receivers.size(), opt.threads,
      [&](std::size_t i) {
        const FieldPoint& p = cfg.receivers[i];
        const auto c = evaluate(cfg, Representation::Contour, p);
        const auto e = evaluate(cfg, Representation::Edge, p);
        // Gate differences predict what moved between the geometrical and diffracted parts.
        Complex predicted{0.0, 0.0};
        for (int k = 0; k < 5; ++k) predicted += c.geometrical[k].value() - e.geometrical[k].value();
        const Complex diff = e.diffracted - c.diffracted;
        const bool inside = sw && ((sw->face1_excited && sw->region1.contains(p.theta)) ||
                                   (sw->face2_excited && sw->region2.contains(p.theta)));
        std::vector<Cell> row{p.r, p.theta};
        push_complex(row, c.total());
        push_complex(row, e.total());
        row.emplace_back(std::abs(c.total() - e.total()));
        push_complex(row, diff);
        row.emplace_back(std::abs(diff - predicted));
        row.emplace_back(static_cast<long long>(inside));
        t.rows[i] = std::move(row);
      },
      [&](std::size_t i) { return describe_point(cfg.receivers[i]); });
  return t;
}

ValidationResult validate(const ScenarioConfig& cfg, const RunOptions& opt) {
  require_right_angle(cfg, "validate");
  check_representation(cfg, opt.representation);
  const auto& vs = cfg.validate;
  const double h_pde = vs.helmholtz_h > 0.0 ? vs.helmholtz_h : 1e-3 / cfg.k;
  const double h_bc = vs.bc_h > 0.0 ? vs.bc_h : 1e-4 / cfg.k;
  const Representation primary = opt.representation == Representation::Edge ? Representation::Edge
                                                                               : Representation::Contour;

  // Seeded interior samples, clear of faces and zone boundaries.
  std::mt19937_64 gen(opt.seed);
  std::uniform_real_distribution<double> ur(1.0 / cfg.k, 10.0 / cfg.k), ut(0.1, cfg.wedge_angle - 0.1);
  std::vector<FieldPoint> pts;
  for (int tries = 0; static_cast<int>(pts.size()) < vs.samples && tries < 1000 * vs.samples; ++tries) {
    const FieldPoint p{ur(gen), ut(gen), 0.0};
    if (!near_boundary(evaluate(cfg, primary, p))) pts.push_back(p);
  }
  if (pts.empty()) throw NumericalError("no sample points clear of zone boundaries");
  const bool impedance = is_impedance(cfg);
  std::optional<SurfaceWaveStatus> sw;
  if (impedance) {
    sw = surface_wave_status(faces_of(cfg).theta1, faces_of(cfg).theta2);
    // One receiver inside each surface-wave region, if any.
    const double r = 2.0 / cfg.k;
    if (sw->face1_excited) pts.push_back({r, 0.5 * sw->region1.hi, 0.0});
    if (sw->face2_excited) pts.push_back({r, 0.5 * (sw->region2.lo + cfg.wedge_angle), 0.0});
  }

  ValidationResult out;
  out.table.header = {"check", "value", "threshold", "status"};
  auto record = [&](const std::string& name, double value, double threshold) {
    const bool ok = value <= threshold;  // NaN fails
    out.table.rows.push_back({name, value, threshold, std::string(ok ? "PASS" : "FAIL")});
    if (!ok) out.failures.push_back(name);
  };

  for (const auto rep : expand(opt.representation)) {
    const FieldEvaluator f = [&, rep](const FieldPoint& p) { return evaluate(cfg, rep, p).total(); };
    std::vector<double> res(pts.size());
    parallel_for(
        pts.size(), opt.threads,
        [&](std::size_t i) {
          res[i] = helmholtz_residual(f, std::span<const FieldPoint>(&pts[i], 1), cfg.k, h_pde, cfg.wedge_angle)
                       .max_helmholtz_residual;
        },
        [&](std::size_t i) { return "helmholtz at " + describe_point(pts[i]); });
    record("helmholtz[" + rep_name(rep) + "]", *std::max_element(res.begin(), res.end()), vs.helmholtz_tol);

    std::vector<double> radii;
    for (const auto& p : pts) radii.push_back(p.r);
    for (const Face face : {Face::First, Face::Second}) {
      const auto cond = FaceCondition::of(cfg.bc, face);
      const int idx = face == Face::First ? 0 : 1;
      std::vector<double> worst(radii.size());
      parallel_for(
          radii.size(), opt.threads,
          [&](std::size_t i) {
            worst[i] = boundary_residual(f, face, cond, cfg.k, h_bc, std::span<const double>(&radii[i], 1),
                                         cfg.wedge_angle)
                           .max_bc_residual[idx];
          },
          [&](std::size_t i) { return "face residual at r=" + std::to_string(radii[i]); });
      const double tol = cond.kind == FaceCondition::Kind::Dirichlet ? 1e-7 : 1e-5;
      record(std::string("bc_face") + (idx == 0 ? "1" : "2") + "[" + rep_name(rep) + "]",
             *std::max_element(worst.begin(), worst.end()), tol);
    }
  }

  if (contour_available(cfg)) {
    RunOptions both = opt;
    both.representation = Representation::Both;
    ScenarioConfig at = cfg;
    at.receivers = pts;
    const Table t = cross_check(at, both);
    double total = 0.0, extraction = 0.0;
    for (const auto& row : t.rows) {
      total = std::max(total, std::get<double>(row[6]));
      if (std::get<long long>(row[10]) == 1) extraction = std::max(extraction, std::get<double>(row[9]));
    }
    record("cross_representation", total, vs.cross_tol);
    if (sw && (sw->face1_excited || sw->face2_excited)) record("surface_wave_extraction", extraction, vs.cross_tol);
  }

  const double th = vs.far_field_theta ? *vs.far_field_theta : quiet_angle(cfg);
  const Complex d_closed = impedance ? far_field_coefficient(th, cfg.theta0, faces_of(cfg)).value
                                     : ideal_diffraction_coefficient(cfg.bc.kind, th, cfg.theta0);
  std::vector<double> krs = vs.far_field_kr;
  FarFieldEstimate est;
  try {
    est = far_field_extrapolation(
        [&](double kr) { return evaluate(cfg, primary, FieldPoint{kr / cfg.k, th, 0.0}).diffracted; }, krs);
  } catch (...) {
    rethrow_at("far-field extrapolation at theta=" + std::to_string(th), std::current_exception());
  }
  record("far_field_coefficient", std::abs(est.coefficient - d_closed), vs.far_field_tol);
  record("far_field_order", std::abs(est.observed_order - 1.0), 0.1);
  return out;
}

// ------------------------------------------------------------ output

std::string format_table(const Table& t) {
  std::string out;
  for (std::size_t i = 0; i < t.header.size(); ++i) out += (i ? "," : "") + t.header[i];
  out += '\n';
  char buf[40];
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      if (const double* d = std::get_if<double>(&row[i])) {
        std::snprintf(buf, sizeof buf, "%.16e", *d);
        out += buf;
      } else if (const long long* n = std::get_if<long long>(&row[i])) {
        out += std::to_string(*n);
      } else {
        out += std::get<std::string>(row[i]);
      }
    }
    out += '\n';
  }
  return out;
}

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string metadata_json(const std::string& command, const ScenarioConfig& cfg, const RunOptions& opt,
                          const Table& t) {
  char hash[32];
  std::snprintf(hash, sizeof hash, "%016" PRIx64, fnv1a64(cfg.canonical));
  json m;
  m["tool"] = "wedgediff";
  m["version"] = std::string(version());
  m["command"] = command;
  m["config_hash"] = std::string("fnv1a64:") + hash;
  m["representation"] = rep_name(opt.representation);
  m["seed"] = opt.seed;
  m["columns"] = t.header;
  m["rows"] = t.rows.size();
  return m.dump(2) + "\n";
}

// ------------------------------------------------------------ entry point

int run(int argc, char** argv) {
  CLI::App app{"Wedge diffraction engine: field maps, coefficients, kernels and validation"};
  app.set_version_flag("--version", std::string(version()));
  app.require_subcommand(1);

  std::string config_path, out_path, rep_text;
  unsigned threads = 1;
  std::uint64_t seed = 20140501;
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"field-map", "total field and its decomposition on a receiver grid"},
      {"diffraction-coeff", "far-field diffraction coefficient over an angle sweep"},
      {"directivity", "edge-source directivity kernel against eta"},
      {"validate", "residual, cross-representation and far-field checks"},
      {"cross-check", "contour against edge-source totals per receiver"},
  };
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config_path, "scenario JSON")->required();
    sub->add_option("--out", out_path, "output table (stdout if omitted); writes <out>.meta.json too");
    sub->add_option("--representation", rep_text, "edge | contour | both")
        ->check(CLI::IsMember({"edge", "contour", "both"}));
    sub->add_option("--threads", threads, "worker threads")->check(CLI::Range(1u, 1024u));
    sub->add_option("--seed", seed, "seed for randomized validation samples");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  try {
    const ScenarioConfig cfg = load_config(config_path);
    RunOptions opt;
    opt.threads = threads;
    opt.seed = seed;
    if (!rep_text.empty()) {
      opt.representation = parse_representation(rep_text);
    } else {
      opt.representation = contour_available(cfg) ? Representation::Contour : Representation::Edge;
    }

    Table table;
    std::vector<std::string> failures;
    if (command == "field-map") table = field_map(cfg, opt);
    else if (command == "diffraction-coeff") table = diffraction_coeff(cfg, opt);
    else if (command == "directivity") table = directivity(cfg, opt);
    else if (command == "cross-check") table = cross_check(cfg, opt);
    else {
      auto v = validate(cfg, opt);
      table = std::move(v.table);
      failures = std::move(v.failures);
    }

    const std::string text = format_table(table);
    if (out_path.empty()) {
      std::cout << text;
    } else {
      std::ofstream(out_path, std::ios::binary) << text;
      std::ofstream(out_path + ".meta.json", std::ios::binary) << metadata_json(command, cfg, opt, table);
    }
    if (!failures.empty()) {
      for (const auto& f : failures) std::cerr << "validation failed: " << f << "\n";
      return kExitValidation;
    }
    return kExitOk;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
}

}  // namespace wedge::cli
