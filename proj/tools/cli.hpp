#pragma once

// wedgediff: scenario configs in, delimited tables plus a metadata sidecar out.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "wedge/geometry.hpp"
#include "wedge/quadrature.hpp"

namespace wedge::cli {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

std::string_view version();

/// Bad or inconsistent configuration (exit 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A numerical failure tied to one receiver or parameter set (exit 3).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Representation { Edge, Contour, Both };
Representation parse_representation(const std::string& s);

struct DirectivitySpec {
  double theta = 1.0;
  std::vector<double> eta;
};

struct ValidateSpec {
  int samples = 6;
  double helmholtz_h = 0.0;  // 0: 1e-3 / k
  double bc_h = 0.0;         // 0: 1e-4 / k
  double helmholtz_tol = 1e-5;
  double cross_tol = 1e-6;
  std::vector<double> far_field_kr{50, 100, 200, 400};
  std::optional<double> far_field_theta;
  double far_field_tol = 1e-5;
};

struct ScenarioConfig {
  double wedge_angle = 1.5 * kPi;
  BoundaryConditionPair bc = BoundaryConditionPair::dirichlet();
  ComplexAngle theta0{kPi / 4, 0.0};
  double k = 1.0;
  std::vector<FieldPoint> receivers;
  /// Angles of the receiver grid, for angular sweeps.
  std::vector<double> thetas;
  QuadratureConfig quadrature;
  DirectivitySpec directivity;
  ValidateSpec validate;
  /// Negative control: flips the image-term sign of an ideal kernel (soft and hard swap on face 1).
  bool corrupt_kernel_sign = false;
  /// Canonical serialisation the hash is taken over.
  std::string canonical;

  bool right_angled() const;
};

ScenarioConfig parse_config(const nlohmann::json& j);
ScenarioConfig load_config(const std::string& path);

struct RunOptions {
  Representation representation = Representation::Contour;
  unsigned threads = 1;
  std::uint64_t seed = 20140501;
};

using Cell = std::variant<double, long long, std::string>;

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;
};

Table field_map(const ScenarioConfig& cfg, const RunOptions& opt);
Table diffraction_coeff(const ScenarioConfig& cfg, const RunOptions& opt);
Table directivity(const ScenarioConfig& cfg, const RunOptions& opt);
Table cross_check(const ScenarioConfig& cfg, const RunOptions& opt);

struct ValidationResult {
  Table table;
  std::vector<std::string> failures;
  bool passed() const { return failures.empty(); }
};

ValidationResult validate(const ScenarioConfig& cfg, const RunOptions& opt);

/// Comma-separated, header row first; doubles as %.16e.
std::string format_table(const Table& t);

std::uint64_t fnv1a64(std::string_view data);

std::string metadata_json(const std::string& command, const ScenarioConfig& cfg, const RunOptions& opt,
                          const Table& t);

/// Entry point behind main(); returns the process exit status.
int run(int argc, char** argv);

}  // namespace wedge::cli
