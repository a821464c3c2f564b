#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include "cli.hpp"
#include "wedge/impedance.hpp"

using namespace wedge;
using namespace wedge::cli;
using nlohmann::json;

namespace {

json base(json boundary, double theta0) {
  return json{{"wedge", "right"}, {"boundary", boundary}, {"incidence", {{"theta0", theta0}, {"k", 1.0}}}};
}

json grid(double rmin, double rmax, int nr, double tmin, double tmax, int nt) {
  return json{{"r", {{"min", rmin}, {"max", rmax}, {"count", nr}}},
              {"theta", {{"min", tmin}, {"max", tmax}, {"count", nt}}}};
}

double num(const Cell& c) {
  if (const double* d = std::get_if<double>(&c)) return *d;
  return static_cast<double>(std::get<long long>(c));
}

std::size_t column(const Table& t, const std::string& name) {
  const auto it = std::find(t.header.begin(), t.header.end(), name);
  REQUIRE_MESSAGE(it != t.header.end(), name);
  return static_cast<std::size_t>(it - t.header.begin());
}

double column_max(const Table& t, const std::string& name) {
  const std::size_t c = column(t, name);
  double m = 0.0;
  for (const auto& row : t.rows) m = std::max(m, num(row[c]));
  return m;
}

RunOptions with(Representation r, unsigned threads = 1) {
  RunOptions o;
  o.representation = r;
  o.threads = threads;
  return o;
}

}  // namespace

TEST_CASE("config parsing") {
  SUBCASE("complex pairs and grids round-trip exactly") {
    json j = base({{"kind", "impedance"}, {"mu1", {0.1, -0.3}}, {"mu2", 0.7}}, 1.1);
    j["receivers"] = grid(1.0, 3.0, 3, 0.5, 1.5, 2);
    const auto c = parse_config(j);
    REQUIRE(c.bc.impedance);
    CHECK(c.bc.impedance->mu1 == Complex(0.1, -0.3));
    CHECK(c.bc.impedance->mu2 == Complex(0.7, 0.0));
    CHECK(c.theta0.re == 1.1);
    CHECK(c.receivers.size() == 6);
    CHECK(c.thetas == std::vector<double>{0.5, 1.5});
    CHECK(c.right_angled());
  }
  SUBCASE("receiver lists") {
    json j = base("dirichlet", 0.5);
    j["receivers"] = {{"list", {{1.0, 0.2}, {2.0, 4.0}}}};
    const auto c = parse_config(j);
    CHECK(c.receivers.size() == 2);
    CHECK(c.receivers[1].theta == 4.0);
  }
  SUBCASE("rejections") {
    CHECK_THROWS_AS(parse_config(json::array()), ConfigError);
    CHECK_THROWS_AS(parse_config(base("rubber", 0.5)), ConfigError);
    CHECK_THROWS_AS(parse_config(base({{"kind", "impedance"}, {"mu1", {-0.5, 0.0}}, {"mu2", 0.2}}, 1.0)),
                    ConfigError);
    CHECK_THROWS_AS(parse_config(base({{"kind", "impedance"}, {"mu1", 0.5}}, 1.0)), ConfigError);
    CHECK_THROWS_AS(parse_config(base("dirichlet", 5.0)), ConfigError);
    json j = base("dirichlet", 0.5);
    j["incidence"]["k"] = -1.0;
    CHECK_THROWS_AS(parse_config(j), ConfigError);
    j = base("dirichlet", 0.5);
    j["receivers"] = grid(1.0, 2.0, 0, 0.1, 0.2, 2);
    CHECK_THROWS_AS(parse_config(j), ConfigError);
    j = base("dirichlet", 0.5);
    j["receivers"] = grid(1.0, 2.0, 2, 0.1, 5.0, 2);
    CHECK_THROWS_AS(parse_config(j), ConfigError);
    j = base("dirichlet", 0.5);
    j["quadrature"] = {{"max_nodes", 10}};
    CHECK_THROWS_AS(parse_config(j), ConfigError);
    j = base({{"kind", "impedance"}, {"mu1", 0.3}, {"mu2", 0.3}}, 1.0);
    j["test_hooks"] = {{"corrupt_kernel_sign", true}};
    CHECK_THROWS_AS(parse_config(j), ConfigError);
    j = base({{"kind", "impedance"}, {"mu1", 0.3}, {"mu2", 0.3}}, 1.0);
    j["wedge"] = 5.0;
    CHECK_THROWS_AS(parse_config(j), ConfigError);
  }
  SUBCASE("representation names") {
    CHECK(parse_representation("both") == Representation::Both);
    CHECK_THROWS_AS(parse_representation("mesh"), ConfigError);
  }
}

TEST_CASE("table formatting keeps 17 significant digits") {
  Table t{{"a", "b", "c"}, {{0.1, 3LL, std::string("x")}, {-1.0 / 3.0, 0LL, std::string("y")}}};
  const std::string s = format_table(t);
  CHECK(s.rfind("a,b,c\n1.0000000000000001e-01,3,x\n", 0) == 0);
  std::istringstream in(s);
  std::string line;
  std::getline(in, line);
  std::getline(in, line);
  std::getline(in, line);
  CHECK(std::strtod(line.c_str(), nullptr) == -1.0 / 3.0);
}

TEST_CASE("metadata hash follows the config") {
  const auto a = parse_config(base("dirichlet", 0.5));
  const auto b = parse_config(base("dirichlet", 0.6));
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
  const Table t{{"x"}, {}};
  const auto ma = json::parse(metadata_json("field-map", a, RunOptions{}, t));
  const auto mb = json::parse(metadata_json("field-map", b, RunOptions{}, t));
  CHECK(ma["config_hash"] != mb["config_hash"]);
  CHECK(ma["version"] == std::string(version()));
  CHECK(ma["columns"] == json::array({"x"}));
}

TEST_CASE("rigid wedge field map out to kr = 20") {
  json j = base("neumann", kPi / 4);
  j["receivers"] = grid(0.5, 20.0, 12, 0.0, 1.5 * kPi, 25);
  const auto cfg = parse_config(j);
  const Table t = field_map(cfg, with(Representation::Contour, 4));
  REQUIRE(t.rows.size() == 300);
  for (const auto& row : t.rows) {
    for (const auto& cell : row) CHECK(std::isfinite(num(cell)));
  }
  // Grid order: radius fastest, angle slowest, both non-decreasing.
  for (std::size_t i = 1; i < t.rows.size(); ++i) {
    const double th0 = num(t.rows[i - 1][1]), th1 = num(t.rows[i][1]);
    CHECK(th1 >= th0);
    if (th1 == th0) CHECK(num(t.rows[i][0]) > num(t.rows[i - 1][0]));
  }
  CHECK(format_table(t) == format_table(field_map(cfg, with(Representation::Contour, 1))));
}

TEST_CASE("impedance map in both representations agrees") {
  for (const json& b : {json{{"kind", "impedance"}, {"mu1", {0.5, -0.2}}, {"mu2", 0.3}},
                        json{{"kind", "impedance"}, {"mu1", {0.0, -0.8}}, {"mu2", {0.1, -0.7}}}}) {
    json j = base(b, 1.0);
    j["receivers"] = grid(0.3, 8.0, 5, 0.02, 4.69, 13);
    const Table t = field_map(parse_config(j), with(Representation::Both, 4));
    CHECK(column_max(t, "abs_total_diff") < 1e-6);
  }
}

TEST_CASE("mixed wedges only have the edge form") {
  json j = base("neumann-dirichlet", 0.7);
  j["receivers"] = grid(1.0, 2.0, 2, 0.3, 3.0, 3);
  const auto cfg = parse_config(j);
  CHECK_THROWS_AS(field_map(cfg, with(Representation::Both)), ConfigError);
  CHECK(field_map(cfg, with(Representation::Edge)).rows.size() == 6);
  CHECK_THROWS_AS(cross_check(cfg, with(Representation::Both)), ConfigError);
}

TEST_CASE("near-boundary column follows the gate arguments") {
  const double t0 = 1.0;
  json j = base("dirichlet", t0);
  // Shadow boundary at pi + t0, reflection boundary at pi - t0.
  j["receivers"] = {{"list", {{2.0, kPi + t0 + 0.01}, {2.0, kPi - t0 - 0.03}, {2.0, kPi + t0 + 0.2}, {2.0, 0.9}}}};
  const Table t = field_map(parse_config(j), with(Representation::Contour));
  const std::size_t c = column(t, "near_boundary");
  CHECK(num(t.rows[0][c]) == 1);
  CHECK(num(t.rows[1][c]) == 1);
  CHECK(num(t.rows[2][c]) == 0);
  CHECK(num(t.rows[3][c]) == 0);
}

TEST_CASE("diffraction coefficient tables") {
  SUBCASE("Neumann limit matches the ideal coefficient") {
    json ji = base({{"kind", "impedance"}, {"mu1", 0.0}, {"mu2", 0.0}}, 0.9);
    json jn = base("neumann", 0.9);
    ji["receivers"] = jn["receivers"] = grid(1.0, 1.0, 1, 0.0, 1.5 * kPi, 37);
    const Table a = diffraction_coeff(parse_config(ji), with(Representation::Contour));
    const Table b = diffraction_coeff(parse_config(jn), with(Representation::Contour));
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
      const Complex da(num(a.rows[i][1]), num(a.rows[i][2])), db(num(b.rows[i][1]), num(b.rows[i][2]));
      if (!std::isfinite(std::abs(db))) continue;
      CHECK(std::abs(da - db) < 1e-9 * std::max(1.0, std::abs(db)));
    }
  }
  SUBCASE("equal faces are mirror symmetric") {
    const double t0 = 0.8;
    json a = base({{"kind", "impedance"}, {"mu1", {0.4, -0.3}}, {"mu2", {0.4, -0.3}}}, t0);
    json b = base({{"kind", "impedance"}, {"mu1", {0.4, -0.3}}, {"mu2", {0.4, -0.3}}}, 1.5 * kPi - t0);
    std::vector<double> th, mirrored;
    for (int i = 0; i < 11; ++i) {
      th.push_back(0.2 + 0.4 * i);
      mirrored.push_back(1.5 * kPi - th.back());
    }
    a["receivers"] = {{"r", 1.0}, {"theta", th}};
    b["receivers"] = {{"r", 1.0}, {"theta", mirrored}};
    const Table ta = diffraction_coeff(parse_config(a), with(Representation::Contour));
    const Table tb = diffraction_coeff(parse_config(b), with(Representation::Contour));
    for (std::size_t i = 0; i < th.size(); ++i) {
      CHECK(num(ta.rows[i][3]) == doctest::Approx(num(tb.rows[i][3])).epsilon(1e-10));
      CHECK(num(ta.rows[i][1]) == doctest::Approx(num(tb.rows[i][1])).epsilon(1e-10));
    }
  }
  SUBCASE("zone boundaries carry the warning flag") {
    const double t0 = 1.0;
    json j = base({{"kind", "impedance"}, {"mu1", 0.5}, {"mu2", 0.3}}, t0);
    j["receivers"] = {{"r", 1.0}, {"theta", {kPi - t0 + 0.01, kPi + t0 - 0.02, 0.5, 3.0}}};
    const Table t = diffraction_coeff(parse_config(j), with(Representation::Contour));
    CHECK(num(t.rows[0][4]) == 1);
    CHECK(num(t.rows[1][4]) == 1);
    CHECK(num(t.rows[2][4]) == 0);
    CHECK(num(t.rows[3][4]) == 0);
    json s = base("dirichlet", t0);
    s["receivers"] = {{"r", 1.0}, {"theta", {kPi + t0}}};
    const Table ts = diffraction_coeff(parse_config(s), with(Representation::Contour));
    CHECK(num(ts.rows[0][4]) == 1);
    // On the boundary the kernel keeps only its finite part; the flag carries the warning.
    CHECK(std::isfinite(num(ts.rows[0][3])));
  }
}

TEST_CASE("directivity on a general wedge") {
  json j = base("dirichlet", 1.2);
  j["wedge"] = 5.0;
  j["directivity"] = {{"theta", 3.0}, {"eta", {{"min", 0.0}, {"max", 4.0}, {"count", 9}}}};
  const auto cfg = parse_config(j);
  const Table t = directivity(cfg, with(Representation::Edge));
  REQUIRE(t.rows.size() == 9);
  // Ideal kernels are real and fall off along eta.
  CHECK(num(t.rows[0][2]) == 0.0);
  CHECK(num(t.rows[8][3]) < num(t.rows[0][3]));
  json bad = j;
  bad["receivers"] = grid(1.0, 2.0, 2, 0.5, 1.0, 2);
  CHECK_THROWS_AS(field_map(parse_config(bad), with(Representation::Contour)), ConfigError);
}

TEST_CASE("validate suites") {
  SUBCASE("default suite on a rigid wedge passes") {
    json j = base("neumann", kPi / 4);
    j["validate"] = {{"samples", 3}};
    const auto v = validate(parse_config(j), with(Representation::Both));
    CHECK(v.passed());
    CHECK(v.table.rows.size() == 9);
  }
  SUBCASE("surface-wave scenario passes including extraction") {
    json j = base({{"kind", "impedance"}, {"mu1", {0.0, -0.8}}, {"mu2", {0.1, -0.7}}}, 1.0);
    j["validate"] = {{"samples", 3}};
    const auto v = validate(parse_config(j), with(Representation::Both));
    CHECK(v.passed());
    bool found = false;
    for (const auto& row : v.table.rows) found = found || std::get<std::string>(row[0]) == "surface_wave_extraction";
    CHECK(found);
  }
  SUBCASE("corrupted kernel sign fails on the face residual") {
    json j = base("dirichlet", 0.9);
    j["validate"] = {{"samples", 3}};
    j["test_hooks"] = {{"corrupt_kernel_sign", true}};
    const auto v = validate(parse_config(j), with(Representation::Contour));
    REQUIRE_FALSE(v.passed());
    CHECK(std::find(v.failures.begin(), v.failures.end(), "bc_face1[contour]") != v.failures.end());
  }
}

TEST_CASE("numerical failures name the receiver") {
  json j = base({{"kind", "impedance"}, {"mu1", {0.5, -0.2}}, {"mu2", 0.3}}, 1.0);
  j["quadrature"] = {{"max_nodes", 64}};
  j["receivers"] = {{"list", {{3.0, 2.0}}}};
  try {
    field_map(parse_config(j), with(Representation::Contour));
    FAIL("expected a numerical failure");
  } catch (const NumericalError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("r=3") != std::string::npos);
    CHECK(msg.find("converged=no") != std::string::npos);
  }
}
