#include "cclab/report.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include <json.hpp>

namespace cclab {

namespace {

using nlohmann::json;

const std::set<std::string>& known_checks() {
  static const std::set<std::string> checks = {"A1",  "A2",  "A3",   "A4",        "A5",
                                               "B1",  "COR", "HESS", "IDENTITIES"};
  return checks;
}

[[noreturn]] void schema_error(const std::string& field, const std::string& why) {
  throw ConfigError("config field \"" + field + "\": " + why);
}

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                         const std::string& where) {
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.count(key)) {
      schema_error(where.empty() ? key : where + "." + key, "unknown field");
    }
  }
}

double require_number(const json& j, const std::string& field) {
  if (!j.is_number()) schema_error(field, "expected a number");
  return j.get<double>();
}

int require_int(const json& j, const std::string& field) {
  if (!j.is_number_integer()) schema_error(field, "expected an integer");
  return j.get<int>();
}

HSpec parse_h(const json& j, const std::string& where) {
  if (!j.is_object()) schema_error(where, "expected an object with a \"kind\" field");
  if (!j.contains("kind") || !j["kind"].is_string()) schema_error(where + ".kind", "required string");
  const std::string kind = j["kind"].get<std::string>();
  HSpec h;
  if (kind == "zero") {
    reject_unknown_keys(j, {"kind"}, where);
    h.kind = HSpec::Kind::zero;
  } else if (kind == "umbilical") {
    reject_unknown_keys(j, {"kind", "lambda"}, where);
    if (!j.contains("lambda") || !j["lambda"].is_array()) {
      schema_error(where + ".lambda", "required array of reals");
    }
    h.kind = HSpec::Kind::umbilical;
    for (const auto& v : j["lambda"]) h.lambda.push_back(require_number(v, where + ".lambda"));
  } else if (kind == "quasi_umbilical") {
    reject_unknown_keys(j, {"kind", "u", "r"}, where);
    if (!j.contains("u") || !j.contains("r")) schema_error(where, "requires \"u\" and \"r\"");
    h.kind = HSpec::Kind::quasi_umbilical;
    h.u = require_number(j["u"], where + ".u");
    h.r = require_number(j["r"], where + ".r");
    if (!(h.r > 0)) schema_error(where + ".r", "must be positive");
  } else if (kind == "explicit") {
    reject_unknown_keys(j, {"kind", "values"}, where);
    if (!j.contains("values") || !j["values"].is_array()) {
      schema_error(where + ".values", "required array of matrices");
    }
    h.kind = HSpec::Kind::explicit_values;
    for (const auto& mat : j["values"]) {
      if (!mat.is_array() || mat.empty()) schema_error(where + ".values", "expected nested arrays");
      const int rows = static_cast<int>(mat.size());
      Matrix component(rows, rows);
      for (int i = 0; i < rows; ++i) {
        if (!mat[i].is_array() || static_cast<int>(mat[i].size()) != rows) {
          schema_error(where + ".values", "components must be square");
        }
        for (int jj = 0; jj < rows; ++jj) {
          component(i, jj) = require_number(mat[i][jj], where + ".values");
        }
      }
      h.values.push_back(std::move(component));
    }
  } else if (kind == "random") {
    reject_unknown_keys(j, {"kind", "scale"}, where);
    h.kind = HSpec::Kind::random;
    h.scale = j.contains("scale") ? require_number(j["scale"], where + ".scale") : 1.0;
  } else {
    schema_error(where + ".kind", "unknown h kind \"" + kind + "\"");
  }
  return h;
}

MSpec parse_M(const json& j, const std::string& where) {
  if (!j.is_object()) schema_error(where, "expected an object with a \"kind\" field");
  if (!j.contains("kind") || !j["kind"].is_string()) schema_error(where + ".kind", "required string");
  const std::string kind = j["kind"].get<std::string>();
  MSpec M;
  if (kind == "zero") {
    reject_unknown_keys(j, {"kind"}, where);
    M.kind = MSpec::Kind::zero;
  } else if (kind == "scaled_identity") {
    reject_unknown_keys(j, {"kind", "s"}, where);
    if (!j.contains("s")) schema_error(where + ".s", "required real");
    M.kind = MSpec::Kind::scaled_identity;
    M.s = require_number(j["s"], where + ".s");
  } else if (kind == "explicit") {
    reject_unknown_keys(j, {"kind", "values"}, where);
    if (!j.contains("values") || !j["values"].is_array()) {
      schema_error(where + ".values", "required matrix");
    }
    M.kind = MSpec::Kind::explicit_values;
    const auto& mat = j["values"];
    const int rows = static_cast<int>(mat.size());
    M.values.resize(rows, rows);
    for (int i = 0; i < rows; ++i) {
      if (!mat[i].is_array() || static_cast<int>(mat[i].size()) != rows) {
        schema_error(where + ".values", "must be square");
      }
      for (int jj = 0; jj < rows; ++jj) {
        M.values(i, jj) = require_number(mat[i][jj], where + ".values");
      }
    }
  } else if (kind == "random") {
    reject_unknown_keys(j, {"kind", "scale"}, where);
    M.kind = MSpec::Kind::random;
    M.scale = j.contains("scale") ? require_number(j["scale"], where + ".scale") : 0.3;
  } else {
    schema_error(where + ".kind", "unknown M kind \"" + kind + "\"");
  }
  return M;
}

ScenarioSpec parse_scenario(const json& j, int index) {
  const std::string where = "scenarios[" + std::to_string(index) + "]";
  if (j.is_string()) {
    ScenarioSpec s = fixture_spec(j.get<std::string>());
    s.kind = ScenarioSpec::Kind::fixture;
    s.fixture_name = j.get<std::string>();
    return s;
  }
  if (!j.is_object()) schema_error(where, "expected a fixture name or an object");

  reject_unknown_keys(j, {"id", "kind", "n", "m", "c", "h", "M", "seed"}, where);
  for (const char* field : {"kind", "n", "m", "c", "h", "M"}) {
    if (!j.contains(field)) schema_error(where + "." + field, "required");
  }

  ScenarioSpec s;
  const std::string kind = j["kind"].is_string() ? j["kind"].get<std::string>() : "";
  if (kind == "invariant") {
    s.kind = ScenarioSpec::Kind::invariant;
  } else if (kind == "anti_invariant") {
    s.kind = ScenarioSpec::Kind::anti_invariant;
  } else if (kind == "random") {
    s.kind = ScenarioSpec::Kind::random;
  } else {
    schema_error(where + ".kind", "must be invariant, anti_invariant, or random");
  }

  s.n = require_int(j["n"], where + ".n");
  if (s.n < 2) schema_error(where + ".n", "must be >= 2");
  s.m = require_int(j["m"], where + ".m");
  if (s.m < 1) schema_error(where + ".m", "must be >= 1");
  s.c = require_number(j["c"], where + ".c");
  s.h = parse_h(j["h"], where + ".h");
  s.M = parse_M(j["M"], where + ".M");

  const bool needs_seed = s.kind == ScenarioSpec::Kind::random ||
                          s.h.kind == HSpec::Kind::random || s.M.kind == MSpec::Kind::random;
  if (j.contains("seed")) {
    if (!j["seed"].is_number_integer()) schema_error(where + ".seed", "expected an integer");
    s.seed = j["seed"].get<std::uint64_t>();
  } else if (needs_seed) {
    schema_error(where + ".seed", "required for random scenarios");
  }
  s.id = j.contains("id") && j["id"].is_string() ? j["id"].get<std::string>()
                                                 : "scenario" + std::to_string(index);
  // ids become CSV/JSON fields verbatim; keep them to a safe alphabet
  for (char ch : s.id) {
    if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '_' && ch != '-' && ch != '.') {
      schema_error(where + ".id", "must contain only [A-Za-z0-9_.-]");
    }
  }
  if (s.id.empty()) schema_error(where + ".id", "must be non-empty");
  return s;
}

}  // namespace

RunConfig parse_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config file '" + path + "'");
  }
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config parse error: " + std::string(e.what()));
  }
  if (!j.is_object()) {
    throw ConfigError("config root must be an object");
  }
  reject_unknown_keys(j, {"scenarios", "checks", "r_grid", "samples", "seed", "flip_rhs_sign"},
                      "");

  RunConfig cfg;
  if (!j.contains("scenarios") || !j["scenarios"].is_array() || j["scenarios"].empty()) {
    schema_error("scenarios", "required non-empty array");
  }
  int index = 0;
  for (const auto& sj : j["scenarios"]) {
    cfg.scenarios.push_back(parse_scenario(sj, index++));
  }

  if (!j.contains("checks") || !j["checks"].is_array() || j["checks"].empty()) {
    schema_error("checks", "required non-empty array");
  }
  for (const auto& cj : j["checks"]) {
    if (!cj.is_string() || !known_checks().count(cj.get<std::string>())) {
      schema_error("checks", "entries must be one of A1 A2 A3 A4 A5 B1 COR HESS IDENTITIES");
    }
    cfg.checks.push_back(cj.get<std::string>());
  }

  const bool needs_r = std::any_of(cfg.checks.begin(), cfg.checks.end(), [](const std::string& c) {
    return c == "B1" || c == "HESS";
  });
  if (j.contains("r_grid")) {
    if (!j["r_grid"].is_array()) schema_error("r_grid", "expected an array of positive reals");
    for (const auto& rj : j["r_grid"]) {
      const double r = require_number(rj, "r_grid");
      if (!(r > 0)) schema_error("r_grid", "entries must be positive");
      cfg.r_grid.push_back(r);
    }
  }
  if (needs_r && cfg.r_grid.empty()) {
    schema_error("r_grid", "required non-empty when checks include B1 or HESS");
  }

  if (j.contains("samples")) {
    const auto& sj = j["samples"];
    if (!sj.is_object()) schema_error("samples", "expected an object");
    reject_unknown_keys(sj, {"x", "planes"}, "samples");
    if (sj.contains("x")) {
      cfg.samples.x = require_int(sj["x"], "samples.x");
      if (cfg.samples.x < 0) schema_error("samples.x", "must be >= 0");
    }
    if (sj.contains("planes")) {
      cfg.samples.planes = require_int(sj["planes"], "samples.planes");
      if (cfg.samples.planes < 0) schema_error("samples.planes", "must be >= 0");
    }
  }

  if (j.contains("seed")) {
    if (!j["seed"].is_number_integer()) schema_error("seed", "expected an integer");
    cfg.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("flip_rhs_sign")) {
    if (!j["flip_rhs_sign"].is_boolean()) schema_error("flip_rhs_sign", "expected a boolean");
    cfg.flip_rhs_sign = j["flip_rhs_sign"].get<bool>();
  }
  return cfg;
}

namespace {

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  std::uint64_t x = a + 0x9e3779b97f4a7c15ull + (b << 6) + (b >> 2);
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ull;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebull;
  x ^= x >> 31;
  return x;
}

std::uint64_t check_salt(const std::string& check) {
  std::uint64_t h = 1469598103934665603ull;
  for (char ch : check) {
    h ^= static_cast<unsigned char>(ch);
    h *= 1099511628211ull;
  }
  return h;
}

ReportRow row_from(const std::string& scenario_id, const std::string& subcase,
                   const InequalityReport& r, std::uint64_t seed, bool flip) {
  ReportRow row;
  row.scenario_id = scenario_id;
  row.check = r.name;
  row.subcase = subcase;
  row.lhs = r.lhs;
  row.rhs_canonical = flip ? -r.rhs_canonical : r.rhs_canonical;
  row.rhs_variant = r.rhs_variant;
  row.slack = (r.bound == BoundKind::upper) ? row.rhs_canonical - row.lhs
                                            : row.lhs - row.rhs_canonical;
  const double scale = std::max({std::abs(row.lhs), std::abs(row.rhs_canonical), 1.0});
  row.holds = row.slack >= -1e-8 * scale;
  row.equality = std::abs(row.slack) <= 1e-8 * scale;
  row.equality_case = to_string(r.equality_case);
  row.seed = seed;
  return row;
}

ReportRow identity_row(const std::string& scenario_id, const std::string& subcase, double lhs,
                       double rhs, double tol, std::uint64_t seed, bool flip) {
  ReportRow row;
  row.scenario_id = scenario_id;
  row.check = "IDENTITIES";
  row.subcase = subcase;
  row.lhs = lhs;
  row.rhs_canonical = flip ? -rhs : rhs;
  row.slack = row.rhs_canonical - row.lhs;
  const double scale = std::max({std::abs(lhs), std::abs(row.rhs_canonical), 1.0});
  row.holds = std::abs(row.slack) <= tol * scale;
  row.equality = row.holds;
  row.seed = seed;
  return row;
}

Vector random_unit_vector(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector u(n);
  double norm = 0.0;
  while (norm < 1e-8) {
    for (int i = 0; i < n; ++i) u[i] = gauss(rng);
    norm = u.norm();
  }
  return u / norm;
}

Matrix random_plane(std::mt19937_64& rng, int n) {
  Matrix X(n, 2);
  while (true) {
    X.col(0) = random_unit_vector(rng, n);
    Vector w = random_unit_vector(rng, n);
    w -= w.dot(X.col(0)) * X.col(0);
    if (w.norm() > 1e-8) {
      X.col(1) = w.normalized();
      return X;
    }
  }
}

std::string pad3(int v) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%03d", v);
  return buf;
}

std::string format_r(double r) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "r=%g", r);
  return buf;
}

}  // namespace

std::vector<ReportRow> run_suite(const RunConfig& config) {
  std::vector<ReportRow> rows;
  const bool flip = config.flip_rhs_sign;

  for (const ScenarioSpec& spec : config.scenarios) {
    const SubmanifoldPoint point = make_point(spec);
    const std::string& sid = spec.id;
    const std::uint64_t base = mix_seed(config.seed, spec.seed);

    for (const std::string& check : config.checks) {
      const std::uint64_t seed = mix_seed(base, check_salt(check));
      std::mt19937_64 rng(seed);

      if (check == "A1") {
        rows.push_back(row_from(sid, "", check_A1(point), spec.seed, flip));
      } else if (check == "A2") {
        Vector e1 = Vector::Unit(point.n, 0);
        rows.push_back(row_from(sid, "X_e1", check_A2(point, e1), spec.seed, flip));
        for (int s = 0; s < config.samples.x; ++s) {
          const Vector x = random_unit_vector(rng, point.n);
          rows.push_back(row_from(sid, "X_" + pad3(s), check_A2(point, x), spec.seed, flip));
        }
      } else if (check == "A3") {
        if (point.n >= 3) {
          for (int i = 0; i < point.n; ++i) {
            for (int j = i + 1; j < point.n; ++j) {
              Matrix plane(point.n, 2);
              plane.col(0) = Vector::Unit(point.n, i);
              plane.col(1) = Vector::Unit(point.n, j);
              rows.push_back(row_from(sid, "plane_" + std::to_string(i) + "_" + std::to_string(j),
                                      check_A3(point, plane), spec.seed, flip));
            }
          }
          for (int s = 0; s < config.samples.planes; ++s) {
            rows.push_back(row_from(sid, "plane_" + pad3(s),
                                    check_A3(point, random_plane(rng, point.n)), spec.seed, flip));
          }
        }
      } else if (check == "A4") {
        if (point.ambient.c > 0 && point.n >= 3) {
          rows.push_back(row_from(sid, "argmin", check_A4(point, seed), spec.seed, flip));
        }
      } else if (check == "A5") {
        if (point.ambient.c < 0 && point.n >= 3) {
          rows.push_back(row_from(sid, "argmin", check_A5(point, seed), spec.seed, flip));
        }
      } else if (check == "B1") {
        if (point.n >= 3) {
          for (double r : config.r_grid) {
            rows.push_back(row_from(sid, format_r(r), check_B1(point, r, seed), spec.seed, flip));
          }
        }
      } else if (check == "COR") {
        if (point.n >= 3) {
          const auto [lo, hi] = check_corollary_11(point, seed);
          rows.push_back(row_from(sid, "deltaC", lo, spec.seed, flip));
          rows.push_back(row_from(sid, "deltaC_hat", hi, spec.seed, flip));
        }
      } else if (check == "HESS") {
        for (double r : config.r_grid) {
          const HessianSpectrum hs = hessian_spectrum(point.n, r);
          const double scale = std::max(1.0, std::abs(hs.eigenvalues.back()));
          for (int i = 0; i < hs.n; ++i) {
            ReportRow row;
            row.scenario_id = sid;
            row.check = "HESS";
            row.subcase = format_r(r) + "_lambda_" + pad3(i);
            row.lhs = hs.eigenvalues[i];
            row.rhs_canonical = flip ? -hs.paper_eigenvalues[i] : hs.paper_eigenvalues[i];
            row.slack = row.rhs_canonical - row.lhs;
            row.holds = hs.psd && hs.zero_multiplicity == 1 &&
                        std::abs(row.slack) <= 1e-9 * scale;
            row.equality = row.holds;
            row.seed = spec.seed;
            rows.push_back(row);
          }
        }
      } else if (check == "IDENTITIES") {
        const CurvatureSummary cs = curvature_summary(point);
        const MeanCurvature mc = mean_curvature(point);
        double h2 = 0.0;
        for (const Matrix& ha : point.h) h2 += ha.squaredNorm();
        const double n = point.n;
        rows.push_back(identity_row(sid, "eq_master", 2.0 * cs.tau,
                                    cs.tau_dprime + n * n * mc.norm2 - h2, 1e-9, spec.seed, flip));
        rows.push_back(identity_row(sid, "tau_prime", cs.tau_prime, tau_prime_contracted(point),
                                    1e-9, spec.seed, flip));
        double trace_S = 0.0;
        for (int i = 0; i < point.n; ++i) trace_S += S_dprime(point, i, i);
        rows.push_back(
            identity_row(sid, "tau_dprime_trace", cs.tau_dprime, trace_S, 1e-10, spec.seed, flip));
      }
    }
  }

  std::sort(rows.begin(), rows.end(), [](const ReportRow& a, const ReportRow& b) {
    return std::tie(a.scenario_id, a.check, a.subcase) < std::tie(b.scenario_id, b.check, b.subcase);
  });
  return rows;
}

bool all_hold(const std::vector<ReportRow>& rows) {
  return std::all_of(rows.begin(), rows.end(), [](const ReportRow& r) { return r.holds; });
}

namespace {

std::string real17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

void emit_csv(const std::vector<ReportRow>& rows, std::ostream& out) {
  out << "scenario_id,check,subcase,lhs,rhs_canonical,rhs_variant,slack,holds,equality,"
         "equality_case,seed\n";
  for (const ReportRow& r : rows) {
    out << r.scenario_id << ',' << r.check << ',' << r.subcase << ',' << real17(r.lhs) << ','
        << real17(r.rhs_canonical) << ',' << (r.rhs_variant ? real17(*r.rhs_variant) : "") << ','
        << real17(r.slack) << ',' << (r.holds ? "true" : "false") << ','
        << (r.equality ? "true" : "false") << ',' << r.equality_case << ',' << r.seed << '\n';
  }
}

void emit_json(const std::vector<ReportRow>& rows, std::ostream& out) {
  out << "[\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const ReportRow& r = rows[i];
    out << "  {\"scenario_id\":\"" << r.scenario_id << "\",\"check\":\"" << r.check
        << "\",\"subcase\":\"" << r.subcase << "\",\"lhs\":" << real17(r.lhs)
        << ",\"rhs_canonical\":" << real17(r.rhs_canonical) << ",\"rhs_variant\":"
        << (r.rhs_variant ? real17(*r.rhs_variant) : "null") << ",\"slack\":" << real17(r.slack)
        << ",\"holds\":" << (r.holds ? "true" : "false")
        << ",\"equality\":" << (r.equality ? "true" : "false") << ",\"equality_case\":\""
        << r.equality_case << "\",\"seed\":" << r.seed << '}' << (i + 1 < rows.size() ? "," : "")
        << '\n';
  }
  out << "]\n";
}

void emit_report(const std::vector<ReportRow>& rows, const std::string& format,
                 const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw ConfigError("cannot open output path '" + path + "'");
  }
  if (format == "csv") {
    emit_csv(rows, out);
  } else if (format == "json") {
    emit_json(rows, out);
  } else {
    throw ConfigError("unknown report format '" + format + "'");
  }
  if (!out.good()) {
    throw ConfigError("write failed for '" + path + "'");
  }
}

}  // namespace cclab
