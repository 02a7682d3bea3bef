#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "lf/selberg.hpp"
#include "lf/twist.hpp"

namespace lf {

namespace {

using nlohmann::json;

// strings carry exact rationals: "p/q" (or a plain integer "p")
double rational_string(const std::string& s, const std::string& ctx) {
  long p = 0, q = 1;
  int used = 0;
  if (std::sscanf(s.c_str(), "%ld/%ld%n", &p, &q, &used) == 2 &&
      used == int(s.size())) {
    if (q == 0) throw ConfigError(ctx + ": rational with zero denominator");
    return double(p) / double(q);
  }
  if (std::sscanf(s.c_str(), "%ld%n", &p, &used) == 1 && used == int(s.size())) {
    return double(p);
  }
  throw ConfigError(ctx + ": expected a number or a rational string \"p/q\", got \"" + s + "\"");
}

double parse_real(const json& j, const std::string& ctx) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return rational_string(j.get<std::string>(), ctx);
  throw ConfigError(ctx + ": expected a number or a rational string \"p/q\"");
}

void check_keys(const json& j, std::initializer_list<const char*> allowed,
                const std::string& ctx) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed) {
      if (it.key() == k) {
        ok = true;
        break;
      }
    }
    if (!ok) throw ConfigError(ctx + ": unknown key \"" + it.key() + "\"");
  }
}

cplx parse_complex(const json& j, const std::string& ctx) {
  if (j.is_number() || j.is_string()) return {parse_real(j, ctx), 0.0};
  if (j.is_object()) {
    check_keys(j, {"re", "im"}, ctx);
    double re = j.contains("re") ? parse_real(j.at("re"), ctx + ".re") : 0.0;
    double im = j.contains("im") ? parse_real(j.at("im"), ctx + ".im") : 0.0;
    return {re, im};
  }
  throw ConfigError(ctx + ": expected a number, rational string, or {re, im}");
}

std::vector<cplx> read_coefficient_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("coefficients.file: cannot open " + path);
  std::vector<cplx> table;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    long n = 0;
    double re = 0.0, im = 0.0;
    char c1 = 0, c2 = 0;
    if (!(ls >> n >> c1 >> re >> c2 >> im) || c1 != ',' || c2 != ',' || n < 1) {
      throw ConfigError("coefficients.file: bad line " + std::to_string(lineno) +
                        " in " + path + " (expected n,re,im)");
    }
    if (std::size_t(n) > table.size()) table.resize(std::size_t(n), cplx(0.0, 0.0));
    table[std::size_t(n) - 1] = cplx(re, im);
  }
  if (table.empty()) throw ConfigError("coefficients.file: no rows in " + path);
  return table;
}

}  // namespace

SelbergDatum load_datum_json(const std::string& json_text, const std::string& base_dir) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("datum: invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("datum: top level must be an object");
  check_keys(j, {"Q", "omega", "gamma_factors", "pole_order", "coefficient_hint",
                 "coefficients"},
             "datum");
  for (const char* req : {"Q", "omega", "gamma_factors", "coefficients"}) {
    if (!j.contains(req)) throw ConfigError(std::string("datum: missing key \"") + req + "\"");
  }

  double Q = parse_real(j.at("Q"), "Q");
  cplx omega = parse_complex(j.at("omega"), "omega");

  const json& gj = j.at("gamma_factors");
  if (!gj.is_array() || gj.empty()) {
    throw ConfigError("gamma_factors: expected a non-empty array");
  }
  std::vector<GammaFactor> gf;
  for (std::size_t i = 0; i < gj.size(); ++i) {
    const json& g = gj[i];
    std::string ctx = "gamma_factors[" + std::to_string(i) + "]";
    if (!g.is_object()) throw ConfigError(ctx + ": expected an object");
    check_keys(g, {"lambda", "mu"}, ctx);
    if (!g.contains("lambda")) throw ConfigError(ctx + ": missing \"lambda\"");
    double lambda = parse_real(g.at("lambda"), ctx + ".lambda");
    cplx mu = g.contains("mu") ? parse_complex(g.at("mu"), ctx + ".mu") : cplx(0.0, 0.0);
    gf.push_back({lambda, mu});
  }

  int pole_order = 0;
  if (j.contains("pole_order")) {
    const json& p = j.at("pole_order");
    if (!p.is_number_integer() || p.get<long>() < 0) {
      throw ConfigError("pole_order: expected a non-negative integer");
    }
    pole_order = int(p.get<long>());
  }
  double hint = j.contains("coefficient_hint")
                    ? parse_real(j.at("coefficient_hint"), "coefficient_hint")
                    : 0.0;

  const json& cj = j.at("coefficients");
  std::vector<cplx> table;
  if (cj.is_array()) {
    for (std::size_t i = 0; i < cj.size(); ++i) {
      table.push_back(parse_complex(cj[i], "coefficients[" + std::to_string(i) + "]"));
    }
    if (table.empty()) throw ConfigError("coefficients: expected a non-empty array");
  } else if (cj.is_object()) {
    check_keys(cj, {"file"}, "coefficients");
    if (!cj.contains("file") || !cj.at("file").is_string()) {
      throw ConfigError("coefficients: expected {\"file\": \"path.csv\"}");
    }
    std::filesystem::path p(cj.at("file").get<std::string>());
    if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
    table = read_coefficient_csv(p.string());
  } else {
    throw ConfigError("coefficients: expected an inline array or {\"file\": ...}");
  }

  // rigorous tail pair from the materialized table: beyond it a(n) = 0
  double scale = 1.0;
  for (std::size_t n = 1; n <= table.size(); ++n) {
    double m = std::abs(table[n - 1]);
    if (m > 0.0) scale = std::max(scale, 2.0 * m / std::pow(double(n), hint));
  }

  return make_datum(Q, omega, std::move(gf), CoefficientStream::from_table(std::move(table)),
                    pole_order, hint, scale, hint, "custom");
}

TwistSpec parse_twist_spec(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("twist spec: invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("twist spec: top level must be an object");
  check_keys(j, {"terms"}, "twist spec");
  if (!j.contains("terms") || !j.at("terms").is_array()) {
    throw ConfigError("twist spec: expected {\"terms\": [...]}");
  }
  TwistSpec spec;
  const json& terms = j.at("terms");
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const json& t = terms[i];
    std::string ctx = "terms[" + std::to_string(i) + "]";
    if (!t.is_object()) throw ConfigError(ctx + ": expected an object");
    check_keys(t, {"kappa", "alpha"}, ctx);
    for (const char* req : {"kappa", "alpha"}) {
      if (!t.contains(req)) throw ConfigError(ctx + ": missing \"" + req + "\"");
    }
    spec.terms.push_back({parse_real(t.at("kappa"), ctx + ".kappa"),
                          parse_real(t.at("alpha"), ctx + ".alpha")});
  }
  spec.validate();
  return spec;
}

SelbergDatum load_datum_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("datum: cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  std::string dir = std::filesystem::path(path).parent_path().string();
  if (dir.empty()) dir = ".";
  return load_datum_json(ss.str(), dir);
}

SelbergDatum resolve_lfunction(const std::string& name_or_path) {
  bool looks_like_file = name_or_path.size() > 5 &&
                         name_or_path.compare(name_or_path.size() - 5, 5, ".json") == 0;
  if (looks_like_file || std::filesystem::exists(name_or_path)) {
    return load_datum_file(name_or_path);
  }
  return builtin(name_or_path);
}

}  // namespace lf
