#pragma once

// JSON helpers for the command-line tool: rationals as decimal-string pairs,
// BruhatMeasure serialization, float formatting for CSV.

#include <gmp.h>

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "neretin/bruhat.hpp"
#include "neretin/dsl.hpp"

namespace cli {

using json = nlohmann::ordered_json;
using namespace neretin;

inline json rational_json(const Rational& q) {
  return json{{"num", q.get_num().get_str()}, {"den", q.get_den().get_str()}};
}

inline Rational parse_rational(const std::string& s) {
  Rational q;
  if (s.empty() || q.set_str(s, 10) != 0 || q.get_den() == 0) fail(ErrorKind::parse, "bad rational '" + s + "'");
  q.canonicalize();
  return q;
}

// Six significant digits; the exponent range is unbounded so tiny products
// do not underflow.
inline std::string approx(const Rational& q) {
  mpf_class f(q, 256);
  char buf[64];
  gmp_snprintf(buf, sizeof buf, "%.5Fe", f.get_mpf_t());
  return buf;
}

inline json measure_json(const BruhatMeasure& f) {
  json atoms = json::array();
  for (const auto& [g, c] : f.atoms()) atoms.push_back({{"element", g.to_string()}, {"coeff", c.get_str()}});
  json dens = json::array();
  for (const auto& [a, c] : f.density()) {
    dens.push_back({{"rep", a.to_string()}, {"level", f.level()}, {"coeff", c.get_str()}});
  }
  return json{{"shape", {f.shape().d, f.shape().k}}, {"atoms", atoms}, {"density", dens}};
}

inline BruhatMeasure measure_from_json(const json& j, const TreeShape& fallback) {
  try {
    TreeShape shape = fallback;
    if (j.contains("shape")) shape = TreeShape(j.at("shape").at(0).get<int>(), j.at("shape").at(1).get<int>());
    BruhatMeasure f(shape);
    if (j.contains("atoms")) {
      for (const auto& a : j.at("atoms")) {
        f.add_atom(parse_element(a.at("element").get<std::string>(), shape), parse_rational(a.at("coeff").get<std::string>()));
      }
    }
    if (j.contains("density")) {
      for (const auto& p : j.at("density")) {
        Coset c{parse_element(p.at("rep").get<std::string>(), shape), p.at("level").get<std::size_t>()};
        f.add_density(c, parse_rational(p.at("coeff").get<std::string>()));
      }
    }
    return f;
  } catch (const json::exception& e) {
    fail(ErrorKind::parse, std::string("measure JSON: ") + e.what());
  }
}

// Inline JSON text, or @path to read it from a file.
inline json read_json_arg(const std::string& arg) {
  std::string text = arg;
  if (!arg.empty() && arg[0] == '@') {
    std::ifstream in(arg.substr(1));
    require(in.good(), ErrorKind::validation, "cannot read " + arg.substr(1));
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::parse, std::string("JSON at byte ") + std::to_string(e.byte) + ": " + e.what());
  }
}

}  // namespace cli
