#pragma once

// JSON input parsing (polynomials, families, regions), structural schema
// validation with location-carrying errors, report serialization, and the CSV
// emitters used for plot data. Serialized output is deterministic: object keys
// are sorted and floats use shortest round-trip formatting, so identical
// requests with identical seeds produce identical bytes.

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"
#include "family.hpp"
#include "local_geometry.hpp"
#include "lojasiewicz.hpp"
#include "multipoly.hpp"
#include "region.hpp"
#include "scalar.hpp"
#include "schemas.hpp"
#include "version.hpp"

namespace zerocycle {

using json = nlohmann::json;

namespace detail {

inline std::string type_name(const json& v) {
  if (v.is_object()) return "object";
  if (v.is_array()) return "array";
  if (v.is_string()) return "string";
  if (v.is_boolean()) return "boolean";
  if (v.is_number_integer()) return "integer";
  if (v.is_number()) return "number";
  if (v.is_null()) return "null";
  return "value";
}

[[noreturn]] inline void schema_fail(const std::string& where, const std::string& msg) {
  fail(errc::bad_input, where.empty() ? msg : where + ": " + msg);
}

// Structural validator for the schema subset used in schemas.hpp: type,
// required, properties, additionalProperties:false, items, minItems, enum,
// pattern, minimum, exclusiveMinimum. Locations are JSON pointers.
inline void schema_check(const json& schema, const json& doc, const std::string& where) {
  if (auto it = schema.find("type"); it != schema.end()) {
    const std::string& t = it->get_ref<const std::string&>();
    bool ok = (t == "object" && doc.is_object()) || (t == "array" && doc.is_array()) ||
              (t == "string" && doc.is_string()) || (t == "boolean" && doc.is_boolean()) ||
              (t == "integer" && doc.is_number_integer()) || (t == "number" && doc.is_number());
    if (!ok) schema_fail(where, "expected " + t + ", got " + type_name(doc));
  }
  if (auto it = schema.find("enum"); it != schema.end()) {
    bool ok = false;
    for (const json& candidate : *it)
      if (candidate == doc) ok = true;
    if (!ok) schema_fail(where, "value not in the allowed set");
  }
  if (doc.is_string()) {
    if (auto it = schema.find("pattern"); it != schema.end()) {
      std::regex re(it->get_ref<const std::string&>());
      if (!std::regex_search(doc.get_ref<const std::string&>(), re))
        schema_fail(where, "string does not match pattern " + it->get<std::string>());
    }
  }
  if (doc.is_number()) {
    double v = doc.get<double>();
    if (auto it = schema.find("minimum"); it != schema.end() && v < it->get<double>())
      schema_fail(where, "value below minimum");
    if (auto it = schema.find("exclusiveMinimum"); it != schema.end() && v <= it->get<double>())
      schema_fail(where, "value must be strictly positive");
  }
  if (doc.is_object()) {
    if (auto it = schema.find("required"); it != schema.end())
      for (const json& key : *it)
        if (!doc.contains(key.get_ref<const std::string&>()))
          schema_fail(where, "missing required key \"" + key.get<std::string>() + "\"");
    const json* props = nullptr;
    if (auto it = schema.find("properties"); it != schema.end()) props = &*it;
    bool closed = schema.value("additionalProperties", json(true)) == json(false);
    for (const auto& [key, value] : doc.items()) {
      const bool known = props && props->contains(key);
      if (!known && closed) schema_fail(where, "unknown key \"" + key + "\"");
      if (known) schema_check((*props)[key], value, where + "/" + key);
    }
  }
  if (doc.is_array()) {
    if (auto it = schema.find("minItems"); it != schema.end())
      if (doc.size() < it->get<std::size_t>())
        schema_fail(where, "array needs at least " + it->dump() + " entries");
    if (auto it = schema.find("items"); it != schema.end())
      for (std::size_t i = 0; i < doc.size(); ++i)
        schema_check(*it, doc[i], where + "/" + std::to_string(i));
  }
}

}  // namespace detail

inline void validate_schema(const char* schema_text, const json& doc, const std::string& name) {
  json schema = json::parse(schema_text);
  detail::schema_check(schema, doc, name);
}

// A parsed polynomial input. The float polynomial is always present; the exact
// layer exists iff every coefficient was given as a rational string. A family
// input additionally names one variable as the parameter.
struct PolyDocument {
  std::vector<std::string> vars;
  MultiPoly<cdouble> poly = MultiPoly<cdouble>(1);
  std::optional<MultiPoly<CRat>> exact;
  int param_index = -1;
  std::string param_name;

  bool is_family() const { return param_index >= 0; }

  ParamFamily family(cdouble t0, std::vector<cdouble> base = {}) const {
    require(is_family(), errc::bad_input, "input file does not declare a parameter variable");
    ParamFamily fam;
    fam.poly = poly;
    fam.param_index = param_index;
    fam.t0 = t0;
    if (base.empty()) base.assign(std::size_t(poly.nvars() - 1), cdouble(0.0, 0.0));
    require(int(base.size()) == poly.nvars() - 1, errc::dimension_mismatch,
            "base point arity must match the space dimension");
    fam.base_point = std::move(base);
    return fam;
  }
};

inline PolyDocument parse_poly_document(const json& doc, const std::string& name = "") {
  const bool family = doc.is_object() && doc.contains("param");
  validate_schema(family ? schemas::family : schemas::polynomial, doc, name);

  PolyDocument out;
  out.vars = doc.at("vars").get<std::vector<std::string>>();
  for (std::size_t i = 0; i < out.vars.size(); ++i)
    for (std::size_t j = i + 1; j < out.vars.size(); ++j)
      require(out.vars[i] != out.vars[j], errc::bad_input,
              name + "/vars: duplicate variable \"" + out.vars[i] + "\"");
  const int n = int(out.vars.size());
  out.poly = MultiPoly<cdouble>(n);

  const json& terms = doc.at("terms");
  bool all_exact = !terms.empty();
  MultiPoly<CRat> exact(n);
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const json& term = terms[i];
    const std::string where = name + "/terms/" + std::to_string(i);
    const json& exp = term.at("exp");
    require(int(exp.size()) == n, errc::bad_input,
            where + "/exp: expected " + std::to_string(n) + " exponents");
    std::vector<std::uint32_t> e;
    e.reserve(exp.size());
    for (const json& k : exp) e.push_back(k.get<std::uint32_t>());

    if (term.contains("re_rat") || term.contains("im_rat")) {
      require(!term.contains("re") && !term.contains("im"), errc::bad_input,
              where + ": mixing float and rational coefficients in one term");
      CRat c = CRat::from_strings(term.value("re_rat", std::string("0")),
                                  term.value("im_rat", std::string("0")));
      out.poly.add_term(e, scalar_ops<CRat>::to_cdouble(c));
      exact.add_term(std::move(e), std::move(c));
    } else {
      require(term.contains("re") || term.contains("im"), errc::bad_input,
              where + ": term needs re/im or re_rat/im_rat");
      cdouble c(term.value("re", 0.0), term.value("im", 0.0));
      out.poly.add_term(std::move(e), c);
      all_exact = false;
    }
  }
  if (all_exact) out.exact = std::move(exact);

  if (family) {
    out.param_name = doc.at("param").get<std::string>();
    for (int i = 0; i < n; ++i)
      if (out.vars[std::size_t(i)] == out.param_name) out.param_index = i;
    require(out.param_index >= 0, errc::bad_input,
            name + "/param: \"" + out.param_name + "\" is not one of vars");
  }
  return out;
}

inline json load_json_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), errc::bad_input, "cannot read " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    fail(errc::bad_input, path + ": " + e.what());
  }
}

inline PolyDocument load_poly_document(const std::string& path) {
  return parse_poly_document(load_json_file(path), path);
}

inline Region parse_region(const json& doc, const std::string& name = "") {
  validate_schema(schemas::region, doc, name);
  Region r;
  for (const json& c : doc.at("center")) r.center.emplace_back(c.at("re"), c.at("im"));
  r.radii = doc.at("radii").get<std::vector<double>>();
  require(r.center.size() == r.radii.size(), errc::dimension_mismatch,
          name + ": center and radii must have the same arity");
  return r;
}

inline Region load_region(const std::string& path) {
  return parse_region(load_json_file(path), path);
}

// Command-line argument helpers shared by the CLI and the acceptance driver.

inline double parse_double_token(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    double v = std::stod(text, &used);
    require(used == text.size(), errc::bad_input, what + ": trailing characters in \"" + text + "\"");
    return v;
  } catch (const error&) {
    throw;
  } catch (const std::exception&) {
    fail(errc::bad_input, what + ": cannot parse \"" + text + "\" as a number");
  }
}

// "re" or "re,im"
inline cdouble parse_complex_arg(const std::string& text, const std::string& what = "complex") {
  auto comma = text.find(',');
  if (comma == std::string::npos) return cdouble(parse_double_token(text, what), 0.0);
  return cdouble(parse_double_token(text.substr(0, comma), what),
                 parse_double_token(text.substr(comma + 1), what));
}

// Coordinates separated by ';', each "re" or "re,im".
inline std::vector<cdouble> parse_point_arg(const std::string& text,
                                            const std::string& what = "point") {
  std::vector<cdouble> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t next = text.find(';', pos);
    if (next == std::string::npos) next = text.size();
    out.push_back(parse_complex_arg(text.substr(pos, next - pos), what));
    pos = next + 1;
  }
  require(!out.empty(), errc::bad_input, what + ": empty point");
  return out;
}

// Parameter grids: "geometric:<ratio>,<count>[,<start>]" expands to
// t_k = t0 + start * ratio^k for k = 1..count; "list:v1;v2;..." gives absolute
// values with each v = "re" or "re,im".
inline std::vector<cdouble> parse_parameter_grid(const std::string& text, cdouble t0) {
  if (text.rfind("geometric:", 0) == 0) {
    std::string body = text.substr(10);
    std::vector<std::string> parts;
    std::size_t pos = 0;
    while (pos <= body.size()) {
      std::size_t next = body.find(',', pos);
      if (next == std::string::npos) next = body.size();
      parts.push_back(body.substr(pos, next - pos));
      pos = next + 1;
    }
    require(parts.size() == 2 || parts.size() == 3, errc::bad_input,
            "geometric grid needs <ratio>,<count>[,<start>]");
    double ratio = parse_double_token(parts[0], "tgrid ratio");
    double count = parse_double_token(parts[1], "tgrid count");
    double start = parts.size() == 3 ? parse_double_token(parts[2], "tgrid start") : 1.0;
    require(ratio > 0.0 && ratio < 1.0, errc::bad_input, "geometric ratio must be in (0,1)");
    require(count >= 1.0 && count == std::floor(count) && count <= 64.0, errc::bad_input,
            "geometric count must be an integer in [1,64]");
    require(start != 0.0, errc::bad_input, "geometric start must be nonzero");
    std::vector<cdouble> out;
    double step = start;
    for (int k = 1; k <= int(count); ++k) {
      step *= ratio;
      out.push_back(t0 + cdouble(step, 0.0));
    }
    return out;
  }
  if (text.rfind("list:", 0) == 0) {
    std::vector<cdouble> out = parse_point_arg(text.substr(5), "tgrid");
    return out;
  }
  fail(errc::bad_input, "tgrid must start with geometric: or list:");
}

// Report serialization. nlohmann::json keeps object keys sorted, which is what
// makes repeated runs byte-identical.

inline json to_json(cdouble z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

inline json to_json(std::span<const cdouble> v) {
  json a = json::array();
  for (const cdouble& z : v) a.push_back(to_json(z));
  return a;
}

inline json to_json(const std::vector<cdouble>& v) {
  return to_json(std::span<const cdouble>(v));
}

inline json to_json(const ShellStat& s) {
  return json{{"radius", s.radius}, {"min_ratio", s.min_ratio}, {"samples", s.samples}};
}

inline json to_json(const LojReport& r) {
  json shells = json::array();
  for (const ShellStat& s : r.shell_profile) shells.push_back(to_json(s));
  return json{{"alpha", r.alpha},
              {"holds", r.holds},
              {"n_samples_requested", r.n_samples_requested},
              {"n_samples_used", r.n_samples_used},
              {"notes", r.notes},
              {"seed", r.seed},
              {"shell_profile", shells},
              {"worst_ratio_c", r.worst_ratio_c},
              {"worst_sample", to_json(r.worst_sample)}};
}

inline json to_json(const RootCluster& c) {
  return json{{"center", to_json(c.center)},
              {"multiplicity", c.multiplicity},
              {"radius", c.radius},
              {"residual", c.residual}};
}

inline json to_json(const SliceCycleReport& r) {
  json roots = json::array();
  for (const RootCluster& c : r.roots) roots.push_back(to_json(c));
  return json{{"base_point", to_json(r.base_point)},
              {"covering_number", r.covering_number},
              {"delta", r.delta},
              {"roots", roots},
              {"seed", r.seed}};
}

inline json to_json(const DistanceEstimate& d) {
  return json{{"directions_failed", d.directions_failed},
              {"directions_used", d.directions_used},
              {"found", d.found},
              {"seed", d.seed},
              {"value", d.value},
              {"witness", to_json(d.witness)}};
}

inline json to_json(const PropernessReport& p) {
  return json{{"max_sample_abs", p.max_sample_abs},
              {"min_boundary_abs", p.min_boundary_abs},
              {"ok", p.ok},
              {"tol_used", p.tol_used}};
}

inline json to_json(const PerTEntry& e) {
  return json{{"dist_from_t0", e.dist_from_t0},
              {"note", e.note},
              {"ok", e.ok},
              {"t", to_json(e.t)},
              {"values", json(e.values)}};
}

inline json to_json(const ConvergenceReport& r) {
  json per_t = json::array();
  for (const PerTEntry& e : r.per_t) per_t.push_back(to_json(e));
  return json{{"check", r.check},
              {"extras", json(r.extras)},
              {"holds", r.holds},
              {"notes", r.notes},
              {"per_t", per_t},
              {"seed", r.seed},
              {"stabilization_threshold", r.stabilization_threshold}};
}

inline json to_json(const CurveIntersections& c) {
  json pts = json::array();
  for (const auto& p : c.points) pts.push_back(to_json(p));
  return json{{"common_component", c.common_component}, {"points", pts}};
}

// CSV emitters: header row, stable column order, 17 significant digits.

inline std::string format_sig17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string csv_complex(cdouble t) {
  if (t.imag() == 0.0) return format_sig17(t.real());
  std::string s = format_sig17(t.real());
  if (t.imag() >= 0.0) s += "+";
  s += format_sig17(t.imag());
  s += "i";
  return s;
}

inline std::string shell_profile_csv(const LojReport& r) {
  std::string out = "shell_radius,min_ratio\n";
  for (const ShellStat& s : r.shell_profile) {
    if (s.samples == 0) continue;
    out += format_sig17(s.radius);
    out += ",";
    out += format_sig17(s.min_ratio);
    out += "\n";
  }
  return out;
}

// The canonical per-t quantity exported for each convergence check.
inline std::string quantity_column(const std::string& check) {
  static const std::map<std::string, std::string> cols = {
      {"order_profile", "order"},
      {"local_degree", "degree"},
      {"kuratowski", "hausdorff_gap"},
      {"tworzewski", "degree"},
      {"distance_continuity", "gap"},
      {"properness_persistence", "count"},
      {"uniform_lojasiewicz", "c_of_t"}};
  auto it = cols.find(check);
  require(it != cols.end(), errc::bad_input, "no tabular export for check " + check);
  return it->second;
}

inline std::string per_t_csv(const ConvergenceReport& r) {
  const std::string col = quantity_column(r.check);
  std::string out = "t," + col + "\n";
  for (const PerTEntry& e : r.per_t) {
    out += csv_complex(e.t);
    out += ",";
    auto it = e.values.find(col);
    if (it != e.values.end()) out += format_sig17(it->second);
    out += "\n";
  }
  return out;
}

// The envelope every CLI invocation emits. Wall time is attached only on
// request so that default output is reproducible byte for byte.
struct ReportEnvelope {
  json request;
  json payload;
  std::vector<std::string> warnings;
  std::optional<double> wall_time_ms;
};

inline json to_json(const ReportEnvelope& env) {
  json out{{"payload", env.payload},
           {"request", env.request},
           {"tool", json{{"name", tool_name}, {"version", tool_version}}},
           {"warnings", env.warnings}};
  if (env.wall_time_ms) out["wall_time_ms"] = *env.wall_time_ms;
  return out;
}

inline ReportEnvelope parse_envelope(const json& doc, const std::string& name = "") {
  validate_schema(schemas::report, doc, name);
  validate_schema(schemas::request, doc.at("request"), name.empty() ? "request" : name + "/request");
  ReportEnvelope env;
  env.request = doc.at("request");
  env.payload = doc.at("payload");
  env.warnings = doc.at("warnings").get<std::vector<std::string>>();
  if (doc.contains("wall_time_ms")) env.wall_time_ms = doc.at("wall_time_ms").get<double>();
  return env;
}

}  // namespace zerocycle
